//! Exact arithmetic in GF(p^r) and dense linear algebra over it.

mod field;
mod matrix;

pub use field::{
    inv, is_prime, make_field, odd_prime_power, smallest_primitive_root, Field, FieldCtx, FqElem,
};
pub use matrix::{kernel_basis, rank_of_power, rref, FqMatrix};
