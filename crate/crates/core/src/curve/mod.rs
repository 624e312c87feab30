//! Holomorphic m-polydifferentials on the Drinfeld curve: the explicit basis,
//! rewriting into it, the SL2(F_q) action and the degree grading.

mod action;
mod basis;

pub use action::{
    action_matrix, pascal_for, reduce_to_basis, substitute_monomial, GroupElement, Reducer,
};
pub use basis::{
    degree, dim_h0, enumerate_basis, genus, graded_basis, holomorphy_bound, in_basis, BasisSet,
    GradedBasis, PolyDiffIndex,
};
