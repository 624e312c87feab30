//! Brute-force oracle over GF(p): explicit modules on the generators u, t, w
//! and linear-algebra decompositions used to check the closed forms.

mod induce;
mod module;
mod oracle;
mod verify;

pub use induce::{
    canonical_transversal, enumerate_group, induce_to_g, induce_with, shifted_transversal,
    GROUP_ENUMERATION_GUARD,
};
pub use module::{h0_module, prime_field, simple_module, uab_module, Generator, ModuleRep};
pub use oracle::{
    comp_factors_oracle, comp_factors_oracle_guarded, decompose_b_oracle, hom_dim,
    jordan_block_counts, simple_hom_dim, CompFactorVector, COMP_FACTOR_DIM_GUARD,
};
pub use verify::{cartan_check, verify_full, CartanCertificate, CheckResult, VerifyReport};
