//! Closed-form multiplicities for q = p: the F[B]-decomposition of the
//! holomorphic polydifferentials, the composition factors over G, the
//! Green-correspondent factor tables and the lifted F[G]-decomposition.

mod bmodule;
mod gmodule;
mod labels;

pub use bmodule::{
    b_decomposition, b_decomposition_large_p, coinvariants_dim, count_nj, divisor_dj, divisor_ej,
    ell_values, mu, n_ab, n_aj_from_mu, psi, sigma_b, BranchPoint,
};
pub use gmodule::{
    alpha_vec, c_ab_raw, c_abt, c_abt_conflicts, comp_factors_h0, decomposition_dim,
    g_decomposition, gamma, green_factors, implied_factors, ind_sa_factors, proj_mults,
    projective_factors,
};
pub use labels::{
    BDecomposition, BLabel, FactorVector, GDecomposition, GLabel, RamificationProfile,
};
