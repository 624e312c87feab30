//! Globally holomorphic polydifferentials on the Drinfeld curve with their
//! SL2(F_q)-action.
//!
//! * [`ff`]: exact GF(p^r) arithmetic and dense linear algebra.
//! * [`curve`]: the explicit basis, reduction into it, action matrices, grading.
//! * [`closedform`]: closed-form decompositions over the Borel subgroup B and over
//!   G = SL2(F_p).
//! * [`modrep`]: a brute-force modular representation oracle that checks them.
//! * [`cli`]: the command surface behind the `drinfeld` binary.

pub mod cli;
pub mod closedform;
pub mod curve;
pub mod error;
pub mod ff;
pub mod modrep;

pub use error::{Error, Result};
