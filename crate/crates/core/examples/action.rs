//! Acts by a unipotent and a diagonal element over F_9 and checks that the
//! matrices compose in the right-action convention.

use std::sync::Arc;

use drinfeld::curve::{action_matrix, enumerate_basis, graded_basis, GroupElement};
use drinfeld::ff::{make_field, FqMatrix};

fn main() -> drinfeld::Result<()> {
    let field = Arc::new(make_field(3, 2)?);
    let basis = enumerate_basis(9, 2)?;
    let u = GroupElement::from_ints(&field, 1, 1, 0, 1)?;
    let z = field.zeta();
    let t = GroupElement::new(&field, z, field.zero(), field.zero(), field.inv(z)?)?;

    let mu = action_matrix(&field, &u, &basis)?;
    let mt = action_matrix(&field, &t, &basis)?;
    let m_ut = action_matrix(&field, &u.mul(&field, &t), &basis)?;
    println!(
        "dim {}, M(ut) = M(u)M(t): {}",
        basis.len(),
        m_ut == mu.mul(&mt)?
    );
    println!("graded blocks: {:?}", graded_basis(&basis).sizes());
    println!(
        "rank of M(u) - I: {}",
        mu.sub(&FqMatrix::identity(&field, basis.len()))?.rank()
    );
    Ok(())
}
