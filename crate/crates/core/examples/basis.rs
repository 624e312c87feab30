//! Lists the holomorphic 2-polydifferentials on the curve over F_5, grouped by degree.

use drinfeld::curve::{degree, dim_h0, enumerate_basis, genus, graded_basis};

fn main() -> drinfeld::Result<()> {
    let (q, m) = (5, 2);
    let basis = enumerate_basis(q, m)?;
    println!("genus {}, dim H0 = {}", genus(q)?, dim_h0(q, m)?);
    for idx in basis.indices() {
        println!("  w_({}, {})  degree {}", idx.i, idx.j, degree(*idx, q));
    }
    println!("graded block sizes: {:?}", graded_basis(&basis).sizes());
    Ok(())
}
