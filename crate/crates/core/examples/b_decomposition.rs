//! Closed-form decomposition over the Borel subgroup, checked against the
//! brute-force oracle on the explicit module.

use drinfeld::closedform::{b_decomposition, coinvariants_dim};
use drinfeld::modrep::{decompose_b_oracle, h0_module};

fn main() -> drinfeld::Result<()> {
    for (p, m) in [(3, 2), (5, 2), (7, 3)] {
        let closed = b_decomposition(m, p)?;
        let oracle = decompose_b_oracle(&h0_module(p, m)?.restrict_to_b())?;
        let labels: Vec<String> = closed
            .summands()
            .map(|(l, n)| format!("{n}·U_{{{},{}}}", l.a, l.b))
            .collect();
        println!(
            "p = {p}, m = {m}: {} | coinvariants {} | oracle agrees: {}",
            labels.join(" + "),
            coinvariants_dim(&closed),
            oracle.same_summands(&closed)
        );
    }
    Ok(())
}
