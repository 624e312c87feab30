//! Lifts the Borel decomposition to SL2(F_p): Green correspondents plus
//! projective covers, and the composition factors they imply.

use drinfeld::closedform::{comp_factors_h0, g_decomposition, implied_factors, GLabel};

fn main() -> drinfeld::Result<()> {
    for (p, m) in [(3, 2), (5, 3), (7, 2)] {
        let g = g_decomposition(m, p)?;
        let parts: Vec<String> = g
            .summands()
            .into_iter()
            .map(|(label, n)| match label {
                GLabel::NonProjective { a, b } => format!("{n}·V_{{{a},{b}}}"),
                GLabel::Projective { t } => format!("{n}·P_{t}"),
            })
            .collect();
        println!("p = {p}, m = {m}: {}", parts.join(" + "));
        println!("  factors d_t = {:?}", comp_factors_h0(m, p)?.as_slice());
        println!("  implied     = {:?}", implied_factors(&g)?.as_slice());
    }
    Ok(())
}
