//! Runs the oracle-versus-closed-form report for a few small cases.

use drinfeld::modrep::verify_full;

fn main() -> drinfeld::Result<()> {
    for (p, m) in [(3, 2), (3, 3), (5, 2)] {
        let report = verify_full(p, m)?;
        println!(
            "p = {p}, m = {m}: {}",
            if report.passed() { "pass" } else { "FAIL" }
        );
        for check in &report.checks {
            println!("  {:<20} {}", check.name, check.detail);
        }
    }
    Ok(())
}
