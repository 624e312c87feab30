//! Induces each U_{a,b} to SL2(F_5), subtracts the Green-correspondent factors
//! and solves for the projective multiplicities in the remainder.

use drinfeld::modrep::cartan_check;

fn main() -> drinfeld::Result<()> {
    let p = 5;
    for a in 0..=p - 2 {
        for b in 1..p {
            let cert = cartan_check(a, b, p)?;
            let x: Vec<String> = cert
                .solution
                .iter()
                .map(|(n, d)| {
                    if *d == 1 {
                        n.to_string()
                    } else {
                        format!("{n}/{d}")
                    }
                })
                .collect();
            println!(
                "U_{{{a},{b}}}: residual {:?} -> projectives [{}] {}",
                cert.residual,
                x.join(", "),
                if cert.passed { "ok" } else { "FAIL" }
            );
        }
    }
    Ok(())
}
