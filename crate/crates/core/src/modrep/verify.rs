use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::induce::induce_to_g;
use super::module::{h0_module, uab_module};
use super::oracle::{comp_factors_oracle, decompose_b_oracle};
use crate::closedform::{
    b_decomposition, c_abt, comp_factors_h0, g_decomposition, implied_factors, projective_factors,
};
use crate::curve::dim_h0;
use crate::error::{invalid, Error, Result};

/// Outcome of expressing a residual factor vector through projective covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanCertificate {
    pub a: u32,
    pub b: u32,
    pub p: u32,
    /// Oracle factors of `Ind U_{a,b}` minus `c_{a,b,·}`.
    pub residual: Vec<i64>,
    /// Solution `x` of `Cartan · x = residual`, as reduced fractions.
    pub solution: Vec<(i64, i64)>,
    pub passed: bool,
}

/// Solves a square system over Q; `None` when singular.
fn solve_rational(
    mut a: Vec<Vec<Ratio<i64>>>,
    mut rhs: Vec<Ratio<i64>>,
) -> Option<Vec<Ratio<i64>>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = Ratio::one() / a[col][col];
        for k in col..n {
            a[col][k] *= inv;
        }
        rhs[col] *= inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                for k in col..n {
                    let v = a[col][k] * factor;
                    a[r][k] -= v;
                }
                let v = rhs[col] * factor;
                rhs[r] -= v;
            }
        }
    }
    Some(rhs)
}

/// Checks that `ℓ(Ind U_{a,b}) - c_{a,b,·}` is a non-negative integer
/// combination of projective-cover factor vectors.
pub fn cartan_check(a: u32, b: u32, p: u32) -> Result<CartanCertificate> {
    if b < 1 || b >= p {
        return Err(invalid(format!("b = {b} must lie in [1, {}]", p - 1)));
    }
    let ell = comp_factors_oracle(&induce_to_g(&uab_module(a, b, p)?)?)?;
    let residual: Vec<i64> = (1..=p)
        .map(|t| Ok(ell.get(t) as i64 - c_abt(a, b, t, p)? as i64))
        .collect::<Result<_>>()?;
    let columns: Vec<_> = (1..=p)
        .map(|s| projective_factors(s, p))
        .collect::<Result<_>>()?;
    let cartan: Vec<Vec<Ratio<i64>>> = (0..p as usize)
        .map(|t| {
            columns
                .iter()
                .map(|c| Ratio::from_integer(c.as_slice()[t] as i64))
                .collect()
        })
        .collect();
    let rhs = residual.iter().map(|&r| Ratio::from_integer(r)).collect();
    let x = solve_rational(cartan, rhs)
        .ok_or_else(|| Error::Inconsistency(format!("Cartan system is singular for p = {p}")))?;
    let passed = x.iter().all(|v| v.is_integer() && *v >= Ratio::zero());
    Ok(CartanCertificate {
        a,
        b,
        p,
        residual,
        solution: x.iter().map(|v| (*v.numer(), *v.denom())).collect(),
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub p: u32,
    pub m: u32,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn first_mismatch(left: &[u64], right: &[u64]) -> String {
    match left.iter().zip(right).position(|(x, y)| x != y) {
        Some(k) => format!(
            "first difference at t = {}: oracle {}, closed form {}",
            k + 1,
            left[k],
            right[k]
        ),
        None => "agree".into(),
    }
}

/// Runs the four oracle-versus-closed-form checks for `H⁰(Ω^{⊗m})`, q = p.
pub fn verify_full(p: u32, m: u32) -> Result<VerifyReport> {
    let module = h0_module(p, m)?;
    let mut checks = Vec::new();

    let oracle_b = decompose_b_oracle(&module.restrict_to_b())?;
    let closed_b = b_decomposition(m, p)?;
    let detail = match oracle_b.first_difference(&closed_b) {
        Some((l, x, y)) => format!(
            "first difference at U_{{{},{}}}: oracle {x}, closed form {y}",
            l.a, l.b
        ),
        None => format!("{} summands agree", closed_b.mult.len()),
    };
    checks.push(CheckResult {
        name: "b_decomposition".into(),
        passed: oracle_b.same_summands(&closed_b),
        detail,
    });

    let oracle_f = comp_factors_oracle(&module)?;
    let closed_f = comp_factors_h0(m, p)?;
    checks.push(CheckResult {
        name: "composition_factors".into(),
        passed: oracle_f == closed_f,
        detail: first_mismatch(oracle_f.as_slice(), closed_f.as_slice()),
    });

    let dim = dim_h0(p, m)?;
    let g = g_decomposition(m, p);
    checks.push(match &g {
        Ok(_) => CheckResult {
            name: "dimension_identity".into(),
            passed: true,
            detail: format!("total {dim}"),
        },
        Err(e) => CheckResult {
            name: "dimension_identity".into(),
            passed: false,
            detail: e.to_string(),
        },
    });

    checks.push(match g.and_then(|g| implied_factors(&g)) {
        Ok(implied) => CheckResult {
            name: "implied_factors".into(),
            passed: implied == oracle_f,
            detail: first_mismatch(oracle_f.as_slice(), implied.as_slice()),
        },
        Err(e) => CheckResult {
            name: "implied_factors".into(),
            passed: false,
            detail: e.to_string(),
        },
    });

    Ok(VerifyReport { p, m, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_examples() {
        let c = cartan_check(0, 1, 3).unwrap();
        assert_eq!(c.residual, vec![0, 0, 1]);
        assert_eq!(c.solution, vec![(0, 1), (0, 1), (1, 1)]);
        assert!(c.passed);
        assert!(cartan_check(1, 2, 3).unwrap().passed);
        assert!(cartan_check(0, 3, 3).is_err());
    }

    #[test]
    fn rational_solver() {
        let r = |v: i64| Ratio::from_integer(v);
        let a = vec![vec![r(2), r(1)], vec![r(1), r(3)]];
        assert_eq!(
            solve_rational(a, vec![r(3), r(5)]).unwrap(),
            vec![Ratio::new(4, 5), Ratio::new(7, 5)]
        );
        assert!(
            solve_rational(vec![vec![r(1), r(2)], vec![r(2), r(4)]], vec![r(1), r(1)]).is_none()
        );
    }

    #[test]
    fn verify_small() {
        for (p, m) in [(3, 2), (5, 2)] {
            let report = verify_full(p, m).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.checks.len(), 4);
        }
    }
}
