use num_rational::Ratio;
use num_traits::Zero;

use super::bmodule::{b_decomposition, ceil_div, check_pm, check_prime};
use super::labels::{BDecomposition, FactorVector, GDecomposition};
use crate::curve::dim_h0;
use crate::error::{invalid, Error, Result};

/// `σ_t = m - ⌈(m+t)/(p-1)⌉`.
fn sigma_t(t: u32, m: u32, p: u32) -> i64 {
    m as i64 - ceil_div(m as i64 + t as i64, p as i64 - 1)
}

fn as_mult(v: i64, what: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Inconsistency(format!("{what} = {v} is negative")))
}

/// Composition-factor multiplicities `d_t` of H⁰ over G.
pub fn comp_factors_h0(m: u32, p: u32) -> Result<FactorVector> {
    check_pm(p, m)?;
    let mut d = FactorVector::zeros(p);
    let edge = as_mult(1 + sigma_t(p - 1, m, p), "d_1")?;
    d.add_to(1, edge);
    d.add_to(p, edge);
    for i in 2..p {
        let v = 1 + sigma_t(i - 1, m, p) + sigma_t(p - i, m, p);
        d.add_to(i, as_mult(v, &format!("d_{i}"))?);
    }
    Ok(d)
}

/// Inclusive integer interval test on doubled bounds, so half-integer
/// endpoints need no rounding: `lo2 ≤ 2x ≤ hi2`.
fn in_doubled(x: i64, lo2: i64, hi2: i64) -> bool {
    lo2 <= 2 * x && 2 * x <= hi2
}

/// One branch: b-range (doubled endpoints) and t-range.
struct Branch {
    b2: (i64, i64),
    t: (i64, i64),
}

fn branches(a: u32, b: u32, p: u32) -> [Vec<Branch>; 2] {
    let (a, b, p) = (a as i64, b as i64, p as i64);
    let br = |b_lo2, b_hi2, t_lo, t_hi| Branch {
        b2: (b_lo2, b_hi2),
        t: (t_lo, t_hi),
    };
    if a <= 1 {
        let (lo, hi) = ((2, p - 1), (p + 1, 2 * (p - 1)));
        [
            vec![
                br(lo.0, lo.1, 1, 2 * b + a - 1),
                br(hi.0, hi.1, 1, 2 * (p - b) - a),
            ],
            vec![
                br(lo.0, lo.1, p - a - 2 * b + 1, p - 1),
                br(hi.0, hi.1, a + 2 * b - p, p - 1),
            ],
        ]
    } else {
        // doubled b-ranges shared by both remaining families
        let r1 = (2, p - a);
        let r2 = (p - a + 1, 2 * (p - a));
        let r3 = (2 * (p - a), 2 * p - a - 1);
        let r4 = (2 * p - a, 2 * (p - 1));
        if 2 * a < p {
            [
                vec![
                    br(r1.0, r1.1, a, a - 1 + 2 * b),
                    br(r2.0, r2.1, a, 2 * (p - b) - a),
                    br(r3.0, r3.1, 2 * (p - b) - a, a),
                    br(r4.0, r4.1, 2 * (b - p) + a + 1, a),
                ],
                vec![
                    br(r1.0, r1.1, p - a - 2 * b + 1, p - 1),
                    br(r2.0, r2.1, a + 2 * b - p, p - 1),
                    br(r3.0, r3.1, p - a, p - 1),
                    br(r4.0, r4.1, p - a, p - 1),
                ],
            ]
        } else {
            [
                vec![
                    br(r1.0, r1.1, p - a - 2 * b + 1, p - a),
                    br(r2.0, r2.1, a + 2 * b - p, p - a),
                    br(r3.0, r3.1, p - a, a + 2 * b - p),
                    br(r4.0, r4.1, p - a, 2 * (p - b) - a - 1 + p),
                ],
                vec![
                    br(r1.0, r1.1, a, p - 1),
                    br(r2.0, r2.1, a, p - 1),
                    br(r3.0, r3.1, 2 * (p - b) - a, p - 1),
                    br(r4.0, r4.1, 2 * (b - p) + a + 1, p - 1),
                ],
            ]
        }
    }
}

/// `c_{a,b}(t)` before the parity/reflection rule, plus a flag set when two
/// branches of one block both claim `b` and disagree at `t`.
pub fn c_ab_raw(a: u32, b: u32, t: u32, p: u32) -> Result<(u32, bool)> {
    check_prime(p)?;
    if a > p - 2 || b < 1 || b > p - 1 {
        return Err(invalid(format!(
            "(a, b) = ({a}, {b}) outside range for p = {p}"
        )));
    }
    let (bb, tt) = (b as i64, t as i64);
    let mut value = 0;
    let mut conflict = false;
    for block in branches(a, b, p) {
        let hits: Vec<u32> = block
            .iter()
            .filter(|br| in_doubled(bb, br.b2.0, br.b2.1))
            .map(|br| u32::from(br.t.0 <= tt && tt <= br.t.1))
            .collect();
        if let Some(&first) = hits.first() {
            value += first;
            conflict |= hits.iter().any(|&h| h != first);
        }
    }
    Ok((value, conflict))
}

/// Multiplicity of `V_t` in the Green correspondent `V_{a,b}`.
pub fn c_abt(a: u32, b: u32, t: u32, p: u32) -> Result<u32> {
    check_prime(p)?;
    if t < 1 || t > p {
        return Err(invalid(format!("t = {t} outside [1, {p}]")));
    }
    if t == p || t % 2 == a % 2 {
        c_ab_raw(a, b, 1, p)?;
        return Ok(0);
    }
    let s = if t <= (p - 1) / 2 { t } else { p - t };
    Ok(c_ab_raw(a, b, s, p)?.0)
}

/// Points `(a, b, t)` where overlapping branches disagree, over the
/// arguments `c_abt` actually evaluates.
pub fn c_abt_conflicts(p: u32) -> Result<Vec<(u32, u32, u32)>> {
    check_prime(p)?;
    let mut out = Vec::new();
    for a in 0..=p - 2 {
        for b in 1..p {
            for s in 1..=(p - 1) / 2 {
                if c_ab_raw(a, b, s, p)?.1 {
                    out.push((a, b, s));
                }
            }
        }
    }
    Ok(out)
}

/// All `c_{a,b,·}` as a factor vector.
pub fn green_factors(a: u32, b: u32, p: u32) -> Result<FactorVector> {
    let mut v = FactorVector::zeros(p);
    for t in 1..=p {
        v.add_to(t, c_abt(a, b, t, p)? as u64);
    }
    Ok(v)
}

/// Composition factors of the projective cover `P_{V_t}`.
pub fn projective_factors(t: u32, p: u32) -> Result<FactorVector> {
    check_prime(p)?;
    if t < 1 || t > p {
        return Err(invalid(format!("t = {t} outside [1, {p}]")));
    }
    let mut v = FactorVector::zeros(p);
    if t == p {
        v.add_to(p, 1);
    } else if t == 1 {
        v.add_to(1, 2);
        v.add_to(p - 2, 1);
    } else {
        v.add_to(t, 2);
        v.add_to(p + 1 - t, 1);
        if p - 1 - t >= 1 {
            v.add_to(p - 1 - t, 1);
        }
    }
    Ok(v)
}

/// `Γ_{i,j} = (-1)^{i+j} (min(i,j) - 2ij/p)`.
pub fn gamma(i: u32, j: u32, p: u32) -> Result<Ratio<i64>> {
    check_prime(p)?;
    let half = (p - 1) / 2;
    if i < 1 || j < 1 || i > half || j > half {
        return Err(invalid(format!("Γ indices ({i}, {j}) outside [1, {half}]")));
    }
    let (ii, jj) = (i as i64, j as i64);
    let sign = if (i + j).is_multiple_of(2) { 1 } else { -1 };
    Ok(Ratio::from_integer(sign)
        * (Ratio::from_integer(ii.min(jj)) - Ratio::new(2 * ii * jj, p as i64)))
}

/// `α_t`, index t-1: composition factors left after removing the Green
/// correspondents' share.
pub fn alpha_vec(m: u32, p: u32, bdec: &BDecomposition) -> Result<Vec<i64>> {
    check_pm(p, m)?;
    if bdec.p != p || bdec.m.is_some_and(|bm| bm != m) {
        return Err(invalid("B-decomposition belongs to different (p, m)"));
    }
    let d = comp_factors_h0(m, p)?;
    let mut alpha: Vec<i64> = d.as_slice().iter().map(|&x| x as i64).collect();
    for (label, n) in bdec.summands().filter(|(l, _)| l.b < p) {
        for t in 1..p {
            alpha[t as usize - 1] -= c_abt(label.a, label.b, t, p)? as i64 * n as i64;
        }
    }
    if let Some((k, v)) = alpha.iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(Error::Inconsistency(format!(
            "α_{} = {v} for m = {m}, p = {p}",
            k + 1
        )));
    }
    Ok(alpha)
}

/// Projective multiplicities `n_t`, index t-1.
pub fn proj_mults(p: u32, alpha: &[i64]) -> Result<Vec<u64>> {
    check_prime(p)?;
    if alpha.len() != p as usize {
        return Err(invalid(format!(
            "α has {} entries, expected {p}",
            alpha.len()
        )));
    }
    let half = (p - 1) / 2;
    let at = |k: u32| alpha[k as usize - 1];
    let mut out = Vec::with_capacity(p as usize);
    for t in 1..p {
        let s = if t <= half { t } else { p - t };
        let mut sum = Ratio::zero();
        for j in 1..=half {
            // odd t pairs odd j with α_j; even t swaps the roles
            let direct = (j % 2 == 1) == (t % 2 == 1);
            let a = if direct { at(j) } else { at(p - j) };
            sum += gamma(s, j, p)? * a;
        }
        if !sum.is_integer() || sum < Ratio::zero() {
            return Err(Error::Inconsistency(format!("n_{t} = {sum} for p = {p}")));
        }
        out.push(sum.to_integer() as u64);
    }
    out.push(as_mult(at(p), "n_p")?);
    Ok(out)
}

/// Full decomposition of H⁰ over G, with its invariants checked.
pub fn g_decomposition(m: u32, p: u32) -> Result<GDecomposition> {
    let bdec = b_decomposition(m, p)?;
    let alpha = alpha_vec(m, p, &bdec)?;
    let proj = proj_mults(p, &alpha)?;
    let factors = comp_factors_h0(m, p)?;
    let nonproj = bdec.summands().filter(|(l, _)| l.b < p).collect();
    let g = GDecomposition {
        p,
        m,
        nonproj,
        proj,
        factors,
    };
    let dim = dim_h0(p, m)?;
    let claimed = decomposition_dim(&g)?;
    if claimed != dim || g.factors.weighted_dim() != dim {
        return Err(Error::Inconsistency(format!(
            "dimension identity fails for m = {m}, p = {p}: summands {claimed}, factors {}, expected {dim}",
            g.factors.weighted_dim()
        )));
    }
    Ok(g)
}

/// `Σ n_{a,b} dim V_{a,b} + Σ n_t dim P_{V_t}`.
pub fn decomposition_dim(g: &GDecomposition) -> Result<u64> {
    Ok(implied_factors(g)?.weighted_dim())
}

/// Composition factors implied by the summands of `g`.
pub fn implied_factors(g: &GDecomposition) -> Result<FactorVector> {
    let p = g.p;
    let mut v = FactorVector::zeros(p);
    for (label, &n) in &g.nonproj {
        v.add_scaled(&green_factors(label.a, label.b, p)?, n as u64);
    }
    for (k, &n) in g.proj.iter().enumerate() {
        v.add_scaled(&projective_factors(k as u32 + 1, p)?, n);
    }
    Ok(v)
}

/// Composition factors `(V_{a+1}, V_{p-a})` of `Ind_B^G(S_a)`.
pub fn ind_sa_factors(a: u32, p: u32) -> Result<(u32, u32)> {
    check_prime(p)?;
    if a > p - 2 {
        return Err(invalid(format!("a = {a} outside [0, {}]", p - 2)));
    }
    Ok((a + 1, p - a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::BLabel;

    #[test]
    fn factor_examples() {
        assert_eq!(comp_factors_h0(2, 3).unwrap().as_slice(), &[1, 1, 1]);
        let d = comp_factors_h0(2, 5).unwrap();
        assert_eq!(d.as_slice(), &[1, 2, 3, 2, 1]);
        assert_eq!(d.weighted_dim(), 27);
        assert_eq!(comp_factors_h0(2, 7).unwrap().get(1), 1);
        assert!(comp_factors_h0(1, 7).is_err());
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_abt(0, 1, 1, 3).unwrap(), 1);
        assert_eq!(c_abt(1, 2, 1, 3).unwrap(), 0);
        assert_eq!(c_abt(1, 2, 2, 3).unwrap(), 1);
        assert_eq!(c_abt(0, 1, 3, 3).unwrap(), 0);
        assert!(c_abt(0, 3, 1, 3).is_err());
    }

    #[test]
    fn c_sanity_sweep() {
        for p in [3u32, 5, 7, 11, 13] {
            for a in 0..=p - 2 {
                for b in 1..p {
                    let v = green_factors(a, b, p).unwrap();
                    for t in 1..=p {
                        let c = v.get(t);
                        assert!(c <= 2, "c_{{{a},{b},{t}}} = {c} at p = {p}");
                        if t % 2 == a % 2 {
                            assert_eq!(c, 0);
                        }
                    }
                    // Res V_{a,b} = U_{a,b} ⊕ projective, so dim ≡ b mod p
                    assert_eq!(
                        v.weighted_dim() % p as u64,
                        b as u64,
                        "dim V_{{{a},{b}}} at p = {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn no_boundary_conflicts() {
        for p in [3u32, 5, 7, 11, 13, 17] {
            assert!(c_abt_conflicts(p).unwrap().is_empty(), "p = {p}");
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(1, 1, 5).unwrap(), Ratio::new(3, 5));
        assert_eq!(gamma(1, 2, 5).unwrap(), Ratio::new(-1, 5));
        assert_eq!(gamma(2, 1, 5).unwrap(), Ratio::new(-1, 5));
        assert!(gamma(3, 1, 5).is_err());
    }

    #[test]
    fn alpha_and_projectives() {
        let bdec = b_decomposition(2, 3).unwrap();
        let alpha = alpha_vec(2, 3, &bdec).unwrap();
        assert_eq!(alpha, vec![0, 0, 1]);
        assert_eq!(proj_mults(3, &alpha).unwrap(), vec![0, 0, 1]);
        let alpha5 = alpha_vec(2, 5, &b_decomposition(2, 5).unwrap()).unwrap();
        assert_eq!(alpha5[4], 1);
        assert_eq!(proj_mults(5, &alpha5).unwrap()[4], 1);
        assert!(alpha_vec(3, 3, &bdec).is_err());
    }

    #[test]
    fn g_examples() {
        let g = g_decomposition(2, 3).unwrap();
        let labels: Vec<_> = g.nonproj.keys().copied().collect();
        assert_eq!(labels, vec![BLabel::new(0, 1), BLabel::new(1, 2)]);
        assert_eq!(g.proj, vec![0, 0, 1]);
        let g = g_decomposition(2, 5).unwrap();
        let labels: Vec<_> = g.nonproj.keys().copied().collect();
        let mut expected = vec![
            BLabel::new(0, 2),
            BLabel::new(1, 1),
            BLabel::new(1, 4),
            BLabel::new(2, 3),
            BLabel::new(3, 2),
        ];
        expected.sort();
        assert_eq!(labels, expected);
        assert!(g.nonproj.values().all(|&n| n == 1));
    }

    #[test]
    fn g_sweep_invariants() {
        for p in [3u32, 5, 7, 11, 13] {
            for m in 2..=8 {
                let g = g_decomposition(m, p).unwrap();
                assert_eq!(
                    implied_factors(&g).unwrap().weighted_dim(),
                    dim_h0(p, m).unwrap()
                );
            }
        }
    }

    #[test]
    fn projective_dims() {
        for p in [3u32, 5, 7, 11] {
            for t in 1..=p {
                let expected = if t == 1 || t == p { p } else { 2 * p };
                assert_eq!(
                    projective_factors(t, p).unwrap().weighted_dim(),
                    expected as u64,
                    "t={t} p={p}"
                );
            }
        }
    }

    #[test]
    fn ind_examples() {
        assert_eq!(ind_sa_factors(0, 5).unwrap(), (1, 5));
        assert_eq!(ind_sa_factors(2, 5).unwrap(), (3, 3));
        assert_eq!(ind_sa_factors(1, 3).unwrap(), (2, 2));
        assert!(ind_sa_factors(4, 5).is_err());
    }
}
