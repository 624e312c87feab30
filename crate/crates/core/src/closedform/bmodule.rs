use num_rational::Ratio;

use super::labels::{BDecomposition, BLabel};
use crate::error::{invalid, Error, Result};
use crate::ff::is_prime;

/// The two branch points of `C/U → C/B ≅ P^1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchPoint {
    OneZero,
    ZeroOne,
}

impl BranchPoint {
    pub const ALL: [BranchPoint; 2] = [BranchPoint::OneZero, BranchPoint::ZeroOne];
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if p < 3 || !is_prime(p as u64) {
        return Err(invalid(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

pub(crate) fn check_pm(p: u32, m: u32) -> Result<()> {
    check_prime(p)?;
    if m < 2 {
        return Err(Error::Unsupported(format!(
            "m = {m}: only m ≥ 2 is covered"
        )));
    }
    Ok(())
}

fn check_j(j: u32, p: u32) -> Result<()> {
    if j > p - 1 {
        return Err(invalid(format!("j = {j} outside [0, {}]", p - 1)));
    }
    Ok(())
}

fn check_a(a: u32, p: u32) -> Result<()> {
    if a > p - 2 {
        return Err(invalid(format!("a = {a} outside [0, {}]", p - 2)));
    }
    Ok(())
}

/// `m - j - ⌈(2m+j)/p⌉`, the order of `E_j` at `[0:1]`.
fn zero_one_order(j: u32, m: u32, p: u32) -> i64 {
    let (j, m, p) = (j as i64, m as i64, p as i64);
    m - j - ceil_div(2 * m + j, p)
}

/// `(ℓ_{[1:0],j}, ℓ_{[0:1],j})`, both in `[0, p-2]`.
pub fn ell_values(j: u32, m: u32, p: u32) -> Result<(u32, u32)> {
    check_pm(p, m)?;
    check_j(j, p)?;
    let e = p as i64 - 1;
    let l10 = (m as i64 * (p as i64 - 2)).rem_euclid(e);
    let l01 = zero_one_order(j, m, p).rem_euclid(e);
    Ok((l10 as u32, l01 as u32))
}

/// Coefficient of `[0:1]` in `D_j`.
pub fn divisor_dj(j: u32, m: u32, p: u32) -> Result<i64> {
    check_pm(p, m)?;
    check_j(j, p)?;
    let (jj, mm, pp) = (j as i64, m as i64, p as i64);
    Ok(mm * (pp + 1) - jj - ceil_div(2 * mm + jj, pp))
}

/// Coefficients of `E_j` at `([1:0], [0:1])`.
pub fn divisor_ej(j: u32, m: u32, p: u32) -> Result<(i64, i64)> {
    check_pm(p, m)?;
    check_j(j, p)?;
    Ok((m as i64 * (p as i64 - 2), zero_one_order(j, m, p)))
}

/// `n_j = 1 + m - ⌈m/(p-1)⌉ + ⌊(m - j - ⌈(2m+j)/p⌉)/(p-1)⌋`.
pub fn count_nj(j: u32, m: u32, p: u32) -> Result<i64> {
    check_pm(p, m)?;
    check_j(j, p)?;
    let (mm, e) = (m as i64, p as i64 - 1);
    Ok(1 + mm - ceil_div(mm, e) + floor_div(zero_one_order(j, m, p), e))
}

/// Indicator `μ_{a,i}(point)`: the character `θ_point^i` restricts to `S_a`.
pub fn mu(a: u32, i: i64, point: BranchPoint, p: u32) -> Result<u32> {
    check_prime(p)?;
    check_a(a, p)?;
    let e = p as i64 - 1;
    let target = match point {
        BranchPoint::OneZero => i,
        BranchPoint::ZeroOne => e - i,
    };
    Ok(u32::from((a as i64 - target).rem_euclid(e) == 0))
}

/// `n(a, j)` through the branch-point sums over `μ`, before simplification.
pub fn n_aj_from_mu(a: u32, j: u32, m: u32, p: u32) -> Result<Ratio<i64>> {
    let (l10, l01) = ell_values(j, m, p)?;
    let e = p as i64 - 1;
    let mut total = Ratio::from_integer(count_nj(j, m, p)?);
    for (point, ell) in [(BranchPoint::OneZero, l10), (BranchPoint::ZeroOne, l01)] {
        for d in 1..=ell as i64 {
            total += mu(a, -d, point, p)? as i64;
        }
        for d in 1..e {
            total -= Ratio::new(d, e) * mu(a, d, point, p)? as i64;
        }
    }
    Ok(total)
}

/// `ψ(a, j) ∈ {-1, 0, 1}`.
pub fn psi(a: u32, j: u32, m: u32, p: u32) -> Result<i32> {
    check_a(a, p)?;
    let (l10, l01) = ell_values(j, m, p)?;
    let in_top = a <= p - 2;
    if a < l01 + 1 && p - 1 - l10 <= a && in_top {
        Ok(1)
    } else if a < p - 1 - l10 && l01 < a && in_top {
        Ok(-1)
    } else {
        Ok(0)
    }
}

/// `σ(b) ∈ {0, 1}` for `1 ≤ b ≤ p-1`.
pub fn sigma_b(b: u32, m: u32, p: u32) -> Result<u32> {
    check_pm(p, m)?;
    if b < 1 || b > p - 1 {
        return Err(invalid(format!("b = {b} outside [1, {}]", p - 1)));
    }
    let (_, l01) = ell_values(b - 1, m, p)?;
    let hit = if (2 * m + b - 1).is_multiple_of(p) {
        l01 <= 1
    } else {
        l01 == 0
    };
    Ok(u32::from(hit))
}

/// Multiplicity of `U_{a,b}` in the restriction of H⁰ to B.
pub fn n_ab(a: u32, b: u32, m: u32, p: u32) -> Result<u32> {
    check_pm(p, m)?;
    check_a(a, p)?;
    if b < 1 || b > p {
        return Err(invalid(format!("b = {b} outside [1, {p}]")));
    }
    let value = if b < p {
        sigma_b(b, m, p)? as i64 + psi(a, b - 1, m, p)? as i64 - psi(a, b, m, p)? as i64
    } else {
        let (mm, pp, e) = (m as i64, p as i64, p as i64 - 1);
        mm - ceil_div(mm, e)
            + floor_div(mm - 1 - ceil_div(2 * mm - 1, pp), e)
            + psi(a, p - 1, m, p)? as i64
    };
    u32::try_from(value)
        .map_err(|_| Error::Inconsistency(format!("n_{{{a},{b}}} = {value} for m = {m}, p = {p}")))
}

pub fn b_decomposition(m: u32, p: u32) -> Result<BDecomposition> {
    check_pm(p, m)?;
    let mut out = BDecomposition::new(p, Some(m));
    for b in 1..=p {
        for a in 0..=p - 2 {
            out.add(BLabel::new(a, b), n_ab(a, b, m, p)?);
        }
    }
    Ok(out)
}

/// The stable pattern for `p > 3m`.
pub fn b_decomposition_large_p(m: u32, p: u32) -> Result<BDecomposition> {
    check_pm(p, m)?;
    if p <= 3 * m {
        return Err(Error::Precondition(format!(
            "p = {p} must exceed 3m = {}",
            3 * m
        )));
    }
    let mut out = BDecomposition::new(p, Some(m));
    for b in 1..=m {
        out.add(BLabel::new(m - b, b), 1);
    }
    for b in m + 1..=p - 2 * m + 1 {
        out.add(BLabel::new(p - 1 + m - b, b), 1);
    }
    for b in p - 2 * m + 1..=p - 1 {
        out.add(BLabel::new(p - 2 + m - b, b), 1);
    }
    for a in 0..=p - 2 {
        out.add(BLabel::new(a, p), if a == m - 1 { m - 2 } else { m - 1 });
    }
    Ok(out)
}

/// Dimension of the B-coinvariants: summands whose top factor is trivial.
pub fn coinvariants_dim(decomp: &BDecomposition) -> u64 {
    decomp
        .summands()
        .filter(|(l, _)| l.top_factor(decomp.p) == 0)
        .map(|(_, n)| n as u64)
        .sum()
}
