use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};

/// Fields up to this order get precomputed addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;

/// An element of GF(p^r).
///
/// The coefficient vector `c_0 + c_1 x + ... + c_{r-1} x^{r-1}` (power basis of the
/// field modulus) is packed as the base-p integer `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`.
/// For r = 1 the packed value is simply the residue mod p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    /// The packed base-p representation.
    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic context for GF(p^r).
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    r: u32,
    q: u32,
    /// Monic modulus, coefficients low-degree first, length r + 1.
    modulus: Vec<u32>,
    zeta: u32,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
}

/// Shared handle; matrices keep one of these.
pub type Field = Arc<FieldCtx>;

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .field("zeta", &self.zeta)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^r` with p an odd prime.
pub fn odd_prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 3 {
        return Err(invalid(format!("q = {q} is not a power of an odd prime")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    if p == 2 || !is_prime(p as u64) {
        return Err(invalid(format!("q = {q} is not a power of an odd prime")));
    }
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    if rest != 1 {
        return Err(invalid(format!("q = {q} is not a prime power")));
    }
    Ok((p, r))
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    let mut b = base % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc
}

/// Smallest positive primitive root modulo the prime `p`.
pub fn smallest_primitive_root(p: u32) -> u32 {
    let n = (p - 1) as u64;
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            factors.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    (1..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&f| mod_pow(g as u64, n / f, p as u64) != 1)
        })
        .expect("a prime always has a primitive root")
}

// Dense polynomial helpers over GF(p), coefficients low-degree first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let lead_inv = mod_pow(*b.last().unwrap() as u64, (p - 2) as u64, p as u64) as u32;
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (k, &bc) in b.iter().enumerate() {
            let idx = shift + k;
            r[idx] = (r[idx] + p - (f as u64 * bc as u64 % p as u64) as u32) % p;
        }
        r = poly_trim(r);
    }
    r
}

/// Monic polynomial of the given degree, the `index`-th in the lexicographic
/// order that compares coefficients low-degree first.
fn monic_from_index(index: u64, degree: u32, p: u32) -> Vec<u32> {
    // The low-degree coefficient is the most significant digit.
    let mut coeffs = vec![0u32; degree as usize + 1];
    let mut rest = index;
    for k in (0..degree as usize).rev() {
        coeffs[k] = (rest % p as u64) as u32;
        rest /= p as u64;
    }
    coeffs[degree as usize] = 1;
    coeffs
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let degree = f.len() as u32 - 1;
    for d in 1..=degree / 2 {
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let g = monic_from_index(idx, d, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Builds GF(p^r) with the lexicographically smallest monic irreducible modulus
/// and the smallest positive primitive root mod p.
pub fn make_field(p: u32, r: u32) -> Result<FieldCtx> {
    if p == 2 || !is_prime(p as u64) {
        return Err(invalid(format!("p = {p} must be an odd prime")));
    }
    if r < 1 {
        return Err(invalid("extension degree r must be at least 1"));
    }
    if p >= 1 << 16 {
        return Err(invalid(format!(
            "p = {p} exceeds the supported range (< 65536)"
        )));
    }
    let q = (p as u64)
        .checked_pow(r)
        .filter(|&q| q <= 1 << 20)
        .ok_or_else(|| invalid(format!("field order {p}^{r} too large")))? as u32;
    let modulus = if r == 1 {
        vec![0, 1]
    } else {
        let count = (p as u64).pow(r);
        (0..count)
            .map(|idx| monic_from_index(idx, r, p))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    };
    let mut ctx = FieldCtx {
        p,
        r,
        q,
        modulus,
        zeta: smallest_primitive_root(p),
        add_table: None,
        mul_table: None,
    };
    if r > 1 && q <= TABLE_LIMIT {
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            for b in 0..q {
                add[a as usize * n + b as usize] = ctx.add_slow(a, b);
                mul[a as usize * n + b as usize] = ctx.mul_slow(a, b);
            }
        }
        ctx.add_table = Some(add);
        ctx.mul_table = Some(mul);
    }
    Ok(ctx)
}

impl FieldCtx {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Field order p^r.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive root mod p, as an integer in [1, p-1].
    pub fn zeta_int(&self) -> u32 {
        self.zeta
    }

    pub fn zeta(&self) -> FqElem {
        FqElem(self.zeta)
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Builds an element from its coefficient vector; entries are reduced mod p
    /// and the vector is zero-padded, but may not be longer than r.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FqElem> {
        if coeffs.len() > self.r as usize {
            return Err(invalid(format!(
                "{} coefficients given for an extension of degree {}",
                coeffs.len(),
                self.r
            )));
        }
        let mut packed = 0u32;
        for &c in coeffs.iter().rev() {
            packed = packed * self.p + c.rem_euclid(self.p as i64) as u32;
        }
        Ok(FqElem(packed))
    }

    /// Coefficient vector of length r.
    pub fn coeffs(&self, e: FqElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.r as usize);
        let mut rest = e.0;
        for _ in 0..self.r {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    /// All q elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    /// Whether the element lies in GF(p); returns its residue if so.
    pub fn as_prime(&self, e: FqElem) -> Option<u32> {
        (e.0 < self.p).then_some(e.0)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let ca = self.coeffs(FqElem(a));
        let cb = self.coeffs(FqElem(b));
        let mut prod = vec![0u64; 2 * self.r as usize];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut packed = 0u32;
        for &c in rem.iter().rev() {
            packed = packed * self.p + c;
        }
        packed
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.r == 1 {
            let s = a.0 + b.0;
            FqElem(if s >= self.p { s - self.p } else { s })
        } else if let Some(t) = &self.add_table {
            FqElem(t[(a.0 * self.q + b.0) as usize])
        } else {
            FqElem(self.add_slow(a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.r == 1 {
            FqElem(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            let c: Vec<i64> = self.coeffs(a).iter().map(|&c| -(c as i64)).collect();
            self.from_coeffs(&c).unwrap()
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.r == 1 {
            FqElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
        } else if let Some(t) = &self.mul_table {
            FqElem(t[(a.0 * self.q + b.0) as usize])
        } else {
            FqElem(self.mul_slow(a.0, b.0))
        }
    }

    pub fn pow(&self, a: FqElem, mut exp: u64) -> FqElem {
        let mut acc = FqElem::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a^(q-2)`.
    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete log to base zeta of a nonzero prime-field element.
    pub fn log_zeta(&self, a: FqElem) -> Option<u32> {
        let target = self.as_prime(a)?;
        if target == 0 {
            return None;
        }
        let mut acc = 1u64;
        for k in 0..self.p - 1 {
            if acc as u32 == target {
                return Some(k);
            }
            acc = acc * self.zeta as u64 % self.p as u64;
        }
        None
    }

    /// `zeta^k` for any integer k.
    pub fn zeta_pow(&self, k: i64) -> FqElem {
        let e = k.rem_euclid(self.p as i64 - 1) as u64;
        self.pow(self.zeta(), e)
    }
}

/// Free-function form of [`FieldCtx::inv`].
pub fn inv(ctx: &FieldCtx, e: FqElem) -> Result<FqElem> {
    ctx.inv(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots() {
        assert_eq!(make_field(3, 1).unwrap().zeta_int(), 2);
        assert_eq!(make_field(7, 1).unwrap().zeta_int(), 3);
        assert_eq!(make_field(5, 1).unwrap().zeta_int(), 2);
        assert_eq!(make_field(11, 1).unwrap().zeta_int(), 2);
        assert_eq!(make_field(13, 1).unwrap().zeta_int(), 2);
    }

    #[test]
    fn modulus_for_gf9() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // x^2 + x + 2 is irreducible too but comes later
        assert!(is_irreducible(&[2, 1, 1], 3));
        assert!(!is_irreducible(&[0, 0, 1], 3));
    }

    #[test]
    fn modulus_for_gf25_is_irreducible() {
        let f = make_field(5, 2).unwrap();
        assert!(is_irreducible(f.modulus(), 5));
        assert_eq!(f.q(), 25);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(2, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_field(9, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_field(1, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_field(5, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn inverses() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(inv(&f5, f5.from_int(2)).unwrap(), f5.from_int(3));
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.inv(f7.one()).unwrap(), f7.one());
        let f9 = make_field(3, 2).unwrap();
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        let two_x = f9.from_coeffs(&[0, 2]).unwrap();
        assert_eq!(f9.inv(x).unwrap(), two_x);
        assert_eq!(f9.inv(f9.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf9_x_squared_is_minus_one() {
        let f9 = make_field(3, 2).unwrap();
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(x, x), f9.from_int(-1));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(odd_prime_power(9).unwrap(), (3, 2));
        assert_eq!(odd_prime_power(25).unwrap(), (5, 2));
        assert_eq!(odd_prime_power(7).unwrap(), (7, 1));
        assert!(odd_prime_power(8).is_err());
        assert!(odd_prime_power(15).is_err());
        assert!(odd_prime_power(1).is_err());
    }

    #[test]
    fn discrete_log() {
        let f = make_field(7, 1).unwrap();
        for k in 0..6 {
            assert_eq!(f.log_zeta(f.zeta_pow(k)), Some(k as u32));
        }
        assert_eq!(f.log_zeta(f.zero()), None);
    }
}
