use std::collections::HashMap;
use std::sync::Arc;

use super::basis::BasisSet;
use crate::error::{invalid, Error, Result};
use crate::ff::{FieldCtx, FqElem, FqMatrix};

/// An element `[[alpha, beta], [gamma, delta]]` of SL2(F_q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub alpha: FqElem,
    pub beta: FqElem,
    pub gamma: FqElem,
    pub delta: FqElem,
}

impl GroupElement {
    /// Checks the determinant.
    pub fn new(
        field: &FieldCtx,
        alpha: FqElem,
        beta: FqElem,
        gamma: FqElem,
        delta: FqElem,
    ) -> Result<Self> {
        let g = GroupElement {
            alpha,
            beta,
            gamma,
            delta,
        };
        if g.det(field) != FqElem::ONE {
            return Err(invalid("group element must have determinant 1"));
        }
        Ok(g)
    }

    /// Entries given as integers in the prime subfield.
    pub fn from_ints(field: &FieldCtx, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(
            field,
            field.from_int(a),
            field.from_int(b),
            field.from_int(c),
            field.from_int(d),
        )
    }

    pub fn identity() -> Self {
        GroupElement {
            alpha: FqElem::ONE,
            beta: FqElem::ZERO,
            gamma: FqElem::ZERO,
            delta: FqElem::ONE,
        }
    }

    pub fn det(&self, f: &FieldCtx) -> FqElem {
        f.sub(f.mul(self.alpha, self.delta), f.mul(self.beta, self.gamma))
    }

    pub fn mul(&self, f: &FieldCtx, rhs: &GroupElement) -> GroupElement {
        let dot = |a, b, c, d| f.add(f.mul(a, b), f.mul(c, d));
        GroupElement {
            alpha: dot(self.alpha, rhs.alpha, self.beta, rhs.gamma),
            beta: dot(self.alpha, rhs.beta, self.beta, rhs.delta),
            gamma: dot(self.gamma, rhs.alpha, self.delta, rhs.gamma),
            delta: dot(self.gamma, rhs.beta, self.delta, rhs.delta),
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self, f: &FieldCtx) -> GroupElement {
        GroupElement {
            alpha: self.delta,
            beta: f.neg(self.beta),
            gamma: f.neg(self.gamma),
            delta: self.alpha,
        }
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.gamma.is_zero()
    }
}

/// Rewrites holomorphic `ω_{ij}` in the basis by repeated use of
/// `ω_{ij} = ω_{i-1+q, j-q+1} + ω_{i-1, j-q}`.
///
/// The memo lives as long as the reducer; create one per computation.
pub struct Reducer<'a> {
    basis: &'a BasisSet,
    p: u32,
    memo: HashMap<(u32, u32), Vec<(usize, u32)>>,
}

impl<'a> Reducer<'a> {
    pub fn new(basis: &'a BasisSet) -> Self {
        Reducer {
            basis,
            p: basis.p(),
            memo: HashMap::new(),
        }
    }

    /// Sparse coordinates `(position, coefficient mod p)` of `ω_{ij}`.
    pub fn reduce(&mut self, i: u32, j: u32) -> Result<Vec<(usize, u32)>> {
        if !self.basis.is_holomorphic(i, j) {
            return Err(Error::OutOfBounds(format!(
                "ω_{{{i},{j}}} is not holomorphic for q = {}, m = {}",
                self.basis.q(),
                self.basis.m()
            )));
        }
        self.reduce_inner(i, j)
    }

    fn reduce_inner(&mut self, i: u32, j: u32) -> Result<Vec<(usize, u32)>> {
        if let Some(pos) = self.basis.position(i, j) {
            return Ok(vec![(pos, 1)]);
        }
        if let Some(hit) = self.memo.get(&(i, j)) {
            return Ok(hit.clone());
        }
        let q = self.basis.q();
        // Outside the basis but holomorphic forces j >= q and i >= 1.
        if j < q || i == 0 {
            return Err(Error::Inconsistency(format!(
                "ω_{{{i},{j}}} cannot be reduced"
            )));
        }
        let first = self.reduce_inner(i - 1 + q, j - q + 1)?;
        let second = self.reduce_inner(i - 1, j - q)?;
        let mut acc: HashMap<usize, u32> = HashMap::new();
        for (pos, c) in first.into_iter().chain(second) {
            let slot = acc.entry(pos).or_insert(0);
            *slot = (*slot + c) % self.p;
        }
        let mut out: Vec<(usize, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        self.memo.insert((i, j), out.clone());
        Ok(out)
    }
}

/// Dense coordinate vector (residues mod p) of `ω_{ij}` in the basis.
pub fn reduce_to_basis(i: u32, j: u32, basis: &BasisSet) -> Result<Vec<u32>> {
    let sparse = Reducer::new(basis).reduce(i, j)?;
    let mut out = vec![0; basis.len()];
    for (pos, c) in sparse {
        out[pos] = c;
    }
    Ok(out)
}

/// Rows of Pascal's triangle mod p up to `n`.
fn pascal_mod(n: usize, p: u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![1u32; k + 1];
        for t in 1..k {
            row[t] = (rows[k - 1][t - 1] + rows[k - 1][t]) % p;
        }
        rows.push(row);
    }
    rows
}

/// Coefficients of `(a x + b y)^n`, indexed by the power of y.
fn linear_form_power(
    f: &FieldCtx,
    a: FqElem,
    b: FqElem,
    n: usize,
    pascal: &[Vec<u32>],
) -> Vec<FqElem> {
    let apow: Vec<FqElem> = (0..=n)
        .scan(FqElem::ONE, |s, _| {
            let v = *s;
            *s = f.mul(*s, a);
            Some(v)
        })
        .collect();
    let bpow: Vec<FqElem> = (0..=n)
        .scan(FqElem::ONE, |s, _| {
            let v = *s;
            *s = f.mul(*s, b);
            Some(v)
        })
        .collect();
    (0..=n)
        .map(|k| f.mul(f.from_int(pascal[n][k] as i64), f.mul(apow[n - k], bpow[k])))
        .collect()
}

/// Substitutes `x -> αx + βy`, `y -> γx + δy` into `x^i y^j`; the result is
/// homogeneous of degree i + j, returned indexed by the power of y.
pub fn substitute_monomial(
    f: &FieldCtx,
    sigma: &GroupElement,
    i: usize,
    j: usize,
    pascal: &[Vec<u32>],
) -> Vec<FqElem> {
    let left = linear_form_power(f, sigma.alpha, sigma.beta, i, pascal);
    let right = linear_form_power(f, sigma.gamma, sigma.delta, j, pascal);
    let mut out = vec![FqElem::ZERO; i + j + 1];
    for (a, &l) in left.iter().enumerate() {
        if l.is_zero() {
            continue;
        }
        for (b, &r) in right.iter().enumerate() {
            out[a + b] = f.add(out[a + b], f.mul(l, r));
        }
    }
    out
}

/// Binomial coefficients mod p for exponents up to `n`.
pub fn pascal_for(f: &FieldCtx, n: usize) -> Vec<Vec<u32>> {
    pascal_mod(n, f.p())
}

/// Matrix of `ω ↦ ω·σ`: row k holds the coordinates of `ω_k · σ`, so that
/// `M(στ) = M(σ) M(τ)`.
pub fn action_matrix(
    field: &Arc<FieldCtx>,
    sigma: &GroupElement,
    basis: &BasisSet,
) -> Result<FqMatrix> {
    if field.q() != basis.q() {
        return Err(invalid(format!(
            "field of order {} for a curve over F_{}",
            field.q(),
            basis.q()
        )));
    }
    if sigma.det(field) != FqElem::ONE {
        return Err(invalid("σ must have determinant 1"));
    }
    let n = basis.len();
    let top = basis
        .indices()
        .iter()
        .map(|idx| (idx.i + idx.j) as usize)
        .max()
        .unwrap_or(0);
    let pascal = pascal_mod(top, field.p());
    let mut reducer = Reducer::new(basis);
    let mut out = FqMatrix::zeros(field, n, n);
    for (row, idx) in basis.indices().iter().enumerate() {
        let poly = substitute_monomial(field, sigma, idx.i as usize, idx.j as usize, &pascal);
        let d = poly.len() - 1;
        for (k, &c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (col, coeff) in reducer.reduce((d - k) as u32, k as u32)? {
                let v = field.add(
                    out.get(row, col),
                    field.mul(c, field.from_int(coeff as i64)),
                );
                out.set(row, col, v);
            }
        }
    }
    Ok(out)
}
