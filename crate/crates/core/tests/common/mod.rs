#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use drinfeld::curve::{
    action_matrix, degree, enumerate_basis, graded_basis, GroupElement, PolyDiffIndex,
};
use drinfeld::ff::{make_field, odd_prime_power, FieldCtx, FqElem, FqMatrix};
use drinfeld::modrep::{decompose_b_oracle, uab_module};

pub fn field(q: u32) -> Arc<FieldCtx> {
    let (p, r) = odd_prime_power(q).unwrap();
    Arc::new(make_field(p, r).unwrap())
}

fn nth(f: &FieldCtx, k: u32) -> FqElem {
    f.elements().nth((k % f.q()) as usize).unwrap()
}

/// A determinant-one matrix built from four arbitrary seeds.
pub fn element_from_seed(f: &FieldCtx, s: (u32, u32, u32, u32)) -> GroupElement {
    let (a, b, c, d) = (nth(f, s.0), nth(f, s.1), nth(f, s.2), nth(f, s.3));
    if !a.is_zero() {
        let delta = f.div(f.add(f.one(), f.mul(b, c)), a).unwrap();
        GroupElement::new(f, a, b, c, delta).unwrap()
    } else {
        let b = if b.is_zero() { f.one() } else { b };
        let gamma = f.neg(f.inv(b).unwrap());
        GroupElement::new(f, a, b, gamma, d).unwrap()
    }
}

/// `M(στ) = M(σ)M(τ)` and `M(σ⁻¹) = M(σ)⁻¹`.
pub fn homomorphism_holds(
    q: u32,
    m: u32,
    s1: (u32, u32, u32, u32),
    s2: (u32, u32, u32, u32),
) -> bool {
    let f = field(q);
    let basis = enumerate_basis(q, m).unwrap();
    let (x, y) = (element_from_seed(&f, s1), element_from_seed(&f, s2));
    let mx = action_matrix(&f, &x, &basis).unwrap();
    let my = action_matrix(&f, &y, &basis).unwrap();
    let mxy = action_matrix(&f, &x.mul(&f, &y), &basis).unwrap();
    let minv = action_matrix(&f, &x.inverse(&f), &basis).unwrap();
    mxy == mx.mul(&my).unwrap() && minv == mx.inverse().unwrap()
}

/// Every nonzero entry joins basis elements of equal degree, so `M(σ)` is
/// block diagonal with the graded block sizes.
pub fn block_diagonal_holds(q: u32, m: u32, s: (u32, u32, u32, u32)) -> bool {
    let f = field(q);
    let basis = enumerate_basis(q, m).unwrap();
    let mat = action_matrix(&f, &element_from_seed(&f, s), &basis).unwrap();
    let sizes = graded_basis(&basis).sizes();
    let mut block_of = Vec::new();
    for (k, &n) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(k, n));
    }
    let idx = basis.indices();
    (0..mat.rows()).all(|i| {
        (0..mat.cols()).all(|j| {
            mat.get(i, j).is_zero()
                || (block_of[i] == block_of[j] && degree(idx[i], q) == degree(idx[j], q))
        })
    })
}

pub fn field_axioms_hold(q: u32, a: u32, b: u32, c: u32) -> bool {
    let f = field(q);
    let (a, b, c) = (nth(&f, a), nth(&f, b), nth(&f, c));
    let assoc = f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
    let comm = f.mul(a, b) == f.mul(b, a) && f.add(a, b) == f.add(b, a);
    let dist = f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
    let inverse = b.is_zero() || f.mul(f.mul(a, b), f.inv(b).unwrap()) == a;
    let neg = f.add(a, f.neg(a)).is_zero();
    assoc && comm && dist && inverse && neg
}

pub fn frobenius_holds(q: u32, a: u32, b: u32) -> bool {
    let f = field(q);
    let (a, b) = (nth(&f, a), nth(&f, b));
    let p = f.p() as u64;
    f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p))
}

/// Rank–nullity and RREF idempotence for a matrix filled from `entries`.
pub fn rank_nullity_holds(q: u32, rows: usize, cols: usize, entries: &[u32]) -> bool {
    let f = field(q);
    let e: Vec<FqElem> = (0..rows * cols)
        .map(|k| nth(&f, entries[k % entries.len()]))
        .collect();
    let m = FqMatrix::from_entries(&f, rows, cols, e).unwrap();
    let kernel = m.kernel_basis();
    let (r, _) = m.rref();
    m.rank() + kernel.cols() == cols && m.mul(&kernel).unwrap().is_zero() && r.rref().0 == r
}

/// `decompose_b_oracle(U_{a,b}) = {U_{a,b}: 1}` for every label.
pub fn uab_round_trip(p: u32) -> Result<(), String> {
    for a in 0..=p - 2 {
        for b in 1..=p {
            let d = decompose_b_oracle(&uab_module(a, b, p).unwrap()).unwrap();
            if d.mult.len() != 1 || d.get(a, b) != 1 {
                return Err(format!(
                    "U_{{{a},{b}}} at p = {p} came back as {:?}",
                    d.mult
                ));
            }
        }
    }
    Ok(())
}

/// Sparse bivariate integer polynomial, exponents of (x, y).
pub type Poly = BTreeMap<(u32, u32), i64>;

pub fn monomial(i: u32, j: u32, c: i64) -> Poly {
    BTreeMap::from([((i, j), c)])
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (&k, &c) in b {
        *out.entry(k).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(i1, j1), &c1) in a {
        for (&(i2, j2), &c2) in b {
            *out.entry((i1 + i2, j1 + j2)).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `x^i y^j - x^{i-1+q} y^{j-q+1} - x^{i-1} y^{j-q}` equals
/// `x^{i-1} y^{j-q} (x y^q - x^q y - 1)`.
pub fn reduction_identity_holds(q: u32, idx: PolyDiffIndex) -> bool {
    let (i, j) = (idx.i, idx.j);
    let lhs = poly_add(
        &poly_add(&monomial(i, j, 1), &monomial(i - 1 + q, j - q + 1, -1)),
        &monomial(i - 1, j - q, -1),
    );
    let relation = poly_add(
        &poly_add(&monomial(1, q, 1), &monomial(q, 1, -1)),
        &monomial(0, 0, -1),
    );
    lhs == poly_mul(&monomial(i - 1, j - q, 1), &relation)
}
