use std::collections::{BTreeMap, HashMap};

use super::module::{Generator, ModuleRep};
use crate::curve::GroupElement;
use crate::error::{invalid, Error, Result};
use crate::ff::{FieldCtx, FqElem, FqMatrix};

/// Largest p for which `enumerate_group` runs without an override.
pub const GROUP_ENUMERATION_GUARD: u32 = 13;

/// All of SL2(F_p), in lexicographic order of `(α, β, γ, δ)`.
pub fn enumerate_group(f: &FieldCtx, allow_large: bool) -> Result<Vec<GroupElement>> {
    if f.r() != 1 {
        return Err(Error::Unsupported(
            "group enumeration over a prime field only".into(),
        ));
    }
    let p = f.p();
    if p > GROUP_ENUMERATION_GUARD && !allow_large {
        return Err(Error::GuardExceeded(format!(
            "p = {p} exceeds {GROUP_ENUMERATION_GUARD}"
        )));
    }
    let elems: Vec<FqElem> = f.elements().collect();
    let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    let g = GroupElement {
                        alpha: a,
                        beta: b,
                        gamma: c,
                        delta: d,
                    };
                    if g.det(f) == FqElem::ONE {
                        out.push(g);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Point `[γ:δ]` of P¹ labelling the right coset `B g`.
fn coset_point(f: &FieldCtx, g: &GroupElement) -> (FqElem, FqElem) {
    if g.gamma.is_zero() {
        (FqElem::ZERO, FqElem::ONE)
    } else {
        (FqElem::ONE, f.div(g.delta, g.gamma).expect("γ ≠ 0"))
    }
}

/// Right-coset representatives of B in G: `1` and `w u^k`, k = 0..p-1.
pub fn canonical_transversal(f: &FieldCtx) -> Result<Vec<GroupElement>> {
    let w = Generator::W.element(f);
    let mut out = vec![GroupElement::identity()];
    for k in 0..f.p() as i64 {
        out.push(w.mul(f, &GroupElement::from_ints(f, 1, k, 0, 1)?));
    }
    Ok(out)
}

/// The canonical representatives reversed and each moved by `t^j u^j`.
pub fn shifted_transversal(f: &FieldCtx) -> Result<Vec<GroupElement>> {
    let t = Generator::T.element(f);
    let canonical = canonical_transversal(f)?;
    canonical
        .into_iter()
        .rev()
        .enumerate()
        .map(|(j, r)| {
            let mut b = GroupElement::from_ints(f, 1, j as i64, 0, 1)?;
            for _ in 0..j {
                b = t.mul(f, &b);
            }
            Ok(b.mul(f, &r))
        })
        .collect()
}

/// `Ind_B^G M` with the canonical transversal.
pub fn induce_to_g(m: &ModuleRep) -> Result<ModuleRep> {
    let transversal = canonical_transversal(m.field())?;
    induce_with(m, &transversal)
}

/// `Ind_B^G M = M ⊗_{F[B]} F[G]` on the basis `m_i ⊗ r_j`.
///
/// For `r_j g = b' r_k`, block `(j, k)` of ρ(g) is `ρ_M(b')`.
pub fn induce_with(m: &ModuleRep, transversal: &[GroupElement]) -> Result<ModuleRep> {
    if m.is_g_module() {
        return Err(invalid("induction expects a B-module"));
    }
    let f = m.field();
    let p = f.p() as usize;
    if transversal.len() != p + 1 {
        return Err(invalid(format!(
            "transversal has {} elements, expected {}",
            transversal.len(),
            p + 1
        )));
    }
    let index: HashMap<(FqElem, FqElem), usize> = transversal
        .iter()
        .enumerate()
        .map(|(j, r)| (coset_point(f, r), j))
        .collect();
    if index.len() != p + 1 {
        return Err(invalid("transversal repeats a coset"));
    }
    let d = m.dim();
    let n = d * (p + 1);
    let inverses: Vec<GroupElement> = transversal.iter().map(|r| r.inverse(f)).collect();
    let mut gens = BTreeMap::new();
    for g in [Generator::U, Generator::T, Generator::W] {
        let sigma = g.element(f);
        let mut rho = FqMatrix::zeros(f, n, n);
        for (j, r) in transversal.iter().enumerate() {
            let moved = r.mul(f, &sigma);
            let k = index[&coset_point(f, &moved)];
            let b = moved.mul(f, &inverses[k]);
            if !b.is_upper_triangular() {
                return Err(Error::Inconsistency("coset cocycle left B".into()));
            }
            let block = m.rho(&b)?;
            for x in 0..d {
                for y in 0..d {
                    rho.set(j * d + x, k * d + y, block.get(x, y));
                }
            }
        }
        gens.insert(g, rho);
    }
    ModuleRep::new(f.clone(), gens)
}
