use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::{simple_module, Generator, ModuleRep};
use crate::closedform::{BDecomposition, BLabel, FactorVector};
use crate::error::{invalid, Error, Result};
use crate::ff::{FieldCtx, FqElem, FqMatrix};

/// Composition-factor multiplicities found by the oracle.
pub type CompFactorVector = FactorVector;

/// Default dimension guard for the socle iteration.
pub const COMP_FACTOR_DIM_GUARD: usize = 400;

fn nilpotent_part(m: &ModuleRep) -> Result<FqMatrix> {
    let n = m.u().sub(&FqMatrix::identity(m.field(), m.dim()))?;
    if !n.pow(m.p() as u64)?.is_zero() {
        return Err(Error::InvalidModule("ρ(u) is not unipotent".into()));
    }
    Ok(n)
}

/// Coordinates of `v` in the row span of an RREF basis; `None` if outside.
fn coords_in_rref(basis: &FqMatrix, pivots: &[usize], v: &[FqElem]) -> Option<Vec<FqElem>> {
    let coords: Vec<FqElem> = pivots.iter().map(|&c| v[c]).collect();
    (basis.apply_row(&coords) == v).then_some(coords)
}

/// Matrix of `ρ` restricted to the row space of `basis` (RREF with
/// `pivots`), or an error if the space is not stable.
fn restrict_action(basis: &FqMatrix, pivots: &[usize], rho: &FqMatrix) -> Result<FqMatrix> {
    let image = basis.mul(rho)?;
    let rows: Vec<Vec<FqElem>> = (0..image.rows())
        .map(|i| {
            coords_in_rref(basis, pivots, image.row(i)).ok_or_else(|| {
                Error::Inconsistency("subspace is not stable under the action".into())
            })
        })
        .collect::<Result<_>>()?;
    FqMatrix::from_row_vecs(basis.field(), pivots.len(), &rows)
}

/// Multiplicity of each eigenvalue `ζ^a`, `a ∈ [0, p-2]`, of a diagonalisable
/// matrix of order dividing p-1.
fn eigen_multiplicities(f: &Arc<FieldCtx>, r: &FqMatrix) -> Result<Vec<usize>> {
    let p = f.p();
    let mut out = Vec::with_capacity(p as usize - 1);
    for a in 0..p - 1 {
        let shifted = r.sub_scalar(f.zeta_pow(a as i64))?;
        out.push(shifted.rows() - shifted.rank());
    }
    if out.iter().sum::<usize>() != r.rows() {
        return Err(Error::Inconsistency(
            "ρ(t) is not diagonalisable on a socle layer".into(),
        ));
    }
    Ok(out)
}

/// Number of Jordan blocks of ρ(u) of each size b, index b-1.
pub fn jordan_block_counts(m: &ModuleRep) -> Result<Vec<usize>> {
    let n = nilpotent_part(m)?;
    let p = m.p() as usize;
    let mut ranks = vec![m.dim()];
    let mut power = FqMatrix::identity(m.field(), m.dim());
    for _ in 0..p {
        power = power.mul(&n)?;
        ranks.push(power.rank());
    }
    // blocks of size ≥ b: ranks[b-1] - ranks[b]
    let at_least: Vec<usize> = (1..=p).map(|b| ranks[b - 1] - ranks[b]).collect();
    Ok((0..p)
        .map(|k| at_least[k] - at_least.get(k + 1).copied().unwrap_or(0))
        .collect())
}

/// Decomposes a B-module into the uniserials `U_{a,b}`.
///
/// For each b, the socles of Jordan blocks of size ≥ b span
/// `ker N ∩ im N^{b-1}`; the ρ(t)-eigenvalue counts there, minus those of
/// size ≥ b+1, are the `n_{a,b}`.
pub fn decompose_b_oracle(m: &ModuleRep) -> Result<BDecomposition> {
    let f = m.field();
    let p = m.p();
    let n = nilpotent_part(m)?;
    let mut powers = vec![FqMatrix::identity(f, m.dim())];
    for k in 0..p as usize {
        powers.push(powers[k].mul(&n)?);
    }
    let mut out = BDecomposition::new(p, None);
    let mut above = vec![0usize; p as usize - 1];
    for b in (1..=p as usize).rev() {
        // {v N^{b-1} : v N^b = 0}
        let sources = powers[b].left_kernel_basis();
        let (socles, pivots) = sources.mul(&powers[b - 1])?.rref();
        let socles = socles.submatrix(0..pivots.len(), 0..m.dim());
        let counts = if pivots.is_empty() {
            vec![0; p as usize - 1]
        } else {
            eigen_multiplicities(f, &restrict_action(&socles, &pivots, m.t())?)?
        };
        for a in 0..p as usize - 1 {
            let here = counts[a].checked_sub(above[a]).ok_or_else(|| {
                Error::Inconsistency(format!(
                    "socle eigenvalue counts shrink at b = {b}, a = {a}"
                ))
            })?;
            out.add(BLabel::new(a as u32, b as u32), here as u32);
        }
        above = counts;
    }
    if out.total_dim() != m.dim() as u64 {
        return Err(Error::Inconsistency(
            "B-decomposition does not exhaust the module".into(),
        ));
    }
    Ok(out)
}

fn check_same_group(s: &ModuleRep, m: &ModuleRep) -> Result<()> {
    if s.generator_set() != m.generator_set() || s.p() != m.p() {
        return Err(invalid("modules for different groups"));
    }
    Ok(())
}

/// `dim Hom(S, M)` from the full linear system `ρ_S(g) X = X ρ_M(g)`.
pub fn hom_dim(s: &ModuleRep, m: &ModuleRep) -> Result<usize> {
    check_same_group(s, m)?;
    let f = s.field();
    let (a, b) = (s.dim(), m.dim());
    let unknowns = a * b;
    if unknowns > 4096 {
        return Err(Error::GuardExceeded(format!(
            "{unknowns} unknowns in the intertwiner system"
        )));
    }
    let gens = s.generator_set();
    let mut sys = FqMatrix::zeros(f, gens.len() * unknowns, unknowns);
    for (gi, g) in gens.iter().enumerate() {
        let (rs, rm) = (s.gen(*g).unwrap(), m.gen(*g).unwrap());
        for i in 0..a {
            for j in 0..b {
                let row = gi * unknowns + i * b + j;
                for k in 0..a {
                    let v = f.add(sys.get(row, k * b + j), rs.get(i, k));
                    sys.set(row, k * b + j, v);
                }
                for l in 0..b {
                    let v = f.sub(sys.get(row, i * b + l), rm.get(l, j));
                    sys.set(row, i * b + l, v);
                }
            }
        }
    }
    Ok(unknowns - sys.rank())
}

/// Data shared by all `Hom(V_t, M)` computations on one module.
struct FixedPoints {
    /// RREF basis of `ker N` and its pivots.
    basis: FqMatrix,
    pivots: Vec<usize>,
    /// ρ(t) restricted to `ker N`.
    torus: FqMatrix,
}

impl FixedPoints {
    fn new(m: &ModuleRep) -> Result<Self> {
        let n = nilpotent_part(m)?;
        let (basis, pivots) = n.left_kernel_basis().rref();
        let basis = basis.submatrix(0..pivots.len(), 0..m.dim());
        let torus = restrict_action(&basis, &pivots, m.t())?;
        Ok(FixedPoints {
            basis,
            pivots,
            torus,
        })
    }

    /// U-fixed vectors of M with ρ(t)-eigenvalue `lambda`.
    fn eigenvectors(&self, lambda: FqElem) -> Result<FqMatrix> {
        if self.pivots.is_empty() {
            return Ok(FqMatrix::zeros(self.basis.field(), 0, self.basis.cols()));
        }
        let coeffs = self.torus.sub_scalar(lambda)?.left_kernel_basis();
        coeffs.mul(&self.basis)
    }
}

/// Basis of `Hom_G(V_t, M)`, each map as a `t × dim M` matrix.
///
/// A map is fixed by the image of the U-fixed vector `v0` of `V_t`, which must
/// be U-fixed in M with the same ρ(t)-eigenvalue; the candidates are spun
/// along with `v0` and the intertwining equations cut them down.
fn simple_hom_basis(v: &ModuleRep, m: &ModuleRep, fixed: &FixedPoints) -> Result<Vec<FqMatrix>> {
    check_same_group(v, m)?;
    let f = v.field();
    let t = v.dim();
    let own = FixedPoints::new(v)?;
    if own.pivots.len() != 1 {
        return Err(Error::InvalidModule(
            "source module is not cyclic on a U-fixed line".into(),
        ));
    }
    let v0 = own.basis.row(0).to_vec();
    let lambda = own.torus.get(0, 0);
    let cand = fixed.eigenvectors(lambda)?;
    let c = cand.rows();
    if c == 0 {
        return Ok(Vec::new());
    }

    // spin v0, carrying the candidate images along
    let gens = v.generator_set();
    let mut src: Vec<Vec<FqElem>> = vec![v0];
    let mut imgs: Vec<FqMatrix> = vec![cand];
    let mut next = 0;
    while src.len() < t {
        if next == src.len() {
            return Err(Error::InvalidModule(
                "U-fixed vector does not generate the source".into(),
            ));
        }
        for g in &gens {
            let w = v.gen(*g).unwrap().apply_row(&src[next]);
            let mut trial = src.clone();
            trial.push(w.clone());
            if FqMatrix::from_row_vecs(f, t, &trial)?.rank() == trial.len() {
                src.push(w);
                imgs.push(imgs[next].mul(m.gen(*g).unwrap())?);
                if src.len() == t {
                    break;
                }
            }
        }
        next += 1;
    }
    let p_inv = FqMatrix::from_row_vecs(f, t, &src)?.inverse()?;
    // X_i = P⁻¹ · (row k = image of src_k under candidate i)
    let maps: Vec<FqMatrix> = (0..c)
        .map(|i| {
            let rows: Vec<Vec<FqElem>> = imgs.iter().map(|img| img.row(i).to_vec()).collect();
            p_inv.mul(&FqMatrix::from_row_vecs(f, m.dim(), &rows)?)
        })
        .collect::<Result<_>>()?;

    let block = t * m.dim();
    let mut sys = FqMatrix::zeros(f, gens.len() * block, c);
    for (gi, g) in gens.iter().enumerate() {
        let (rs, rm) = (v.gen(*g).unwrap(), m.gen(*g).unwrap());
        for (i, x) in maps.iter().enumerate() {
            let defect = rs.mul(x)?.sub(&x.mul(rm)?)?;
            for (k, &e) in defect.entries().iter().enumerate() {
                sys.set(gi * block + k, i, e);
            }
        }
    }
    let kernel = sys.kernel_basis();
    (0..kernel.cols())
        .map(|col| {
            let mut acc = FqMatrix::zeros(f, t, m.dim());
            for (i, x) in maps.iter().enumerate() {
                let coeff = kernel.get(i, col);
                if !coeff.is_zero() {
                    acc = acc.add(&x.scale(coeff))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

/// `dim Hom_G(V_t, M)` through the U-fixed-vector route.
pub fn simple_hom_dim(t: u32, m: &ModuleRep) -> Result<usize> {
    if !m.is_g_module() {
        return Err(invalid(
            "Hom from a simple G-module needs a G-module target",
        ));
    }
    let v = simple_module(t, m.p())?;
    Ok(simple_hom_basis(&v, m, &FixedPoints::new(m)?)?.len())
}

/// Quotient of `m` by the submodule spanned by the rows of `sub` (RREF).
fn quotient(m: &ModuleRep, sub: &FqMatrix, pivots: &[usize]) -> Result<ModuleRep> {
    let f = m.field();
    let n = m.dim();
    let s = pivots.len();
    let mut change = FqMatrix::zeros(f, n, n);
    for i in 0..s {
        for j in 0..n {
            change.set(i, j, sub.get(i, j));
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for (k, &c) in free.iter().enumerate() {
        change.set(s + k, c, f.one());
    }
    let inv = change.inverse()?;
    let gens: BTreeMap<Generator, FqMatrix> = m
        .generators()
        .map(|(g, rho)| Ok((g, change.mul(rho)?.mul(&inv)?.submatrix(s..n, s..n))))
        .collect::<Result<_>>()?;
    Ok(ModuleRep::from_parts(f.clone(), n - s, gens))
}

/// Composition factors over G by iterated socles, with the default guard.
pub fn comp_factors_oracle(m: &ModuleRep) -> Result<CompFactorVector> {
    comp_factors_oracle_guarded(m, COMP_FACTOR_DIM_GUARD)
}

pub fn comp_factors_oracle_guarded(m: &ModuleRep, guard: usize) -> Result<CompFactorVector> {
    if !m.is_g_module() {
        return Err(invalid("composition factors over G need a G-module"));
    }
    if m.dim() > guard {
        return Err(Error::GuardExceeded(format!(
            "dimension {} exceeds {guard}",
            m.dim()
        )));
    }
    let p = m.p();
    let simples: Vec<ModuleRep> = (1..=p)
        .map(|t| simple_module(t, p))
        .collect::<Result<_>>()?;
    let mut out = FactorVector::zeros(p);
    let mut current = m.clone();
    while current.dim() > 0 {
        let fixed = FixedPoints::new(&current)?;
        let mut rows: Vec<Vec<FqElem>> = Vec::new();
        for (k, v) in simples.iter().enumerate() {
            let homs = simple_hom_basis(v, &current, &fixed)?;
            out.add_to(k as u32 + 1, homs.len() as u64);
            for x in &homs {
                rows.extend((0..x.rows()).map(|i| x.row(i).to_vec()));
            }
        }
        let (sub, pivots) = FqMatrix::from_row_vecs(current.field(), current.dim(), &rows)?.rref();
        if pivots.is_empty() {
            return Err(Error::Inconsistency(
                "socle of a nonzero module came out zero".into(),
            ));
        }
        let socle_dim: usize = rows.len();
        if pivots.len() != socle_dim {
            return Err(Error::Inconsistency(
                "simple images in the socle are not independent".into(),
            ));
        }
        current = quotient(&current, &sub, &pivots)?;
    }
    if out.weighted_dim() != m.dim() as u64 {
        return Err(Error::Inconsistency(
            "composition factors do not add up to the dimension".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::{h0_module, uab_module};

    #[test]
    fn round_trip_small() {
        for p in [3u32, 5] {
            for a in 0..=p - 2 {
                for b in 1..=p {
                    let d = decompose_b_oracle(&uab_module(a, b, p).unwrap()).unwrap();
                    assert_eq!(d.mult.len(), 1);
                    assert_eq!(d.get(a, b), 1, "U_{{{a},{b}}} at p = {p}: {d:?}");
                }
            }
        }
    }

    #[test]
    fn h0_b_decomposition_p3() {
        let d = decompose_b_oracle(&h0_module(3, 2).unwrap().restrict_to_b()).unwrap();
        let labels: Vec<_> = d.summands().map(|(l, n)| (l.a, l.b, n)).collect();
        assert_eq!(labels, vec![(0, 1, 1), (1, 2, 1), (0, 3, 1)]);
        let d = decompose_b_oracle(&h0_module(5, 2).unwrap().restrict_to_b()).unwrap();
        let mut labels: Vec<_> = d.summands().map(|(l, n)| (l.a, l.b, n)).collect();
        labels.sort();
        let expected = [
            (0, 2),
            (0, 5),
            (1, 1),
            (1, 4),
            (2, 3),
            (2, 5),
            (3, 2),
            (3, 5),
        ];
        assert_eq!(labels, expected.map(|(a, b)| (a, b, 1)));
    }

    #[test]
    fn jordan_counts() {
        let m = h0_module(5, 2).unwrap();
        let counts = jordan_block_counts(&m).unwrap();
        let total: usize = counts.iter().enumerate().map(|(k, c)| (k + 1) * c).sum();
        assert_eq!(total, 27);
    }

    #[test]
    fn hom_routes_agree() {
        for p in [3u32, 5] {
            let h0 = h0_module(p, 2).unwrap();
            for t in 1..=p {
                let v = simple_module(t, p).unwrap();
                assert_eq!(hom_dim(&v, &v).unwrap(), 1);
                assert_eq!(simple_hom_dim(t, &v).unwrap(), 1);
                assert_eq!(
                    hom_dim(&v, &h0).unwrap(),
                    simple_hom_dim(t, &h0).unwrap(),
                    "t={t} p={p}"
                );
                for s in 1..=p {
                    if s != t {
                        assert_eq!(hom_dim(&v, &simple_module(s, p).unwrap()).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn comp_factors_small() {
        for p in [3u32, 5] {
            for t in 1..=p {
                let got = comp_factors_oracle(&simple_module(t, p).unwrap()).unwrap();
                assert_eq!(got, FactorVector::unit(p, t));
            }
        }
        assert_eq!(
            comp_factors_oracle(&h0_module(3, 2).unwrap())
                .unwrap()
                .as_slice(),
            &[1, 1, 1]
        );
        assert_eq!(
            comp_factors_oracle(&h0_module(5, 2).unwrap())
                .unwrap()
                .as_slice(),
            &[1, 2, 3, 2, 1]
        );
    }

    #[test]
    fn guard_and_group_checks() {
        let m = h0_module(5, 2).unwrap();
        assert!(matches!(
            comp_factors_oracle_guarded(&m, 10),
            Err(Error::GuardExceeded(_))
        ));
        assert!(comp_factors_oracle(&m.restrict_to_b()).is_err());
        assert!(hom_dim(&simple_module(2, 5).unwrap(), &m.restrict_to_b()).is_err());
    }
}
