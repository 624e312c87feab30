use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{action_matrix, enumerate_basis, pascal_for, substitute_monomial, GroupElement};
use crate::error::{invalid, Error, Result};
use crate::ff::{make_field, FieldCtx, FqElem, FqMatrix};

/// Named generators of SL2(F_p): `u = [[1,1],[0,1]]`, `t = diag(ζ, ζ⁻¹)`,
/// `w = [[0,1],[-1,0]]`. B is generated by u and t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    U,
    T,
    W,
}

impl Generator {
    pub fn element(self, f: &FieldCtx) -> GroupElement {
        let (o, z) = (f.one(), f.zero());
        match self {
            Generator::U => GroupElement {
                alpha: o,
                beta: o,
                gamma: z,
                delta: o,
            },
            Generator::T => GroupElement {
                alpha: f.zeta(),
                beta: z,
                gamma: z,
                delta: f.zeta_pow(-1),
            },
            Generator::W => GroupElement {
                alpha: z,
                beta: o,
                gamma: f.neg(o),
                delta: z,
            },
        }
    }
}

/// A representation in row convention: `v ↦ v ρ(g)` and `ρ(gh) = ρ(g) ρ(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    field: Arc<FieldCtx>,
    dim: usize,
    gens: BTreeMap<Generator, FqMatrix>,
}

/// Prime field GF(p) shared by all oracle modules.
pub fn prime_field(p: u32) -> Result<Arc<FieldCtx>> {
    Ok(Arc::new(make_field(p, 1)?))
}

impl ModuleRep {
    /// Validates invertibility, orders of u and t, and `t u t⁻¹ = u^{ζ²}`;
    /// for G-modules also `w⁴ = 1` and `w t w⁻¹ = t⁻¹`.
    pub fn new(field: Arc<FieldCtx>, gens: BTreeMap<Generator, FqMatrix>) -> Result<Self> {
        if field.r() != 1 {
            return Err(Error::Unsupported(
                "oracle modules live over a prime field".into(),
            ));
        }
        let (u, t) = match (gens.get(&Generator::U), gens.get(&Generator::T)) {
            (Some(u), Some(t)) => (u, t),
            _ => {
                return Err(Error::InvalidModule(
                    "generators u and t are required".into(),
                ))
            }
        };
        let dim = u.rows();
        for (g, m) in &gens {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::InvalidModule(format!(
                    "ρ({g:?}) has shape {}×{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let p = field.p() as u64;
        if !u.pow(p)?.is_identity() {
            return Err(Error::InvalidModule("ρ(u)^p ≠ I".into()));
        }
        if !t.pow(p - 1)?.is_identity() {
            return Err(Error::InvalidModule("ρ(t)^{p-1} ≠ I".into()));
        }
        let t_inv = t
            .inverse()
            .map_err(|_| Error::InvalidModule("ρ(t) is singular".into()))?;
        let zeta2 = (field.zeta_int() as u64).pow(2) % p;
        if t.mul(u)?.mul(&t_inv)? != u.pow(zeta2)? {
            return Err(Error::InvalidModule("ρ(t)ρ(u)ρ(t)⁻¹ ≠ ρ(u)^{ζ²}".into()));
        }
        if let Some(w) = gens.get(&Generator::W) {
            let w_inv = w
                .inverse()
                .map_err(|_| Error::InvalidModule("ρ(w) is singular".into()))?;
            if !w.pow(4)?.is_identity() {
                return Err(Error::InvalidModule("ρ(w)^4 ≠ I".into()));
            }
            if w.mul(t)?.mul(&w_inv)? != t_inv {
                return Err(Error::InvalidModule("ρ(w)ρ(t)ρ(w)⁻¹ ≠ ρ(t)⁻¹".into()));
            }
        }
        Ok(ModuleRep { field, dim, gens })
    }

    /// Skips validation; for matrices produced by construction.
    pub(crate) fn from_parts(
        field: Arc<FieldCtx>,
        dim: usize,
        gens: BTreeMap<Generator, FqMatrix>,
    ) -> Self {
        ModuleRep { field, dim, gens }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gen(&self, g: Generator) -> Option<&FqMatrix> {
        self.gens.get(&g)
    }

    pub fn generators(&self) -> impl Iterator<Item = (Generator, &FqMatrix)> {
        self.gens.iter().map(|(&g, m)| (g, m))
    }

    pub fn generator_set(&self) -> Vec<Generator> {
        self.gens.keys().copied().collect()
    }

    pub fn is_g_module(&self) -> bool {
        self.gens.contains_key(&Generator::W)
    }

    pub(crate) fn u(&self) -> &FqMatrix {
        &self.gens[&Generator::U]
    }

    pub(crate) fn t(&self) -> &FqMatrix {
        &self.gens[&Generator::T]
    }

    /// `ρ(σ)` for an arbitrary group element, written as a word in u, t, w.
    pub fn rho(&self, sigma: &GroupElement) -> Result<FqMatrix> {
        let f = &self.field;
        let word = |alpha: FqElem, beta: FqElem| -> Result<FqMatrix> {
            // diag(α, α⁻¹)·[[1, β/α],[0,1]] = t^k u^l
            let k = f
                .log_zeta(alpha)
                .ok_or_else(|| invalid("zero diagonal entry"))?;
            let l = f.as_prime(f.div(beta, alpha)?).expect("prime field");
            self.t().pow(k as u64)?.mul(&self.u().pow(l as u64)?)
        };
        if sigma.is_upper_triangular() {
            return word(sigma.alpha, sigma.beta);
        }
        let w = self
            .gen(Generator::W)
            .ok_or_else(|| invalid("element outside B for a B-module"))?;
        // σ = b · w · u^k with b upper triangular
        let k = f
            .as_prime(f.div(sigma.delta, sigma.gamma)?)
            .expect("prime field");
        let wu = Generator::W
            .element(f)
            .mul(f, &GroupElement::from_ints(f, 1, k as i64, 0, 1)?);
        let b = sigma.mul(f, &wu.inverse(f));
        word(b.alpha, b.beta)?.mul(w)?.mul(&self.u().pow(k as u64)?)
    }

    pub fn restrict_to_b(&self) -> ModuleRep {
        let gens = self
            .gens
            .iter()
            .filter(|(g, _)| **g != Generator::W)
            .map(|(&g, m)| (g, m.clone()))
            .collect();
        ModuleRep::from_parts(self.field.clone(), self.dim, gens)
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep> {
        if self.generator_set() != other.generator_set() || self.p() != other.p() {
            return Err(invalid("direct sum of modules for different groups"));
        }
        let gens = self
            .gens
            .iter()
            .map(|(&g, m)| (g, m.block_diag(&other.gens[&g])))
            .collect();
        Ok(ModuleRep::from_parts(
            self.field.clone(),
            self.dim + other.dim,
            gens,
        ))
    }
}

fn g_gens(
    field: &Arc<FieldCtx>,
    f: impl Fn(&GroupElement) -> Result<FqMatrix>,
) -> Result<BTreeMap<Generator, FqMatrix>> {
    [Generator::U, Generator::T, Generator::W]
        .into_iter()
        .map(|g| Ok((g, f(&g.element(field))?)))
        .collect()
}

/// Holomorphic m-polydifferentials on the q = p Drinfeld curve.
pub fn h0_module(p: u32, m: u32) -> Result<ModuleRep> {
    let field = prime_field(p)?;
    let basis = enumerate_basis(p, m)?;
    let gens = g_gens(&field, |g| action_matrix(&field, g, &basis))?;
    ModuleRep::new(field, gens)
}

/// `V_t`: homogeneous polynomials of degree t-1 with basis `x^{t-1-k} y^k`.
pub fn simple_module(t: u32, p: u32) -> Result<ModuleRep> {
    let field = prime_field(p)?;
    if t < 1 || t > p {
        return Err(invalid(format!("t = {t} outside [1, {p}]")));
    }
    let d = t as usize - 1;
    let pascal = pascal_for(&field, d);
    let gens = g_gens(&field, |g| {
        let rows: Vec<Vec<FqElem>> = (0..=d)
            .map(|k| substitute_monomial(&field, g, d - k, k, &pascal))
            .collect();
        FqMatrix::from_row_vecs(&field, d + 1, &rows)
    })?;
    ModuleRep::new(field, gens)
}

/// Uniserial B-module `U_{a,b}` on `e_k = (u-1)^k` in `F[U]/rad^b`.
///
/// `e_k ρ(u) = e_k + e_{k+1}`; ρ(t) is the automorphism `u ↦ u^{ζ⁻²}` scaled
/// by `ζ^{a+2(b-1)}`, so `e_k` has leading eigenvalue `ζ^{a+2(b-1-k)}` and the
/// socle `e_{b-1}` carries `ζ^a`.
pub fn uab_module(a: u32, b: u32, p: u32) -> Result<ModuleRep> {
    let field = prime_field(p)?;
    if a > p - 2 || b < 1 || b > p {
        return Err(invalid(format!("U_{{{a},{b}}} outside range for p = {p}")));
    }
    let f = &*field;
    let n = b as usize;
    let mut u = FqMatrix::identity(&field, n);
    for k in 0..n - 1 {
        u.set(k, k + 1, f.one());
    }
    // (1+x)^λ - 1 truncated mod x^b, λ = ζ^{-2}
    let lambda = f.as_prime(f.zeta_pow(-2)).expect("prime field") as i64;
    let pascal = pascal_for(f, lambda as usize);
    let mut image = vec![f.zero(); n];
    for (i, slot) in image.iter_mut().enumerate().skip(1) {
        if i <= lambda as usize {
            *slot = f.from_int(pascal[lambda as usize][i] as i64);
        }
    }
    let times = |x: &[FqElem], y: &[FqElem]| -> Vec<FqElem> {
        let mut out = vec![f.zero(); n];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate().take(n - i) {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        out
    };
    let scale = f.zeta_pow(a as i64 + 2 * (b as i64 - 1));
    let mut power = vec![f.zero(); n];
    power[0] = f.one();
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        rows.push(power.iter().map(|&c| f.mul(scale, c)).collect::<Vec<_>>());
        power = times(&power, &image);
    }
    let t = FqMatrix::from_row_vecs(&field, n, &rows)?;
    let gens = BTreeMap::from([(Generator::U, u), (Generator::T, t)]);
    ModuleRep::new(field, gens)
}
