use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Label of the uniserial F[B]-module `U_{a,b}`: socle `S_a`, dimension `b`.
///
/// Ordered by dimension first, then socle parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BLabel {
    pub a: u32,
    pub b: u32,
}

impl BLabel {
    pub fn new(a: u32, b: u32) -> Self {
        BLabel { a, b }
    }

    pub fn is_projective(&self, p: u32) -> bool {
        self.b == p
    }

    /// Index of the top composition factor `S_{a + 2(b-1)}` mod p-1.
    pub fn top_factor(&self, p: u32) -> u32 {
        (self.a + 2 * (self.b - 1)) % (p - 1)
    }
}

impl Ord for BLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.b, self.a).cmp(&(other.b, other.a))
    }
}

impl PartialOrd for BLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multiset of `U_{a,b}` summands. Only nonzero multiplicities are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BDecomposition {
    pub p: u32,
    /// `None` when the decomposition comes from an arbitrary module.
    pub m: Option<u32>,
    pub mult: BTreeMap<BLabel, u32>,
}

impl BDecomposition {
    pub fn new(p: u32, m: Option<u32>) -> Self {
        BDecomposition {
            p,
            m,
            mult: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, label: BLabel, n: u32) {
        if n > 0 {
            *self.mult.entry(label).or_insert(0) += n;
        }
    }

    pub fn get(&self, a: u32, b: u32) -> u32 {
        self.mult.get(&BLabel::new(a, b)).copied().unwrap_or(0)
    }

    /// `n_b`: number of summands of dimension b.
    pub fn count_of_dim(&self, b: u32) -> u32 {
        self.mult
            .iter()
            .filter(|(l, _)| l.b == b)
            .map(|(_, &n)| n)
            .sum()
    }

    /// `Σ n_{a,b} · b`.
    pub fn total_dim(&self) -> u64 {
        self.mult.iter().map(|(l, &n)| l.b as u64 * n as u64).sum()
    }

    pub fn summands(&self) -> impl Iterator<Item = (BLabel, u32)> + '_ {
        self.mult.iter().map(|(&l, &n)| (l, n))
    }

    /// Same summands, ignoring the `m` tag.
    pub fn same_summands(&self, other: &BDecomposition) -> bool {
        self.p == other.p && self.mult == other.mult
    }

    /// First label whose multiplicities differ, with (self, other) values.
    pub fn first_difference(&self, other: &BDecomposition) -> Option<(BLabel, u32, u32)> {
        let mut labels: Vec<BLabel> = self.mult.keys().chain(other.mult.keys()).copied().collect();
        labels.sort();
        labels.dedup();
        labels
            .into_iter()
            .map(|l| (l, self.get(l.a, l.b), other.get(l.a, l.b)))
            .find(|(_, x, y)| x != y)
    }
}

/// Indecomposable F[G]-module labels for G = SL2(F_p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GLabel {
    /// Green correspondent `V_{a,b}` of `U_{a,b}`, b ≤ p-1.
    NonProjective { a: u32, b: u32 },
    /// Projective cover `P_{V_t}` of the simple module `V_t`.
    Projective { t: u32 },
}

/// Composition-factor multiplicities of the simple modules `V_1, ..., V_p`.
///
/// Stored 0-based: entry `t - 1` is the multiplicity of `V_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorVector(pub Vec<u64>);

impl FactorVector {
    pub fn zeros(p: u32) -> Self {
        FactorVector(vec![0; p as usize])
    }

    pub fn unit(p: u32, t: u32) -> Self {
        let mut v = Self::zeros(p);
        v.0[t as usize - 1] = 1;
        v
    }

    pub fn p(&self) -> u32 {
        self.0.len() as u32
    }

    /// Multiplicity of `V_t`, 1-based.
    pub fn get(&self, t: u32) -> u64 {
        self.0[t as usize - 1]
    }

    pub fn add_to(&mut self, t: u32, n: u64) {
        self.0[t as usize - 1] += n;
    }

    /// `Σ mult_t · t`.
    pub fn weighted_dim(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &n)| (k as u64 + 1) * n)
            .sum()
    }

    pub fn add_scaled(&mut self, other: &FactorVector, k: u64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * k;
        }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// Full F[G]-decomposition of the holomorphic polydifferentials for q = p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GDecomposition {
    pub p: u32,
    pub m: u32,
    /// `n_{a,b}` for the Green correspondents `V_{a,b}`, b ≤ p-1.
    pub nonproj: BTreeMap<BLabel, u32>,
    /// `n_t` for the projective covers `P_{V_t}`, index t-1.
    pub proj: Vec<u64>,
    /// `d_t`: composition factors of the whole module.
    pub factors: FactorVector,
}

impl GDecomposition {
    pub fn summands(&self) -> Vec<(GLabel, u64)> {
        let mut out: Vec<(GLabel, u64)> = self
            .nonproj
            .iter()
            .map(|(l, &n)| (GLabel::NonProjective { a: l.a, b: l.b }, n as u64))
            .collect();
        out.extend(
            self.proj
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(k, &n)| (GLabel::Projective { t: k as u32 + 1 }, n)),
        );
        out
    }
}

/// Ramification data of the q = p Drinfeld curve at `P = [1:0:0]` and of
/// `C/U ≅ P^1` under T.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RamificationProfile {
    pub p: u32,
    /// The single lower ramification jump `p + 1`.
    pub jump: u32,
    /// Fundamental character exponent at `[1:0]` (θ) and at `[0:1]` (θ^{-1}).
    pub theta_exponent_one_zero: i32,
    pub theta_exponent_zero_one: i32,
    /// The stabiliser `B` acts on the cotangent line at `P` by `S_{p-2}`.
    pub fundamental_character_at_p: u32,
}

impl RamificationProfile {
    pub fn new(p: u32) -> Self {
        RamificationProfile {
            p,
            jump: p + 1,
            theta_exponent_one_zero: 1,
            theta_exponent_zero_one: -1,
            fundamental_character_at_p: p - 2,
        }
    }

    /// `|G_{P,i}|` in lower numbering, for i ≥ -1.
    pub fn lower_group_order(&self, i: i64) -> u64 {
        let p = self.p as u64;
        match i {
            -1 | 0 => p * (p - 1),
            i if i >= 1 && i <= self.jump as i64 => p,
            i if i > self.jump as i64 => 1,
            _ => panic!("lower ramification groups start at i = -1"),
        }
    }

    /// Wild part `e^w = |G_{P,1}|` and tame part `e^t = |G_P / G_{P,1}|`.
    pub fn wild_and_tame(&self) -> (u64, u64) {
        (
            self.lower_group_order(1),
            self.lower_group_order(0) / self.lower_group_order(1),
        )
    }

    /// Tame ramification index of `[1:0]` and `[0:1]` in `C/U → C/B`.
    pub fn tame_index(&self) -> u32 {
        self.p - 1
    }
}
