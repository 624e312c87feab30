use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::ff::odd_prime_power;

/// Exponents of the polydifferential `x^i y^j / x^{mq} dx^{⊗m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolyDiffIndex {
    pub i: u32,
    pub j: u32,
}

impl PolyDiffIndex {
    pub fn new(i: u32, j: u32) -> Self {
        PolyDiffIndex { i, j }
    }
}

/// Genus q(q-1)/2 of the Drinfeld curve `XY^q - X^qY - Z^{q+1} = 0`.
pub fn genus(q: u32) -> Result<u64> {
    odd_prime_power(q)?;
    Ok(q as u64 * (q as u64 - 1) / 2)
}

/// Dimension of the space of holomorphic m-polydifferentials.
pub fn dim_h0(q: u32, m: u32) -> Result<u64> {
    if m < 1 {
        return Err(invalid("m must be at least 1"));
    }
    let g = genus(q)?;
    Ok(if m == 1 {
        g
    } else {
        (2 * m as u64 - 1) * (g - 1)
    })
}

/// `(i + j) mod (q + 1)`.
pub fn degree(idx: PolyDiffIndex, q: u32) -> u32 {
    ((idx.i as u64 + idx.j as u64) % (q as u64 + 1)) as u32
}

/// Holomorphy bound `m(q-2)` on `i + j`.
pub fn holomorphy_bound(q: u32, m: u32) -> u32 {
    m * (q - 2)
}

/// The ordered basis of holomorphic m-polydifferentials.
///
/// Order: ascending degree, then ascending j, then ascending i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSet {
    q: u32,
    m: u32,
    indices: Vec<PolyDiffIndex>,
    position: HashMap<(u32, u32), usize>,
}

impl BasisSet {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        odd_prime_power(self.q)
            .expect("validated at construction")
            .0
    }

    pub fn indices(&self) -> &[PolyDiffIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, i: u32, j: u32) -> Option<usize> {
        self.position.get(&(i, j)).copied()
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        self.position.contains_key(&(i, j))
    }

    pub fn is_holomorphic(&self, i: u32, j: u32) -> bool {
        i as u64 + j as u64 <= holomorphy_bound(self.q, self.m) as u64
    }
}

/// Membership in the basis set, from the defining inequalities.
pub fn in_basis(q: u32, m: u32, i: u32, j: u32) -> bool {
    let bound = holomorphy_bound(q, m);
    if i + j > bound {
        return false;
    }
    if m == 1 {
        // i, j <= q-2 follow from i + j <= q-2
        return true;
    }
    j < q || (i == 0 && j >= q)
}

pub fn enumerate_basis(q: u32, m: u32) -> Result<BasisSet> {
    if m < 1 {
        return Err(invalid("m must be at least 1"));
    }
    odd_prime_power(q)?;
    let bound = holomorphy_bound(q, m);
    let mut indices = Vec::new();
    for j in 0..=bound {
        for i in 0..=bound - j {
            if in_basis(q, m, i, j) {
                indices.push(PolyDiffIndex::new(i, j));
            }
        }
    }
    indices.sort_by_key(|idx| (degree(*idx, q), idx.j, idx.i));
    let position = indices
        .iter()
        .enumerate()
        .map(|(k, idx)| ((idx.i, idx.j), k))
        .collect();
    let basis = BasisSet {
        q,
        m,
        indices,
        position,
    };
    let expected = dim_h0(q, m)?;
    if basis.len() as u64 != expected {
        return Err(Error::Inconsistency(format!(
            "basis has {} elements, expected {expected}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// Basis split by degree; block k holds the degree-k elements in basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub blocks: Vec<Vec<PolyDiffIndex>>,
}

impl GradedBasis {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

pub fn graded_basis(basis: &BasisSet) -> GradedBasis {
    let mut blocks = vec![Vec::new(); basis.q as usize + 1];
    for &idx in &basis.indices {
        blocks[degree(idx, basis.q) as usize].push(idx);
    }
    GradedBasis { blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ij(v: &[(u32, u32)]) -> Vec<PolyDiffIndex> {
        v.iter().map(|&(i, j)| PolyDiffIndex::new(i, j)).collect()
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(3).unwrap(), 3);
        assert_eq!(genus(5).unwrap(), 10);
        assert_eq!(genus(9).unwrap(), 36);
        assert!(genus(4).is_err());
        assert!(genus(6).is_err());
    }

    #[test]
    fn dim_values() {
        assert_eq!(dim_h0(3, 2).unwrap(), 6);
        assert_eq!(dim_h0(5, 2).unwrap(), 27);
        assert_eq!(dim_h0(3, 1).unwrap(), 3);
        assert!(matches!(dim_h0(3, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn small_bases() {
        let b = enumerate_basis(3, 2).unwrap();
        assert_eq!(
            b.indices(),
            ij(&[(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]).as_slice()
        );
        let b = enumerate_basis(3, 1).unwrap();
        assert_eq!(b.indices(), ij(&[(0, 0), (1, 0), (0, 1)]).as_slice());
        let b = enumerate_basis(5, 2).unwrap();
        assert!(b.contains(0, 6));
        assert!(!b.contains(1, 5));
        assert_eq!(b.len(), 27);
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(PolyDiffIndex::new(0, 0), 3), 0);
        assert_eq!(degree(PolyDiffIndex::new(2, 0), 3), 2);
        assert_eq!(degree(PolyDiffIndex::new(0, 6), 5), 0);
    }

    #[test]
    fn grading_sizes() {
        assert_eq!(
            graded_basis(&enumerate_basis(3, 2).unwrap()).sizes(),
            vec![1, 2, 3, 0]
        );
        assert_eq!(
            graded_basis(&enumerate_basis(3, 1).unwrap()).sizes(),
            vec![1, 2, 0, 0]
        );
    }

    #[test]
    fn counts_match_dimension_formula() {
        for q in [3, 5, 7, 9, 25] {
            for m in 1..=6 {
                let b = enumerate_basis(q, m).unwrap();
                assert_eq!(b.len() as u64, dim_h0(q, m).unwrap(), "q={q} m={m}");
                let g = graded_basis(&b);
                let flat: Vec<_> = g.blocks.concat();
                assert_eq!(flat, b.indices());
            }
        }
    }
}
