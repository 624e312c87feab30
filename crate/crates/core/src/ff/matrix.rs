use std::fmt;
use std::sync::Arc;

use super::field::{FieldCtx, FqElem};
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(p^r).
///
/// Vectors are rows; a matrix acts on the right.
#[derive(Clone)]
pub struct FqMatrix {
    field: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    entries: Vec<FqElem>,
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
            && *self.field == *other.field
    }
}

impl Eq for FqMatrix {}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FqMatrix {}x{} over GF({}^{})",
            self.rows,
            self.cols,
            self.field.p(),
            self.field.r()
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zeros(field: &Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![FqElem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = FqElem::ONE;
        }
        m
    }

    pub fn from_entries(
        field: &Arc<FieldCtx>,
        rows: usize,
        cols: usize,
        entries: Vec<FqElem>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(FqMatrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from integer rows, reduced into the prime subfield.
    pub fn from_int_rows(field: &Arc<FieldCtx>, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| field.from_int(v)).collect();
        Self::from_entries(field, rows.len(), cols, entries)
    }

    /// Stacks row vectors; `cols` is needed for the empty case.
    pub fn from_row_vecs(field: &Arc<FieldCtx>, cols: usize, rows: &[Vec<FqElem>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("row length mismatch".into()));
        }
        let entries = rows.iter().flatten().copied().collect();
        Self::from_entries(field, rows.len(), cols, entries)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[FqElem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FqElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FqElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols)
                    .all(|j| self.get(i, j) == if i == j { FqElem::ONE } else { FqElem::ZERO })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        if f.r() == 1 {
            let p = f.p() as u64;
            let mut acc = vec![0u64; rhs.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|a| *a = 0);
                for k in 0..self.cols {
                    let a = self.get(i, k).0 as u64;
                    if a == 0 {
                        continue;
                    }
                    for (slot, b) in acc.iter_mut().zip(rhs.row(k)) {
                        *slot += a * b.0 as u64;
                    }
                    // keep headroom: p < 2^16, so p^2 * 2^16 fits comfortably
                    if k % 4096 == 4095 {
                        acc.iter_mut().for_each(|s| *s %= p);
                    }
                }
                for (j, &s) in acc.iter().enumerate() {
                    out.entries[i * rhs.cols + j] = FqElem((s % p) as u32);
                }
            }
        } else {
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..rhs.cols {
                        let cur = out.entries[i * rhs.cols + j];
                        out.entries[i * rhs.cols + j] = f.add(cur, f.mul(a, rhs.get(k, j)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &FqMatrix) -> Result<FqMatrix> {
        self.zip_with(rhs, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, rhs: &FqMatrix) -> Result<FqMatrix> {
        self.zip_with(rhs, |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        rhs: &FqMatrix,
        op: impl Fn(&FieldCtx, FqElem, FqElem) -> FqElem,
    ) -> Result<FqMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| op(&self.field, a, b))
            .collect();
        Ok(FqMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: FqElem) -> FqMatrix {
        let entries = self.entries.iter().map(|&a| self.field.mul(c, a)).collect();
        FqMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// `self - c * I`.
    pub fn sub_scalar(&self, c: FqElem) -> Result<FqMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("sub_scalar needs a square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i);
            out.set(i, i, self.field.sub(v, c));
        }
        Ok(out)
    }

    pub fn pow(&self, mut k: u64) -> Result<FqMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, rows: &[usize]) -> FqMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        FqMatrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> FqMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            entries.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        FqMatrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(FqMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &FqMatrix) -> FqMatrix {
        let mut out = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FqMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = if self.field.r() == 1 {
            rref_prime(&mut m.entries, m.rows, m.cols, self.field.p())
        } else {
            rref_generic(&mut m)
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the right null space `{k : self * k = 0}`.
    pub fn kernel_basis(&self) -> FqMatrix {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, FqElem::ONE);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(row, fc)));
            }
        }
        out
    }

    /// Rows spanning the left null space `{v : v * self = 0}`.
    pub fn left_kernel_basis(&self) -> FqMatrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> FqMatrix {
        let (r, pivots) = self.rref();
        r.submatrix(0..pivots.len(), 0..self.cols)
    }

    pub fn inverse(&self) -> Result<FqMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FqElem::ONE);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// Solves `x * self = b` for a row vector `x`, if solvable.
    pub fn solve_left(&self, b: &[FqElem]) -> Option<Vec<FqElem>> {
        let t = self.transpose();
        let mut aug = Self::zeros(&self.field, t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug.set(i, j, t.get(i, j));
            }
            aug.set(i, t.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&t.cols) {
            return None;
        }
        let mut x = vec![FqElem::ZERO; t.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, t.cols);
        }
        Some(x)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[FqElem]) -> Vec<FqElem> {
        let f = &self.field;
        let mut out = vec![FqElem::ZERO; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(a, self.get(k, j)));
            }
        }
        out
    }
}

/// rank(m^k); rank(m^0) is the dimension.
pub fn rank_of_power(m: &FqMatrix, k: u64) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Shape("rank_of_power needs a square matrix".into()));
    }
    Ok(m.pow(k)?.rank())
}

pub fn rref(m: &FqMatrix) -> (FqMatrix, Vec<usize>) {
    m.rref()
}

pub fn kernel_basis(m: &FqMatrix) -> FqMatrix {
    m.kernel_basis()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

fn rref_prime(data: &mut [FqElem], rows: usize, cols: usize, p: u32) -> Vec<usize> {
    // Work on raw residues; p < 2^16 keeps every product inside u32.
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&r| data[r * cols + col].0 != 0) else {
            continue;
        };
        if sel != prow {
            for c in col..cols {
                data.swap(sel * cols + c, prow * cols + c);
            }
        }
        let inv = inv_mod(data[prow * cols + col].0, p);
        for c in col..cols {
            let v = &mut data[prow * cols + c];
            v.0 = (v.0 as u64 * inv as u64 % p as u64) as u32;
        }
        let (before, rest) = data.split_at_mut(prow * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let pivot_row = &pivot_row[col..];
        let eliminate = |row: &mut [FqElem]| {
            let f = row[col].0;
            if f == 0 {
                return;
            }
            let nf = p - f;
            for (x, &y) in row[col..].iter_mut().zip(pivot_row) {
                x.0 = (x.0 + nf * y.0) % p;
            }
        };
        before.chunks_mut(cols).for_each(eliminate);
        after.chunks_mut(cols).for_each(eliminate);
        pivots.push(col);
        prow += 1;
    }
    pivots
}

fn rref_generic(m: &mut FqMatrix) -> Vec<usize> {
    let f = m.field.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if sel != prow {
            for c in 0..cols {
                m.entries.swap(sel * cols + c, prow * cols + c);
            }
        }
        let inv = f.inv(m.get(prow, col)).expect("pivot is nonzero");
        for c in col..cols {
            let v = m.get(prow, c);
            m.set(prow, c, f.mul(v, inv));
        }
        for r in 0..rows {
            if r == prow {
                continue;
            }
            let factor = m.get(r, col);
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                let v = f.sub(m.get(r, c), f.mul(factor, m.get(prow, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        prow += 1;
    }
    pivots
}
