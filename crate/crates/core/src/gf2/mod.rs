//! Dense linear algebra over GF(2).
//!
//! Rows are bit-packed into `u64` words so that row operations are word-wide
//! XORs. All operations are pure: they take shared references and return new
//! values.

mod bitvec;
mod bmat;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use bitvec::BitVec;
pub use bmat::{parse_bmat, write_bmat};

use bitvec::{dot_words, words_for, xor_words};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("{op}: dimension mismatch between {left_rows}x{left_cols} and {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyShape { rows: usize, cols: usize },
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Dense binary matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, Gf2Error> {
        if rows == 0 || cols == 0 {
            return Err(Gf2Error::EmptyShape { rows, cols });
        }
        let stride = words_for(cols);
        Ok(Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        })
    }

    pub fn identity(n: usize) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[BitVec]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::RaggedRow {
                    row: i,
                    found: r.len(),
                    expected: cols,
                });
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix from '0'/'1' strings, one per row.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self, Gf2Error> {
        let parsed = rows
            .iter()
            .map(|s| s.as_ref().parse::<BitVec>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(&parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        let w = &mut self.data[r * self.stride + c / 64];
        let mask = 1u64 << (c % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r))
    }

    pub fn row_vectors(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_ones(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let stride = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * stride);
            (&lo[src * stride..(src + 1) * stride], &mut hi[..stride])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * stride);
            (&hi[..stride], &mut lo[dst * stride..(dst + 1) * stride])
        };
        xor_words(b, a);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BinaryMatrix) -> Result<BinaryMatrix, Gf2Error> {
        if self.cols != rhs.rows {
            return Err(self.mismatch("mul", rhs));
        }
        let mut out = BinaryMatrix::zeros(self.rows, rhs.cols)?;
        for i in 0..self.rows {
            for k in self.row(i).iter_ones() {
                let src = rhs.row_words(k);
                xor_words(out.row_words_mut(i), src);
            }
        }
        Ok(out)
    }

    /// `self · vᵀ` as a column, returned as a vector of length `rows`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "mul_vec",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok(BitVec::from_ones(
            self.rows,
            (0..self.rows).filter(|&r| dot_words(self.row_words(r), v.words())),
        ))
    }

    /// True when `v` lies in the kernel, i.e. `self · vᵀ = 0`.
    pub fn annihilates(&self, v: &BitVec) -> bool {
        v.len() == self.cols && (0..self.rows).all(|r| !dot_words(self.row_words(r), v.words()))
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.cols, self.rows).expect("non-empty shape");
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                out.set(c, r, true);
            }
        }
        out
    }

    /// Reduced row-echelon form. Pivots are chosen column by column from the
    /// left, taking the topmost available row with a one in that column.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(p, next);
            for r in 0..m.rows {
                if r != next && m.get(r, c) {
                    m.xor_row_into(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{x : self · xᵀ = 0}`, one vector per free column in
    /// increasing column order.
    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        self.rref().nullspace_basis()
    }

    /// Columns `i` such that every kernel vector has `xᵢ = 0` (0-based).
    pub fn forced_zero_columns(&self) -> BTreeSet<usize> {
        self.rref().unit_rows()
    }

    pub fn row_weight_distribution(&self) -> WeightDistribution {
        WeightDistribution::from_weights((0..self.rows).map(|r| {
            self.row_words(r)
                .iter()
                .map(|w| w.count_ones() as usize)
                .sum()
        }))
    }

    pub fn column_weight_distribution(&self) -> WeightDistribution {
        WeightDistribution::from_weights(self.column_weights())
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut weights = vec![0; self.cols];
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                weights[c] += 1;
            }
        }
        weights
    }

    fn mismatch(&self, op: &'static str, rhs: &BinaryMatrix) -> Gf2Error {
        Gf2Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: BinaryMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        let cols = self.matrix.cols();
        let pivot_set: BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = BitVec::unit(cols, free);
                for (r, &p) in self.pivots.iter().enumerate() {
                    if self.matrix.get(r, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Pivot columns whose reduced row is a unit vector. In reduced form,
    /// `eᵢ` lies in the row space exactly when row with pivot `i` equals `eᵢ`.
    fn unit_rows(&self) -> BTreeSet<usize> {
        self.pivots
            .iter()
            .enumerate()
            .filter(|&(r, _)| {
                self.matrix
                    .row_words(r)
                    .iter()
                    .map(|w| w.count_ones())
                    .sum::<u32>()
                    == 1
            })
            .map(|(_, &p)| p)
            .collect()
    }

    /// Reduces `v` against the echelon rows; true if it reduces to zero.
    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.matrix.cols());
        let mut rest = v.clone();
        for (r, &p) in self.pivots.iter().enumerate() {
            if rest.get(p) {
                rest.xor_assign(&self.matrix.row(r));
            }
        }
        rest.is_zero()
    }
}

/// Histogram of Hamming weights over the rows or columns of a matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WeightDistribution(BTreeMap<usize, usize>);

impl WeightDistribution {
    pub fn from_weights<I: IntoIterator<Item = usize>>(weights: I) -> Self {
        let mut map = BTreeMap::new();
        for w in weights {
            *map.entry(w).or_insert(0) += 1;
        }
        Self(map)
    }

    pub fn count(&self, weight: usize) -> usize {
        self.0.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn weights(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&w, &c)| (w, c))
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.0.keys().next().copied()
    }

    /// Same histogram with every count multiplied by `factor`.
    pub fn scaled(&self, factor: usize) -> Self {
        Self(self.0.iter().map(|(&w, &c)| (w, c * factor)).collect())
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
