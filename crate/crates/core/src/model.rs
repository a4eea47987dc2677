//! Model matrices over `{0, …, z−1} ∪ {∞}`.
//!
//! Each cell is either a circulant right-shift amount or `∞` for a zero
//! block. Expansion replaces a shift `s` with the `z×z` permutation whose row
//! `r` has its one at column `(r + s) mod z`.

use std::fmt;

use thiserror::Error;

use crate::gf2::BinaryMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("shift {value} out of range for circulant size {z}")]
    ShiftOutOfRange { value: u32, z: u32 },
    #[error("circulant size must be at least 1")]
    ZeroCirculant,
    #[error("model matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyShape { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("row length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{divisor} does not divide circulant size {z}")]
    NotADivisor { divisor: u32, z: u32 },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// One cell of a model matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShiftEntry {
    Finite(u32),
    Infinity,
}

impl ShiftEntry {
    pub fn is_finite(self) -> bool {
        matches!(self, ShiftEntry::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ShiftEntry::Finite(s) => Some(s),
            ShiftEntry::Infinity => None,
        }
    }

    fn check(self, z: u32) -> Result<Self, ModelError> {
        match self {
            ShiftEntry::Finite(s) if s >= z => Err(ModelError::ShiftOutOfRange { value: s, z }),
            e => Ok(e),
        }
    }
}

impl fmt::Display for ShiftEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftEntry::Finite(s) => write!(f, "{s}"),
            ShiftEntry::Infinity => f.write_str("-1"),
        }
    }
}

/// `a − b` in `[z]∞`: modular difference, absorbing on `∞`.
pub fn entry_sub(a: ShiftEntry, b: ShiftEntry, z: u32) -> Result<ShiftEntry, ModelError> {
    if z == 0 {
        return Err(ModelError::ZeroCirculant);
    }
    match (a.check(z)?, b.check(z)?) {
        (ShiftEntry::Finite(x), ShiftEntry::Finite(y)) => Ok(ShiftEntry::Finite((x + z - y) % z)),
        _ => Ok(ShiftEntry::Infinity),
    }
}

/// Componentwise `v − u`.
pub fn row_sub(v: &[ShiftEntry], u: &[ShiftEntry], z: u32) -> Result<Vec<ShiftEntry>, ModelError> {
    if v.len() != u.len() {
        return Err(ModelError::LengthMismatch {
            left: v.len(),
            right: u.len(),
        });
    }
    v.iter().zip(u).map(|(&a, &b)| entry_sub(a, b, z)).collect()
}

/// `J×L` grid of shift entries with circulant size `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelMatrix {
    z: u32,
    rows: usize,
    cols: usize,
    entries: Vec<ShiftEntry>,
}

impl ModelMatrix {
    pub fn new(z: u32, rows: usize, cols: usize, entries: Vec<ShiftEntry>) -> Result<Self, ModelError> {
        if z == 0 {
            return Err(ModelError::ZeroCirculant);
        }
        if rows == 0 || cols == 0 {
            return Err(ModelError::EmptyShape { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(ModelError::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        for e in &entries {
            e.check(z)?;
        }
        Ok(Self {
            z,
            rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from signed shifts, `-1` meaning `∞`.
    pub fn from_shifts(z: u32, grid: &[&[i64]]) -> Result<Self, ModelError> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows * cols);
        for (i, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(ModelError::Parse {
                    line: i + 1,
                    column: 1,
                    message: format!("row has {} entries, expected {cols}", row.len()),
                });
            }
            entries.extend(row.iter().map(|&s| {
                if s < 0 {
                    ShiftEntry::Infinity
                } else {
                    ShiftEntry::Finite(s as u32)
                }
            }));
        }
        Self::new(z, rows, cols, entries)
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> ShiftEntry {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[ShiftEntry] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Full `(J·z)×(L·z)` parity-check matrix.
    pub fn expand(&self) -> BinaryMatrix {
        let z = self.z as usize;
        let mut h = BinaryMatrix::zeros(self.rows * z, self.cols * z).expect("non-empty shape");
        for i in 0..self.rows {
            for j in 0..self.cols {
                if let ShiftEntry::Finite(s) = self.get(i, j) {
                    let s = s as usize;
                    for r in 0..z {
                        h.set(i * z + r, j * z + (r + s) % z, true);
                    }
                }
            }
        }
        h
    }

    /// Binary base matrix: one where the entry is finite.
    pub fn project_base(&self) -> BinaryMatrix {
        let mut b = BinaryMatrix::zeros(self.rows, self.cols).expect("non-empty shape");
        for i in 0..self.rows {
            for j in 0..self.cols {
                b.set(i, j, self.get(i, j).is_finite());
            }
        }
        b
    }

    /// Same shifts read modulo a divisor `y` of `z`.
    pub fn reduce_to_divisor(&self, y: u32) -> Result<ModelMatrix, ModelError> {
        if y == 0 || !self.z.is_multiple_of(y) {
            return Err(ModelError::NotADivisor { divisor: y, z: self.z });
        }
        let entries = self
            .entries
            .iter()
            .map(|e| match *e {
                ShiftEntry::Finite(s) => ShiftEntry::Finite(s % y),
                ShiftEntry::Infinity => ShiftEntry::Infinity,
            })
            .collect();
        ModelMatrix::new(y, self.rows, self.cols, entries)
    }
}

/// Parses the `mmat` format: `#` comments, header `<z> <J> <L>`, then `J`
/// lines of `L` entries (`-1` or `inf` for ∞).
pub fn parse_model(text: &str) -> Result<ModelMatrix, ModelError> {
    let perr = |line, column, message: String| ModelError::Parse {
        line,
        column,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(1, 1, "missing header line \"<z> <J> <L>\"".into()))?;
    let dims: Vec<(usize, &str)> = tokens(header).collect();
    if dims.len() != 3 {
        return Err(perr(hline, 1, "header must be \"<z> <J> <L>\"".into()));
    }
    let mut nums = [0usize; 3];
    for (slot, &(col, tok)) in nums.iter_mut().zip(&dims) {
        *slot = tok
            .parse()
            .map_err(|_| perr(hline, col, format!("invalid header value {tok:?}")))?;
    }
    let [z, rows, cols] = nums;
    let z = u32::try_from(z).map_err(|_| perr(hline, dims[0].0, "circulant size too large".into()))?;
    if z == 0 {
        return Err(perr(hline, dims[0].0, "circulant size must be at least 1".into()));
    }
    if rows == 0 || cols == 0 {
        return Err(perr(hline, 1, format!("empty shape {rows}x{cols}")));
    }

    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (lno, line) in lines {
        if seen_rows == rows {
            return Err(perr(lno, 1, format!("more than {rows} rows")));
        }
        let toks: Vec<(usize, &str)> = tokens(line).collect();
        if toks.len() != cols {
            return Err(perr(lno, 1, format!("row has {} entries, expected {cols}", toks.len())));
        }
        for (col, tok) in toks {
            let entry = if tok == "-1" || tok.eq_ignore_ascii_case("inf") {
                ShiftEntry::Infinity
            } else {
                let s: u32 = tok
                    .parse()
                    .map_err(|_| perr(lno, col, format!("invalid entry {tok:?}")))?;
                if s >= z {
                    return Err(perr(lno, col, format!("entry {s} >= z={z}")));
                }
                ShiftEntry::Finite(s)
            };
            entries.push(entry);
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(perr(
            text.lines().count().max(1),
            1,
            format!("expected {rows} rows, found {seen_rows}"),
        ));
    }
    ModelMatrix::new(z, rows, cols, entries)
}

/// Whitespace-separated tokens with their 1-based character column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let tok = &tail[..len];
        let col = line[..offset + start].chars().count() + 1;
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

pub fn write_model(m: &ModelMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.z, m.rows, m.cols);
    for r in 0..m.rows {
        let line: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
