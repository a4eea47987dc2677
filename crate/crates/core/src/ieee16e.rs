//! IEEE 802.16e base matrices and the structural class they belong to.
//!
//! A base matrix of this type splits as `[H_b1 | h_b | H'_b2]` where `h_b` is
//! a weight-3 column with ones at the top row, the bottom row and one middle
//! row, and `H'_b2` is the `J×(J−1)` dual-diagonal (column `j` has ones at rows
//! `j` and `j+1`). Any matrix with this shape is accepted, not only the ones
//! tabulated in the standard.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gf2::{parse_bmat, BinaryMatrix, BitVec};
use crate::model::{ModelMatrix, ShiftEntry};

const RATE_1_2_TEXT: &str = include_str!("../data/rate_1_2.bmat");
const RATE_2_3B_TEXT: &str = include_str!("../data/rate_2_3b.bmat");
const RATE_1_2_SHA256: &str = "ef69097876011f2b95d6a90e55e3822adc32f8550e01c2cade08ea50ef97ca97";
const RATE_2_3B_SHA256: &str = "ad172b1a61b141cc15a7bc758f90936344ec6bddfc63818c14b6336f064f823a";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rate {
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "2/3B")]
    TwoThirdsB,
}

impl Rate {
    pub fn label(self) -> &'static str {
        match self {
            Rate::Half => "1/2",
            Rate::TwoThirdsB => "2/3B",
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Rate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "1/2" | "HALF" => Ok(Rate::Half),
            "2/3B" => Ok(Rate::TwoThirdsB),
            _ => Err(format!("unknown rate {s:?} (expected 1/2 or 2/3B)")),
        }
    }
}

/// The stored `bmat` literal for a built-in base matrix.
pub fn builtin_text(rate: Rate) -> &'static str {
    match rate {
        Rate::Half => RATE_1_2_TEXT,
        Rate::TwoThirdsB => RATE_2_3B_TEXT,
    }
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn builtin_base(rate: Rate) -> BinaryMatrix {
    static HALF: OnceLock<BinaryMatrix> = OnceLock::new();
    static TWO_THIRDS_B: OnceLock<BinaryMatrix> = OnceLock::new();
    let (cell, expected) = match rate {
        Rate::Half => (&HALF, RATE_1_2_SHA256),
        Rate::TwoThirdsB => (&TWO_THIRDS_B, RATE_2_3B_SHA256),
    };
    cell.get_or_init(|| {
        let text = builtin_text(rate);
        assert_eq!(sha256_hex(text), expected, "built-in base matrix {rate} is corrupted");
        parse_bmat(text).expect("built-in base matrix parses")
    })
    .clone()
}

/// Recovered partition of a type-802.16e base matrix. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ieee16eStructure {
    pub parity_rows: usize,
    pub total_cols: usize,
    pub systematic_cols: usize,
    pub hb_col: usize,
    pub hb_middle_row: usize,
}

impl Ieee16eStructure {
    /// First column of the parity section `[h_b | H'_b2]`.
    pub fn parity_start(&self) -> usize {
        self.hb_col
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewRows { rows: usize },
    HbWeight { col: usize, weight: usize },
    HbEndMissing { row: usize, col: usize },
    DualDiagonalMissing { row: usize, col: usize },
    DualDiagonalExtra { row: usize, col: usize },
    UnequalHbShifts { top: u32, bottom: u32 },
    NonzeroDualDiagonalShift { row: usize, col: usize, shift: u32 },
}

/// Coordinates are printed 1-based.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::TooFewRows { rows } => {
                write!(f, "need at least 3 rows for a weight-3 h_b column, got {rows}")
            }
            Violation::HbWeight { col, weight } => {
                write!(f, "h_b column {} has weight {weight}, expected 3", col + 1)
            }
            Violation::HbEndMissing { row, col } => {
                write!(f, "h_b column {} missing one at row {}", col + 1, row + 1)
            }
            Violation::DualDiagonalMissing { row, col } => {
                write!(f, "missing dual diagonal one at ({}, {})", row + 1, col + 1)
            }
            Violation::DualDiagonalExtra { row, col } => {
                write!(f, "unexpected one in dual diagonal region at ({}, {})", row + 1, col + 1)
            }
            Violation::UnequalHbShifts { top, bottom } => {
                write!(f, "unequal top/bottom h_b shifts ({top} vs {bottom})")
            }
            Violation::NonzeroDualDiagonalShift { row, col, shift } => write!(
                f,
                "nonzero dual-diagonal shift {shift} at ({}, {})",
                row + 1,
                col + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Ieee16eError {
    #[error("{rows}x{cols} matrix is too narrow for a {rows}-row parity section")]
    Shape { rows: usize, cols: usize },
    #[error("not of type 802.16e: {}", list(.0))]
    Violations(Vec<Violation>),
}

fn list(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub fn validate_type_16e(h: &BinaryMatrix) -> Result<Ieee16eStructure, Ieee16eError> {
    let (j_rows, l_cols) = (h.rows(), h.cols());
    if l_cols < j_rows {
        return Err(Ieee16eError::Shape {
            rows: j_rows,
            cols: l_cols,
        });
    }
    let hb_col = l_cols - j_rows;
    let mut violations = Vec::new();
    if j_rows < 3 {
        violations.push(Violation::TooFewRows { rows: j_rows });
    }

    let hb = h.column(hb_col);
    let weight = hb.weight();
    if weight != 3 {
        violations.push(Violation::HbWeight { col: hb_col, weight });
    }
    for end in [0, j_rows - 1] {
        if !hb.get(end) {
            violations.push(Violation::HbEndMissing { row: end, col: hb_col });
        }
    }
    let middle = hb.iter_ones().find(|&r| r != 0 && r != j_rows - 1);

    for dj in 0..j_rows.saturating_sub(1) {
        let col = hb_col + 1 + dj;
        for row in 0..j_rows {
            let expected = row == dj || row == dj + 1;
            match (expected, h.get(row, col)) {
                (true, false) => violations.push(Violation::DualDiagonalMissing { row, col }),
                (false, true) => violations.push(Violation::DualDiagonalExtra { row, col }),
                _ => {}
            }
        }
    }

    match (violations.is_empty(), middle) {
        (true, Some(hb_middle_row)) => Ok(Ieee16eStructure {
            parity_rows: j_rows,
            total_cols: l_cols,
            systematic_cols: hb_col,
            hb_col,
            hb_middle_row,
        }),
        _ => Err(Ieee16eError::Violations(violations)),
    }
}

/// Shift-level clauses: zero shifts on the dual diagonal and equal shifts at
/// the two ends of `h_b`. The middle `h_b` shift is unconstrained.
pub fn validate_model_16e(m: &ModelMatrix) -> Result<Ieee16eStructure, Ieee16eError> {
    let s = validate_type_16e(&m.project_base())?;
    let mut violations = Vec::new();
    for row in 0..s.parity_rows {
        for col in s.hb_col + 1..s.total_cols {
            if let ShiftEntry::Finite(shift) = m.get(row, col) {
                if shift != 0 {
                    violations.push(Violation::NonzeroDualDiagonalShift { row, col, shift });
                }
            }
        }
    }
    let top = m.get(0, s.hb_col).finite();
    let bottom = m.get(s.parity_rows - 1, s.hb_col).finite();
    if let (Some(top), Some(bottom)) = (top, bottom) {
        if top != bottom {
            violations.push(Violation::UnequalHbShifts { top, bottom });
        }
    }
    if violations.is_empty() {
        Ok(s)
    } else {
        Err(Ieee16eError::Violations(violations))
    }
}

/// Every restriction of a type-802.16e row to its `J`-wide parity section,
/// over all choices of the middle `h_b` row.
///
/// # Panics
///
/// Panics if `j_rows < 3`.
pub fn admissible_right_patterns(j_rows: usize) -> BTreeSet<BitVec> {
    assert!(j_rows >= 3, "parity section needs at least 3 rows");
    let mut out = BTreeSet::new();
    out.insert(BitVec::from_ones(j_rows, [0, 1]));
    out.insert(BitVec::from_ones(j_rows, [0, j_rows - 1]));
    for i in 1..j_rows - 1 {
        out.insert(BitVec::from_ones(j_rows, [i, i + 1]));
        out.insert(BitVec::from_ones(j_rows, [0, i, i + 1]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_first_rows_and_shapes() {
        let half = builtin_base(Rate::Half);
        assert_eq!(half.row(0).to_string(), "011000001100110000000000");
        assert_eq!((half.rows(), half.cols()), (12, 24));
        let tt = builtin_base(Rate::TwoThirdsB);
        assert_eq!(tt.row(0).to_string(), "101010101010101011000000");
        assert_eq!((tt.rows(), tt.cols()), (8, 24));
    }

    #[test]
    fn builtins_validate() {
        let s = validate_type_16e(&builtin_base(Rate::Half)).unwrap();
        assert_eq!((s.parity_rows, s.total_cols, s.hb_col + 1), (12, 24, 13));
        assert_eq!(s.hb_middle_row, 5);
        let s = validate_type_16e(&builtin_base(Rate::TwoThirdsB)).unwrap();
        assert_eq!((s.parity_rows, s.total_cols, s.hb_col + 1), (8, 24, 17));
        assert_eq!(s.hb_middle_row, 6);
    }

    #[test]
    fn identity_is_rejected_with_violations() {
        let err = validate_type_16e(&BinaryMatrix::identity(4).unwrap()).unwrap_err();
        let Ieee16eError::Violations(vs) = err else {
            panic!("expected violations");
        };
        assert!(vs.contains(&Violation::HbWeight { col: 0, weight: 1 }));
        assert!(vs.iter().any(|v| matches!(v, Violation::DualDiagonalMissing { .. })));
    }

    #[test]
    fn too_narrow_is_shape_error() {
        let h = BinaryMatrix::zeros(5, 3).unwrap();
        assert!(matches!(validate_type_16e(&h), Err(Ieee16eError::Shape { .. })));
    }

    fn small_model(hb: [i64; 3], dd: i64) -> ModelMatrix {
        // J = 3, L = 4: one systematic column, h_b, two dual-diagonal columns
        ModelMatrix::from_shifts(
            7,
            &[&[1, hb[0], dd, -1], &[2, hb[1], 0, 0], &[-1, hb[2], -1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn model_clauses() {
        assert!(validate_model_16e(&small_model([5, 3, 5], 0)).is_ok());
        assert_eq!(
            validate_model_16e(&small_model([5, 3, 4], 0)),
            Err(Ieee16eError::Violations(vec![Violation::UnequalHbShifts { top: 5, bottom: 4 }]))
        );
        assert_eq!(
            validate_model_16e(&small_model([5, 3, 5], 2)),
            Err(Ieee16eError::Violations(vec![Violation::NonzeroDualDiagonalShift {
                row: 0,
                col: 2,
                shift: 2
            }]))
        );
    }

    #[test]
    fn patterns_for_three_rows() {
        let got: Vec<String> = admissible_right_patterns(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["011", "101", "110", "111"]);
    }

    #[test]
    fn patterns_for_twelve_rows() {
        let ps = admissible_right_patterns(12);
        assert!(ps.contains(&"000000001100".parse().unwrap()));
        assert!(ps.iter().all(|p| (2..=3).contains(&p.weight())));
        // two end rows plus two variants per middle row
        assert_eq!(ps.len(), 2 + 2 * 10);
    }

    #[test]
    fn rate_parsing() {
        assert_eq!("1/2".parse::<Rate>().unwrap(), Rate::Half);
        assert_eq!("2/3b".parse::<Rate>().unwrap(), Rate::TwoThirdsB);
        assert!("3/4".parse::<Rate>().is_err());
    }
}
