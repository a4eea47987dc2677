//! Feasibility search for the second code of a CSS pair.
//!
//! Given the base matrix `H_b(C)` of one QC-LDPC code, every row of the base
//! matrix `H_b(D)` of a partner code must lie in `ker H_b(C)`. Two obstructions
//! rule out a partner satisfying condition (I) (equal row-weight distributions,
//! every column weight at least 2):
//!
//! * a coordinate that vanishes on the whole kernel forces an all-zero column
//!   in `H_b(D)`;
//! * the admissible kernel rows realize fewer distinct parity-section patterns
//!   than a type-802.16e matrix with `J` parity rows needs (`J − 1`).
//!
//! A feasible verdict only means neither obstruction was found.

mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::gf2::{BinaryMatrix, BitVec, WeightDistribution};
use crate::ieee16e::{admissible_right_patterns, builtin_base, validate_type_16e, Ieee16eStructure, Rate};
use crate::par::{self, Execution};

pub use report::{IndexBase, ReportView};

/// Kernels up to this dimension are enumerated directly.
pub const KERNEL_PATH_MAX_DIM: usize = 26;
/// Upper bound on vectors visited by the weight-class path.
pub const WEIGHT_PATH_MAX_VECTORS: u128 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("column counts differ: {c} vs {d}")]
    ColumnMismatch { c: usize, d: usize },
    #[error("{what} ({lo}..={hi}) lies outside columns 1..={cols}")]
    WindowOutOfRange {
        what: &'static str,
        lo: usize,
        hi: usize,
        cols: usize,
    },
    #[error("profile with {profile_rows} parity rows and {profile_cols} columns does not fit a {rows}x{cols} matrix")]
    ProfileMismatch {
        profile_rows: usize,
        profile_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// Bounds on the weight of the suffix starting at `col_start` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RightWeight {
    pub col_start: usize,
    pub min: usize,
    pub max: usize,
}

/// Row-candidate filters. Column positions are 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchConstraints {
    /// Allowed total weights; empty means any weight.
    pub row_weights: BTreeSet<usize>,
    /// Requires `x_i = x_{i+1} = 1` for some `lo <= i <= hi`.
    pub adjacency_window: Option<(usize, usize)>,
    pub right_weight: Option<RightWeight>,
}

impl SearchConstraints {
    pub fn unconstrained() -> Self {
        Self::default()
    }

    /// Constraints a row of a type-802.16e partner `H_b(D)` must meet under
    /// condition (I):
    ///
    /// * total weight drawn from the row weights of `H_b(C)`;
    /// * an adjacent pair of ones inside the dual-diagonal block;
    /// * one or two ones in the parity section `[h_b | H'_b2]`.
    pub fn for_partner_rows(h_c: &BinaryMatrix, profile: &Ieee16eStructure) -> Self {
        let l = profile.total_cols;
        let parity_start = profile.parity_start() + 1;
        Self {
            row_weights: h_c.row_weight_distribution().weights().collect(),
            adjacency_window: Some((parity_start + 1, l - 1)),
            right_weight: Some(RightWeight {
                col_start: parity_start,
                min: 1,
                max: 2,
            }),
        }
    }

    pub fn validate(&self, cols: usize) -> Result<(), FeasibilityError> {
        if let Some((lo, hi)) = self.adjacency_window {
            if lo == 0 || lo > hi || hi + 1 > cols {
                return Err(FeasibilityError::WindowOutOfRange {
                    what: "adjacency window",
                    lo,
                    hi,
                    cols,
                });
            }
        }
        if let Some(rw) = self.right_weight {
            if rw.col_start == 0 || rw.col_start > cols || rw.min > rw.max {
                return Err(FeasibilityError::WindowOutOfRange {
                    what: "right-weight suffix",
                    lo: rw.col_start,
                    hi: cols,
                    cols,
                });
            }
        }
        Ok(())
    }

    pub fn accepts(&self, x: &BitVec) -> bool {
        if !self.row_weights.is_empty() && !self.row_weights.contains(&x.weight()) {
            return false;
        }
        if let Some((lo, hi)) = self.adjacency_window {
            if !(lo..=hi).any(|i| x.get(i - 1) && x.get(i)) {
                return false;
            }
        }
        if let Some(rw) = self.right_weight {
            let w = x.suffix_weight(rw.col_start - 1);
            if w < rw.min || w > rw.max {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    C,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionViolation {
    RowWeightDistribution {
        c: WeightDistribution,
        d: WeightDistribution,
    },
    /// 0-based column index.
    LowColumnWeight { side: Side, col: usize, weight: usize },
}

impl fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionViolation::RowWeightDistribution { c, d } => {
                write!(f, "row weight distributions differ: C {c} vs D {d}")
            }
            ConditionViolation::LowColumnWeight { side, col, weight } => {
                write!(f, "column weight < 2 in H_{side:?}: column {} has weight {weight}", col + 1)
            }
        }
    }
}

/// Condition (I) on a pair of base matrices. An empty list means it holds.
pub fn condition_i_check(
    h_c: &BinaryMatrix,
    h_d: &BinaryMatrix,
) -> Result<Vec<ConditionViolation>, FeasibilityError> {
    if h_c.cols() != h_d.cols() {
        return Err(FeasibilityError::ColumnMismatch {
            c: h_c.cols(),
            d: h_d.cols(),
        });
    }
    let mut out = Vec::new();
    let (rc, rd) = (h_c.row_weight_distribution(), h_d.row_weight_distribution());
    if rc != rd {
        out.push(ConditionViolation::RowWeightDistribution { c: rc, d: rd });
    }
    for (side, h) in [(Side::D, h_d), (Side::C, h_c)] {
        for (col, weight) in h.column_weights().into_iter().enumerate() {
            if weight < 2 {
                out.push(ConditionViolation::LowColumnWeight { side, col, weight });
            }
        }
    }
    Ok(out)
}

/// Every `x` with `H_b(C)·xᵀ = 0` accepted by `c`, in lexicographic order.
pub fn enumerate_candidate_rows(
    h_c: &BinaryMatrix,
    c: &SearchConstraints,
) -> Result<Vec<BitVec>, FeasibilityError> {
    enumerate_candidate_rows_with(h_c, c, Execution::default())
}

/// Picks the kernel path when the kernel is small enough, otherwise walks the
/// allowed weight classes.
pub fn enumerate_candidate_rows_with(
    h_c: &BinaryMatrix,
    c: &SearchConstraints,
    exec: Execution,
) -> Result<Vec<BitVec>, FeasibilityError> {
    c.validate(h_c.cols())?;
    let dim = h_c.cols() - h_c.rank();
    if dim <= KERNEL_PATH_MAX_DIM {
        enumerate_via_kernel(h_c, c, exec)
    } else {
        enumerate_via_weights(h_c, c, exec)
    }
}

/// Walks all `2^dim` kernel vectors in Gray-code order, split into chunks by
/// the high basis bits.
pub fn enumerate_via_kernel(
    h_c: &BinaryMatrix,
    c: &SearchConstraints,
    exec: Execution,
) -> Result<Vec<BitVec>, FeasibilityError> {
    c.validate(h_c.cols())?;
    let basis = h_c.nullspace_basis();
    let dim = basis.len();
    if dim > 40 {
        return Err(FeasibilityError::SearchTooLarge(format!("kernel dimension {dim}")));
    }
    let low_bits = dim.min(12);
    let chunks = 1usize << (dim - low_bits);
    let cols = h_c.cols();

    let mut out = par::flat_map_range(0..chunks, exec, |chunk| {
        let mut v = BitVec::zeros(cols);
        for (b, vec) in basis[low_bits..].iter().enumerate() {
            if chunk >> b & 1 == 1 {
                v.xor_assign(vec);
            }
        }
        let mut found = Vec::new();
        if c.accepts(&v) {
            found.push(v.clone());
        }
        for step in 1u64..(1u64 << low_bits) {
            v.xor_assign(&basis[step.trailing_zeros() as usize]);
            if c.accepts(&v) {
                found.push(v.clone());
            }
        }
        found
    });
    out.sort_unstable();
    Ok(out)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Scans every vector whose weight is in `c.row_weights` and keeps the ones
/// in the kernel. Independent of any rank computation.
pub fn enumerate_via_weights(
    h_c: &BinaryMatrix,
    c: &SearchConstraints,
    exec: Execution,
) -> Result<Vec<BitVec>, FeasibilityError> {
    c.validate(h_c.cols())?;
    let cols = h_c.cols();
    if c.row_weights.is_empty() {
        return Err(FeasibilityError::SearchTooLarge(
            "weight-class enumeration needs explicit row weights".into(),
        ));
    }
    let total: u128 = c.row_weights.iter().map(|&w| binomial(cols, w)).sum();
    if total > WEIGHT_PATH_MAX_VECTORS {
        return Err(FeasibilityError::SearchTooLarge(format!("{total} weight-class vectors")));
    }
    let weights: Vec<usize> = c.row_weights.iter().copied().filter(|&w| w <= cols).collect();

    let keep = |x: BitVec| (h_c.annihilates(&x) && c.accepts(&x)).then_some(x);
    let mut out = Vec::new();
    if weights.contains(&0) {
        out.extend(keep(BitVec::zeros(cols)));
    }
    // one task per (weight, position of the first one)
    let tasks: Vec<(usize, usize)> = weights
        .iter()
        .filter(|&&w| w > 0)
        .flat_map(|&w| (0..=cols - w).map(move |first| (w, first)))
        .collect();
    out.extend(par::flat_map_range(0..tasks.len(), exec, |t| {
        let (w, first) = tasks[t];
        (first + 1..cols)
            .combinations(w - 1)
            .filter_map(|rest| keep(BitVec::from_ones(cols, std::iter::once(first).chain(rest))))
            .collect()
    }));
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    ForcedZeroColumns,
    InsufficientPatternCoverage,
    Other,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::ForcedZeroColumns => "forced-zero-columns",
            Reason::InsufficientPatternCoverage => "insufficient-pattern-coverage",
            Reason::Other => "other",
        }
    }
}

/// Outcome of a feasibility search. Column indices are stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub target: String,
    pub verdict: Verdict,
    pub reason: Option<Reason>,
    pub forced_zeros: Vec<usize>,
    pub candidates: Vec<BitVec>,
    /// Parity-section pattern of each candidate, with multiplicity.
    pub pattern_coverage: BTreeMap<BitVec, usize>,
    /// Distinct admissible patterns among the candidates.
    pub covered_patterns: usize,
    pub required_patterns: usize,
}

pub fn search_generic(
    h_c: &BinaryMatrix,
    profile: &Ieee16eStructure,
    c: &SearchConstraints,
) -> Result<FeasibilityReport, FeasibilityError> {
    search_generic_with("H_b(C)", h_c, profile, c, Execution::default())
}

/// Forced-zero analysis, then candidate enumeration, then the pattern
/// coverage test against `admissible_right_patterns(J)`.
pub fn search_generic_with(
    target: &str,
    h_c: &BinaryMatrix,
    profile: &Ieee16eStructure,
    c: &SearchConstraints,
    exec: Execution,
) -> Result<FeasibilityReport, FeasibilityError> {
    let j_rows = profile.parity_rows;
    if profile.total_cols != h_c.cols() || j_rows < 3 || profile.hb_col + j_rows != profile.total_cols {
        return Err(FeasibilityError::ProfileMismatch {
            profile_rows: j_rows,
            profile_cols: profile.total_cols,
            rows: h_c.rows(),
            cols: h_c.cols(),
        });
    }
    c.validate(h_c.cols())?;
    let required_patterns = j_rows - 1;

    let echelon = h_c.rref();
    let forced: Vec<usize> = h_c.forced_zero_columns().into_iter().collect();
    for &i in &forced {
        if !echelon.row_space_contains(&BitVec::unit(h_c.cols(), i)) {
            return Err(FeasibilityError::Inconsistent(format!(
                "forced-zero column {} is not certified by the row space",
                i + 1
            )));
        }
    }
    if !forced.is_empty() {
        return Ok(FeasibilityReport {
            target: target.to_string(),
            verdict: Verdict::Infeasible,
            reason: Some(Reason::ForcedZeroColumns),
            forced_zeros: forced,
            candidates: Vec::new(),
            pattern_coverage: BTreeMap::new(),
            covered_patterns: 0,
            required_patterns,
        });
    }

    let candidates = enumerate_candidate_rows_with(h_c, c, exec)?;
    if let Some(bad) = candidates.iter().find(|x| !h_c.annihilates(x)) {
        return Err(FeasibilityError::Inconsistent(format!("candidate {bad} is not in the kernel")));
    }

    let mut pattern_coverage = BTreeMap::new();
    for x in &candidates {
        *pattern_coverage.entry(x.slice(profile.parity_start(), j_rows)).or_insert(0) += 1;
    }
    let admissible = admissible_right_patterns(j_rows);
    let covered_patterns = pattern_coverage.keys().filter(|p| admissible.contains(p)).count();

    let (verdict, reason) = if covered_patterns < required_patterns {
        (Verdict::Infeasible, Some(Reason::InsufficientPatternCoverage))
    } else {
        (Verdict::Feasible, None)
    };
    Ok(FeasibilityReport {
        target: target.to_string(),
        verdict,
        reason,
        forced_zeros: Vec::new(),
        candidates,
        pattern_coverage,
        covered_patterns,
        required_patterns,
    })
}

/// Row-reduction matrix that exposes the two forced zeros of the rate-2/3B
/// base matrix: rows 1 and 5 of `M · H_b(2/3B)` are unit vectors.
pub fn eliminator_2_3b() -> BinaryMatrix {
    BinaryMatrix::from_strs(&[
        "11111111", "01111111", "00111111", "00011111", "00001111", "00000111", "00000011", "11111110",
    ])
    .expect("static eliminator")
}

/// Runs the search against one of the built-in base matrices.
pub fn analyze(rate: Rate, exec: Execution) -> Result<FeasibilityReport, FeasibilityError> {
    let h = builtin_base(rate);
    let profile = validate_type_16e(&h)
        .map_err(|e| FeasibilityError::Inconsistent(format!("built-in {rate} fails validation: {e}")))?;
    let constraints = SearchConstraints::for_partner_rows(&h, &profile);
    let report = search_generic_with(&format!("H_b({rate})"), &h, &profile, &constraints, exec)?;

    if rate == Rate::TwoThirdsB {
        // the explicit eliminator must expose only certified forced zeros
        let reduced = eliminator_2_3b().mul(&h).expect("8x8 times 8x24");
        for r in 0..reduced.rows() {
            let row = reduced.row(r);
            if row.weight() == 1 {
                let col = row.iter_ones().next().expect("weight 1");
                if !report.forced_zeros.contains(&col) {
                    return Err(FeasibilityError::Inconsistent(format!(
                        "eliminator exposes column {} not found by rank analysis",
                        col + 1
                    )));
                }
            }
        }
    }
    Ok(report)
}

pub fn analyze_2_3b() -> FeasibilityReport {
    analyze(Rate::TwoThirdsB, Execution::default()).expect("built-in analysis")
}

pub fn analyze_1_2() -> FeasibilityReport {
    analyze(Rate::Half, Execution::default()).expect("built-in analysis")
}

/// Both built-in analyses; each must come out infeasible.
pub fn reproduce_all() -> Result<(FeasibilityReport, FeasibilityReport), FeasibilityError> {
    reproduce_all_with(Execution::default())
}

pub fn reproduce_all_with(exec: Execution) -> Result<(FeasibilityReport, FeasibilityReport), FeasibilityError> {
    let two_thirds = analyze(Rate::TwoThirdsB, exec)?;
    let half = analyze(Rate::Half, exec)?;
    for r in [&two_thirds, &half] {
        if r.verdict != Verdict::Infeasible {
            return Err(FeasibilityError::Inconsistent(format!(
                "{} unexpectedly admits a partner",
                r.target
            )));
        }
    }
    Ok((two_thirds, half))
}
