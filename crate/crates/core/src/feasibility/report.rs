//! Text and structured renderings of a [`FeasibilityReport`].
//!
//! The text form is one `key: value` pair per line, lists comma-separated,
//! `none` for empty lists. Column indices are rendered 1-based unless
//! [`IndexBase::Zero`] is requested.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{FeasibilityReport, Reason, Verdict};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum IndexBase {
    Zero,
    #[default]
    One,
}

impl IndexBase {
    pub fn offset(self) -> usize {
        match self {
            IndexBase::Zero => 0,
            IndexBase::One => 1,
        }
    }
}

/// Serializable view of a report with indices shifted to the chosen base.
#[derive(Debug, Clone, Serialize)]
pub struct ReportView {
    pub target: String,
    pub verdict: Verdict,
    pub reason: Option<Reason>,
    pub index_base: usize,
    pub forced_zeros: Vec<usize>,
    pub candidate_count: usize,
    pub candidates: Vec<String>,
    pub pattern_coverage: BTreeMap<String, usize>,
    pub covered_patterns: usize,
    pub required_patterns: usize,
    pub conclusion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|i| i.to_string()).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(",")
    }
}

impl FeasibilityReport {
    pub fn view(&self, base: IndexBase, elapsed_ms: Option<u128>) -> ReportView {
        let forced_zeros: Vec<usize> = self.forced_zeros.iter().map(|i| i + base.offset()).collect();
        ReportView {
            target: self.target.clone(),
            verdict: self.verdict,
            reason: self.reason,
            index_base: base.offset(),
            conclusion: self.conclusion(&forced_zeros),
            forced_zeros,
            candidate_count: self.candidates.len(),
            candidates: self.candidates.iter().map(ToString::to_string).collect(),
            pattern_coverage: self
                .pattern_coverage
                .iter()
                .map(|(p, n)| (p.to_string(), *n))
                .collect(),
            covered_patterns: self.covered_patterns,
            required_patterns: self.required_patterns,
            elapsed_ms,
        }
    }

    fn conclusion(&self, shown_zeros: &[usize]) -> String {
        let no_partner = format!(
            "no QC-LDPC code D satisfying condition (I) pairs with a code C whose base matrix is {}",
            self.target
        );
        match (self.verdict, self.reason) {
            (Verdict::Feasible, _) => {
                "no obstruction found by these tests; existence of a partner code is not implied".into()
            }
            (Verdict::Infeasible, Some(Reason::ForcedZeroColumns)) => format!(
                "columns {} of every kernel row vanish, so H_b(D) has zero columns; {no_partner}",
                join(shown_zeros)
            ),
            (Verdict::Infeasible, Some(Reason::InsufficientPatternCoverage)) => format!(
                "candidate rows realize {} of the {} parity-section patterns required; {no_partner}",
                self.covered_patterns, self.required_patterns
            ),
            (Verdict::Infeasible, _) => no_partner,
        }
    }

    pub fn render_text(&self, base: IndexBase, elapsed_ms: Option<u128>) -> String {
        self.view(base, elapsed_ms).render_text()
    }

    pub fn render_structured(&self, base: IndexBase, elapsed_ms: Option<u128>) -> String {
        serde_json::to_string_pretty(&self.view(base, elapsed_ms)).expect("report serializes")
    }
}

impl ReportView {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let verdict = match self.verdict {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
        };
        let _ = writeln!(s, "target: {}", self.target);
        let _ = writeln!(s, "verdict: {verdict}");
        let _ = writeln!(s, "reason: {}", self.reason.map_or("none", Reason::as_str));
        let _ = writeln!(s, "index_base: {}", self.index_base);
        let _ = writeln!(s, "forced_zeros: {}", join(&self.forced_zeros));
        let _ = writeln!(s, "candidate_count: {}", self.candidate_count);
        let _ = writeln!(s, "candidates: {}", join(&self.candidates));
        let _ = writeln!(
            s,
            "pattern_coverage: {}",
            join(self.pattern_coverage.iter().map(|(p, n)| format!("{p}={n}")))
        );
        let _ = writeln!(s, "covered_patterns: {}", self.covered_patterns);
        let _ = writeln!(s, "required_patterns: {}", self.required_patterns);
        let _ = writeln!(s, "conclusion: {}", self.conclusion);
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed_ms: {ms}");
        }
        s
    }
}
