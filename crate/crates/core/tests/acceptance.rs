//! Acceptance criteria. Run with
//! `cargo test -p qc-css --test acceptance -- --nocapture` to see the
//! per-criterion report.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use qc_css::feasibility::{
    analyze, enumerate_via_weights, eliminator_2_3b, Reason, SearchConstraints, Verdict,
};
use qc_css::gf2::{parse_bmat, BitVec};
use qc_css::ieee16e::{builtin_base, validate_type_16e, Rate};
use qc_css::model::{parse_model, row_sub, ShiftEntry};
use qc_css::par::Execution;
use qc_css::twisted::{divisor_reduction_check, is_orthogonal, twisted_condition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

type Criterion = fn() -> Result<(), String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ac1_expansion_golden() -> Result<(), String> {
    let m = parse_model(WORKED_MMAT).map_err(|e| e.to_string())?;
    let printed_h = parse_bmat(WORKED_BMAT).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let h = m.expand();
    let hb = m.project_base();
    within(Duration::from_millis(1), start)?;
    check(h == printed_h, format!("expansion differs: {h:?}"))?;
    check(hb == worked_base(), format!("base differs: {hb:?}"))
}

fn ac2_operator_golden() -> Result<(), String> {
    use ShiftEntry::{Finite, Infinity};
    let v = [Infinity, Finite(0), Finite(1), Finite(0), Infinity];
    let u = [Finite(1), Finite(0), Finite(1), Infinity, Finite(0)];
    let d = row_sub(&v, &u, 2).map_err(|e| e.to_string())?;
    check(
        d == [Infinity, Finite(0), Finite(0), Infinity, Infinity],
        format!("got {d:?}"),
    )
}

fn ac3_rate_two_thirds_b() -> Result<(), String> {
    let start = Instant::now();
    let h = builtin_base(Rate::TwoThirdsB);
    let fz = h.forced_zero_columns();
    check(fz == BTreeSet::from([16, 20]), format!("forced zeros (0-based) {fz:?}"))?;
    let mh = eliminator_2_3b().mul(&h).map_err(|e| e.to_string())?;
    check(mh == printed_eliminated_2_3b(), format!("M·H differs: {mh:?}"))?;
    let r = analyze(Rate::TwoThirdsB, Execution::default()).map_err(|e| e.to_string())?;
    check(r.verdict == Verdict::Infeasible, "verdict not infeasible")?;
    check(r.reason == Some(Reason::ForcedZeroColumns), "wrong reason")?;
    within(Duration::from_secs(1), start)
}

fn ac4_rate_half() -> Result<(), String> {
    let start = Instant::now();
    let r = analyze(Rate::Half, Execution::default()).map_err(|e| e.to_string())?;
    check(r.candidates.len() == 6, format!("{} candidates", r.candidates.len()))?;
    let suffix: BitVec = "000000001100".parse().unwrap();
    check(
        r.candidates.iter().all(|x| x.slice(12, 12) == suffix),
        "candidate suffix differs",
    )?;
    check(r.verdict == Verdict::Infeasible, "verdict not infeasible")?;
    check(r.reason == Some(Reason::InsufficientPatternCoverage), "wrong reason")?;
    check(
        r.covered_patterns == 1 && r.required_patterns == 11 && r.pattern_coverage.len() == 1,
        format!("coverage {} / {}", r.covered_patterns, r.required_patterns),
    )?;

    // independent path: every weight-6/7 vector of F_2^24
    let h = builtin_base(Rate::Half);
    let p = validate_type_16e(&h).map_err(|e| e.to_string())?;
    let c = SearchConstraints::for_partner_rows(&h, &p);
    check(c.row_weights == BTreeSet::from([6, 7]), "row weights not {6,7}")?;
    let brute = enumerate_via_weights(&h, &c, Execution::default()).map_err(|e| e.to_string())?;
    check(brute == r.candidates, "brute-force path disagrees")?;
    within(Duration::from_secs(10), start)
}

fn ac5_theorem_equivalence() -> Result<(), String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut agree = 0;
    let mut holds = 0;
    for _ in 0..200 {
        let z = rng.gen_range(1..=6);
        let l = rng.gen_range(1..=4);
        let (jc, jd) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let c = random_model(&mut rng, z, jc, l, 0.4);
        let d = random_model(&mut rng, z, jd, l, 0.4);
        let v = twisted_condition(&c, &d).map_err(|e| e.to_string())?;
        let o = is_orthogonal(&c.expand(), &d.expand()).map_err(|e| e.to_string())?;
        agree += usize::from(v.holds == o);
        holds += usize::from(o);
    }
    println!("      AC5: 200 pairs, {holds} twisted, {agree}/200 agree");
    check(agree == 200, format!("{agree}/200 agree"))?;
    within(Duration::from_secs(5), start)
}

fn ac6_divisor_monotonicity() -> Result<(), String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ok = 0;
    for i in 0..50 {
        let z = [4u32, 6, 12][i % 3];
        let (pairs, jc, jd) = (rng.gen_range(1..=3), rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (c, d) = twisted_pair(&mut rng, z, pairs, jc, jd);
        if !twisted_condition(&c, &d).map_err(|e| e.to_string())?.holds {
            return Err(format!("constructed pair {i} is not twisted at z={z}"));
        }
        let out = divisor_reduction_check(&c, &d).map_err(|e| e.to_string())?;
        let all = out.iter().all(|(_, v)| v.holds);
        let base_ok = out[0].0 == 1
            && is_orthogonal(&c.project_base(), &d.project_base()).map_err(|e| e.to_string())?;
        ok += usize::from(all && base_ok);
    }
    check(ok == 50, format!("{ok}/50 pairs hold at every divisor"))?;
    within(Duration::from_secs(5), start)
}

fn ac7_kernel_soundness() -> Result<(), String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = 0;
    for _ in 0..100 {
        let rows = rng.gen_range(1..=10);
        let cols = rng.gen_range(1..=16);
        let a = random_matrix(&mut rng, rows, cols);
        let kernel = brute_kernel(&a);
        let forced: BTreeSet<usize> = (0..cols).filter(|&i| kernel.iter().all(|v| !v.get(i))).collect();
        let good = span(&a.nullspace_basis(), cols) == kernel && a.forced_zero_columns() == forced;
        ok += usize::from(good);
    }
    check(ok == 100, format!("{ok}/100 match"))?;
    within(Duration::from_secs(5), start)
}

fn ac8_structure() -> Result<(), String> {
    for (rate, j, hb_col) in [(Rate::Half, 12, 13), (Rate::TwoThirdsB, 8, 17)] {
        let s = validate_type_16e(&builtin_base(rate)).map_err(|e| e.to_string())?;
        check(
            (s.parity_rows, s.total_cols, s.hb_col + 1) == (j, 24, hb_col),
            format!("{rate}: got {s:?}"),
        )?;
    }
    let weights: Vec<usize> = builtin_base(Rate::Half).row_weight_distribution().weights().collect();
    check(weights == [6, 7], format!("row weights {weights:?}"))
}

fn ac9_cli_contract() -> Result<(), String> {
    let bin = env!("CARGO_BIN_EXE_qc-css");
    let run = |args: &[&str]| Command::new(bin).args(args).output().map_err(|e| e.to_string());
    let a = run(&["reproduce", "--stable"])?;
    let b = run(&["reproduce", "--stable"])?;
    check(a.stdout == b.stdout, "reproduce output differs between runs")?;
    check(a.status.code() == Some(0), "reproduce exit code")?;
    check(a.stdout == GOLDEN_TEXT.as_bytes(), "reproduce output differs from golden")?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let put = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).map(|_| p.to_string_lossy().into_owned())
    };
    let put = |n: &str, t: &str| put(n, t).map_err(|e| e.to_string());
    let model = put("m.mmat", WORKED_MMAT)?;
    let broken = put("broken.mmat", "2 1 1\n5\n")?;
    let c = put("c.mmat", "3 1 4\n0 1 -1 2\n")?;
    let d_good = put("dg.mmat", "3 1 4\n1 2 -1 -1\n")?;
    let d_bad = put("db.mmat", "3 1 4\n0 0 -1 0\n")?;
    let d_z = put("dz.mmat", "4 1 4\n0 0 -1 0\n")?;
    let half = put("half.bmat", qc_css::ieee16e::builtin_text(Rate::Half))?;
    let ident = put("ident.bmat", "4 4\n1000\n0100\n0010\n0001\n")?;
    let ragged = put("ragged.bmat", "2 3\n101\n1\n")?;

    let cases: [(&[&str], i32); 12] = [
        (&["expand", &model], 0),
        (&["expand", &broken], 2),
        (&["twisted", &c, &d_good], 0),
        (&["twisted", &c, &d_bad], 1),
        (&["twisted", &c, &d_z], 2),
        (&["validate-16e", &half], 0),
        (&["validate-16e", &ident], 1),
        (&["validate-16e", &ragged], 2),
        (&["search", &half], 1),
        (&["reduce", "--divisor", "3", &model], 2),
        (&["no-such-command"], 2),
        (&["reproduce", "--stable"], 0),
    ];
    for (args, want) in cases {
        let got = run(args)?.status.code();
        check(got == Some(want), format!("{args:?}: exit {got:?}, expected {want}"))?;
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, Criterion); 9] = [
        ("AC1 expansion golden (worked 3x5 model, z=2)", ac1_expansion_golden),
        ("AC2 operator golden", ac2_operator_golden),
        ("AC3 rate-2/3B forced zeros {17,21} and M·H", ac3_rate_two_thirds_b),
        ("AC4 rate-1/2 six candidates, coverage 1 < 11", ac4_rate_half),
        ("AC5 multiplicity-even criterion == expansion (200/200)", ac5_theorem_equivalence),
        ("AC6 twisted at every divisor (50/50)", ac6_divisor_monotonicity),
        ("AC7 kernel soundness (100/100)", ac7_kernel_soundness),
        ("AC8 structural validation of built-ins", ac8_structure),
        ("AC9 CLI determinism and exit codes", ac9_cli_contract),
    ];
    let mut failures = Vec::new();
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("[PASS] {name}"),
            Err(msg) => {
                println!("[FAIL] {name}: {msg}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
