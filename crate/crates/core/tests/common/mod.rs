#![allow(dead_code)]

use qc_css::gf2::{BinaryMatrix, BitVec};
use qc_css::model::{ModelMatrix, ShiftEntry};
use rand::Rng;

pub const WORKED_MMAT: &str = include_str!("../fixtures/worked_example.mmat");
pub const WORKED_BMAT: &str = include_str!("../fixtures/worked_example.bmat");
pub const GOLDEN_TEXT: &str = include_str!("../golden/reproduce.txt");
pub const GOLDEN_JSON: &str = include_str!("../golden/reproduce.json");

pub fn worked_base() -> BinaryMatrix {
    BinaryMatrix::from_strs(&["01110", "11111", "11101"]).unwrap()
}

/// `M · H_b(2/3B)` as printed alongside the eliminator.
pub fn printed_eliminated_2_3b() -> BinaryMatrix {
    BinaryMatrix::from_strs(&[
        "000000000000000010000000",
        "101010101010101001000000",
        "111111111111111100100000",
        "010101010101010100010000",
        "000000000000000000001000",
        "101010101010101000000100",
        "111111111111111100000010",
        "010101010101010100000001",
    ])
    .unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(rows, cols).unwrap();
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen_bool(0.5));
        }
    }
    m
}

pub fn vec_from_mask(len: usize, mask: u32) -> BitVec {
    BitVec::from_ones(len, (0..len).filter(|i| mask >> i & 1 == 1))
}

/// All kernel vectors by scanning every vector of `F_2^cols`.
pub fn brute_kernel(a: &BinaryMatrix) -> Vec<BitVec> {
    let n = a.cols();
    assert!(n <= 20);
    let mut out: Vec<BitVec> = (0u32..1 << n)
        .map(|m| vec_from_mask(n, m))
        .filter(|v| a.annihilates(v))
        .collect();
    out.sort();
    out
}

/// Every linear combination of `basis`.
pub fn span(basis: &[BitVec], len: usize) -> Vec<BitVec> {
    let mut out = vec![BitVec::zeros(len)];
    for b in basis {
        let shifted: Vec<BitVec> = out
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.xor_assign(b);
                w
            })
            .collect();
        out.extend(shifted);
    }
    out.sort();
    out.dedup();
    out
}

pub fn random_entry<R: Rng>(rng: &mut R, z: u32, p_inf: f64) -> ShiftEntry {
    if rng.gen_bool(p_inf) {
        ShiftEntry::Infinity
    } else {
        ShiftEntry::Finite(rng.gen_range(0..z))
    }
}

pub fn random_model<R: Rng>(rng: &mut R, z: u32, rows: usize, cols: usize, p_inf: f64) -> ModelMatrix {
    let entries = (0..rows * cols).map(|_| random_entry(rng, z, p_inf)).collect();
    ModelMatrix::new(z, rows, cols, entries).unwrap()
}

/// A pair satisfying the twisted condition by construction.
///
/// Columns are grouped in pairs sharing an offset `δ_t`; every row of either
/// matrix puts `(a, a + δ_t)` or `(∞, ∞)` into pair `t`. Each row difference
/// then repeats its symbol within every pair. Columns are finally permuted by
/// the same random permutation in both matrices.
pub fn twisted_pair<R: Rng>(rng: &mut R, z: u32, pairs: usize, rows_c: usize, rows_d: usize) -> (ModelMatrix, ModelMatrix) {
    let deltas: Vec<u32> = (0..pairs).map(|_| rng.gen_range(0..z)).collect();
    let cols = 2 * pairs;
    let mut perm: Vec<usize> = (0..cols).collect();
    for i in (1..cols).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut build = |rows: usize| {
        let mut entries = vec![ShiftEntry::Infinity; rows * cols];
        for r in 0..rows {
            for (t, &delta) in deltas.iter().enumerate() {
                if rng.gen_bool(0.3) {
                    continue;
                }
                let a = rng.gen_range(0..z);
                entries[r * cols + perm[2 * t]] = ShiftEntry::Finite(a);
                entries[r * cols + perm[2 * t + 1]] = ShiftEntry::Finite((a + delta) % z);
            }
        }
        ModelMatrix::new(z, rows, cols, entries).unwrap()
    };
    let c = build(rows_c);
    let d = build(rows_d);
    (c, d)
}
