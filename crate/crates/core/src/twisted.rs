//! The twisted relation `D^⊥ ⊂ C` required of a CSS code pair.
//!
//! Three equivalent formulations are provided: orthogonality of parity-check
//! matrices, row-by-row dual containment, and the multiplicity-even test on
//! model-matrix row differences. The last one never expands the circulants:
//! block `(j, k)` of `H_C · H_Dᵀ` is `Σ_l I(c_jl − d_kl)`, which vanishes
//! exactly when every finite shift occurs an even number of times.

use serde::Serialize;
use thiserror::Error;

use crate::gf2::{BinaryMatrix, Gf2Error};
use crate::model::{row_sub, ModelError, ModelMatrix, ShiftEntry};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistedError {
    #[error("circulant sizes differ: {c} vs {d}")]
    CirculantMismatch { c: u32, d: u32 },
    #[error("column counts differ: {c} vs {d}")]
    ColumnMismatch { c: usize, d: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("internal consistency failure: twisted at z={z} but not at divisor y={y}")]
    DivisorInconsistency { z: u32, y: u32 },
}

/// A failing row pair: `c_row − d_row` has `symbol` an odd number of times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub c_row: usize,
    pub d_row: usize,
    pub symbol: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistedVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl TwistedVerdict {
    fn from_witness(witness: Option<Witness>) -> Self {
        Self {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Smallest finite symbol with odd multiplicity, if any.
pub fn odd_multiplicity_symbol(v: &[ShiftEntry], z: u32) -> Option<u32> {
    let mut parity = vec![false; z as usize];
    for e in v {
        if let ShiftEntry::Finite(s) = *e {
            parity[s as usize] ^= true;
        }
    }
    parity.iter().position(|&odd| odd).map(|s| s as u32)
}

pub fn is_multiplicity_even(v: &[ShiftEntry], z: u32) -> bool {
    odd_multiplicity_symbol(v, z).is_none()
}

pub fn twisted_condition(c: &ModelMatrix, d: &ModelMatrix) -> Result<TwistedVerdict, TwistedError> {
    twisted_condition_with(c, d, Execution::default())
}

/// Scans row pairs in row-major order and reports the first failing pair.
pub fn twisted_condition_with(
    c: &ModelMatrix,
    d: &ModelMatrix,
    exec: Execution,
) -> Result<TwistedVerdict, TwistedError> {
    if c.z() != d.z() {
        return Err(TwistedError::CirculantMismatch { c: c.z(), d: d.z() });
    }
    if c.cols() != d.cols() {
        return Err(TwistedError::ColumnMismatch {
            c: c.cols(),
            d: d.cols(),
        });
    }
    let z = c.z();
    let k_rows = d.rows();
    let found = par::find_first(0..c.rows() * k_rows, exec, |idx| {
        let (j, k) = (idx / k_rows, idx % k_rows);
        // lengths and ranges already validated by ModelMatrix
        let diff = row_sub(c.row(j), d.row(k), z).expect("validated rows");
        odd_multiplicity_symbol(&diff, z).map(|symbol| Witness {
            c_row: j,
            d_row: k,
            symbol,
        })
    });
    Ok(TwistedVerdict::from_witness(found.map(|(_, w)| w)))
}

/// `H1 · H2ᵀ = 0`.
pub fn is_orthogonal(h1: &BinaryMatrix, h2: &BinaryMatrix) -> Result<bool, TwistedError> {
    if h1.cols() != h2.cols() {
        return Err(TwistedError::ColumnMismatch {
            c: h1.cols(),
            d: h2.cols(),
        });
    }
    Ok(h1.mul(&h2.transpose())?.is_zero())
}

/// `D^⊥ ⊂ C`: every row of `H_D` (a generator of `D^⊥`) is a codeword of `C`.
pub fn check_dual_containment(h_c: &BinaryMatrix, h_d: &BinaryMatrix) -> Result<bool, TwistedError> {
    if h_c.cols() != h_d.cols() {
        return Err(TwistedError::ColumnMismatch {
            c: h_c.cols(),
            d: h_d.cols(),
        });
    }
    Ok((0..h_d.rows()).all(|r| h_c.annihilates(&h_d.row(r))))
}

pub fn divisors(z: u32) -> Vec<u32> {
    (1..=z).filter(|&y| z.is_multiple_of(y)).collect()
}

/// Evaluates the twisted condition at every divisor `y` of `z`.
///
/// If the pair is twisted at `z` it must be twisted at every divisor; a
/// violation is reported as [`TwistedError::DivisorInconsistency`].
pub fn divisor_reduction_check(
    c: &ModelMatrix,
    d: &ModelMatrix,
) -> Result<Vec<(u32, TwistedVerdict)>, TwistedError> {
    if c.z() != d.z() {
        return Err(TwistedError::CirculantMismatch { c: c.z(), d: d.z() });
    }
    let z = c.z();
    let mut out = Vec::new();
    for y in divisors(z) {
        let verdict = twisted_condition(&c.reduce_to_divisor(y)?, &d.reduce_to_divisor(y)?)?;
        out.push((y, verdict));
    }
    let top = out.last().expect("z is its own divisor").1;
    if top.holds {
        if let Some((y, _)) = out.iter().find(|(_, v)| !v.holds) {
            return Err(TwistedError::DivisorInconsistency { z, y: *y });
        }
    }
    Ok(out)
}
