//! Quasi-cyclic LDPC model-matrix algebra and CSS-pair feasibility analysis.
//!
//! A CSS quantum code needs two classical codes `C`, `D` with `D^⊥ ⊂ C`. For
//! QC-LDPC codes this "twisted" relation can be decided directly on model
//! matrices, and it forces the binary base matrices to be orthogonal. The
//! [`feasibility`] module builds on that to show that no partner satisfying
//! the usual LDPC design constraints exists for the IEEE 802.16e base
//! matrices of rate 1/2 and 2/3B.
//!
//! ```
//! use qc_css::model::ModelMatrix;
//! use qc_css::twisted::{is_orthogonal, twisted_condition};
//!
//! let c = ModelMatrix::from_shifts(3, &[&[0, 1, -1, 2]]).unwrap();
//! let d = ModelMatrix::from_shifts(3, &[&[1, 2, -1, 0]]).unwrap();
//! let verdict = twisted_condition(&c, &d).unwrap();
//! assert_eq!(verdict.holds, is_orthogonal(&c.expand(), &d.expand()).unwrap());
//! ```

pub mod cli;
pub mod feasibility;
pub mod gf2;
pub mod ieee16e;
pub mod model;
pub mod par;
pub mod twisted;

pub use feasibility::{FeasibilityReport, SearchConstraints};
pub use gf2::{BinaryMatrix, BitVec, WeightDistribution};
pub use model::{ModelMatrix, ShiftEntry};
pub use par::Execution;
pub use twisted::TwistedVerdict;
