//! Decomposition of CL(fb) persistence modules into indecomposables.
//!
//! Two independent routes are provided and cross-checked:
//!
//! * [`decompose_clfb`] — the echelon-reduction pipeline that peels
//!   summands off step by step, optionally emitting basis-change witnesses;
//! * [`oracle_decompose`] — multiplicity recovery from hom-space
//!   dimensions against the table of pairwise hom dimensions between
//!   canonical indecomposables.
//!
//! The two share no reduction logic, which is what makes the second a
//! meaningful oracle for the first.

mod an;
mod hom;
mod marginal;
mod steps;
mod working;

pub use an::{an_decompose, interval_rep, AnRep};
pub use hom::{build_hom_matrix, hom_dim, oracle_decompose, oracle_decompose_with_matrix, HomMatrix};
pub use marginal::{marginal_check, MarginalReport};

use crate::arq::PersistenceDiagram;
use crate::exactla::Matrix;
use crate::ladder::{LadderError, LadderRep};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("input does not validate: {0}")]
    InvalidInput(#[from] LadderError),
    #[error("unsupported shape {0}: decomposition is implemented for the fb ladder")]
    UnsupportedShape(String),
    #[error("algorithm invariant violated: {0}")]
    Invariant(String),
    #[error("hom matrix is singular; the quiver data table is corrupt")]
    SingularHomMatrix,
    #[error("hom counts admit no nonnegative integer multiplicity vector")]
    NoIntegerSolution,
    #[error("interval decomposition supports A_n with n <= 3, got n = {0}")]
    UnsupportedAn(usize),
    #[error("marginal identity {identity} fails: expected {expected}, got {got}")]
    MarginalMismatch {
        identity: String,
        expected: u64,
        got: u64,
    },
}

/// Multiplicities plus optional per-vertex change-of-basis witnesses and a
/// per-step extraction trace.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub diagram: PersistenceDiagram,
    /// One invertible matrix per ladder vertex. Conjugating the input by
    /// them (f ↦ W_t⁻¹ · f · W_s on each arrow s → t) yields the block
    /// direct sum of canonical representatives, grouped by quiver vertex in
    /// table order.
    pub witnesses: Option<Vec<Matrix>>,
    /// Extraction counts keyed by pipeline stage label ("1" .. "5.2").
    pub trace: Option<Vec<(String, Vec<(usize, u64)>)>>,
}

pub use steps::decompose_clfb;
