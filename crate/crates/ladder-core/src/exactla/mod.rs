//! Exact linear algebra over prime fields GF(p).
//!
//! Everything downstream (validation, homology, the decomposition pipeline)
//! runs on these primitives, so all operations here are exact and
//! deterministic: identical inputs give bit-identical outputs. There is no
//! pivoting heuristic beyond "first usable entry in scan order".

mod field;
mod matrix;

pub use field::{is_prime, FieldElem};
pub use matrix::Matrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("zero has no multiplicative inverse in GF({0})")]
    ZeroInverse(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("mixed moduli: {0} vs {1}")]
    MixedModuli(u64, u64),
}
