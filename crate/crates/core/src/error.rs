use thiserror::Error;

use crate::indexcalc::HypothesisBullet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    Shape {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("invalid graded space: {0}")]
    InvalidSpace(String),

    #[error(
        "entry {source_label} (degree {source_degree}) -> {target_label} (degree {target_degree}) \
         violates degree shift {shift}"
    )]
    Degree {
        source_label: String,
        source_degree: u8,
        target_label: String,
        target_degree: u8,
        shift: i32,
    },

    #[error("label {0} is not part of the basis")]
    UnknownLabel(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("unsupported topology ({bullet}): {reason}")]
    UnsupportedTopology {
        bullet: HypothesisBullet,
        reason: String,
    },

    #[error("slice {slice} is not a boundary slice of power {power}")]
    NotABoundaryLabel { slice: u32, power: u32 },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("numerical failure in {what}: achieved {achieved:.3e}, required {required:.3e}")]
    Numeric {
        what: String,
        achieved: f64,
        required: f64,
    },
}
