//! Slow, self-contained reference computations.
//!
//! Nothing here depends on `twistfloer-core`; every routine recomputes its
//! answer from a different model (explicit CW complexes, chord diagrams,
//! brute-force enumeration) so tests can compare two independent routes.

pub mod cw;
pub mod linalg;

pub use cw::{
    complement_components, diagonal_coproduct_by_duality, intersection_by_chords, CwSurface,
    DualCoproductTerm, OracleClass,
};
pub use linalg::{kron_elementwise, naive_product, rank_by_span};
