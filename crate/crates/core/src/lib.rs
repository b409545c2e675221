//! Floer homology of powers of a Dehn twist over F₂, the product and
//! coproduct structure maps, and the analytic checks behind them.

pub mod error;
pub mod floer;
pub mod gf2;
pub mod indexcalc;
pub mod label;
pub mod moduli;
pub mod nocross;
pub mod structmaps;
pub mod surface;

pub use error::{Error, Result};
pub use floer::{hf_space, FloerSpace, TwistGenerator, TwistKind};
pub use gf2::{F2Combination, F2LinearMap, F2Matrix, GradedF2Space};
pub use label::BasisLabel;
pub use surface::{SurfaceClass, SurfaceSpec, TwistCurveSpec};
pub use indexcalc::{check_monotonicity, HypothesisBullet, MonotonicityVerdict, OrbitKind};
pub use nocross::{CobordismMode, CrossingCertificate, CrossingScenario, H1ClassXD};
pub use structmaps::{coproduct_map, product_map, StructureMapReport};
