//! Fixtures shared by the benches.

use twistfloer_core::{SurfaceSpec, TwistCurveSpec};

/// Surfaces the benches sweep over: closed genus 2 and 3 with a
/// non-separating curve, and genus 2 split by a separating one.
pub fn topologies() -> Vec<(&'static str, SurfaceSpec, TwistCurveSpec)> {
    vec![
        ("g2_nonsep", SurfaceSpec::new(2, 0), TwistCurveSpec::NonSeparating),
        ("g3_nonsep", SurfaceSpec::new(3, 0), TwistCurveSpec::NonSeparating),
        (
            "g2_sep",
            SurfaceSpec::new(2, 0),
            TwistCurveSpec::Separating { g1: 1, b1: 0, g2: 1, b2: 0 },
        ),
    ]
}
