use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cut-off function on a cylindrical end: zero up to distance `boundary`
/// from the neck, then a cubic smoothstep over `width`, then one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffProfile {
    pub boundary: f64,
    pub width: f64,
}

impl Default for CutoffProfile {
    fn default() -> Self {
        Self {
            boundary: 1.0,
            width: 1.0,
        }
    }
}

impl CutoffProfile {
    pub fn new(boundary: f64, width: f64) -> Result<Self> {
        if !(boundary.is_finite() && width.is_finite() && boundary > 0.0 && width > 0.0) {
            return Err(Error::OutOfRange(format!(
                "cut-off needs positive boundary and width, got {boundary} and {width}"
            )));
        }
        Ok(Self { boundary, width })
    }

    /// Value at depth `u` past the boundary (`u ≤ 0` gives 0).
    pub fn at_depth(&self, u: f64) -> f64 {
        let t = (u / self.width).clamp(0.0, 1.0);
        t * t * (3.0 - 2.0 * t)
    }

    /// Value at the end coordinate `s`; positive ends start at `+boundary`,
    /// negative ends at `-boundary`.
    pub fn at(&self, s: f64, positive: bool) -> f64 {
        let u = if positive { s - self.boundary } else { -self.boundary - s };
        self.at_depth(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let c = CutoffProfile::default();
        assert_eq!(c.at(0.5, true), 0.0);
        assert_eq!(c.at(1.5, true), 0.5);
        assert_eq!(c.at(3.0, true), 1.0);
        assert_eq!(c.at(-1.5, false), 0.5);
        assert!(CutoffProfile::new(0.0, 1.0).is_err());
    }
}
