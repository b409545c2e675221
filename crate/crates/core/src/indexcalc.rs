//! Fredholm index bookkeeping for sections of the product and coproduct
//! cobordisms, and the monotonicity hypotheses those computations rely on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{SurfaceSpec, TwistCurveSpec};

/// Which monotonicity hypothesis a surface fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisBullet {
    /// Non-separating curve: need boundary, or a closed surface of genus ≥ 2.
    NonSeparating,
    /// Separating curve: each side needs boundary or genus ≥ 2.
    Separating,
}

impl fmt::Display for HypothesisBullet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisBullet::NonSeparating => f.write_str("non-separating hypothesis"),
            HypothesisBullet::Separating => f.write_str("separating hypothesis"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MonotonicityVerdict {
    Satisfied,
    Violated {
        bullet: HypothesisBullet,
        reason: String,
    },
}

impl MonotonicityVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, MonotonicityVerdict::Satisfied)
    }
}

/// Whether φ = τ_c is monotone under the standing hypotheses. Powers of a
/// monotone φ are monotone, so the answer does not depend on the power.
pub fn check_monotonicity(s: SurfaceSpec, c: TwistCurveSpec) -> MonotonicityVerdict {
    match c {
        TwistCurveSpec::NonSeparating => {
            if s.boundary_count > 0 || s.genus >= 2 {
                MonotonicityVerdict::Satisfied
            } else {
                MonotonicityVerdict::Violated {
                    bullet: HypothesisBullet::NonSeparating,
                    reason: format!(
                        "closed surface of genus {} with a non-separating curve",
                        s.genus
                    ),
                }
            }
        }
        TwistCurveSpec::Separating { g1, b1, g2, b2 } => {
            for (side, g, b) in [(1, g1, b1), (2, g2, b2)] {
                if b == 0 && g < 2 {
                    return MonotonicityVerdict::Violated {
                        bullet: HypothesisBullet::Separating,
                        reason: format!("side {side} is closed of genus {g}"),
                    };
                }
            }
            MonotonicityVerdict::Satisfied
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    MorseMin,
    MorseSaddle,
    MorseMax,
    Elliptic,
    Hyperbolic,
}

/// Conley–Zehnder index in the trivialization that extends over the
/// Morse-Bott families.
pub fn cz(kind: OrbitKind) -> i64 {
    match kind {
        OrbitKind::MorseMin | OrbitKind::Elliptic => -1,
        OrbitKind::MorseSaddle | OrbitKind::Hyperbolic => 0,
        OrbitKind::MorseMax => 1,
    }
}

/// How the vertical tangent bundle can wrap: one wrapping number per
/// component of the complement that lies on a closed side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WrappingTopology {
    /// Non-separating curve on a surface with boundary: wrapping is zero.
    NonSeparatingWithBoundary,
    ClosedNonSeparating { genus: u32 },
    Separating { genus: [u32; 2], has_boundary: [bool; 2] },
}

impl WrappingTopology {
    pub fn of(s: SurfaceSpec, c: TwistCurveSpec) -> Self {
        match c {
            TwistCurveSpec::NonSeparating if s.boundary_count > 0 => {
                WrappingTopology::NonSeparatingWithBoundary
            }
            TwistCurveSpec::NonSeparating => WrappingTopology::ClosedNonSeparating { genus: s.genus },
            TwistCurveSpec::Separating { g1, b1, g2, b2 } => WrappingTopology::Separating {
                genus: [g1, g2],
                has_boundary: [b1 > 0, b2 > 0],
            },
        }
    }

    /// Coefficient of each wrapping number in the Chern term; `None` for a
    /// side whose wrapping is zero because it has boundary.
    pub fn coefficients(&self) -> Vec<Option<i64>> {
        match *self {
            WrappingTopology::NonSeparatingWithBoundary => vec![None],
            WrappingTopology::ClosedNonSeparating { genus } => vec![Some(2 - 2 * i64::from(genus))],
            WrappingTopology::Separating {
                genus,
                has_boundary,
            } => (0..2)
                .map(|i| (!has_boundary[i]).then(|| 1 - 2 * i64::from(genus[i])))
                .collect(),
        }
    }
}

/// Chern number of the vertical tangent bundle with the given wrapping
/// numbers, one per entry of [`WrappingTopology::coefficients`].
pub fn chern_from_wrapping(topology: WrappingTopology, wrapping: &[u32]) -> Result<i64> {
    let coeffs = topology.coefficients();
    if coeffs.len() != wrapping.len() {
        return Err(Error::Arity(format!(
            "expected {} wrapping numbers, got {}",
            coeffs.len(),
            wrapping.len()
        )));
    }
    Ok(coeffs
        .iter()
        .zip(wrapping)
        .map(|(c, &eta)| c.unwrap_or(0) * i64::from(eta))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CobordismShape {
    /// Two positive ends, one negative end.
    Product,
    /// One positive end, two negative ends.
    Coproduct,
}

impl CobordismShape {
    fn arity(self) -> (usize, usize) {
        match self {
            CobordismShape::Product => (2, 1),
            CobordismShape::Coproduct => (1, 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionIndexData {
    pub shape: CobordismShape,
    pub positive_ends: Vec<OrbitKind>,
    pub negative_ends: Vec<OrbitKind>,
    pub chern: i64,
}

impl SectionIndexData {
    pub fn new(shape: CobordismShape, positive_ends: Vec<OrbitKind>, negative_ends: Vec<OrbitKind>) -> Self {
        Self {
            shape,
            positive_ends,
            negative_ends,
            chern: 0,
        }
    }

    pub fn with_chern(mut self, chern: i64) -> Self {
        self.chern = chern;
        self
    }
}

/// Index of the linearized operator at a section of the pair-of-pants
/// cobordism (Euler characteristic −1).
pub fn fredholm_index(d: &SectionIndexData) -> Result<i64> {
    let (p, n) = d.shape.arity();
    if d.positive_ends.len() != p || d.negative_ends.len() != n {
        return Err(Error::Arity(format!(
            "{:?} needs {p} positive and {n} negative ends, got {} and {}",
            d.shape,
            d.positive_ends.len(),
            d.negative_ends.len()
        )));
    }
    let pos: i64 = d.positive_ends.iter().copied().map(cz).sum();
    let neg: i64 = d.negative_ends.iter().copied().map(cz).sum();
    Ok(-1 + 2 * d.chern + pos - neg)
}

/// Index after constraining `fixed_ends` Morse-Bott ends to a point each.
pub fn index_after_fixing(index: i64, fixed_ends: usize) -> i64 {
    index - fixed_ends as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WrappingBound {
    /// Largest admissible wrapping per side; `None` when unbounded.
    pub max_wrapping: Vec<Option<u32>>,
    pub forced_zero: bool,
    /// The inequality the bound comes from.
    pub witness: String,
}

/// Bound the wrapping numbers of a section of the given index using
/// `index ≤ 2 + 2·Σ cᵢηᵢ` (the worst-case count of the remaining terms).
pub fn force_zero_wrapping(topology: WrappingTopology, index: i64) -> Result<WrappingBound> {
    let slack = 2 - index;
    if slack < 0 {
        return Err(Error::OutOfRange(format!(
            "index {index} exceeds 2, no section at all"
        )));
    }
    let coeffs = topology.coefficients();
    let max_wrapping: Vec<Option<u32>> = coeffs
        .iter()
        .map(|c| match *c {
            None => Some(0),
            Some(c) if c < 0 => Some((slack / (-2 * c)) as u32),
            Some(_) => None,
        })
        .collect();
    let forced_zero = max_wrapping.iter().all(|m| *m == Some(0));
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| format!("({})*eta{}", 2 * c, i + 1)))
        .collect();
    let witness = if terms.is_empty() {
        "every side has boundary, so all wrapping numbers vanish".to_string()
    } else {
        format!("{index} <= 2 + {}", terms.join(" + "))
    };
    Ok(WrappingBound {
        max_wrapping,
        forced_zero,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use OrbitKind::*;

    #[test]
    fn product_of_maxima_has_index_two() {
        let d = SectionIndexData::new(CobordismShape::Product, vec![MorseMax, MorseMax], vec![MorseMin]);
        assert_eq!(fredholm_index(&d).unwrap(), 2);
    }

    #[test]
    fn coproduct_twist_region() {
        let d = SectionIndexData::new(CobordismShape::Coproduct, vec![Hyperbolic], vec![Elliptic, Elliptic]);
        let ind = fredholm_index(&d).unwrap();
        assert_eq!(ind, 1);
        assert_eq!(index_after_fixing(ind, 1), 0);
    }

    #[test]
    fn wrong_arity() {
        let d = SectionIndexData::new(CobordismShape::Product, vec![MorseMax], vec![MorseMin]);
        assert!(matches!(fredholm_index(&d), Err(Error::Arity(_))));
    }

    #[test]
    fn wrapping_forced_on_genus_two() {
        let b = force_zero_wrapping(WrappingTopology::ClosedNonSeparating { genus: 2 }, 0).unwrap();
        assert!(b.forced_zero);
        let sep = WrappingTopology::Separating {
            genus: [1, 3],
            has_boundary: [false, false],
        };
        let b = force_zero_wrapping(sep, 0).unwrap();
        assert_eq!(b.max_wrapping, vec![Some(1), Some(0)]);
        assert!(!b.forced_zero);
    }

    #[test]
    fn chern_examples() {
        let t = WrappingTopology::ClosedNonSeparating { genus: 3 };
        assert_eq!(chern_from_wrapping(t, &[2]).unwrap(), -8);
        let t = WrappingTopology::Separating {
            genus: [2, 2],
            has_boundary: [true, false],
        };
        assert_eq!(chern_from_wrapping(t, &[5, 1]).unwrap(), -3);
    }

    #[test]
    fn monotonicity_table() {
        let ns = TwistCurveSpec::NonSeparating;
        let sep = |g1, b1, g2, b2| TwistCurveSpec::Separating { g1, b1, g2, b2 };
        let cases = [
            (SurfaceSpec::new(1, 0), ns, false),
            (SurfaceSpec::new(2, 0), ns, true),
            (SurfaceSpec::new(1, 1), ns, true),
            (SurfaceSpec::new(3, 0), ns, true),
            (SurfaceSpec::new(2, 0), sep(1, 0, 1, 0), false),
            (SurfaceSpec::new(4, 0), sep(2, 0, 2, 0), true),
            (SurfaceSpec::new(3, 0), sep(1, 0, 2, 0), false),
            (SurfaceSpec::new(1, 1), sep(1, 0, 0, 1), false),
            (SurfaceSpec::new(2, 1), sep(2, 0, 0, 1), true),
            (SurfaceSpec::new(0, 3), sep(0, 1, 0, 2), true),
        ];
        for (s, c, ok) in cases {
            assert_eq!(check_monotonicity(s, c).is_satisfied(), ok, "{s:?} {c:?}");
        }
    }
}
