//! Generators of HF(φ^m) and the identification of boundary slices with
//! classes on the annulus edges.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{F2Combination, F2LinearMap, GradedF2Space};
use crate::indexcalc::{check_monotonicity, MonotonicityVerdict};
use crate::label::BasisLabel;
use crate::surface::{
    complement, homology, AnnulusSide, ComplementSurface, SurfaceSpec, TwistCurveSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Elliptic,
    Hyperbolic,
}

impl TwistKind {
    pub fn degree(self) -> u8 {
        match self {
            TwistKind::Elliptic => 0,
            TwistKind::Hyperbolic => 1,
        }
    }
}

/// `e^m_i` or `h^m_i`: the orbit pair on the slice `x = i/m` of φ^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwistGenerator {
    pub kind: TwistKind,
    pub slice: u32,
    pub power: u32,
}

impl TwistGenerator {
    pub fn elliptic(slice: u32, power: u32) -> Self {
        Self {
            kind: TwistKind::Elliptic,
            slice,
            power,
        }
    }

    pub fn hyperbolic(slice: u32, power: u32) -> Self {
        Self {
            kind: TwistKind::Hyperbolic,
            slice,
            power,
        }
    }

    pub fn degree(&self) -> u8 {
        self.kind.degree()
    }

    pub fn is_interior(&self) -> bool {
        self.slice > 0 && self.slice < self.power
    }
}

impl fmt::Display for TwistGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            TwistKind::Elliptic => 'e',
            TwistKind::Hyperbolic => 'h',
        };
        write!(f, "{letter}^{}_{}", self.power, self.slice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloerSpace {
    pub power: u32,
    pub complement: ComplementSurface,
    /// H_*(Σ₀), the Morse part.
    pub morse: GradedF2Space,
    /// Interior twist generators `e_i, h_i` for `0 < i < power`.
    pub twist: GradedF2Space,
    /// Morse part followed by the twist part.
    pub space: GradedF2Space,
}

/// HF(φ^m) for the Dehn twist along `c`, assuming the monotonicity hypotheses.
pub fn hf_space(s: SurfaceSpec, c: TwistCurveSpec, m: u32) -> Result<FloerSpace> {
    if m == 0 {
        return Err(Error::OutOfRange("the power must be at least 1".into()));
    }
    let cs = complement(s, c)?;
    if let MonotonicityVerdict::Violated { bullet, reason } = check_monotonicity(s, c) {
        return Err(Error::UnsupportedTopology { bullet, reason });
    }
    Ok(hf_space_on(cs, m))
}

/// HF(φ^m) on an already validated complement.
pub fn hf_space_on(cs: ComplementSurface, m: u32) -> FloerSpace {
    let morse = homology(&cs);
    let twist = interior_twist_space(m);
    let space = morse
        .direct_sum(&twist)
        .expect("surface and twist labels are disjoint");
    FloerSpace {
        power: m,
        complement: cs,
        morse,
        twist,
        space,
    }
}

/// The span of `e^m_i, h^m_i` for `0 < i < m`.
pub fn interior_twist_space(m: u32) -> GradedF2Space {
    let mut basis = Vec::new();
    for i in 1..m {
        for g in [TwistGenerator::elliptic(i, m), TwistGenerator::hyperbolic(i, m)] {
            basis.push((BasisLabel::Twist(g), g.degree()));
        }
    }
    GradedF2Space::new(basis).expect("twist labels are distinct")
}

/// Projection HF(φ^m) → H_*(Σ₀) killing the twist part.
pub fn proj(fs: &FloerSpace) -> F2LinearMap {
    F2LinearMap::from_fn(fs.space.clone(), fs.morse.clone(), 0, |label| {
        Ok(match label {
            BasisLabel::Surface(_) => F2Combination::basis(label.clone()),
            _ => F2Combination::zero(),
        })
    })
    .expect("projection is degree preserving")
}

/// Inclusion H_*(Σ₀) → HF(φ^m).
pub fn iota(fs: &FloerSpace) -> F2LinearMap {
    F2LinearMap::from_fn(fs.morse.clone(), fs.space.clone(), 0, |label| {
        Ok(F2Combination::basis(label.clone()))
    })
    .expect("inclusion is degree preserving")
}

/// A rule for reading the boundary slices `0` and `power` as classes of H_*(Σ₀).
pub trait BoundaryIdentification: Sync {
    fn resolve(
        &self,
        kind: TwistKind,
        slice: u32,
        power: u32,
        cs: &ComplementSurface,
    ) -> Result<F2Combination>;
}

/// Elliptic orbits on an annulus edge become the point class of the adjacent
/// component, hyperbolic ones the class of that boundary circle. Slice 0 is
/// the `x = 0` edge, slice `power` the `x = 1` edge.
#[derive(Debug, Clone, Copy, Default)]
pub struct EdgeIdentification;

impl BoundaryIdentification for EdgeIdentification {
    fn resolve(
        &self,
        kind: TwistKind,
        slice: u32,
        power: u32,
        cs: &ComplementSurface,
    ) -> Result<F2Combination> {
        let side = if slice == 0 {
            AnnulusSide::Left
        } else if slice == power {
            AnnulusSide::Right
        } else {
            return Err(Error::NotABoundaryLabel { slice, power });
        };
        let (component, boundary) = cs.annulus_boundary(side);
        match kind {
            TwistKind::Elliptic => cs.point_class(component),
            TwistKind::Hyperbolic => cs.boundary_class(component, boundary),
        }
    }
}

pub fn resolve_boundary_generator(
    kind: TwistKind,
    slice: u32,
    power: u32,
    cs: &ComplementSurface,
) -> Result<F2Combination> {
    EdgeIdentification.resolve(kind, slice, power, cs)
}

/// A twist generator as an element of HF(φ^power): interior slices stay as
/// they are, boundary slices are resolved through `ident`.
pub fn twist_element(
    g: TwistGenerator,
    cs: &ComplementSurface,
    ident: &dyn BoundaryIdentification,
) -> Result<F2Combination> {
    if g.slice > g.power {
        return Err(Error::OutOfRange(format!("{g} lies past the last slice")));
    }
    if g.is_interior() {
        Ok(F2Combination::basis(g.into()))
    } else {
        ident.resolve(g.kind, g.slice, g.power, cs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceClass;

    fn genus_two() -> SurfaceSpec {
        SurfaceSpec::new(2, 0)
    }

    #[test]
    fn dimensions() {
        let fs = hf_space(genus_two(), TwistCurveSpec::NonSeparating, 5).unwrap();
        assert_eq!(fs.space.dim(), 4 + 8);
        assert_eq!(fs.space.dims_by_degree(), vec![1 + 4, 3 + 4]);
    }

    #[test]
    fn torus_is_unsupported() {
        let err = hf_space(SurfaceSpec::new(1, 0), TwistCurveSpec::NonSeparating, 2).unwrap_err();
        assert!(matches!(err, Error::UnsupportedTopology { .. }));
    }

    #[test]
    fn zero_power_rejected() {
        assert!(hf_space(genus_two(), TwistCurveSpec::NonSeparating, 0).is_err());
    }

    #[test]
    fn boundary_resolution() {
        let cs = complement(genus_two(), TwistCurveSpec::NonSeparating).unwrap();
        let e0 = resolve_boundary_generator(TwistKind::Elliptic, 0, 3, &cs).unwrap();
        assert_eq!(e0, F2Combination::basis(SurfaceClass::pt(1).into()));
        let h3 = resolve_boundary_generator(TwistKind::Hyperbolic, 3, 3, &cs).unwrap();
        assert_eq!(h3, F2Combination::basis(SurfaceClass::d(1, 1).into()));
        let err = resolve_boundary_generator(TwistKind::Elliptic, 1, 3, &cs).unwrap_err();
        assert_eq!(err, Error::NotABoundaryLabel { slice: 1, power: 3 });
    }

    #[test]
    fn proj_after_iota_is_identity() {
        let fs = hf_space(genus_two(), TwistCurveSpec::NonSeparating, 3).unwrap();
        let id = crate::gf2::compose(&proj(&fs), &iota(&fs)).unwrap();
        assert_eq!(id, F2LinearMap::identity(fs.morse.clone()));
    }

    #[test]
    fn label_display() {
        assert_eq!(TwistGenerator::elliptic(2, 5).to_string(), "e^5_2");
    }
}
