//! The complement Σ₀ of an open annulus around the twist curve, its mod-2
//! homology with a fixed labeled basis, the intersection product and the
//! diagonal coproduct.
//!
//! Basis convention per component of genus `h` with `c` boundary circles:
//! `pt`, then `a_1, b_1, …, a_h, b_h`, then `d_1, …, d_{c-1}` where `d_j` is
//! the class of boundary circle `j`. The last circle is not a basis vector:
//! the full boundary is null-homologous, so `[∂_c] = d_1 + … + d_{c-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{F2Combination, F2LinearMap, GradedF2Space};
use crate::label::BasisLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub boundary_count: u32,
}

impl SurfaceSpec {
    pub fn new(genus: u32, boundary_count: u32) -> Self {
        Self {
            genus,
            boundary_count,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.boundary_count)
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_count == 0
    }
}

/// How the twist curve sits in the surface. For a separating curve the two
/// sides have genus `g1`, `g2` and contain `b1`, `b2` of the original
/// boundary circles; side 1 is the one adjacent to the `x = 0` edge of the
/// annulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwistCurveSpec {
    NonSeparating,
    Separating { g1: u32, b1: u32, g2: u32, b2: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComplementComponent {
    pub genus: u32,
    pub boundary_count: u32,
    /// 1-based index of the boundary circle at `x = 0`, if it lies here.
    pub left_boundary: Option<u32>,
    /// 1-based index of the boundary circle at `x = 1`, if it lies here.
    pub right_boundary: Option<u32>,
}

impl ComplementComponent {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.boundary_count)
    }

    pub fn h1_dim(&self) -> usize {
        (2 * self.genus + self.boundary_count - 1) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementSurface {
    pub surface: SurfaceSpec,
    pub curve: TwistCurveSpec,
    pub components: Vec<ComplementComponent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Pt,
    A,
    B,
    D,
}

/// A basis class of H_*(Σ₀). Components and indices are 1-based; the point
/// class uses index 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub component: u32,
    pub kind: ClassKind,
    pub index: u32,
}

impl SurfaceClass {
    pub fn pt(component: u32) -> Self {
        Self {
            component,
            kind: ClassKind::Pt,
            index: 0,
        }
    }

    pub fn a(component: u32, index: u32) -> Self {
        Self {
            component,
            kind: ClassKind::A,
            index,
        }
    }

    pub fn b(component: u32, index: u32) -> Self {
        Self {
            component,
            kind: ClassKind::B,
            index,
        }
    }

    pub fn d(component: u32, index: u32) -> Self {
        Self {
            component,
            kind: ClassKind::D,
            index,
        }
    }

    pub fn degree(&self) -> u8 {
        match self.kind {
            ClassKind::Pt => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClassKind::Pt => write!(f, "c{}.pt", self.component),
            ClassKind::A => write!(f, "c{}.a{}", self.component, self.index),
            ClassKind::B => write!(f, "c{}.b{}", self.component, self.index),
            ClassKind::D => write!(f, "c{}.d{}", self.component, self.index),
        }
    }
}

/// Validate the curve data against the surface.
pub fn validate_curve(s: SurfaceSpec, c: TwistCurveSpec) -> Result<()> {
    match c {
        TwistCurveSpec::NonSeparating => {
            if s.genus == 0 {
                return Err(Error::InvalidCurve(
                    "a genus-0 surface has no non-separating simple closed curve".into(),
                ));
            }
        }
        TwistCurveSpec::Separating { g1, b1, g2, b2 } => {
            if g1 + g2 != s.genus || b1 + b2 != s.boundary_count {
                return Err(Error::InvalidCurve(format!(
                    "sides ({g1}, {b1}) and ({g2}, {b2}) do not add up to genus {} with {} boundary circles",
                    s.genus, s.boundary_count
                )));
            }
            for (side, g, b) in [(1, g1, b1), (2, g2, b2)] {
                if g == 0 && b == 0 {
                    return Err(Error::InvalidCurve(format!(
                        "side {side} is a disk, so the curve is null-homotopic"
                    )));
                }
            }
        }
    }
    Ok(())
}

pub fn complement(s: SurfaceSpec, c: TwistCurveSpec) -> Result<ComplementSurface> {
    validate_curve(s, c)?;
    let components = match c {
        TwistCurveSpec::NonSeparating => vec![ComplementComponent {
            genus: s.genus - 1,
            boundary_count: s.boundary_count + 2,
            left_boundary: Some(1),
            right_boundary: Some(2),
        }],
        TwistCurveSpec::Separating { g1, b1, g2, b2 } => vec![
            ComplementComponent {
                genus: g1,
                boundary_count: b1 + 1,
                left_boundary: Some(1),
                right_boundary: None,
            },
            ComplementComponent {
                genus: g2,
                boundary_count: b2 + 1,
                left_boundary: None,
                right_boundary: Some(1),
            },
        ],
    };
    let cs = ComplementSurface {
        surface: s,
        curve: c,
        components,
    };
    debug_assert_eq!(cs.euler_characteristic(), s.euler_characteristic());
    Ok(cs)
}

/// Which edge of the removed annulus a boundary circle came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnulusSide {
    /// The `x = 0` edge.
    Left,
    /// The `x = 1` edge.
    Right,
}

impl ComplementSurface {
    /// A lone compact surface of genus `genus` with `boundary_count ≥ 1`
    /// circles, with both annulus edges placed on circle 1. Useful for
    /// studying the homology of a single piece.
    pub fn standalone(genus: u32, boundary_count: u32) -> Result<Self> {
        if boundary_count == 0 {
            return Err(Error::OutOfRange(
                "a standalone piece needs at least one boundary circle".into(),
            ));
        }
        Ok(Self {
            surface: SurfaceSpec::new(genus, boundary_count),
            curve: TwistCurveSpec::NonSeparating,
            components: vec![ComplementComponent {
                genus,
                boundary_count,
                left_boundary: Some(1),
                right_boundary: Some(1),
            }],
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components
            .iter()
            .map(ComplementComponent::euler_characteristic)
            .sum()
    }

    pub fn component(&self, component: u32) -> Result<&ComplementComponent> {
        component
            .checked_sub(1)
            .and_then(|i| self.components.get(i as usize))
            .ok_or_else(|| Error::OutOfRange(format!("no component {component}")))
    }

    /// 1-based component index and boundary index of the given annulus edge.
    pub fn annulus_boundary(&self, side: AnnulusSide) -> (u32, u32) {
        self.components
            .iter()
            .enumerate()
            .find_map(|(i, comp)| {
                let b = match side {
                    AnnulusSide::Left => comp.left_boundary,
                    AnnulusSide::Right => comp.right_boundary,
                };
                b.map(|b| (i as u32 + 1, b))
            })
            .expect("every complement carries both annulus edges")
    }

    /// Class of boundary circle `index` of `component`, in the `d` basis.
    pub fn boundary_class(&self, component: u32, index: u32) -> Result<F2Combination> {
        let comp = self.component(component)?;
        let c = comp.boundary_count;
        if index == 0 || index > c {
            return Err(Error::OutOfRange(format!(
                "component {component} has {c} boundary circles, asked for {index}"
            )));
        }
        if index < c {
            return Ok(F2Combination::basis(SurfaceClass::d(component, index).into()));
        }
        Ok(F2Combination::from_labels(
            (1..c).map(|j| SurfaceClass::d(component, j).into()),
        ))
    }

    pub fn point_class(&self, component: u32) -> Result<F2Combination> {
        self.component(component)?;
        Ok(F2Combination::basis(SurfaceClass::pt(component).into()))
    }

    /// Basis classes in storage order.
    pub fn basis_classes(&self) -> Vec<SurfaceClass> {
        let mut out = Vec::new();
        for (i, comp) in self.components.iter().enumerate() {
            let k = i as u32 + 1;
            out.push(SurfaceClass::pt(k));
            for g in 1..=comp.genus {
                out.push(SurfaceClass::a(k, g));
                out.push(SurfaceClass::b(k, g));
            }
            for j in 1..comp.boundary_count {
                out.push(SurfaceClass::d(k, j));
            }
        }
        out
    }

    pub fn contains(&self, x: &SurfaceClass) -> bool {
        let Ok(comp) = self.component(x.component) else {
            return false;
        };
        match x.kind {
            ClassKind::Pt => x.index == 0,
            ClassKind::A | ClassKind::B => x.index >= 1 && x.index <= comp.genus,
            ClassKind::D => x.index >= 1 && x.index < comp.boundary_count,
        }
    }
}

/// H_*(Σ₀; F₂) with the basis described in the module docs.
pub fn homology(cs: &ComplementSurface) -> GradedF2Space {
    GradedF2Space::new(
        cs.basis_classes()
            .into_iter()
            .map(|c| (BasisLabel::Surface(c), c.degree()))
            .collect(),
    )
    .expect("surface basis labels are distinct")
}

/// `x ∩ y` on basis classes.
pub fn intersection_product(x: &SurfaceClass, y: &SurfaceClass) -> F2Combination {
    if x.component != y.component || x.index != y.index {
        return F2Combination::zero();
    }
    match (x.kind, y.kind) {
        (ClassKind::A, ClassKind::B) | (ClassKind::B, ClassKind::A) => {
            F2Combination::basis(SurfaceClass::pt(x.component).into())
        }
        _ => F2Combination::zero(),
    }
}

/// `Δ₀(x)` on a basis class; cup products of positive-degree classes vanish
/// because H² of a surface with nonempty boundary is zero.
pub fn diagonal_coproduct(x: &SurfaceClass) -> F2Combination {
    let pt: BasisLabel = SurfaceClass::pt(x.component).into();
    let xl: BasisLabel = (*x).into();
    match x.kind {
        ClassKind::Pt => F2Combination::basis(pt.tensor(&pt)),
        _ => F2Combination::from_labels([xl.tensor(&pt), pt.tensor(&xl)]),
    }
}

fn surface_class(label: &BasisLabel) -> Result<&SurfaceClass> {
    match label {
        BasisLabel::Surface(c) => Ok(c),
        other => Err(Error::UnknownLabel(other.to_string())),
    }
}

/// The intersection product as a map `H ⊗ H → H` of degree −2.
pub fn intersection_map(cs: &ComplementSurface) -> F2LinearMap {
    let h = homology(cs);
    F2LinearMap::from_fn(h.tensor(&h), h, -2, |label| {
        let [x, y] = label.factors() else {
            return Err(Error::Arity(format!("{label} is not a pair")));
        };
        Ok(intersection_product(surface_class(x)?, surface_class(y)?))
    })
    .expect("intersection table is homogeneous of degree -2")
}

/// The diagonal coproduct as a map `H → H ⊗ H` of degree 0.
pub fn diagonal_map(cs: &ComplementSurface) -> F2LinearMap {
    let h = homology(cs);
    F2LinearMap::from_fn(h.clone(), h.tensor(&h), 0, |label| {
        Ok(diagonal_coproduct(surface_class(label)?))
    })
    .expect("diagonal coproduct is homogeneous of degree 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus_two_nonsep() -> ComplementSurface {
        complement(SurfaceSpec::new(2, 0), TwistCurveSpec::NonSeparating).unwrap()
    }

    #[test]
    fn nonseparating_complement() {
        let cs = genus_two_nonsep();
        assert_eq!(cs.components.len(), 1);
        assert_eq!((cs.components[0].genus, cs.components[0].boundary_count), (1, 2));
        assert_eq!(homology(&cs).dims_by_degree(), vec![1, 3]);
    }

    #[test]
    fn separating_complement() {
        let cs = complement(
            SurfaceSpec::new(2, 0),
            TwistCurveSpec::Separating {
                g1: 1,
                b1: 0,
                g2: 1,
                b2: 0,
            },
        )
        .unwrap();
        let shape: Vec<_> = cs
            .components
            .iter()
            .map(|c| (c.genus, c.boundary_count))
            .collect();
        assert_eq!(shape, vec![(1, 1), (1, 1)]);
        assert_eq!(homology(&cs).dims_by_degree(), vec![2, 4]);
        assert_eq!(cs.annulus_boundary(AnnulusSide::Right), (2, 1));
    }

    #[test]
    fn genus_zero_nonseparating_is_invalid() {
        let err = complement(SurfaceSpec::new(0, 3), TwistCurveSpec::NonSeparating).unwrap_err();
        assert!(matches!(err, Error::InvalidCurve(_)));
    }

    #[test]
    fn mismatched_split_is_invalid() {
        let err = complement(
            SurfaceSpec::new(2, 0),
            TwistCurveSpec::Separating {
                g1: 1,
                b1: 0,
                g2: 0,
                b2: 0,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidCurve(_)));
    }

    #[test]
    fn disk_is_a_single_point_class() {
        let cs = ComplementSurface::standalone(0, 1).unwrap();
        assert_eq!(homology(&cs).dims_by_degree(), vec![1]);
        assert!(cs.boundary_class(1, 1).unwrap().is_zero());
    }

    #[test]
    fn products_on_basis() {
        let a = SurfaceClass::a(1, 1);
        let b = SurfaceClass::b(1, 1);
        let d = SurfaceClass::d(1, 1);
        let pt = SurfaceClass::pt(1);
        assert_eq!(
            intersection_product(&a, &b),
            F2Combination::basis(pt.into())
        );
        assert!(intersection_product(&d, &a).is_zero());
        assert!(intersection_product(&pt, &a).is_zero());
        assert!(intersection_product(&a, &a).is_zero());
        assert_eq!(diagonal_coproduct(&d).len(), 2);
    }

    #[test]
    fn closed_nonseparating_boundary_classes_agree() {
        let cs = genus_two_nonsep();
        let (lc, li) = cs.annulus_boundary(AnnulusSide::Left);
        let (rc, ri) = cs.annulus_boundary(AnnulusSide::Right);
        assert_eq!(cs.boundary_class(lc, li).unwrap(), cs.boundary_class(rc, ri).unwrap());
    }

    #[test]
    fn maps_have_expected_degrees() {
        let cs = genus_two_nonsep();
        assert_eq!(intersection_map(&cs).degree_shift(), -2);
        assert_eq!(diagonal_map(&cs).matrix().count_ones(), 1 + 2 * 3);
    }
}
