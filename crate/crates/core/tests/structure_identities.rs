use proptest::prelude::*;
use twistfloer_core::floer::{hf_space, BoundaryIdentification, TwistKind};
use twistfloer_core::structmaps::{
    boundary_consistency_with, check_associativity, check_coassociativity,
    check_coassociativity_with, check_cocommutativity, product_via_composition,
};
use twistfloer_core::surface::{AnnulusSide, ComplementSurface};
use twistfloer_core::{coproduct_map, product_map, BasisLabel, F2Combination, Result, SurfaceClass, SurfaceSpec, TwistCurveSpec};

fn topologies() -> Vec<(SurfaceSpec, TwistCurveSpec)> {
    vec![
        (SurfaceSpec::new(2, 0), TwistCurveSpec::NonSeparating),
        (SurfaceSpec::new(1, 2), TwistCurveSpec::NonSeparating),
        (
            SurfaceSpec::new(4, 0),
            TwistCurveSpec::Separating { g1: 2, b1: 0, g2: 2, b2: 0 },
        ),
    ]
}

fn powers() -> impl Strategy<Value = (usize, u32, u32, u32)> {
    (0usize..3, 1u32..4, 1u32..4, 1u32..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identities_hold((t, m, n, p) in powers()) {
        let tops = topologies();
        let (s, c) = tops[t % tops.len()];
        prop_assert!(check_associativity(s, c, m, n, p).unwrap().all_pass());
        prop_assert!(check_coassociativity(s, c, m, n, p).unwrap().all_pass());
        prop_assert!(check_cocommutativity(s, c, m, n).unwrap().all_pass());
    }

    #[test]
    fn product_routes_agree((t, m, n, _) in powers()) {
        let tops = topologies();
        let (s, c) = tops[t % tops.len()];
        prop_assert_eq!(product_map(s, c, m, n).unwrap(), product_via_composition(s, c, m, n).unwrap());
    }
}

#[test]
fn twist_inputs_multiply_to_zero() {
    let (s, c) = (SurfaceSpec::new(2, 0), TwistCurveSpec::NonSeparating);
    let mu = product_map(s, c, 2, 3).unwrap();
    for (j, label) in mu.source().labels().enumerate() {
        if label.factors().iter().any(|f| matches!(f, BasisLabel::Twist(_))) {
            assert!(mu.column(j).is_zero(), "{label}");
        }
    }
}

#[test]
fn hf_one_has_no_twist_part() {
    let fs = hf_space(SurfaceSpec::new(2, 0), TwistCurveSpec::NonSeparating, 1).unwrap();
    assert_eq!(fs.twist.dim(), 0);
}

/// Sends both edge points to the sum of the two point classes.
struct SummedPoints;

impl BoundaryIdentification for SummedPoints {
    fn resolve(&self, kind: TwistKind, slice: u32, _power: u32, cs: &ComplementSurface) -> Result<F2Combination> {
        let side = if slice == 0 { AnnulusSide::Left } else { AnnulusSide::Right };
        let (comp, b) = cs.annulus_boundary(side);
        Ok(match kind {
            TwistKind::Elliptic if slice == 0 => F2Combination::from_labels([
                SurfaceClass::pt(1).into(),
                SurfaceClass::pt(2).into(),
            ]),
            TwistKind::Elliptic => cs.point_class(comp)?,
            TwistKind::Hyperbolic => cs.boundary_class(comp, b)?,
        })
    }
}

#[test]
fn alternative_identification_is_detected() {
    let s = SurfaceSpec::new(4, 0);
    let c = TwistCurveSpec::Separating { g1: 2, b1: 0, g2: 2, b2: 0 };
    let coassoc = check_coassociativity_with(s, c, 1, 1, 1, &SummedPoints).unwrap();
    let boundary = boundary_consistency_with(s, c, 1, 1, &SummedPoints).unwrap();
    assert!(!coassoc.all_pass() || boundary.iter().any(|x| !x.pass));
}

#[test]
fn coproduct_of_boundary_elliptic_is_diagonal() {
    let (s, c) = (SurfaceSpec::new(2, 0), TwistCurveSpec::NonSeparating);
    let delta = coproduct_map(s, c, 2, 3).unwrap();
    let pt: BasisLabel = SurfaceClass::pt(1).into();
    assert_eq!(delta.image_of(&pt).unwrap(), F2Combination::basis(pt.tensor(&pt)));
}
