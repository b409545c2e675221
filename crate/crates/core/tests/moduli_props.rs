use proptest::prelude::*;
use twistfloer_core::moduli::{
    bisect_c_infinity, coproduct_from_cascades, moduli_shape, shoot_c_infinity, solve_end_ode,
    CutoffProfile, EndOde, EndSide, SampleGrid,
};
use twistfloer_core::structmaps::coproduct_map;
use twistfloer_core::floer::interior_twist_space;
use twistfloer_core::{SurfaceSpec, TwistCurveSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn shooting_and_bisection_agree(coeff in 1u32..7, k_frac in 0u32..7) {
        let k = k_frac.min(coeff);
        let ode = EndOde::new(coeff, k, EndSide::Positive, CutoffProfile::default()).unwrap();
        let shot = shoot_c_infinity(&ode).unwrap();
        let bis = bisect_c_infinity(&ode, 6.0).unwrap();
        prop_assert!((shot.c_infinity - bis).abs() < 1e-9);
    }

    #[test]
    fn negative_ends_converge(coeff in 1u32..6, k in 0u32..6, c in -3.0f64..3.0) {
        prop_assume!(k <= coeff);
        let ode = EndOde::new(coeff, k, EndSide::Negative, CutoffProfile::default()).unwrap();
        let grid = SampleGrid { start: 0.0, end: 20.0, step: 0.5 };
        let traj = solve_end_ode(&ode, c, &grid).unwrap();
        prop_assert!((traj.x.last().unwrap() - ode.limit()).abs() < 1e-6);
    }

    #[test]
    fn shape_is_deck_invariant(m in 1u32..5, n in 1u32..5, k1 in -6i64..10, k2 in -6i64..10, t in -3i64..3) {
        let (mi, ni) = (i64::from(m), i64::from(n));
        let base = moduli_shape(m, n, k1 + k2, k1, k2).unwrap();
        let shifted = moduli_shape(m, n, k1 + k2 + t * (mi + ni), k1 + t * mi, k2 + t * ni).unwrap();
        prop_assert_eq!(base, shifted);
    }
}

#[test]
fn perturbed_start_diverges() {
    let ode = EndOde::new(5, 3, EndSide::Positive, CutoffProfile::default()).unwrap();
    let c = ode.c_infinity().unwrap();
    for delta in [1e-3, -1e-3] {
        let far = ode.value_at_depth(c + delta, 30.0).unwrap();
        assert!((far - 0.6).abs() > 1.0);
    }
}

#[test]
fn cascades_reproduce_the_interior_block() {
    let (s, c) = (SurfaceSpec::new(2, 0), TwistCurveSpec::NonSeparating);
    for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 4)] {
        let source = interior_twist_space(m + n);
        let target = interior_twist_space(m).tensor(&interior_twist_space(n));
        let block = coproduct_map(s, c, m, n).unwrap().restrict(&source, &target).unwrap();
        assert_eq!(coproduct_from_cascades(m, n).unwrap(), block, "({m}, {n})");
    }
}
