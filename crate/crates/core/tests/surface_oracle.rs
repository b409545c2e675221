use proptest::prelude::*;
use twistfloer_core::surface::{
    complement, diagonal_coproduct, homology, intersection_product, ClassKind, ComplementSurface,
};
use twistfloer_core::{BasisLabel, SurfaceClass, SurfaceSpec, TwistCurveSpec};
use twistfloer_oracles::{
    complement_components, diagonal_coproduct_by_duality, intersection_by_chords, CwSurface, OracleClass,
};

fn to_oracle(c: &SurfaceClass) -> Option<OracleClass> {
    let i = c.index as usize;
    match c.kind {
        ClassKind::Pt => None,
        ClassKind::A => Some(OracleClass::A(i)),
        ClassKind::B => Some(OracleClass::B(i)),
        ClassKind::D => Some(OracleClass::D(i)),
    }
}

#[test]
fn homology_matches_cw_model() {
    for h in 0..=3u32 {
        for c in 1..=4u32 {
            let cs = ComplementSurface::standalone(h, c).unwrap();
            let dims = homology(&cs).dims_by_degree();
            let cw = CwSurface::new(h as usize, c as usize);
            let betti = cw.betti();
            assert_eq!(dims[0], betti[0], "H0 of ({h}, {c})");
            assert_eq!(dims.get(1).copied().unwrap_or(0), betti[1], "H1 of ({h}, {c})");
            assert_eq!(betti[2], 0);
            assert!(cw.representatives_form_basis());
            assert!(cw.last_boundary_is_sum_of_others());
        }
    }
}

#[test]
fn intersection_table_matches_chords() {
    for h in 0..=3u32 {
        for c in 1..=4u32 {
            let cs = ComplementSurface::standalone(h, c).unwrap();
            let classes = cs.basis_classes();
            for x in &classes {
                for y in &classes {
                    let ours = intersection_product(x, y);
                    let expected = match (to_oracle(x), to_oracle(y)) {
                        (Some(a), Some(b)) => intersection_by_chords(h as usize, a, b),
                        _ => 0,
                    };
                    assert_eq!(ours.len() as u8, expected, "{x} . {y} on ({h}, {c})");
                    if expected == 1 {
                        assert!(ours.contains(&SurfaceClass::pt(1).into()));
                    }
                }
            }
        }
    }
}

#[test]
fn coproduct_matches_duality() {
    for h in 0..=3u32 {
        for c in 1..=4u32 {
            let cs = ComplementSurface::standalone(h, c).unwrap();
            let classes = cs.basis_classes();
            for (idx, x) in classes.iter().enumerate() {
                let ours = diagonal_coproduct(x);
                let theirs = diagonal_coproduct_by_duality(h as usize, c as usize, idx);
                assert_eq!(ours.len(), theirs.len());
                for (u, v) in theirs {
                    let l: BasisLabel = classes[u].into();
                    let r: BasisLabel = classes[v].into();
                    assert!(ours.contains(&l.tensor(&r)), "{x}: missing {l}⊗{r}");
                }
            }
        }
    }
}

fn curve() -> impl Strategy<Value = (SurfaceSpec, TwistCurveSpec)> {
    prop_oneof![
        (1u32..5, 0u32..4).prop_map(|(g, b)| (SurfaceSpec::new(g, b), TwistCurveSpec::NonSeparating)),
        (0u32..3, 0u32..3, 0u32..3, 0u32..3)
            .prop_filter("no disk sides", |(g1, b1, g2, b2)| g1 + b1 > 0 && g2 + b2 > 0)
            .prop_map(|(g1, b1, g2, b2)| (
                SurfaceSpec::new(g1 + g2, b1 + b2),
                TwistCurveSpec::Separating { g1, b1, g2, b2 }
            )),
    ]
}

proptest! {
    #[test]
    fn complement_matches_euler_arithmetic((s, c) in curve()) {
        let cs = complement(s, c).unwrap();
        let split = match c {
            TwistCurveSpec::NonSeparating => None,
            TwistCurveSpec::Separating { g1, b1, g2, b2 } => Some((g1 as usize, b1 as usize, g2 as usize, b2 as usize)),
        };
        let expected = complement_components(s.genus as usize, s.boundary_count as usize, split).unwrap();
        let ours: Vec<_> = cs.components.iter().map(|c| (c.genus as usize, c.boundary_count as usize)).collect();
        prop_assert_eq!(ours, expected);
        prop_assert_eq!(cs.euler_characteristic(), s.euler_characteristic());
    }

    #[test]
    fn boundary_classes_sum_to_zero((s, c) in curve()) {
        let cs = complement(s, c).unwrap();
        for (i, comp) in cs.components.iter().enumerate() {
            let k = i as u32 + 1;
            let mut total = twistfloer_core::F2Combination::zero();
            for j in 1..=comp.boundary_count {
                total.add(&cs.boundary_class(k, j).unwrap());
            }
            prop_assert!(total.is_zero());
        }
    }

    #[test]
    fn intersection_is_symmetric_and_degree_two((s, c) in curve()) {
        let cs = complement(s, c).unwrap();
        let classes = cs.basis_classes();
        for x in &classes {
            for y in &classes {
                let xy = intersection_product(x, y);
                prop_assert_eq!(&xy, &intersection_product(y, x));
                if !xy.is_zero() {
                    prop_assert_eq!(x.degree() + y.degree(), 2);
                }
            }
        }
    }
}
