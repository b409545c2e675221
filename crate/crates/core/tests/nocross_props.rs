use num_rational::Rational64;
use proptest::prelude::*;
use twistfloer_core::nocross::{
    enumerate_crossing_configs, local_energy_lhs, same_slice_check, SameSliceVerdict,
};
use twistfloer_core::{CobordismMode, CrossingScenario, H1ClassXD};

fn scenario(mode: CobordismMode, m: u32, n: u32, bound: i64, relaxed: bool) -> CrossingScenario {
    CrossingScenario { mode, m, n, bound, relaxed }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn strict_runs_are_empty(m in 1u32..4, n in 1u32..4, bound in 0i64..5, coproduct in any::<bool>()) {
        let mode = if coproduct { CobordismMode::Coproduct } else { CobordismMode::Product };
        let cert = enumerate_crossing_configs(&scenario(mode, m, n, bound, false), 2).unwrap();
        prop_assert!(cert.is_empty());
        let tallied: u64 = cert.branches.iter().flat_map(|b| &b.eliminated).map(|t| t.count).sum();
        prop_assert_eq!(tallied + cert.out_of_box, cert.examined);
    }

    #[test]
    fn relaxed_survivors_grow_with_the_box(m in 1u32..4, n in 1u32..4, bound in 0i64..4) {
        let small = enumerate_crossing_configs(&scenario(CobordismMode::Product, m, n, bound, true), 2).unwrap();
        let large = enumerate_crossing_configs(&scenario(CobordismMode::Product, m, n, bound + 1, true), 2).unwrap();
        prop_assert!(small.survivor_count >= 1);
        prop_assert!(large.survivor_count >= small.survivor_count);
    }

    #[test]
    fn same_slice_witness_is_negative(m in 1u32..7, n in 1u32..7, i in 0u32..7, j in 0u32..7) {
        prop_assume!(i <= m && j <= n);
        match same_slice_check(m, n, i, j, i + j).unwrap() {
            SameSliceVerdict::Allowed { .. } => prop_assert_eq!(i * n, j * m),
            SameSliceVerdict::ExcludedByEnergy { interval, class, witness_x, witness_value } => {
                prop_assert!(interval.0 < witness_x && witness_x < interval.1);
                prop_assert!(witness_value < Rational64::from_integer(0));
                prop_assert_eq!(witness_value, local_energy_lhs(class, witness_x, m as i64, n as i64));
            }
            other => prop_assert!(false, "unexpected {other:?}"),
        }
    }

    #[test]
    fn flux_is_linear(p in -9i64..9, q1 in -9i64..9, q2 in -9i64..9, num in 0i64..8) {
        let x = Rational64::new(num, 7);
        let a = H1ClassXD::new(p, q1, q2);
        let b = H1ClassXD::new(q2, p, q1);
        prop_assert_eq!(
            local_energy_lhs(a + b, x, 3, 5),
            local_energy_lhs(a, x, 3, 5) + local_energy_lhs(b, x, 3, 5)
        );
    }
}

#[test]
fn cylinder_is_empty() {
    for m in 1..=4 {
        let cert = enumerate_crossing_configs(&scenario(CobordismMode::Cylinder, m, 0, 6, false), 1).unwrap();
        assert!(cert.is_empty());
    }
}

#[test]
fn certificate_entries_cover_every_elimination() {
    let cert = enumerate_crossing_configs(&scenario(CobordismMode::Coproduct, 2, 2, 3, false), 2).unwrap();
    let entries = cert.entries();
    assert!(!entries.is_empty());
    assert_eq!(entries.iter().map(|e| e.count).sum::<u64>() + cert.out_of_box, cert.examined);
}
