use proptest::prelude::*;
use twistfloer_core::gf2::{compose, rank, swap_map, tensor, F2Combination, F2LinearMap, F2Matrix, GradedF2Space};
use twistfloer_core::BasisLabel;
use twistfloer_oracles::{kron_elementwise, naive_product, rank_by_span};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0u8..2, cols), rows)
}

fn dims() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..9, 1usize..9, 1usize..9)
}

fn space(prefix: &str, dim: usize) -> GradedF2Space {
    GradedF2Space::new((0..dim).map(|i| (BasisLabel::named(format!("{prefix}{i}")), 0)).collect()).unwrap()
}

proptest! {
    #[test]
    fn product_matches_naive((a, b) in dims().prop_flat_map(|(r, k, c)| (matrix(r, k), matrix(k, c)))) {
        let ma = F2Matrix::from_rows(&a).unwrap();
        let mb = F2Matrix::from_rows(&b).unwrap();
        prop_assert_eq!(ma.mul(&mb).unwrap().to_rows(), naive_product(&a, &b));
    }

    #[test]
    fn rank_matches_span(a in matrix(5, 7)) {
        prop_assert_eq!(rank(&F2Matrix::from_rows(&a).unwrap()), rank_by_span(&a));
    }

    #[test]
    fn kron_matches_elementwise(a in matrix(3, 2), b in matrix(2, 4)) {
        let k = F2Matrix::from_rows(&a).unwrap().kron(&F2Matrix::from_rows(&b).unwrap());
        prop_assert_eq!(k.to_rows(), kron_elementwise(&a, &b));
    }

    #[test]
    fn transpose_reverses_products(a in matrix(4, 3), b in matrix(3, 5)) {
        let (ma, mb) = (F2Matrix::from_rows(&a).unwrap(), F2Matrix::from_rows(&b).unwrap());
        prop_assert_eq!(
            ma.mul(&mb).unwrap().transpose(),
            mb.transpose().mul(&ma.transpose()).unwrap()
        );
    }

    #[test]
    fn tensor_of_composites(a in matrix(3, 2), b in matrix(2, 3), c in matrix(2, 2), d in matrix(2, 2)) {
        let map = |rows: &Vec<Vec<u8>>, src: &str, tgt: &str| {
            F2LinearMap::new(space(src, rows[0].len()), space(tgt, rows.len()), 0, F2Matrix::from_rows(rows).unwrap()).unwrap()
        };
        let (fa, fb) = (map(&a, "y", "z"), map(&b, "x", "y"));
        let (fc, fd) = (map(&c, "v", "w"), map(&d, "u", "v"));
        let lhs = tensor(&compose(&fa, &fb).unwrap(), &compose(&fc, &fd).unwrap());
        let rhs = compose(&tensor(&fa, &fc), &tensor(&fb, &fd)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn combinations_cancel_in_pairs(labels in prop::collection::vec(0u8..6, 0..12)) {
        let mut c = F2Combination::zero();
        for l in &labels {
            c.add_label(BasisLabel::named(format!("v{l}")));
        }
        let doubled = { let mut d = c.clone(); d.add(&c); d };
        prop_assert!(doubled.is_zero());
        for l in 0u8..6 {
            let odd = labels.iter().filter(|&&x| x == l).count() % 2 == 1;
            prop_assert_eq!(c.contains(&BasisLabel::named(format!("v{l}"))), odd);
        }
    }
}

#[test]
fn swap_is_an_involution() {
    let (v, w) = (space("v", 3), space("w", 2));
    let there = swap_map(&v, &w).unwrap();
    let back = swap_map(&w, &v).unwrap();
    assert_eq!(compose(&back, &there).unwrap(), F2LinearMap::identity(v.tensor(&w)));
}

#[test]
fn degree_violations_are_rejected() {
    let src = GradedF2Space::new(vec![(BasisLabel::named("x"), 0)]).unwrap();
    let tgt = GradedF2Space::new(vec![(BasisLabel::named("y"), 1)]).unwrap();
    let m = F2Matrix::from_rows(&[[1u8]]).unwrap();
    assert!(F2LinearMap::new(src.clone(), tgt.clone(), 0, m.clone()).is_err());
    assert!(F2LinearMap::new(src, tgt, 1, m).is_ok());
}
