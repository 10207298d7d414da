mod common;

use std::collections::HashSet;

use bisector::census::{all_lines, brute_force_bisectors};
use bisector::dual::{is_bisector_dual, is_null, partner};
use bisector::{AffineMap, Field, FieldPolynomials, Line};
use common::*;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11])
}

fn random_affine(field: Field, r: &mut rand_chacha::ChaCha8Rng) -> AffineMap {
    loop {
        let e: Vec<_> = (0..6).map(|_| random_element(field, r)).collect();
        if let Ok(m) = AffineMap::new(
            e[0].clone(),
            e[1].clone(),
            e[2].clone(),
            e[3].clone(),
            e[4].clone(),
            e[5].clone(),
        ) {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_test_matches_definition(p in prime(), seed in any::<u64>()) {
        let field = Field::prime(p).unwrap();
        let q = random_quadrilateral(field, &mut rng(seed));
        let fp = FieldPolynomials::from_quadrilateral(&q).unwrap();
        let brute: HashSet<Line> = brute_force_bisectors(&q, 13).unwrap().into_iter().collect();
        for l in all_lines(field) {
            prop_assert_eq!(brute.contains(&l), is_bisector_dual(&fp, &l), "line {}", l);
        }
    }

    #[test]
    fn bisector_sets_follow_affine_maps(p in prime(), seed in any::<u64>()) {
        let field = Field::prime(p).unwrap();
        let mut r = rng(seed);
        let q = random_quadrilateral(field, &mut r);
        let m = random_affine(field, &mut r);
        let image = m.apply_quadrilateral(&q);
        let moved: HashSet<Line> = brute_force_bisectors(&q, 13).unwrap().iter().map(|l| m.apply_line(l)).collect();
        let direct: HashSet<Line> = brute_force_bisectors(&image, 13).unwrap().into_iter().collect();
        prop_assert_eq!(moved, direct);
    }

    #[test]
    fn rational_fields_follow_affine_maps(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = random_quadrilateral(Field::Rational, &mut r);
        let m = random_affine(Field::Rational, &mut r);
        let image = m.apply_quadrilateral(&q);
        let fp = FieldPolynomials::from_quadrilateral(&q).unwrap();
        let fi = FieldPolynomials::from_quadrilateral(&image).unwrap();
        prop_assert_eq!(fp.class(), fi.class());
        for _ in 0..8 {
            let l = random_line(Field::Rational, &mut r);
            prop_assert_eq!(is_bisector_dual(&fp, &l), is_bisector_dual(&fi, &m.apply_line(&l)));
        }
    }

    #[test]
    fn partners_share_midpoints(p in prime(), seed in any::<u64>()) {
        let field = Field::prime(p).unwrap();
        let q = random_quadrilateral(field, &mut rng(seed));
        let fp = FieldPolynomials::from_quadrilateral(&q).unwrap();
        for l in brute_force_bisectors(&q, 13).unwrap() {
            if is_null(&fp, &l) {
                continue;
            }
            let l2 = partner(&q, &l).unwrap();
            prop_assert!(is_bisector_dual(&fp, &l2));
            prop_assert_eq!(partner(&q, &l2).unwrap(), l.clone());
            if &l == q.a() {
                prop_assert_eq!(&l2, q.a1());
            }
        }
    }
}
