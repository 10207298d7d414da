mod common;

use bisector::boundary::{
    boundary, boundary_of_quadrilateral, dual_wronskian, is_moving_bisector, moving_bisector,
    parabola_normalizer, singular_points, tangency_check, tangency_point,
};
use bisector::census::all_lines;
use bisector::standard::standardize;
use bisector::{
    AffineMap, BisectorFieldClass, BoundaryCurve, Field, MPoly, PlanePoint, ProjectivePoint,
    StandardFormField,
};
use common::*;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![5u64, 7, 11, 13])
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

fn same_curve(a: &BoundaryCurve, b: &BoundaryCurve) -> bool {
    match (a, b) {
        (BoundaryCurve::Point(x1, y1), BoundaryCurve::Point(x2, y2)) => x1 == x2 && y1 == y2,
        _ => {
            a.variant() == b.variant()
                && a.polynomial()
                    .unwrap()
                    .is_scalar_multiple_of(b.polynomial().unwrap())
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn boundary_is_affinely_covariant(p in prime(), seed in any::<u64>()) {
        let field = Field::prime(p).unwrap();
        let mut r = rng(seed);
        let q = random_quadrilateral(field, &mut r);
        let m = random_affine(field, &mut r);
        let before = boundary_of_quadrilateral(&q).unwrap();
        let after = boundary_of_quadrilateral(&m.apply_quadrilateral(&q)).unwrap();
        let pushed = match &before {
            BoundaryCurve::Point(x, y) => {
                let (a, b) = m.apply(x, y);
                BoundaryCurve::Point(a, b)
            }
            BoundaryCurve::Parabola(d) => BoundaryCurve::Parabola(m.push_curve(d)),
            BoundaryCurve::Quartic(d) => BoundaryCurve::Quartic(m.push_curve(d)),
        };
        prop_assert!(same_curve(&pushed, &after));
    }

    #[test]
    fn moving_bisectors_touch_the_boundary(p in prime(), seed in any::<u64>()) {
        let field = Field::prime(p).unwrap();
        let f = random_triple(field, &mut rng(seed));
        if f.class() == BisectorFieldClass::Linear {
            return Ok(());
        }
        let fp = f.polynomials();
        let delta = boundary(&f).unwrap().polynomial().unwrap().clone();
        for l in all_lines(field) {
            if !is_moving_bisector(&fp, &l) {
                continue;
            }
            if let Ok((x, y)) = tangency_point(&fp, &l) {
                prop_assert!(tangency_check(&delta, &l, &PlanePoint::new(x, y)).unwrap());
            }
        }
    }

    #[test]
    fn flexes_map_to_singular_points(p in prime(), seed in any::<u64>()) {
        let field = Field::prime(p).unwrap();
        let f = random_cubic(field, &mut rng(seed));
        let fp = f.polynomials();
        let singular = singular_points(&f).unwrap();
        for s in dual_wronskian(&fp).p1_roots().unwrap() {
            let Some(l) = moving_bisector(&fp, &s) else { continue };
            if let Ok(pt) = tangency_point(&fp, &l) {
                prop_assert!(singular.contains(&pt));
            }
        }
    }

    #[test]
    fn quadratic_boundary_normalizes_over_prime_fields(p in prime(), seed in any::<u64>()) {
        let field = Field::prime(p).unwrap();
        let mut r = rng(seed);
        let h = random_nonzero(field, &mut r);
        let k = random_nonzero(field, &mut r);
        let f = StandardFormField::new(h.clone(), k.clone(), (&k * &k).checked_div(&(&h * &h)).unwrap()).unwrap();
        let m = parabola_normalizer(&f).unwrap();
        let delta = boundary(&f).unwrap().polynomial().unwrap().clone();
        let target = MPoly::from_terms(field, 2, [(field.one(), vec![0, 1]), (field.int(-1), vec![2, 0])]);
        prop_assert!(m.push_curve(&delta).is_scalar_multiple_of(&target));
        prop_assert_eq!(m.apply(&h, &k), (field.zero(), field.zero()));
    }
}

#[test]
fn rational_singular_points_are_singular() {
    let q = Field::Rational;
    let mut r = rng(3);
    for _ in 0..10 {
        let f = random_cubic(q, &mut r);
        let d = boundary(&f).unwrap().polynomial().unwrap().clone();
        for (x, y) in singular_points(&f).unwrap() {
            let at = [x, y];
            assert!(
                d.eval(&at).is_zero()
                    && d.derivative(0).eval(&at).is_zero()
                    && d.derivative(1).eval(&at).is_zero()
            );
        }
    }
    // the deltoid has three cusps, one of them rational
    let deltoid = StandardFormField::parse(q, "0", "1/2", "-1").unwrap();
    assert_eq!(
        singular_points(&deltoid).unwrap(),
        vec![(q.zero(), q.int(2))]
    );
}

#[test]
fn dual_images_lie_on_the_boundary() {
    let field = Field::prime(7).unwrap();
    let mut r = rng(17);
    for _ in 0..10 {
        let f = random_cubic(field, &mut r);
        let d = boundary(&f).unwrap().homogenized().unwrap();
        let fp = f.polynomials();
        for x in ProjectivePoint::all(field) {
            if let Ok(y) = bisector::boundary::dual_map_f(&fp, &x) {
                assert!(d.eval(y.coords()).is_zero());
            }
        }
    }
}

#[test]
fn standardized_boundary_pulls_back() {
    let q = Field::Rational;
    let mut r = rng(8);
    for _ in 0..10 {
        let quad = random_quadrilateral(q, &mut r);
        let (m, f) = standardize(&quad).unwrap();
        let b = boundary_of_quadrilateral(&quad).unwrap();
        if let (Some(p), Some(s)) = (b.polynomial(), boundary(&f).unwrap().polynomial()) {
            assert!(m.push_curve(p).is_scalar_multiple_of(s));
        }
    }
}
