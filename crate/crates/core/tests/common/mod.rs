#![allow(dead_code)]

use bisector::boundary::tangent_cone;
use bisector::{
    Field, FieldElement, Line, MPoly, ProjectivePoint, Quadrilateral, StandardFormField,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(field: Field, rng: &mut ChaCha8Rng) -> FieldElement {
    match field {
        Field::Prime(p) => field.int(rng.gen_range(0..p as i64)),
        _ => field
            .ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
            .unwrap(),
    }
}

pub fn random_nonzero(field: Field, rng: &mut ChaCha8Rng) -> FieldElement {
    loop {
        let x = random_element(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_line(field: Field, rng: &mut ChaCha8Rng) -> Line {
    loop {
        let (t, u, v) = (
            random_element(field, rng),
            random_element(field, rng),
            random_element(field, rng),
        );
        if let Ok(l) = Line::new(t, u, v) {
            return l;
        }
    }
}

pub fn random_quadrilateral(field: Field, rng: &mut ChaCha8Rng) -> Quadrilateral {
    loop {
        let s: Vec<Line> = (0..4).map(|_| random_line(field, rng)).collect();
        if let Ok(q) = Quadrilateral::new(s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone()) {
            return q;
        }
    }
}

pub fn random_triple(field: Field, rng: &mut ChaCha8Rng) -> StandardFormField {
    loop {
        let h = random_element(field, rng);
        let k = random_element(field, rng);
        let mu = random_nonzero(field, rng);
        if let Ok(f) = StandardFormField::new(h, k, mu) {
            return f;
        }
    }
}

pub fn random_cubic(field: Field, rng: &mut ChaCha8Rng) -> StandardFormField {
    loop {
        let f = random_triple(field, rng);
        if f.class() == bisector::BisectorFieldClass::Cubic {
            return f;
        }
    }
}

/// Whether the projective line `tX − uY + vZ = 0` touches the projective
/// curve D = 0 at `pt`: gradient proportional at smooth points, tangent
/// cone containing the line's direction at singular ones. Works in the
/// affine chart where `pt`'s last nonzero coordinate is 1.
pub fn touches_projective(d: &MPoly, ell: &[FieldElement; 3], pt: &ProjectivePoint) -> bool {
    let c = pt.coords();
    if !d.eval(c).is_zero() {
        return false;
    }
    let dot = (0..3).fold(c[0].field().zero(), |acc, i| &acc + &(&ell[i] * &c[i]));
    if !dot.is_zero() {
        return false;
    }
    let grad: Vec<FieldElement> = (0..3).map(|i| d.derivative(i).eval(c)).collect();
    if grad.iter().any(|g| !g.is_zero()) {
        // cross product zero
        return (0..3).all(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            (&(&grad[j] * &ell[k]) - &(&grad[k] * &ell[j])).is_zero()
        });
    }
    let field = d.field();
    let j = (0..3)
        .rev()
        .find(|&i| !c[i].is_zero())
        .expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
    let mut images = vec![MPoly::zero(field, 2); 3];
    images[others[0]] = MPoly::var(field, 2, 0);
    images[others[1]] = MPoly::var(field, 2, 1);
    images[j] = MPoly::constant(field.one(), 2);
    let chart = d.compose(&images);
    let cone = tangent_cone(&chart, &c[others[0]], &c[others[1]]);
    let (la, lb) = (&ell[others[0]], &ell[others[1]]);
    cone.eval(&[lb.clone(), -la]).is_zero()
}

/// Line coefficients in the `aX + bY + cZ` convention.
pub fn line_vector(l: &Line) -> [FieldElement; 3] {
    [l.t().clone(), -l.u(), l.v().clone()]
}
