//! Shape and position polynomials, the reduced dual polynomial, and the
//! predicates built on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{disc_quadratic, BinaryForm, P1Point};
use crate::plane::{intersect, mid_pair, Line, PlanePoint, Quadrilateral};
use crate::poly::MPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BisectorFieldClass {
    Linear,
    Quadratic,
    Cubic,
}

impl BisectorFieldClass {
    pub fn from_degree(d: usize) -> BisectorFieldClass {
        match d {
            1 => BisectorFieldClass::Linear,
            2 => BisectorFieldClass::Quadratic,
            3 => BisectorFieldClass::Cubic,
            _ => panic!("reduced dual degree {d} out of range"),
        }
    }

    pub fn degree(self) -> usize {
        match self {
            BisectorFieldClass::Linear => 1,
            BisectorFieldClass::Quadratic => 2,
            BisectorFieldClass::Cubic => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BisectorFieldClass::Linear => "linear",
            BisectorFieldClass::Quadratic => "quadratic",
            BisectorFieldClass::Cubic => "cubic",
        }
    }
}

impl fmt::Display for BisectorFieldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BisectorFieldClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(BisectorFieldClass::Linear),
            "quadratic" => Ok(BisectorFieldClass::Quadratic),
            "cubic" => Ok(BisectorFieldClass::Cubic),
            _ => Err(Error::Parse(format!("unknown class {s:?}"))),
        }
    }
}

/// Φ, Ψ and the reduced pair (φ, ψ) with `Φψ = Ψφ`, φ normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPolynomials {
    shape: BinaryForm,
    position: BinaryForm,
    common: BinaryForm,
    phi: BinaryForm,
    psi: BinaryForm,
}

/// `u_L·T − t_L·U`.
fn theta(l: &Line) -> BinaryForm {
    BinaryForm::linear(l.u().clone(), -l.t())
}

/// Θ_A, Θ_B, Θ_A′, Θ_B′: each the product of the other three factors, with
/// Θ_B and Θ_B′ taken from −Θ.
pub fn theta_factors(q: &Quadrilateral) -> [BinaryForm; 4] {
    let [a, b, a1, b1] = q.sides().map(theta);
    [
        b.mul(&a1).mul(&b1),
        a.mul(&a1).mul(&b1).neg(),
        a.mul(&b).mul(&b1),
        a.mul(&b).mul(&a1).neg(),
    ]
}

/// Φ = αT² − 2βTU + γU² from the closed forms, checked against
/// `T·Φ = Σ t_L Θ_L` and `U·Φ = Σ u_L Θ_L`.
pub fn shape_poly(q: &Quadrilateral) -> Result<BinaryForm> {
    let f = q.field();
    let (ta, ua) = (q.a().t(), q.a().u());
    let (tb, ub) = (q.b().t(), q.b().u());
    let (ta1, ua1) = (q.a1().t(), q.a1().u());
    let (tb1, ub1) = (q.b1().t(), q.b1().u());
    let p4 = |w: &FieldElement, x: &FieldElement, y: &FieldElement, z: &FieldElement| {
        &(&(w * x) * y) * z
    };
    let alpha = &(&(&p4(ta, ub, ua1, ub1) - &p4(ua, tb, ua1, ub1)) + &p4(ua, ub, ta1, ub1))
        - &p4(ua, ub, ua1, tb1);
    let beta = &p4(ta, ub, ta1, ub1) - &p4(ua, tb, ua1, tb1);
    let gamma = &(&(&p4(ta, tb, ta1, ub1) - &p4(ta, tb, ua1, tb1)) + &p4(ta, ub, ta1, tb1))
        - &p4(ua, tb, ta1, tb1);
    let phi = BinaryForm::new(f, vec![alpha, &beta * &f.int(-2), gamma]);

    let thetas = theta_factors(q);
    let mut sum_t = BinaryForm::zero(f, 3);
    let mut sum_u = BinaryForm::zero(f, 3);
    for (l, th) in q.sides().iter().zip(&thetas) {
        sum_t = sum_t.checked_add(&th.scale(l.t()))?;
        sum_u = sum_u.checked_add(&th.scale(l.u()))?;
    }
    let t = BinaryForm::linear(f.one(), f.zero());
    let u = BinaryForm::linear(f.zero(), f.one());
    if t.mul(&phi) != sum_t || u.mul(&phi) != sum_u {
        return Err(Error::IdentityCheckFailed("shape polynomial"));
    }
    if phi.is_zero() {
        return Err(Error::IdentityCheckFailed("shape polynomial vanishes"));
    }
    Ok(phi)
}

/// Ψ = Σ v_L Θ_L.
pub fn position_poly(q: &Quadrilateral) -> BinaryForm {
    let mut sum = BinaryForm::zero(q.field(), 3);
    for (l, th) in q.sides().iter().zip(theta_factors(q)) {
        sum = sum.checked_add(&th.scale(l.v())).expect("cubic forms");
    }
    sum
}

/// Divides out gcd(Φ, Ψ). When Ψ = 0, φ = 1 and ψ = 0.
pub fn reduce_dual(shape: &BinaryForm, position: &BinaryForm) -> Result<FieldPolynomials> {
    if shape.is_zero() {
        return Err(Error::ZeroForm);
    }
    let f = shape.field();
    if position.is_zero() {
        return Ok(FieldPolynomials {
            shape: shape.clone(),
            position: position.clone(),
            common: shape.clone(),
            phi: BinaryForm::constant(f.one()),
            psi: BinaryForm::zero(f, 1),
        });
    }
    let common = shape.gcd(position)?;
    let phi0 = shape.div_exact(&common)?;
    let psi0 = position.div_exact(&common)?;
    let lead = phi0
        .coeffs()
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero quotient")
        .clone();
    let inv = lead.inv()?;
    Ok(FieldPolynomials {
        shape: shape.clone(),
        position: position.clone(),
        common: common.scale(&lead),
        phi: phi0.scale(&inv),
        psi: psi0.scale(&inv),
    })
}

impl FieldPolynomials {
    pub fn from_quadrilateral(q: &Quadrilateral) -> Result<FieldPolynomials> {
        reduce_dual(&shape_poly(q)?, &position_poly(q))
    }

    pub fn field(&self) -> Field {
        self.shape.field()
    }

    /// Φ.
    pub fn shape(&self) -> &BinaryForm {
        &self.shape
    }

    /// Ψ.
    pub fn position(&self) -> &BinaryForm {
        &self.position
    }

    /// φ.
    pub fn phi(&self) -> &BinaryForm {
        &self.phi
    }

    /// ψ.
    pub fn psi(&self) -> &BinaryForm {
        &self.psi
    }

    /// The common factor Φ/φ (equal to Φ when Ψ = 0).
    pub fn common(&self) -> &BinaryForm {
        &self.common
    }

    /// Degree of the reduced dual polynomial ψ − Vφ.
    pub fn f_degree(&self) -> usize {
        1 + self.phi.degree()
    }

    pub fn class(&self) -> BisectorFieldClass {
        BisectorFieldClass::from_degree(self.f_degree())
    }

    /// The reduced dual polynomial ψ(T,U) − V·φ(T,U) in (T, U, V).
    pub fn reduced_dual(&self) -> MPoly {
        let v = MPoly::var(self.field(), 3, 2);
        let phi = self.phi.to_mpoly(3, 0, 1);
        let psi = self.psi.to_mpoly(3, 0, 1);
        &psi - &(&v * &phi)
    }

    /// Number of distinct ℙ¹(𝕜) roots of the common factor of Φ and Ψ,
    /// which is the number of pencils of parallel bisectors.
    pub fn count_parallel_pencils(&self) -> usize {
        let g = &self.common;
        match g.degree() {
            0 => 0,
            1 => 1,
            2 => {
                let c = g.coeffs();
                let disc = disc_quadratic(&c[0], &c[1], &c[2]);
                if disc.is_zero() {
                    1
                } else if disc.is_square() {
                    2
                } else {
                    0
                }
            }
            d => unreachable!("common factor of degree {d}"),
        }
    }
}

/// Ψ(t,u) − v·Φ(t,u) = 0.
pub fn is_bisector_dual(fp: &FieldPolynomials, ell: &Line) -> bool {
    let phi = fp.shape.eval(ell.t(), ell.u());
    let psi = fp.position.eval(ell.t(), ell.u());
    (&psi - &(ell.v() * &phi)).is_zero()
}

/// Whether `(Φ₁, Ψ₁) = λ(Φ₂, Ψ₂)` for one nonzero λ.
pub fn same_bisector_field(q1: &Quadrilateral, q2: &Quadrilateral) -> Result<bool> {
    if q1.field() != q2.field() {
        return Err(Error::FieldMismatch);
    }
    let (s1, s2) = (shape_poly(q1)?, shape_poly(q2)?);
    let (p1, p2) = (position_poly(q1), position_poly(q2));
    let Some(lambda) = s1.ratio_to(&s2) else {
        return Ok(false);
    };
    Ok(p2.scale(&lambda) == p1)
}

/// Whether Φ vanishes at the slope of ℓ.
pub fn is_null(fp: &FieldPolynomials, ell: &Line) -> bool {
    fp.shape.eval(ell.t(), ell.u()).is_zero()
}

/// The first finite point among intersections of (A, A′), (B, B′) and the diagonals.
pub fn diagonal_point(q: &Quadrilateral) -> Result<(FieldElement, FieldElement)> {
    for (l, m) in q.pairs()? {
        if let PlanePoint::Finite(x, y) = intersect(&l, &m)? {
            return Ok((x, y));
        }
    }
    Err(Error::NoFiniteDiagonalPoint)
}

/// The conic `Φ(Y − k, X − h) = Φ(b − k, a − h)` through the midpoints of
/// bisectors, returned as a polynomial in (X, Y).
pub fn bisector_locus(q: &Quadrilateral) -> Result<MPoly> {
    let f = q.field();
    let shape = shape_poly(q)?;
    let (h, k) = q.centroid()?;
    let (a, b) = diagonal_point(q)?;
    let x = MPoly::var(f, 2, 0);
    let y = MPoly::var(f, 2, 1);
    let tt = &y - &MPoly::constant(k.clone(), 2);
    let uu = &x - &MPoly::constant(h.clone(), 2);
    let lhs = shape.to_mpoly(2, 0, 1).compose(&[tt, uu]);
    let rhs = shape.eval(&(&b - &k), &(&a - &h));
    Ok(&lhs - &MPoly::constant(rhs, 2))
}

/// Slope orthogonal to `s` under the bilinear form of Φ.
pub fn partner_slope(shape: &BinaryForm, s: &P1Point) -> P1Point {
    let c = shape.coeffs();
    let half = shape.field().ratio(1, 2).expect("characteristic is not 2");
    let (alpha, beta, gamma) = (&c[0], -&(&c[1] * &half), &c[2]);
    let (t, u) = (s.t(), s.u());
    let t2 = &(&beta * t) - &(gamma * u);
    let u2 = &(alpha * t) - &(&beta * u);
    P1Point::new(t2, u2).expect("Φ is nondegenerate")
}

/// Partner of a non-null bisector, determined by the dual curve alone.
pub fn partner_from_polynomials(fp: &FieldPolynomials, ell: &Line) -> Result<Line> {
    if !is_bisector_dual(fp, ell) {
        return Err(Error::NotAPair);
    }
    if is_null(fp, ell) {
        return Err(Error::WrongClass);
    }
    let s = partner_slope(&fp.shape, &ell.slope());
    let phi = fp.shape.eval_p1(&s);
    let v = fp.position.eval_p1(&s).checked_div(&phi)?;
    Line::new(s.t().clone(), s.u().clone(), v)
}

/// The bisector paired with ℓ in the bisector field of Q. A null bisector's
/// partner is the parallel line through the reflection of its midpoint in the centroid.
pub fn partner(q: &Quadrilateral, ell: &Line) -> Result<Line> {
    let fp = FieldPolynomials::from_quadrilateral(q)?;
    if !is_bisector_dual(&fp, ell) {
        return Err(Error::NotAPair);
    }
    if !is_null(&fp, ell) {
        return partner_from_polynomials(&fp, ell);
    }
    let (h, k) = q.centroid()?;
    let mid = [mid_pair(q.a(), q.a1(), ell), mid_pair(q.b(), q.b1(), ell)]
        .into_iter()
        .flatten()
        .find_map(|m| match m {
            PlanePoint::Finite(x, y) => Some((x, y)),
            PlanePoint::Infinity(_) => None,
        })
        .ok_or(Error::NoFiniteDiagonalPoint)?;
    let two = q.field().int(2);
    let x = &(&two * &h) - &mid.0;
    let y = &(&two * &k) - &mid.1;
    Ok(Line::through_with_slope(&x, &y, &ell.slope()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(t: i64, u: i64, v: i64) -> Line {
        Line::from_ints(Field::Rational, t, u, v).unwrap()
    }

    fn running() -> Quadrilateral {
        Quadrilateral::new(l(0, 1, 0), l(1, 1, 1), l(1, 0, 0), l(2, 1, -1)).unwrap()
    }

    fn forms(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(Field::Rational, c)
    }

    #[test]
    fn thetas_of_running_example() {
        let [_, tb, _, tb1] = theta_factors(&running());
        // TU(T − 2U) and TU(T − U)
        assert_eq!(tb, forms(&[0, 1, -2, 0]));
        assert_eq!(tb1, forms(&[0, 1, -1, 0]));
    }

    #[test]
    fn shape_and_position() {
        let q = running();
        assert_eq!(shape_poly(&q).unwrap(), forms(&[1, 0, -2]));
        assert_eq!(position_poly(&q), forms(&[0, 0, -1, 0]));
        let swapped =
            Quadrilateral::new(q.b().clone(), q.a().clone(), q.b1().clone(), q.a1().clone())
                .unwrap();
        assert_eq!(shape_poly(&swapped).unwrap(), forms(&[-1, 0, 2]));
    }

    #[test]
    fn reduction() {
        let q = running();
        let fp = FieldPolynomials::from_quadrilateral(&q).unwrap();
        assert_eq!(fp.phi(), &forms(&[1, 0, -2]));
        assert_eq!(fp.psi(), &forms(&[0, 0, -1, 0]));
        assert_eq!(fp.class(), BisectorFieldClass::Cubic);
        let lin = reduce_dual(&forms(&[1, 0, -1]), &BinaryForm::zero(Field::Rational, 3)).unwrap();
        assert_eq!(lin.phi(), &forms(&[1]));
        assert!(lin.psi().is_zero());
        assert_eq!(lin.class(), BisectorFieldClass::Linear);
        assert_eq!(lin.count_parallel_pencils(), 2);
        assert_eq!(fp.count_parallel_pencils(), 0);
    }

    #[test]
    fn quadratic_reduction() {
        // h = 1, k = 2, μ = 4: Φ = T² − 4U², Ψ = 4TU(2T + 4U)
        let fp = reduce_dual(&forms(&[1, 0, -4]), &forms(&[0, 8, 16, 0])).unwrap();
        assert_eq!(fp.phi(), &forms(&[1, -2]));
        assert_eq!(fp.psi(), &forms(&[0, 8, 0]));
        assert_eq!(fp.class(), BisectorFieldClass::Quadratic);
        assert_eq!(fp.count_parallel_pencils(), 1);
        let s = fp.common().p1_roots().unwrap();
        assert_eq!(s, vec![P1Point::finite(Field::Rational.int(-2))]);
    }

    #[test]
    fn dual_membership() {
        let fp = FieldPolynomials::from_quadrilateral(&running()).unwrap();
        assert!(is_bisector_dual(&fp, &l(-1, 1, -1)));
        assert!(is_bisector_dual(&fp, &l(-2, 1, 1)));
        assert!(!is_bisector_dual(&fp, &l(0, 1, 5)));
    }

    #[test]
    fn same_field() {
        let q = running();
        assert!(same_bisector_field(&q, &q).unwrap());
        let swapped =
            Quadrilateral::new(q.a().clone(), q.b1().clone(), q.a1().clone(), q.b().clone())
                .unwrap();
        assert!(same_bisector_field(&q, &swapped).unwrap());
        let other = Quadrilateral::new(l(0, 1, 0), l(1, 1, 1), l(1, 0, 0), l(3, 1, -1)).unwrap();
        assert!(!same_bisector_field(&q, &other).unwrap());
    }

    #[test]
    fn locus_contains_diagonal_midpoints() {
        let q = running();
        let locus = bisector_locus(&q).unwrap();
        let f = Field::Rational;
        // Φ(Y, X + 1/8) + 1/32 at the origin vanishes.
        assert!(locus.eval(&[f.zero(), f.zero()]).is_zero());
        let [ab, ba1, a1b1, b1a] = q.vertices().unwrap();
        for (p, r) in [(ab, a1b1), (ba1, b1a)] {
            let (p, r) = (p.coords().unwrap(), r.coords().unwrap());
            let half = f.ratio(1, 2).unwrap();
            let m = [&(p.0 + r.0) * &half, &(p.1 + r.1) * &half];
            assert!(locus.eval(&m).is_zero());
        }
    }

    #[test]
    fn partners() {
        let q = running();
        assert_eq!(&partner(&q, q.a()).unwrap(), q.a1());
        assert_eq!(&partner(&q, q.b()).unwrap(), q.b1());
        let (d1, d2) = q.diagonals().unwrap();
        assert_eq!(partner(&q, &d1).unwrap(), d2);
        assert_eq!(partner(&q, &l(0, 1, 5)), Err(Error::NotAPair));
    }

    #[test]
    fn null_partner_in_trapezoid() {
        // A: Y = 0, A′: Y = 2 parallel; B: X = 0, B′: X − Y − 3 = 0.
        let q = Quadrilateral::new(l(0, 1, 0), l(1, 0, 0), l(0, 1, -2), l(1, 1, -3)).unwrap();
        assert_eq!(&partner(&q, q.a()).unwrap(), q.a1());
        assert_eq!(&partner(&q, q.a1()).unwrap(), q.a());
    }
}
