//! Standard form: center (h, k), coefficient μ, and the equivalence decisions
//! built on them.

use std::fmt;

use crate::dual::{
    is_bisector_dual, is_null, partner_from_polynomials, position_poly, reduce_dual, shape_poly,
};
use crate::dual::{BisectorFieldClass, FieldPolynomials};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{BinaryForm, P1Point};
use crate::plane::{intersect, AffineMap, Line, PlanePoint, Quadrilateral};

/// A bisector field in standard form, determined by its center and coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardFormField {
    h: FieldElement,
    k: FieldElement,
    mu: FieldElement,
    class: BisectorFieldClass,
}

/// Three-valued answer to the affine equivalence question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    Undecided,
}

impl Equivalence {
    pub fn name(self) -> &'static str {
        match self {
            Equivalence::Equivalent => "equivalent",
            Equivalence::NotEquivalent => "not-equivalent",
            Equivalence::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn standard_shape(mu: &FieldElement) -> BinaryForm {
    let f = mu.field();
    BinaryForm::new(f, vec![f.one(), f.zero(), -mu])
}

fn standard_position(h: &FieldElement, k: &FieldElement, mu: &FieldElement) -> BinaryForm {
    let f = mu.field();
    let four = f.int(4);
    BinaryForm::new(f, vec![f.zero(), &four * k, &(&four * mu) * h, f.zero()])
}

impl StandardFormField {
    pub fn new(h: FieldElement, k: FieldElement, mu: FieldElement) -> Result<StandardFormField> {
        if h.field() != k.field() || k.field() != mu.field() {
            return Err(Error::FieldMismatch);
        }
        if mu.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        let fp = reduce_dual(&standard_shape(&mu), &standard_position(&h, &k, &mu))?;
        let class = fp.class();
        if class == BisectorFieldClass::Cubic && h.is_zero() && k.is_zero() {
            return Err(Error::IdentityCheckFailed(
                "cubic field centered at the origin",
            ));
        }
        Ok(StandardFormField { h, k, mu, class })
    }

    pub fn from_ints(field: Field, h: i64, k: i64, mu: i64) -> Result<StandardFormField> {
        StandardFormField::new(field.int(h), field.int(k), field.int(mu))
    }

    /// Parses three field elements such as `"0"`, `"1/2"`, `"-1"`.
    pub fn parse(field: Field, h: &str, k: &str, mu: &str) -> Result<StandardFormField> {
        StandardFormField::new(field.parse(h)?, field.parse(k)?, field.parse(mu)?)
    }

    pub fn field(&self) -> Field {
        self.mu.field()
    }

    pub fn h(&self) -> &FieldElement {
        &self.h
    }

    pub fn k(&self) -> &FieldElement {
        &self.k
    }

    pub fn mu(&self) -> &FieldElement {
        &self.mu
    }

    pub fn class(&self) -> BisectorFieldClass {
        self.class
    }

    /// Φ = T² − μU².
    pub fn shape(&self) -> BinaryForm {
        standard_shape(&self.mu)
    }

    /// Ψ = 4TU(kT + μhU).
    pub fn position(&self) -> BinaryForm {
        standard_position(&self.h, &self.k, &self.mu)
    }

    pub fn polynomials(&self) -> FieldPolynomials {
        reduce_dual(&self.shape(), &self.position()).expect("Φ is nonzero")
    }

    /// Reads (h, k, μ) from polynomials of a field in standard form. Φ is
    /// made monic first; Ψ must then be `c₁T²U + c₂TU²` with k = c₁/4 and h = c₂/(4μ).
    pub fn from_polynomials(
        shape: &BinaryForm,
        position: &BinaryForm,
    ) -> Result<StandardFormField> {
        if shape.degree() != 2 || position.degree() != 3 {
            return Err(Error::DegreeMismatch);
        }
        let alpha = shape.coeff(0);
        if alpha.is_zero() || !shape.coeff(1).is_zero() {
            return Err(Error::NotStandard);
        }
        let inv = alpha.inv()?;
        let shape = shape.scale(&inv);
        let position = position.scale(&inv);
        if !position.coeff(0).is_zero() || !position.coeff(3).is_zero() {
            return Err(Error::NotStandard);
        }
        let f = shape.field();
        let mu = -shape.coeff(2);
        let four = f.int(4);
        let k = position.coeff(1).checked_div(&four)?;
        let h = position.coeff(2).checked_div(&(&four * &mu))?;
        StandardFormField::new(h, k, mu)
    }

    /// The cubic `hT³ + 3kT²U + 3hμTU² + kμU³`; its ℙ¹ roots are the slopes
    /// of bisectors through the center.
    pub fn center_cubic(&self) -> BinaryForm {
        let f = self.field();
        let three = f.int(3);
        BinaryForm::new(
            f,
            vec![
                self.h.clone(),
                &three * &self.k,
                &(&three * &self.h) * &self.mu,
                &self.k * &self.mu,
            ],
        )
    }

    /// A bisector passes through the center. Linear and quadratic fields always
    /// qualify, as does every cubic in the real-emulated mode.
    pub fn well_centered(&self) -> bool {
        if self.class != BisectorFieldClass::Cubic || self.field() == Field::Real {
            return true;
        }
        !self
            .center_cubic()
            .p1_roots()
            .expect("cubic center form is nonzero")
            .is_empty()
    }

    /// A bisector through the center, from the first root of the center cubic.
    pub fn center_line(&self) -> Result<Option<Line>> {
        if self.class != BisectorFieldClass::Cubic {
            return Err(Error::WrongClass);
        }
        let roots = self.center_cubic().p1_roots()?;
        Ok(roots
            .first()
            .map(|s| Line::through_with_slope(&self.h, &self.k, s)))
    }

    /// A quadrilateral in standard form with A: Y = 0 and A′: X = 0 whose
    /// bisector field is this one, when one exists over the field.
    pub fn materialize(&self) -> Option<Quadrilateral> {
        let f = self.field();
        let candidates: Vec<FieldElement> = match f {
            Field::Prime(_) => f.elements().into_iter().filter(|x| !x.is_zero()).collect(),
            _ => {
                let mut c = Vec::new();
                for n in 1..=6 {
                    c.push(f.int(n));
                    c.push(f.int(-n));
                }
                for d in 2..=4 {
                    c.push(f.ratio(1, d).unwrap());
                    c.push(f.ratio(-1, d).unwrap());
                }
                c
            }
        };
        let axis_y = Line::new(f.zero(), f.one(), f.zero()).unwrap();
        let axis_x = Line::new(f.one(), f.zero(), f.zero()).unwrap();
        let (two, four) = (f.int(2), f.int(4));
        for tb in candidates {
            let tb1 = self.mu.checked_div(&tb).ok()?;
            let (vb, vb1) = if tb == tb1 {
                if &self.h * &self.mu != -(&tb * &self.k) {
                    continue;
                }
                (&(&two * &self.k) + &f.one(), &(&two * &self.k) - &f.one())
            } else {
                let num = &(&(&four * &self.h) * &self.mu) + &(&(&four * &self.k) * &tb);
                let vb = num.checked_div(&(&tb - &tb1)).ok()?;
                let vb1 = &(&four * &self.k) - &vb;
                (vb, vb1)
            };
            let b = Line::new(tb.clone(), f.one(), vb).ok()?;
            let b1 = Line::new(tb1, f.one(), vb1).ok()?;
            let Ok(q) = Quadrilateral::new(axis_y.clone(), b, axis_x.clone(), b1) else {
                continue;
            };
            let Ok(shape) = shape_poly(&q) else { continue };
            if StandardFormField::from_polynomials(&shape, &position_poly(&q)).as_ref() == Ok(self)
            {
                return Some(q);
            }
        }
        None
    }
}

impl fmt::Display for StandardFormField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(h, k, mu) = ({}, {}, {}) [{}]",
            self.h, self.k, self.mu, self.class
        )
    }
}

/// The affine map sending the first non-parallel pair among (A, A′), (B, B′)
/// and the diagonals to Y = 0 and X = 0, and the standard form of the image.
pub fn standardize(q: &Quadrilateral) -> Result<(AffineMap, StandardFormField)> {
    let (l1, l2, x0, y0) = q
        .pairs()?
        .into_iter()
        .find_map(|(l1, l2)| match intersect(&l1, &l2) {
            Ok(PlanePoint::Finite(x, y)) => Some((l1, l2, x, y)),
            _ => None,
        })
        .ok_or(Error::NoNonParallelPair)?;
    // (x, y) ↦ (t₂(x−x₀) − u₂(y−y₀), u₁(y−y₀) − t₁(x−x₀))
    let (t1, u1, t2, u2) = (l1.t(), l1.u(), l2.t(), l2.u());
    let e = -&(&(t2 * &x0) - &(u2 * &y0));
    let f = -&(&(u1 * &y0) - &(t1 * &x0));
    let m = AffineMap::new(t2.clone(), -u2, -t1, u1.clone(), e, f)?;
    let image = m.apply_quadrilateral(q);
    let field = StandardFormField::from_polynomials(&shape_poly(&image)?, &position_poly(&image))?;
    Ok((m, field))
}

/// Componentwise equality of (h, k, μ).
pub fn equal_standard(f1: &StandardFormField, f2: &StandardFormField) -> bool {
    f1.h == f2.h && f1.k == f2.k && f1.mu == f2.mu
}

/// `ℒ(x,y) = (μ₁θ(tx − uy), −μ₁ux + ty)` with θ²μ₁μ₂ = 1, followed by the
/// translation taking the images' intersection to the origin. Sends ℓ to
/// X = 0 and its partner ℓ′ to Y = 0.
pub fn retarget(
    f: &StandardFormField,
    mu2: &FieldElement,
    pair: (&Line, &Line),
) -> Result<AffineMap> {
    let (ell, ell2) = pair;
    let mu1 = &f.mu;
    let prod = mu1 * mu2;
    if prod.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    let theta = prod.inv()?.sqrt()?.ok_or(Error::NotASquare)?;
    let fp = f.polynomials();
    if !is_bisector_dual(&fp, ell) || !is_bisector_dual(&fp, ell2) {
        return Err(Error::NotAPair);
    }
    if is_null(&fp, ell) || ell.is_parallel(ell2) {
        return Err(Error::ParallelPair);
    }
    if &partner_from_polynomials(&fp, ell)? != ell2 {
        return Err(Error::NotAPair);
    }
    let (t, u) = (ell.t(), ell.u());
    let mt = mu1 * &theta;
    let lin = AffineMap::new(
        &mt * t,
        -&(&mt * u),
        -&(mu1 * u),
        t.clone(),
        mu1.field().zero(),
        mu1.field().zero(),
    )?;
    let PlanePoint::Finite(x0, y0) = intersect(ell, ell2)? else {
        return Err(Error::ParallelPair);
    };
    let (ix, iy) = lin.apply(&x0, &y0);
    Ok(AffineMap::translation(-&ix, -&iy).compose(&lin))
}

/// Equivalence of two standard-form fields: classes must agree; linear and
/// quadratic fields are all equivalent; cubics need μ₁μ₂ to be a square, which
/// suffices when both are well centered and is otherwise left undecided.
pub fn affinely_equivalent(f1: &StandardFormField, f2: &StandardFormField) -> Equivalence {
    if f1.field() != f2.field() || f1.class != f2.class {
        return Equivalence::NotEquivalent;
    }
    match f1.class {
        BisectorFieldClass::Linear | BisectorFieldClass::Quadratic => Equivalence::Equivalent,
        BisectorFieldClass::Cubic => {
            if !(&f1.mu * &f2.mu).is_square() {
                Equivalence::NotEquivalent
            } else if f1.well_centered() && f2.well_centered() {
                Equivalence::Equivalent
            } else {
                Equivalence::Undecided
            }
        }
    }
}

/// Map taking a well-centered cubic field to (0, 1/2, μ): retarget the center
/// line to X = 0 keeping μ, then scale uniformly so k = 1/2.
fn normalize_well_centered(f: &StandardFormField) -> Result<AffineMap> {
    let ell = f.center_line()?.ok_or(Error::WrongClass)?;
    let ell2 = partner_from_polynomials(&f.polynomials(), &ell)?;
    let m = retarget(f, &f.mu, (&ell, &ell2))?;
    let (_, k2) = m.apply(&f.h, &f.k);
    let s = k2.checked_mul(&f.field().int(2))?.inv()?;
    Ok(AffineMap::scaling(s)?.compose(&m))
}

/// An explicit affine map carrying the field of `f1` onto that of `f2`, for
/// well-centered cubics with μ₁μ₂ a square.
pub fn equivalence_witness(f1: &StandardFormField, f2: &StandardFormField) -> Result<AffineMap> {
    if f1.field() != f2.field() {
        return Err(Error::FieldMismatch);
    }
    if f1.class != BisectorFieldClass::Cubic || f2.class != BisectorFieldClass::Cubic {
        return Err(Error::WrongClass);
    }
    let theta = f2
        .mu
        .checked_div(&f1.mu)?
        .sqrt()?
        .ok_or(Error::NotASquare)?;
    let n1 = normalize_well_centered(f1)?;
    let n2 = normalize_well_centered(f2)?;
    let z = f1.field().zero();
    let g = AffineMap::new(
        theta.inv()?,
        z.clone(),
        z.clone(),
        f1.field().one(),
        z.clone(),
        z,
    )?;
    Ok(n2.inverse().compose(&g).compose(&n1))
}

/// The standard-form field with the given polynomials of a quadrilateral already in standard form.
pub fn standard_of(q: &Quadrilateral) -> Result<StandardFormField> {
    StandardFormField::from_polynomials(&shape_poly(q)?, &position_poly(q))
}

/// ℙ¹ roots of the center cubic (slopes of bisectors through the center).
pub fn center_slopes(f: &StandardFormField) -> Result<Vec<P1Point>> {
    f.center_cubic().p1_roots()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::same_bisector_field;

    fn l(t: i64, u: i64, v: i64) -> Line {
        Line::from_ints(Field::Rational, t, u, v).unwrap()
    }

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn standardize_running_example() {
        let quad = Quadrilateral::new(l(0, 1, 0), l(1, 1, 1), l(1, 0, 0), l(2, 1, -1)).unwrap();
        let (m, f) = standardize(&quad).unwrap();
        assert_eq!(m, AffineMap::identity(q()));
        assert_eq!(
            f,
            StandardFormField::new(q().ratio(-1, 8).unwrap(), q().zero(), q().int(2)).unwrap()
        );
        assert_eq!(f.class(), BisectorFieldClass::Cubic);
        assert!(f.well_centered());
    }

    #[test]
    fn example_fields_not_well_centered() {
        let f7 = Field::prime(7).unwrap();
        assert!(!StandardFormField::from_ints(f7, 1, 1, 2)
            .unwrap()
            .well_centered());
        assert!(!StandardFormField::from_ints(q(), 1, 1, 2)
            .unwrap()
            .well_centered());
        // h = k = μ = 1 has μ = k²/h², so the field is quadratic, and its
        // center cubic (T + U)³ has a rational root anyway.
        let f = StandardFormField::from_ints(q(), 1, 1, 1).unwrap();
        assert_eq!(f.class(), BisectorFieldClass::Quadratic);
        assert!(f.well_centered());
        assert_eq!(
            center_slopes(&f).unwrap(),
            vec![P1Point::finite(q().int(-1))]
        );
    }

    #[test]
    fn classes() {
        assert_eq!(
            StandardFormField::from_ints(q(), 0, 0, 3).unwrap().class(),
            BisectorFieldClass::Linear
        );
        assert_eq!(
            StandardFormField::from_ints(q(), 1, 2, 4).unwrap().class(),
            BisectorFieldClass::Quadratic
        );
        assert_eq!(
            StandardFormField::from_ints(q(), 1, 1, 2).unwrap().class(),
            BisectorFieldClass::Cubic
        );
        assert_eq!(
            StandardFormField::from_ints(q(), 1, 1, 0),
            Err(Error::ZeroCoefficient)
        );
    }

    #[test]
    fn materialize_round_trips() {
        for (h, k, mu) in [(1, 1, 2), (0, 1, -1), (1, 2, 4), (0, 0, 1), (3, -1, 5)] {
            let f = StandardFormField::from_ints(q(), h, k, mu).unwrap();
            let quad = f.materialize().expect("realizable");
            assert_eq!(standard_of(&quad).unwrap(), f);
        }
        // A non-square coefficient with center at the origin has no quadrilateral.
        assert!(StandardFormField::from_ints(q(), 0, 0, 2)
            .unwrap()
            .materialize()
            .is_none());
    }

    #[test]
    fn retarget_requires_square() {
        let f = StandardFormField::from_ints(q(), 0, 1, 1).unwrap();
        let ell = f.center_line().unwrap().unwrap();
        let ell2 = partner_from_polynomials(&f.polynomials(), &ell).unwrap();
        assert_eq!(
            retarget(&f, &q().int(2), (&ell, &ell2)),
            Err(Error::NotASquare)
        );
        let m = retarget(&f, &q().int(4), (&ell, &ell2)).unwrap();
        assert_eq!(m.apply_line(&ell), l(1, 0, 0));
        assert_eq!(m.apply_line(&ell2), l(0, 1, 0));
        let image = m.apply_quadrilateral(&f.materialize().unwrap());
        assert_eq!(standard_of(&image).unwrap().mu(), &q().int(4));
    }

    #[test]
    fn equivalences() {
        let r = Field::Real;
        let f1 = StandardFormField::new(r.zero(), r.ratio(1, 2).unwrap(), r.int(-1)).unwrap();
        let f2 = StandardFormField::new(r.zero(), r.ratio(1, 2).unwrap(), r.int(-4)).unwrap();
        assert_eq!(affinely_equivalent(&f1, &f2), Equivalence::Equivalent);
        let a = StandardFormField::parse(q(), "0", "1/2", "2").unwrap();
        let b = StandardFormField::parse(q(), "0", "1/2", "3").unwrap();
        assert_eq!(affinely_equivalent(&a, &b), Equivalence::NotEquivalent);
        let f7 = Field::prime(7).unwrap();
        let a = StandardFormField::from_ints(f7, 0, 1, 1).unwrap();
        let b = StandardFormField::from_ints(f7, 0, 1, 2).unwrap();
        assert_eq!(affinely_equivalent(&a, &b), Equivalence::Equivalent);
        let c = StandardFormField::from_ints(f7, 1, 1, 2).unwrap();
        let d = StandardFormField::from_ints(f7, 1, 1, 1).unwrap();
        assert_eq!(affinely_equivalent(&c, &d), Equivalence::NotEquivalent);
        assert_eq!(affinely_equivalent(&c, &a), Equivalence::Undecided);
    }

    #[test]
    fn witness_over_rationals() {
        let a = StandardFormField::parse(q(), "-1/8", "0", "2").unwrap();
        let b = StandardFormField::parse(q(), "0", "3", "8").unwrap();
        let m = equivalence_witness(&a, &b).unwrap();
        let qa = a.materialize().unwrap();
        let qb = b.materialize().unwrap();
        assert!(same_bisector_field(&m.apply_quadrilateral(&qa), &qb).unwrap());
    }
}
