//! Moving bisectors, the boundary curve, the duality maps and tangency.

use std::fmt;

use crate::dual::{BisectorFieldClass, FieldPolynomials};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{disc_cubic, disc_quadratic, BinaryForm, P1Point};
use crate::plane::{AffineMap, Line, PlanePoint, Quadrilateral};
use crate::poly::MPoly;
use crate::standard::{standardize, StandardFormField};

/// The boundary of a bisector field: its center when linear, otherwise the
/// discriminant curve of the moving line, scaled so the lex-leading
/// coefficient (X most significant) is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryCurve {
    Point(FieldElement, FieldElement),
    Parabola(MPoly),
    Quartic(MPoly),
}

impl BoundaryCurve {
    pub fn variant(&self) -> &'static str {
        match self {
            BoundaryCurve::Point(..) => "point",
            BoundaryCurve::Parabola(_) => "parabola",
            BoundaryCurve::Quartic(_) => "quartic",
        }
    }

    pub fn polynomial(&self) -> Option<&MPoly> {
        match self {
            BoundaryCurve::Point(..) => None,
            BoundaryCurve::Parabola(p) | BoundaryCurve::Quartic(p) => Some(p),
        }
    }

    /// D(X, Y, Z) with Δ(X, Y) = D(X, Y, 1).
    pub fn homogenized(&self) -> Option<MPoly> {
        self.polynomial()
            .map(|p| p.homogenize(p.total_degree().unwrap_or(0)))
    }
}

impl fmt::Display for BoundaryCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCurve::Point(x, y) => write!(f, "point ({x}, {y})"),
            BoundaryCurve::Parabola(p) => write!(f, "parabola {p} = 0"),
            BoundaryCurve::Quartic(p) => write!(f, "quartic {p} = 0"),
        }
    }
}

/// A point `[x : y : z]` of ℙ², scaled so the last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: [FieldElement; 3],
}

impl ProjectivePoint {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<ProjectivePoint> {
        if x.field() != y.field() || y.field() != z.field() {
            return Err(Error::FieldMismatch);
        }
        let c = [x, y, z];
        let last = c
            .iter()
            .rev()
            .find(|v| !v.is_zero())
            .ok_or(Error::BothZero)?
            .inv()?;
        Ok(ProjectivePoint {
            coords: c.map(|v| &v * &last),
        })
    }

    /// The dual point `[t : u : v]` of a line.
    pub fn from_line(l: &Line) -> ProjectivePoint {
        ProjectivePoint::new(l.t().clone(), l.u().clone(), l.v().clone())
            .expect("line is nondegenerate")
    }

    /// The line with dual point `[t : u : v]`, when `(t, u) ≠ (0, 0)`.
    pub fn to_line(&self) -> Result<Line> {
        let [t, u, v] = self.coords.clone();
        Line::new(t, u, v)
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    /// The affine point `(x/z, y/z)`, or `None` on the line at infinity.
    pub fn affine(&self) -> Option<(FieldElement, FieldElement)> {
        let [x, y, z] = &self.coords;
        if z.is_zero() {
            None
        } else {
            Some((x / z, y / z))
        }
    }

    /// Every point of ℙ²(GF(p)).
    pub fn all(field: Field) -> Vec<ProjectivePoint> {
        let els = field.elements();
        let (zero, one) = (field.zero(), field.one());
        let mut out = Vec::new();
        for x in &els {
            for y in &els {
                out.push(ProjectivePoint {
                    coords: [x.clone(), y.clone(), one.clone()],
                });
            }
        }
        for x in &els {
            out.push(ProjectivePoint {
                coords: [x.clone(), one.clone(), zero.clone()],
            });
        }
        out.push(ProjectivePoint {
            coords: [one, zero.clone(), zero],
        });
        out
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "[{x}:{y}:{z}]")
    }
}

/// The moving bisector `tφ(t,u)X − uφ(t,u)Y + ψ(t,u) = 0`, absent where φ vanishes.
pub fn moving_bisector(fp: &FieldPolynomials, s: &P1Point) -> Option<Line> {
    let phi = fp.phi().eval_p1(s);
    if phi.is_zero() {
        return None;
    }
    let psi = fp.psi().eval_p1(s);
    Line::new(s.t() * &phi, s.u() * &phi, psi).ok()
}

/// ψ(t,u) − v·φ(t,u) = 0.
pub fn is_moving_bisector(fp: &FieldPolynomials, ell: &Line) -> bool {
    let phi = fp.phi().eval(ell.t(), ell.u());
    let psi = fp.psi().eval(ell.t(), ell.u());
    (&psi - &(ell.v() * &phi)).is_zero()
}

/// Coefficients of the moving line `T·φ·X − U·φ·Y + ψ` as a form in (T, U)
/// with coefficients in 𝕜[X, Y].
pub fn moving_line(fp: &FieldPolynomials) -> Vec<MPoly> {
    let f = fp.field();
    let x = MPoly::var(f, 2, 0);
    let y = MPoly::var(f, 2, 1);
    let phi = fp.phi().coeffs();
    let psi = fp.psi().coeffs();
    let d = fp.psi().degree();
    let mut out = vec![MPoly::zero(f, 2); d + 1];
    // T·φ contributes to indices i (T^{d-i}U^i) with i = j; U·φ to i = j + 1.
    for (j, c) in phi.iter().enumerate() {
        out[j] = &out[j] + &x.scale(c);
        out[j + 1] = &out[j + 1] - &y.scale(c);
    }
    for (i, c) in psi.iter().enumerate() {
        out[i] = &out[i] + &MPoly::constant(c.clone(), 2);
    }
    out
}

/// Discriminant of the moving line, unnormalized. `None` for linear fields.
pub fn moving_line_discriminant(fp: &FieldPolynomials) -> Option<MPoly> {
    let c = moving_line(fp);
    match c.len() {
        3 => Some(disc_quadratic(&c[0], &c[1], &c[2])),
        4 => Some(disc_cubic(&c[0], &c[1], &c[2], &c[3])),
        _ => None,
    }
}

fn xy_poly(field: Field, terms: &[(FieldElement, u32, u32)]) -> MPoly {
    MPoly::from_terms(
        field,
        2,
        terms.iter().map(|(c, i, j)| (c.clone(), vec![*i, *j])),
    )
}

/// The closed-form quartic for a cubic field in standard form, including
/// its overall factor 4μ.
pub fn quartic_closed_form(f: &StandardFormField) -> MPoly {
    let fl = f.field();
    let (h, k, mu) = (f.h(), f.k(), f.mu());
    let n = |v: i64| fl.int(v);
    let mu2 = mu * mu;
    let h2 = h * h;
    let k2 = k * k;
    let inner = xy_poly(
        fl,
        &[
            (mu2.clone(), 4, 0),
            (&(&n(-12) * h) * &mu2, 3, 0),
            (&n(-2) * mu, 2, 2),
            (&(&n(-20) * k) * mu, 2, 1),
            (&(&n(4) * mu) * &(&(&(&n(12) * &h2) * mu) + &k2), 2, 0),
            (&(&n(-20) * h) * mu, 1, 2),
            (&(&(&n(88) * h) * k) * mu, 1, 1),
            (
                &(&(&n(-32) * h) * mu) * &(&(&(&n(2) * &h2) * mu) + &k2),
                1,
                0,
            ),
            (n(1), 0, 4),
            (&n(-12) * k, 0, 3),
            (&n(4) * &(&(&h2 * mu) + &(&n(12) * &k2)), 0, 2),
            (&(&n(-32) * k) * &(&(&h2 * mu) + &(&n(2) * &k2)), 0, 1),
            (&(&(&n(64) * &h2) * &k2) * mu, 0, 0),
        ],
    );
    inner.scale(&(&n(4) * mu))
}

/// `(k/h·X − Y)² − 8k(k/h·X + Y − 2k)` for a quadratic field in standard form.
pub fn parabola_closed_form(f: &StandardFormField) -> Result<MPoly> {
    let fl = f.field();
    let r = f.k().checked_div(f.h())?;
    let x = MPoly::var(fl, 2, 0);
    let y = MPoly::var(fl, 2, 1);
    let k = f.k();
    let lin = &x.scale(&r) - &y;
    let other = &(&x.scale(&r) + &y) - &MPoly::constant(&fl.int(2) * k, 2);
    Ok(&lin.pow(2) - &other.scale(&(&fl.int(8) * k)))
}

/// Boundary of a standard-form field, cross-checked against the closed forms.
pub fn boundary(f: &StandardFormField) -> Result<BoundaryCurve> {
    let fp = f.polynomials();
    match f.class() {
        BisectorFieldClass::Linear => Ok(BoundaryCurve::Point(f.h().clone(), f.k().clone())),
        BisectorFieldClass::Quadratic => {
            let disc = moving_line_discriminant(&fp).ok_or(Error::WrongClass)?;
            if disc != parabola_closed_form(f)? {
                return Err(Error::IdentityCheckFailed("parabola boundary"));
            }
            Ok(BoundaryCurve::Parabola(disc.normalized()))
        }
        BisectorFieldClass::Cubic => {
            let disc = moving_line_discriminant(&fp).ok_or(Error::WrongClass)?;
            if disc != quartic_closed_form(f) {
                return Err(Error::IdentityCheckFailed("quartic boundary"));
            }
            Ok(BoundaryCurve::Quartic(disc.normalized()))
        }
    }
}

/// Boundary of the bisector field of Q: standardize, take the standard-form
/// boundary, and pull it back along the standardizing map.
pub fn boundary_of_quadrilateral(q: &Quadrilateral) -> Result<BoundaryCurve> {
    let (m, f) = standardize(q)?;
    Ok(match boundary(&f)? {
        BoundaryCurve::Point(x, y) => {
            let (x0, y0) = m.inverse().apply(&x, &y);
            BoundaryCurve::Point(x0, y0)
        }
        BoundaryCurve::Parabola(p) => BoundaryCurve::Parabola(m.pullback(&p).normalized()),
        BoundaryCurve::Quartic(p) => BoundaryCurve::Quartic(m.pullback(&p).normalized()),
    })
}

/// `𝒜(x,y) = (k/h·x − y, 8k(k/h·x + y − 2k))`, so that Δ = X′² − Y′ and the
/// parabola goes onto `Y = X²`, the center to the origin, and the null
/// pencil onto horizontal lines.
pub fn parabola_normalizer(f: &StandardFormField) -> Result<AffineMap> {
    if f.class() != BisectorFieldClass::Quadratic {
        return Err(Error::WrongClass);
    }
    let fl = f.field();
    let r = f.k().checked_div(f.h())?;
    let p8k = &fl.int(8) * f.k();
    let tr = &(&p8k * f.k()) * &fl.int(-2);
    AffineMap::new(r.clone(), fl.int(-1), &p8k * &r, p8k, fl.zero(), tr)
}

fn gradient_image(
    poly: &MPoly,
    p: &[FieldElement; 3],
    signs: [bool; 3],
) -> Result<ProjectivePoint> {
    if !poly.eval(p).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    let g: Vec<FieldElement> = (0..3)
        .map(|i| {
            let d = poly.derivative(i).eval(p);
            if signs[i] {
                -d
            } else {
                d
            }
        })
        .collect();
    if g.iter().all(|c| c.is_zero()) {
        return Err(Error::SingularPoint);
    }
    let [a, b, c]: [FieldElement; 3] = g.try_into().expect("three partials");
    ProjectivePoint::new(a, b, c)
}

/// `f([t:u:v]) = [F_T : −F_U : F_V]` for the reduced dual polynomial F.
pub fn dual_map_f(fp: &FieldPolynomials, dp: &ProjectivePoint) -> Result<ProjectivePoint> {
    gradient_image(&fp.reduced_dual(), dp.coords(), [false, true, false])
}

/// `d([x:y:z]) = [D_X : −D_Y : D_Z]`; the sign on D_Y matches the line
/// convention `tX − uY + vZ`, so that d inverts f.
pub fn dual_map_d(d: &MPoly, pp: &ProjectivePoint) -> Result<ProjectivePoint> {
    gradient_image(d, pp.coords(), [false, true, false])
}

/// Lowest-degree homogeneous part of Δ after moving (x, y) to the origin.
pub fn tangent_cone(delta: &MPoly, x: &FieldElement, y: &FieldElement) -> MPoly {
    let f = delta.field();
    let xs = &MPoly::var(f, 2, 0) + &MPoly::constant(x.clone(), 2);
    let ys = &MPoly::var(f, 2, 1) + &MPoly::constant(y.clone(), 2);
    let moved = delta.compose(&[xs, ys]);
    match moved.lowest_degree() {
        Some(d) => moved.homogeneous_part(d),
        None => moved,
    }
}

/// Whether ℓ touches Δ = 0 at the finite point `pt`. At a smooth point ℓ
/// must be the gradient line; at a singular point ℓ's direction must lie in
/// the tangent cone.
pub fn tangency_check(delta: &MPoly, ell: &Line, pt: &PlanePoint) -> Result<bool> {
    let (x, y) = pt.coords().ok_or(Error::VertexAtInfinity)?;
    let at = [x.clone(), y.clone()];
    if !delta.eval(&at).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    if !ell.contains(x, y) {
        return Ok(false);
    }
    let dx = delta.derivative(0).eval(&at);
    let dy = delta.derivative(1).eval(&at);
    if !(dx.is_zero() && dy.is_zero()) {
        // Tangent line Δ_X·X + Δ_Y·Y + … must be proportional to t·X − u·Y.
        return Ok((&(&dx * ell.u()) + &(&dy * ell.t())).is_zero());
    }
    let cone = tangent_cone(delta, x, y);
    Ok(cone.eval(&[ell.u().clone(), ell.t().clone()]).is_zero())
}

fn uni_mul(a: &[FieldElement], b: &[FieldElement], field: Field) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn uni_add(a: &[FieldElement], b: &[FieldElement], field: Field) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| field.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| field.zero());
            &x + &y
        })
        .collect()
}

fn uni_deriv(a: &[FieldElement], field: Field) -> Vec<FieldElement> {
    if a.len() <= 1 {
        return vec![field.zero()];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &field.int(i as i64))
        .collect()
}

fn uni_neg(a: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().map(|c| -c).collect()
}

/// Wronskian `det[C, C′, C″]` of `C(s) = (s·φ(s,1), φ(s,1), ψ(s,1))`, as a
/// form of nominal degree 3(n − 2) so a root at s = ∞ is visible.
pub fn dual_wronskian(fp: &FieldPolynomials) -> BinaryForm {
    let f = fp.field();
    let deh = |b: &BinaryForm| -> Vec<FieldElement> { b.coeffs().iter().rev().cloned().collect() };
    let phi = deh(fp.phi());
    let c0 = uni_mul(&[f.zero(), f.one()], &phi, f);
    let c1 = phi.clone();
    let c2 = deh(fp.psi());
    let col = |p: &Vec<FieldElement>| {
        let d1 = uni_deriv(p, f);
        let d2 = uni_deriv(&d1, f);
        (p.clone(), d1, d2)
    };
    let (a0, a1, a2) = col(&c0);
    let (b0, b1, b2) = col(&c1);
    let (e0, e1, e2) = col(&c2);
    let m = |x: &[FieldElement], y: &[FieldElement]| uni_mul(x, y, f);
    let minor = |p: &[FieldElement], q: &[FieldElement], r: &[FieldElement], s: &[FieldElement]| {
        uni_add(&m(p, q), &uni_neg(&m(r, s)), f)
    };
    let t0 = m(&a0, &minor(&b1, &e2, &b2, &e1));
    let t1 = m(&b0, &minor(&a1, &e2, &a2, &e1));
    let t2 = m(&e0, &minor(&a1, &b2, &a2, &b1));
    let w = uni_add(&uni_add(&t0, &uni_neg(&t1), f), &t2, f);
    let n = fp.f_degree();
    let deg = 3 * n.saturating_sub(2);
    let mut coeffs = vec![f.zero(); deg + 1];
    for (j, c) in w.into_iter().enumerate() {
        if j <= deg {
            coeffs[deg - j] = c;
        } else {
            assert!(c.is_zero(), "wronskian degree exceeds its nominal bound");
        }
    }
    BinaryForm::new(f, coeffs)
}

fn is_singular(delta: &MPoly, x: &FieldElement, y: &FieldElement) -> bool {
    let at = [x.clone(), y.clone()];
    delta.eval(&at).is_zero()
        && delta.derivative(0).eval(&at).is_zero()
        && delta.derivative(1).eval(&at).is_zero()
}

/// The tangency point of a moving bisector: `f` applied to its dual point.
pub fn tangency_point(fp: &FieldPolynomials, ell: &Line) -> Result<(FieldElement, FieldElement)> {
    let p = dual_map_f(fp, &ProjectivePoint::from_line(ell))?;
    p.affine().ok_or(Error::VertexAtInfinity)
}

/// Finite singular points of the quartic boundary of a cubic field. Over
/// GF(p) every affine point is tested; over ℚ the candidates are images of
/// the dual curve's flexes (roots of the Wronskian), each verified by substitution.
pub fn singular_points(f: &StandardFormField) -> Result<Vec<(FieldElement, FieldElement)>> {
    if f.class() != BisectorFieldClass::Cubic {
        return Err(Error::WrongClass);
    }
    let delta = match boundary(f)? {
        BoundaryCurve::Quartic(p) => p,
        _ => return Err(Error::WrongClass),
    };
    let field = f.field();
    match field {
        Field::Real => Err(Error::UnsupportedInMode("real-emulated")),
        Field::Prime(_) => {
            let els = field.elements();
            let mut out = Vec::new();
            for x in &els {
                for y in &els {
                    if is_singular(&delta, x, y) {
                        out.push((x.clone(), y.clone()));
                    }
                }
            }
            Ok(out)
        }
        Field::Rational => {
            let fp = f.polynomials();
            let mut out: Vec<(FieldElement, FieldElement)> = Vec::new();
            for s in dual_wronskian(&fp).p1_roots()? {
                let Some(ell) = moving_bisector(&fp, &s) else {
                    continue;
                };
                let Ok((x, y)) = tangency_point(&fp, &ell) else {
                    continue;
                };
                if is_singular(&delta, &x, &y) && !out.contains(&(x.clone(), y.clone())) {
                    out.push((x, y));
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::Line;

    fn q() -> Field {
        Field::Rational
    }

    fn canonical(mu: i64) -> StandardFormField {
        StandardFormField::new(q().zero(), q().ratio(1, 2).unwrap(), q().int(mu)).unwrap()
    }

    fn quartic(terms: &[(i64, u32, u32)]) -> MPoly {
        MPoly::from_terms(
            q(),
            2,
            terms.iter().map(|&(c, i, j)| (q().int(c), vec![i, j])),
        )
    }

    #[test]
    fn canonical_quartics() {
        let deltoid = quartic(&[
            (1, 4, 0),
            (2, 2, 2),
            (1, 0, 4),
            (10, 2, 1),
            (-6, 0, 3),
            (-1, 2, 0),
            (12, 0, 2),
            (-8, 0, 1),
        ]);
        let cardioid = quartic(&[
            (1, 4, 0),
            (-2, 2, 2),
            (1, 0, 4),
            (-10, 2, 1),
            (-6, 0, 3),
            (1, 2, 0),
            (12, 0, 2),
            (-8, 0, 1),
        ]);
        assert_eq!(
            boundary(&canonical(-1)).unwrap(),
            BoundaryCurve::Quartic(deltoid)
        );
        assert_eq!(
            boundary(&canonical(1)).unwrap(),
            BoundaryCurve::Quartic(cardioid)
        );
    }

    #[test]
    fn moving_bisectors() {
        let f = canonical(-1);
        let fp = f.polynomials();
        assert_eq!(fp.phi(), &BinaryForm::from_ints(q(), &[1, 0, 1]));
        assert_eq!(fp.psi(), &BinaryForm::from_ints(q(), &[0, 2, 0, 0]));
        let s = P1Point::finite(q().one());
        assert_eq!(
            moving_bisector(&fp, &s).unwrap(),
            Line::from_ints(q(), 1, 1, 1).unwrap()
        );
        let running = StandardFormField::parse(q(), "-1/8", "0", "2")
            .unwrap()
            .polynomials();
        let x_axis = moving_bisector(&running, &P1Point::infinity(q())).unwrap();
        assert_eq!(x_axis, Line::from_ints(q(), 1, 0, 0).unwrap());
    }

    #[test]
    fn duality_at_the_cusp() {
        let fp = canonical(-1).polynomials();
        let p = dual_map_f(
            &fp,
            &ProjectivePoint::new(q().one(), q().zero(), q().zero()).unwrap(),
        )
        .unwrap();
        assert_eq!(
            p,
            ProjectivePoint::new(q().zero(), q().int(2), q().one()).unwrap()
        );
        let origin = ProjectivePoint::new(q().zero(), q().zero(), q().one()).unwrap();
        assert_eq!(dual_map_f(&fp, &origin), Err(Error::SingularPoint));
    }

    #[test]
    fn rational_singular_points() {
        let pts = singular_points(&canonical(-1)).unwrap();
        assert_eq!(pts, vec![(q().zero(), q().int(2))]);
        let w = dual_wronskian(&canonical(-1).polynomials()).normalized();
        // u(3t² − u²) up to scale
        assert_eq!(w, BinaryForm::from_ints(q(), &[0, 3, 0, -1]).normalized());
    }

    #[test]
    fn cusp_tangent() {
        let f = canonical(-1);
        let BoundaryCurve::Quartic(delta) = boundary(&f).unwrap() else {
            panic!()
        };
        let x_axis = Line::from_ints(q(), 1, 0, 0).unwrap();
        let cusp = PlanePoint::Finite(q().zero(), q().int(2));
        assert!(tangency_check(&delta, &x_axis, &cusp).unwrap());
        let other = Line::from_ints(q(), 1, 1, -2).unwrap();
        assert!(!tangency_check(&delta, &other, &cusp).unwrap());
        let off = PlanePoint::Finite(q().int(5), q().int(5));
        assert_eq!(
            tangency_check(&delta, &x_axis, &off),
            Err(Error::PointNotOnCurve)
        );
    }

    #[test]
    fn parabola_normalization() {
        let f = StandardFormField::from_ints(q(), 1, 1, 1).unwrap();
        let a = parabola_normalizer(&f).unwrap();
        let BoundaryCurve::Parabola(delta) = boundary(&f).unwrap() else {
            panic!()
        };
        let image = a.push_curve(&delta);
        let x = MPoly::var(q(), 2, 0);
        let y = MPoly::var(q(), 2, 1);
        assert!(image.is_scalar_multiple_of(&(&y - &x.pow(2))));
        let (cx, cy) = a.apply(f.h(), f.k());
        assert!(cx.is_zero() && cy.is_zero());
    }

    #[test]
    fn linear_boundary_is_center() {
        let f = StandardFormField::from_ints(q(), 0, 0, 1).unwrap();
        assert_eq!(
            boundary(&f).unwrap(),
            BoundaryCurve::Point(q().zero(), q().zero())
        );
    }
}
