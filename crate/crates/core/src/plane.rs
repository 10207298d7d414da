//! Lines, points, quadrilaterals and affine maps of the plane, plus the
//! definition-level bisector test.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::P1Point;
use crate::poly::MPoly;

/// The line `t·X − u·Y + v = 0`, canonical: `u = 1`, or `u = 0` and `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    t: FieldElement,
    u: FieldElement,
    v: FieldElement,
}

impl Line {
    pub fn new(t: FieldElement, u: FieldElement, v: FieldElement) -> Result<Line> {
        if t.field() != u.field() || u.field() != v.field() {
            return Err(Error::FieldMismatch);
        }
        if t.is_zero() && u.is_zero() {
            return Err(Error::DegenerateLine);
        }
        let s = if u.is_zero() { t.inv()? } else { u.inv()? };
        Ok(Line {
            t: &t * &s,
            u: &u * &s,
            v: &v * &s,
        })
    }

    pub fn from_ints(field: Field, t: i64, u: i64, v: i64) -> Result<Line> {
        Line::new(field.int(t), field.int(u), field.int(v))
    }

    pub fn field(&self) -> Field {
        self.t.field()
    }

    pub fn t(&self) -> &FieldElement {
        &self.t
    }

    pub fn u(&self) -> &FieldElement {
        &self.u
    }

    pub fn v(&self) -> &FieldElement {
        &self.v
    }

    /// The slope `[t : u]`.
    pub fn slope(&self) -> P1Point {
        P1Point::new(self.t.clone(), self.u.clone()).expect("canonical line")
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        self.t == other.t && self.u == other.u
    }

    /// Left-hand side `t·x − u·y + v` at a point.
    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        &(&(&self.t * x) - &(&self.u * y)) + &self.v
    }

    pub fn contains(&self, x: &FieldElement, y: &FieldElement) -> bool {
        self.eval(x, y).is_zero()
    }

    /// The line through `(x, y)` with slope `s`.
    pub fn through_with_slope(x: &FieldElement, y: &FieldElement, s: &P1Point) -> Line {
        let v = &(s.u() * y) - &(s.t() * x);
        Line::new(s.t().clone(), s.u().clone(), v).expect("slope is not [0:0]")
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})X - ({})Y + ({}) = 0", self.t, self.u, self.v)
    }
}

/// A finite point, or the point at infinity of lines with a given slope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlanePoint {
    Finite(FieldElement, FieldElement),
    Infinity(P1Point),
}

impl PlanePoint {
    pub fn new(x: FieldElement, y: FieldElement) -> PlanePoint {
        PlanePoint::Finite(x, y)
    }

    pub fn coords(&self) -> Option<(&FieldElement, &FieldElement)> {
        match self {
            PlanePoint::Finite(x, y) => Some((x, y)),
            PlanePoint::Infinity(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PlanePoint::Finite(..))
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanePoint::Finite(x, y) => write!(f, "({x}, {y})"),
            PlanePoint::Infinity(s) => write!(f, "infinity{s}"),
        }
    }
}

/// Canonical line through two distinct finite points.
pub fn line_through(p: &PlanePoint, q: &PlanePoint) -> Result<Line> {
    let ((x1, y1), (x2, y2)) = match (p.coords(), q.coords()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::VertexAtInfinity),
    };
    if x1 == x2 && y1 == y2 {
        return Err(Error::CoincidentPoints);
    }
    // Direction (dx, dy) = (u, t) for the line t·X − u·Y + v = 0.
    let t = y2 - y1;
    let u = x2 - x1;
    let v = &(&u * y1) - &(&t * x1);
    Line::new(t, u, v)
}

/// Intersection of two distinct lines; parallel lines meet at infinity.
pub fn intersect(l1: &Line, l2: &Line) -> Result<PlanePoint> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    if l1.is_parallel(l2) {
        return Ok(PlanePoint::Infinity(l1.slope()));
    }
    let den = &(&l1.t * &l2.u) - &(&l2.t * &l1.u);
    let x = &(&(&l1.u * &l2.v) - &(&l2.u * &l1.v)) / &den;
    let y = &(&(&l1.t * &l2.v) - &(&l2.t * &l1.v)) / &den;
    Ok(PlanePoint::Finite(x, y))
}

fn midpoint(a: (&FieldElement, &FieldElement), b: (&FieldElement, &FieldElement)) -> PlanePoint {
    let half = a.0.field().ratio(1, 2).expect("characteristic is not 2");
    PlanePoint::Finite(&(a.0 + b.0) * &half, &(a.1 + b.1) * &half)
}

/// `mid_P(ℓ)` for the pair `P = {l1, l2}`. `None` when undefined: ℓ belongs
/// to the pair, or ℓ meets both lines at infinity.
pub fn mid_pair(l1: &Line, l2: &Line, ell: &Line) -> Option<PlanePoint> {
    if ell == l1 || ell == l2 {
        return None;
    }
    let p1 = intersect(ell, l1).ok()?;
    let p2 = intersect(ell, l2).ok()?;
    match (p1.coords(), p2.coords()) {
        (Some(a), Some(b)) => Some(midpoint(a, b)),
        (None, None) => None,
        _ => Some(PlanePoint::Infinity(ell.slope())),
    }
}

/// A complete quadrilateral with opposite pairs (A, A′) and (B, B′).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadrilateral {
    a: Line,
    b: Line,
    a1: Line,
    b1: Line,
}

impl Quadrilateral {
    /// Validates distinct sides, non-parallel adjacent sides, and that the
    /// four sides are not concurrent.
    pub fn new(a: Line, b: Line, a1: Line, b1: Line) -> Result<Quadrilateral> {
        let f = a.field();
        if [&b, &a1, &b1].iter().any(|l| l.field() != f) {
            return Err(Error::FieldMismatch);
        }
        let sides = [&a, &b, &a1, &b1];
        for i in 0..4 {
            for j in i + 1..4 {
                if sides[i] == sides[j] {
                    return Err(Error::InvalidQuadrilateral("repeated side"));
                }
            }
        }
        for (l, m) in [(&a, &b), (&b, &a1), (&a1, &b1), (&b1, &a)] {
            if l.is_parallel(m) {
                return Err(Error::InvalidQuadrilateral("adjacent sides are parallel"));
            }
        }
        if let PlanePoint::Finite(x, y) = intersect(&a, &b)? {
            if a1.contains(&x, &y) && b1.contains(&x, &y) {
                return Err(Error::InvalidQuadrilateral("all four sides are concurrent"));
            }
        }
        Ok(Quadrilateral { a, b, a1, b1 })
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn a(&self) -> &Line {
        &self.a
    }

    pub fn b(&self) -> &Line {
        &self.b
    }

    pub fn a1(&self) -> &Line {
        &self.a1
    }

    pub fn b1(&self) -> &Line {
        &self.b1
    }

    /// Sides in the order A, B, A′, B′.
    pub fn sides(&self) -> [&Line; 4] {
        [&self.a, &self.b, &self.a1, &self.b1]
    }

    /// Vertices A·B, B·A′, A′·B′, B′·A.
    pub fn vertices(&self) -> Result<[PlanePoint; 4]> {
        Ok([
            intersect(&self.a, &self.b)?,
            intersect(&self.b, &self.a1)?,
            intersect(&self.a1, &self.b1)?,
            intersect(&self.b1, &self.a)?,
        ])
    }

    /// The diagonals through (A·B, A′·B′) and (B·A′, B′·A).
    pub fn diagonals(&self) -> Result<(Line, Line)> {
        let [ab, ba1, a1b1, b1a] = self.vertices()?;
        Ok((line_through(&ab, &a1b1)?, line_through(&ba1, &b1a)?))
    }

    /// Mean of the four vertices.
    pub fn centroid(&self) -> Result<(FieldElement, FieldElement)> {
        let f = self.field();
        let mut sx = f.zero();
        let mut sy = f.zero();
        for v in self.vertices()? {
            let (x, y) = v.coords().ok_or(Error::VertexAtInfinity)?;
            sx = &sx + x;
            sy = &sy + y;
        }
        let quarter = f.ratio(1, 4)?;
        Ok((&sx * &quarter, &sy * &quarter))
    }

    /// The candidate 𝔹-pairs in preference order: (A, A′), (B, B′), diagonals.
    pub fn pairs(&self) -> Result<[(Line, Line); 3]> {
        let (d1, d2) = self.diagonals()?;
        Ok([
            (self.a.clone(), self.a1.clone()),
            (self.b.clone(), self.b1.clone()),
            (d1, d2),
        ])
    }
}

impl fmt::Display for Quadrilateral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A: {}; B: {}; A': {}; B': {}",
            self.a, self.b, self.a1, self.b1
        )
    }
}

/// Definition-level test: ℓ is a side, is parallel to a pair of opposite
/// sides, or meets all four sides at finite points with equal midpoints.
pub fn bisects_direct(q: &Quadrilateral, ell: &Line) -> bool {
    if q.sides().contains(&ell) {
        return true;
    }
    if (q.a.is_parallel(&q.a1) && ell.is_parallel(&q.a))
        || (q.b.is_parallel(&q.b1) && ell.is_parallel(&q.b))
    {
        return true;
    }
    if q.sides().iter().any(|s| s.is_parallel(ell)) {
        return false;
    }
    match (mid_pair(&q.a, &q.a1, ell), mid_pair(&q.b, &q.b1, ell)) {
        (Some(m1), Some(m2)) => m1.is_finite() && m1 == m2,
        _ => false,
    }
}

/// `(x, y) ↦ (a·x + b·y + e, c·x + d·y + f)` with `ad − bc ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
    e: FieldElement,
    f: FieldElement,
}

impl AffineMap {
    pub fn new(
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
        e: FieldElement,
        f: FieldElement,
    ) -> Result<AffineMap> {
        let field = a.field();
        if [&b, &c, &d, &e, &f].iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(AffineMap { a, b, c, d, e, f })
    }

    pub fn identity(field: Field) -> AffineMap {
        let (o, z) = (field.one(), field.zero());
        AffineMap {
            a: o.clone(),
            b: z.clone(),
            c: z.clone(),
            d: o,
            e: z.clone(),
            f: z,
        }
    }

    pub fn translation(x: FieldElement, y: FieldElement) -> AffineMap {
        let field = x.field();
        let (o, z) = (field.one(), field.zero());
        AffineMap {
            a: o.clone(),
            b: z.clone(),
            c: z,
            d: o,
            e: x,
            f: y,
        }
    }

    pub fn scaling(s: FieldElement) -> Result<AffineMap> {
        let z = s.field().zero();
        AffineMap::new(s.clone(), z.clone(), z.clone(), s, z.clone(), z)
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// `[[a, b], [c, d]]`.
    pub fn matrix(&self) -> [[&FieldElement; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    /// `[e, f]`.
    pub fn translation_part(&self) -> [&FieldElement; 2] {
        [&self.e, &self.f]
    }

    pub fn det(&self) -> FieldElement {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn apply(&self, x: &FieldElement, y: &FieldElement) -> (FieldElement, FieldElement) {
        (
            &(&(&self.a * x) + &(&self.b * y)) + &self.e,
            &(&(&self.c * x) + &(&self.d * y)) + &self.f,
        )
    }

    pub fn apply_point(&self, p: &PlanePoint) -> PlanePoint {
        match p {
            PlanePoint::Finite(x, y) => {
                let (x2, y2) = self.apply(x, y);
                PlanePoint::Finite(x2, y2)
            }
            PlanePoint::Infinity(s) => {
                // Direction (u, t) maps linearly.
                let (dx, dy) = (
                    &(&self.a * s.u()) + &(&self.b * s.t()),
                    &(&self.c * s.u()) + &(&self.d * s.t()),
                );
                PlanePoint::Infinity(P1Point::new(dy, dx).expect("invertible map"))
            }
        }
    }

    /// Image of a line.
    pub fn apply_line(&self, l: &Line) -> Line {
        let inv = self.inverse();
        // Points of the image satisfy l(inv(x, y)) = 0.
        let t = &(&l.t * &inv.a) - &(&l.u * &inv.c);
        let u = &(&l.u * &inv.d) - &(&l.t * &inv.b);
        let v = &(&(&l.t * &inv.e) - &(&l.u * &inv.f)) + &l.v;
        Line::new(t, u, v).expect("invertible map keeps lines nondegenerate")
    }

    pub fn apply_quadrilateral(&self, q: &Quadrilateral) -> Quadrilateral {
        Quadrilateral::new(
            self.apply_line(&q.a),
            self.apply_line(&q.b),
            self.apply_line(&q.a1),
            self.apply_line(&q.b1),
        )
        .expect("affine maps preserve quadrilateral validity")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let (e, f) = self.apply(&other.e, &other.f);
        AffineMap {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
            e,
            f,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let det_inv = self.det().inv().expect("nonsingular by construction");
        let a = &self.d * &det_inv;
        let b = -&(&self.b * &det_inv);
        let c = -&(&self.c * &det_inv);
        let d = &self.a * &det_inv;
        let e = -&(&(&a * &self.e) + &(&b * &self.f));
        let f = -&(&(&c * &self.e) + &(&d * &self.f));
        AffineMap { a, b, c, d, e, f }
    }

    /// `p ∘ self` for a polynomial in (X, Y): the zero set of the result is
    /// the preimage of the zero set of `p`.
    pub fn pullback(&self, p: &MPoly) -> MPoly {
        let field = self.field();
        let x = MPoly::var(field, 2, 0);
        let y = MPoly::var(field, 2, 1);
        let img_x = &(&x.scale(&self.a) + &y.scale(&self.b)) + &MPoly::constant(self.e.clone(), 2);
        let img_y = &(&x.scale(&self.c) + &y.scale(&self.d)) + &MPoly::constant(self.f.clone(), 2);
        p.compose(&[img_x, img_y])
    }

    /// Image of the curve `p = 0`, i.e. `p ∘ self⁻¹`.
    pub fn push_curve(&self, p: &MPoly) -> MPoly {
        self.inverse().pullback(p)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x, y) -> (({})x + ({})y + ({}), ({})x + ({})y + ({}))",
            self.a, self.b, self.e, self.c, self.d, self.f
        )
    }
}
