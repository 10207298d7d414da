//! Binary forms in (T, U) and points of the projective line.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{MPoly, Ring};

/// A point `[t : u]` of ℙ¹, normalized to `u = 1` or `[1 : 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P1Point {
    t: FieldElement,
    u: FieldElement,
}

impl P1Point {
    pub fn new(t: FieldElement, u: FieldElement) -> Result<P1Point> {
        if t.field() != u.field() {
            return Err(Error::FieldMismatch);
        }
        if u.is_zero() {
            if t.is_zero() {
                return Err(Error::BothZero);
            }
            let one = t.field().one();
            return Ok(P1Point {
                t: one,
                u: u.clone(),
            });
        }
        Ok(P1Point {
            t: t.checked_div(&u)?,
            u: u.field().one(),
        })
    }

    pub fn finite(t: FieldElement) -> P1Point {
        let one = t.field().one();
        P1Point { t, u: one }
    }

    pub fn infinity(field: Field) -> P1Point {
        P1Point {
            t: field.one(),
            u: field.zero(),
        }
    }

    pub fn t(&self) -> &FieldElement {
        &self.t
    }

    pub fn u(&self) -> &FieldElement {
        &self.u
    }

    pub fn is_infinity(&self) -> bool {
        self.u.is_zero()
    }

    /// All p + 1 points of ℙ¹(GF(p)); empty for infinite fields.
    pub fn all(field: Field) -> Vec<P1Point> {
        let mut pts: Vec<P1Point> = field.elements().into_iter().map(P1Point::finite).collect();
        if field.is_finite() {
            pts.push(P1Point::infinity(field));
        }
        pts
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.t, self.u)
    }
}

/// `c₀Tᵈ + c₁Tᵈ⁻¹U + … + c_dUᵈ`, carrying its nominal degree `d` even when
/// leading coefficients vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<FieldElement>,
}

fn trim(mut p: Vec<FieldElement>) -> Vec<FieldElement> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Remainder of univariate division; coefficient vectors are low-to-high.
fn uni_rem(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead_inv = b
        .last()
        .expect("nonzero divisor")
        .inv()
        .expect("nonzero lead");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&q * bc);
        }
        r = trim(r);
    }
    r
}

fn uni_gcd(a: Vec<FieldElement>, b: Vec<FieldElement>) -> Vec<FieldElement> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last() {
        let inv = lead.inv().expect("nonzero lead");
        a = a.iter().map(|c| c * &inv).collect();
    }
    a
}

impl BinaryForm {
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a form has at least one coefficient");
        assert!(
            coeffs.iter().all(|c| c.field() == field),
            "coefficients in one field"
        );
        BinaryForm { field, coeffs }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> BinaryForm {
        BinaryForm::new(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: Field, degree: usize) -> BinaryForm {
        BinaryForm::new(field, vec![field.zero(); degree + 1])
    }

    pub fn constant(c: FieldElement) -> BinaryForm {
        BinaryForm::new(c.field(), vec![c])
    }

    /// `aT + bU`.
    pub fn linear(a: FieldElement, b: FieldElement) -> BinaryForm {
        BinaryForm::new(a.field(), vec![a, b])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `T^{d-i} U^i`.
    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, t: &FieldElement, u: &FieldElement) -> FieldElement {
        let d = self.degree() as u64;
        let mut sum = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            sum = &sum + &(c * &(&t.pow(d - i as u64) * &u.pow(i as u64)));
        }
        sum
    }

    pub fn eval_p1(&self, s: &P1Point) -> FieldElement {
        self.eval(s.t(), s.u())
    }

    pub fn checked_add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.degree() != other.degree() {
            if other.is_zero() {
                return Ok(self.clone());
            }
            if self.is_zero() {
                return Ok(other.clone());
            }
            return Err(Error::DegreeMismatch);
        }
        Ok(BinaryForm::new(
            self.field,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = vec![self.field.zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(BinaryForm::new(self.field, out))
    }

    /// Product of forms over the same field. Panics on mixed fields.
    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        self.checked_mul(other).expect("forms over the same field")
    }

    pub fn scale(&self, c: &FieldElement) -> BinaryForm {
        BinaryForm::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> BinaryForm {
        BinaryForm::new(self.field, self.coeffs.iter().map(|a| -a).collect())
    }

    /// Index of the first nonzero coefficient, i.e. the power of U dividing the form.
    fn u_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Degree in T of the form (nominal degree minus the U-valuation).
    pub fn t_degree(&self) -> Option<usize> {
        self.u_valuation().map(|v| self.degree() - v)
    }

    /// Scales so the first nonzero coefficient (in T-descending order) is 1;
    /// this is "monic in T" whenever the `Tᵈ` coefficient is nonzero.
    pub fn normalized(&self) -> BinaryForm {
        match self.u_valuation() {
            Some(i) => self.scale(&self.coeffs[i].inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// The scalar λ with `self = λ·other`, if one exists.
    pub fn ratio_to(&self, other: &BinaryForm) -> Option<FieldElement> {
        if self.field != other.field || self.degree() != other.degree() {
            return None;
        }
        let i = other.u_valuation()?;
        let lambda = self.coeffs[i].checked_div(&other.coeffs[i]).ok()?;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    /// `f(T, 1)` as a low-to-high coefficient vector in T.
    fn dehomogenize(&self) -> Vec<FieldElement> {
        self.coeffs.iter().rev().cloned().collect()
    }

    fn homogenize(field: Field, uni: &[FieldElement], degree: usize) -> BinaryForm {
        let mut coeffs = vec![field.zero(); degree + 1];
        for (j, c) in uni.iter().enumerate() {
            coeffs[degree - j] = c.clone();
        }
        BinaryForm::new(field, coeffs)
    }

    /// Exact quotient `self / divisor`.
    pub fn div_exact(&self, divisor: &BinaryForm) -> Result<BinaryForm> {
        if self.field != divisor.field {
            return Err(Error::FieldMismatch);
        }
        let j = divisor.u_valuation().ok_or(Error::DivisionByZero)?;
        if divisor.degree() > self.degree() {
            return if self.is_zero() {
                Err(Error::DegreeMismatch)
            } else {
                Err(Error::NotDivisible)
            };
        }
        let m = self.degree() - divisor.degree() + 1;
        let e0_inv = divisor.coeffs[j].inv()?;
        let mut q: Vec<FieldElement> = Vec::with_capacity(m);
        for n in 0..m {
            let mut acc = self
                .coeffs
                .get(n + j)
                .cloned()
                .unwrap_or_else(|| self.field.zero());
            for (i, qi) in q.iter().enumerate() {
                if let Some(e) = divisor.coeffs.get(n + j - i) {
                    acc = &acc - &(qi * e);
                }
            }
            q.push(&acc * &e0_inv);
        }
        let q = BinaryForm::new(self.field, q);
        if &q.mul(divisor) == self {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// A gcd of two forms: the common power of U times the monic gcd of the
    /// dehomogenizations.
    pub fn gcd(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (va, vb) = (self.u_valuation(), other.u_valuation());
        let v = match (va, vb) {
            (None, None) => return Err(Error::BothZero),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let g = uni_gcd(self.dehomogenize(), other.dehomogenize());
        let tdeg = g.len() - 1;
        let mut coeffs = vec![self.field.zero(); v];
        coeffs.extend(BinaryForm::homogenize(self.field, &g, tdeg).coeffs);
        Ok(BinaryForm::new(self.field, coeffs))
    }

    /// All roots in ℙ¹(𝕜), sorted (finite roots by value, then `[1:0]`).
    pub fn p1_roots(&self) -> Result<Vec<P1Point>> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        match self.field {
            Field::Prime(_) => Ok(P1Point::all(self.field)
                .into_iter()
                .filter(|s| self.eval_p1(s).is_zero())
                .collect()),
            Field::Real => Err(Error::UnsupportedInMode("real-emulated")),
            Field::Rational => {
                let mut roots: Vec<FieldElement> = rational_roots(&self.dehomogenize());
                roots.sort_by(|a, b| a.as_rational().cmp(&b.as_rational()));
                let mut out: Vec<P1Point> = roots.into_iter().map(P1Point::finite).collect();
                if self.coeffs[0].is_zero() {
                    out.push(P1Point::infinity(self.field));
                }
                Ok(out)
            }
        }
    }

    /// Embeds the form into a polynomial ring, T and U going to the given variables.
    pub fn to_mpoly(&self, nvars: usize, t_var: usize, u_var: usize) -> MPoly {
        let d = self.degree() as u32;
        MPoly::from_terms(
            self.field,
            nvars,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; nvars];
                e[t_var] += d - i as u32;
                e[u_var] += i as u32;
                (c.clone(), e)
            }),
        )
    }

    /// Partial derivative in T (degree drops by one; degree 0 yields the zero constant).
    pub fn d_t(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(self.field, 0);
        }
        BinaryForm::new(
            self.field,
            (0..d)
                .map(|i| &self.coeffs[i] * &self.field.int((d - i) as i64))
                .collect(),
        )
    }

    /// Partial derivative in U.
    pub fn d_u(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(self.field, 0);
        }
        BinaryForm::new(
            self.field,
            (1..=d)
                .map(|i| &self.coeffs[i] * &self.field.int(i as i64))
                .collect(),
        )
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match (d - i, i) {
                (0, 0) => String::new(),
                (a, b) => {
                    let p = |v: &str, k: usize| match k {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{k}"),
                    };
                    format!("{}{}", p("T", a), p("U", b))
                }
            };
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c}){mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

type Q = BigRational;

fn q_trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn q_divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = q_trim(a.to_vec());
    let b = q_trim(b.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    let mut quot = vec![Q::zero(); r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * bc;
        }
        quot[shift] = q;
        r.pop();
        r = q_trim(r);
    }
    (quot, r)
}

fn q_deriv(p: &[Q]) -> Vec<Q> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
        .collect()
}

fn q_gcd(a: Vec<Q>, b: Vec<Q>) -> Vec<Q> {
    let (mut a, mut b) = (q_trim(a), q_trim(b));
    while !b.is_empty() {
        let r = q_divmod(&a, &b).1;
        a = b;
        b = r;
    }
    a
}

/// Positive rescaling to a primitive integer polynomial; signs are unchanged.
fn primitive(p: &[Q]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Sign of `p(x)` via `Σ c_i a^i b^(n−i)` with `x = a/b`, `b > 0`.
fn sign_at(p: &[BigInt], x: &Q) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for (i, c) in p.iter().enumerate().rev() {
        acc += c * a.pow(i as u32) * &bpow;
        bpow *= b;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn sign_variations(seq: &[Vec<BigInt>], x: &Q) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| sign_at(p, x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The rational with least denominator (then least absolute numerator) in `[lo, hi]`.
fn simplest_between(lo: &Q, hi: &Q) -> Q {
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    if !lo.is_positive() {
        return Q::zero();
    }
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let f = lo.floor();
    f.clone() + (simplest_between(&(hi - &f).recip(), &(lo - &f).recip())).recip()
}

/// Rational roots of a nonzero polynomial given low-to-high. Real roots of the
/// square-free part are isolated with a Sturm sequence and narrowed until the
/// interval can hold at most one rational whose denominator divides the
/// leading coefficient; the simplest rational there is then tested exactly.
fn rational_roots(poly: &[FieldElement]) -> Vec<FieldElement> {
    let field = Field::Rational;
    let poly = trim(poly.to_vec());
    if poly.len() <= 1 {
        return Vec::new();
    }
    let lcm = poly
        .iter()
        .map(|c| {
            c.as_rational()
                .expect("rational coefficient")
                .denom()
                .clone()
        })
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c.as_rational().unwrap() * &lcm).to_integer())
        .collect();
    let mut out = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
    if shift > 0 {
        out.push(Q::zero());
    }
    let ints = &ints[shift..];
    if ints.len() > 1 {
        let p: Vec<Q> = ints.iter().cloned().map(Q::from_integer).collect();
        let g = q_gcd(p.clone(), q_deriv(&p));
        let sqfree = q_divmod(&p, &g).0;
        let den_bound = Q::from_integer(ints.last().unwrap().abs());
        let width = (&den_bound * &den_bound).recip();
        let mut chain = vec![sqfree.clone(), q_deriv(&sqfree)];
        loop {
            let n = chain.len();
            let r = q_divmod(&chain[n - 2], &chain[n - 1]).1;
            if r.is_empty() {
                break;
            }
            chain.push(
                primitive(&r)
                    .into_iter()
                    .map(|c| -Q::from_integer(c))
                    .collect(),
            );
        }
        let sturm: Vec<Vec<BigInt>> = chain.iter().map(|p| primitive(p)).collect();
        let sq = &sturm[0];
        let lead = sqfree.last().unwrap().abs();
        let bound = Q::one()
            + sqfree
                .iter()
                .map(|c| c.abs() / &lead)
                .fold(Q::zero(), |a, b| if b > a { b } else { a });
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_variations(&sturm, &lo) - sign_variations(&sturm, &hi);
            if count == 0 {
                continue;
            }
            // split off a root-free point so interval counts stay exact; exact hits are roots
            let mut mid = None;
            for (a, b) in [(1, 2), (1, 3), (2, 3), (1, 5), (2, 5), (3, 5), (4, 5)] {
                let m = &lo + (&hi - &lo) * Q::new(BigInt::from(a), BigInt::from(b));
                if sign_at(sq, &m) == 0 {
                    out.push(m);
                } else {
                    mid = Some(m);
                    break;
                }
            }
            let mid = mid.expect("a square-free polynomial has at most deg roots");
            if count > 1 {
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
                continue;
            }
            // one simple root in (lo, hi]: plain sign bisection
            let (mut lo, mut hi) = (lo, hi);
            if sign_at(sq, &hi) == 0 {
                out.push(hi);
                continue;
            }
            let s_lo = sign_at(sq, &lo);
            let two = Q::from_integer(BigInt::from(2));
            let mut exact = None;
            while &hi - &lo >= width {
                let m = (&lo + &hi) / &two;
                match sign_at(sq, &m) {
                    0 => {
                        exact = Some(m);
                        break;
                    }
                    s if s == s_lo => lo = m,
                    _ => hi = m,
                }
            }
            let cand = exact.unwrap_or_else(|| simplest_between(&lo, &hi));
            if sign_at(sq, &cand) == 0 {
                out.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    out.into_iter()
        .map(|q| field.from_rational(&q).expect("rational"))
        .collect()
}

/// `b² − 4ac`, over any [`Ring`].
pub fn disc_quadratic<R: Ring>(a: &R, b: &R, c: &R) -> R {
    b.ring_mul(b).ring_sub(&a.ring_mul(c).scale_int(4))
}

/// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²`, over any [`Ring`].
pub fn disc_cubic<R: Ring>(a: &R, b: &R, c: &R, d: &R) -> R {
    let abcd = a.ring_mul(b).ring_mul(c).ring_mul(d).scale_int(18);
    let b3d = b.ring_mul(b).ring_mul(b).ring_mul(d).scale_int(4);
    let b2c2 = b.ring_mul(b).ring_mul(c).ring_mul(c);
    let ac3 = a.ring_mul(c).ring_mul(c).ring_mul(c).scale_int(4);
    let a2d2 = a.ring_mul(a).ring_mul(d).ring_mul(d).scale_int(27);
    abcd.ring_sub(&b3d)
        .ring_add(&b2c2)
        .ring_sub(&ac3)
        .ring_sub(&a2d2)
}

/// Discriminant of a form of degree 2 or 3, from its coefficients.
pub fn form_discriminant(f: &BinaryForm) -> Option<FieldElement> {
    let c = f.coeffs();
    match f.degree() {
        2 => Some(disc_quadratic(&c[0], &c[1], &c[2])),
        3 => Some(disc_cubic(&c[0], &c[1], &c[2], &c[3])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(Field::Rational, c)
    }

    #[test]
    fn rational_roots_with_huge_coefficients() {
        let f = Field::Rational;
        let big = f.parse("123456789012345678901/98765432109876543").unwrap();
        // (3T − 7U)² (T − big·U) (T² − 2U²) U
        let lin = |a: FieldElement, b: FieldElement| BinaryForm::linear(a, b);
        let p = lin(f.int(3), f.int(-7))
            .mul(&lin(f.int(3), f.int(-7)))
            .mul(&lin(f.one(), -&big))
            .mul(&q(&[1, 0, -2]))
            .mul(&q(&[0, 1]));
        let roots = p.p1_roots().unwrap();
        let expected = vec![
            P1Point::finite(f.ratio(7, 3).unwrap()),
            P1Point::finite(big),
            P1Point::infinity(f),
        ];
        assert_eq!(roots, expected);
        assert!(q(&[1, 0, 1]).p1_roots().unwrap().is_empty());
        assert_eq!(
            q(&[1, 3, 3, 1]).p1_roots().unwrap(),
            vec![P1Point::finite(f.int(-1))]
        );
    }

    #[test]
    fn products() {
        assert_eq!(q(&[1, -1]).mul(&q(&[1, 1])), q(&[1, 0, -1]));
        assert!(q(&[1, 0, 1])
            .mul(&BinaryForm::zero(Field::Rational, 0))
            .is_zero());
        assert_eq!(q(&[1, 0]).mul(&q(&[1, 0, -2])), q(&[1, 0, -2, 0]));
    }

    #[test]
    fn gcds() {
        assert_eq!(q(&[1, 0, -1]).gcd(&q(&[1, -1])).unwrap(), q(&[1, -1]));
        assert_eq!(q(&[1, 0, -2]).gcd(&q(&[0, 1, 0, 0])).unwrap(), q(&[1]));
        assert_eq!(q(&[0, 1, 0]).gcd(&q(&[0, 0, 1])).unwrap(), q(&[0, 1]));
        assert_eq!(q(&[0, 0]).gcd(&q(&[0, 0])), Err(Error::BothZero));
    }

    #[test]
    fn exact_division() {
        let f = q(&[0, 1, -1, 0]); // T²U − TU²
        assert_eq!(f.div_exact(&q(&[0, 1])).unwrap(), q(&[1, -1, 0]));
        assert_eq!(f.div_exact(&q(&[1, 1])), Err(Error::NotDivisible));
    }

    #[test]
    fn roots() {
        let f7 = Field::prime(7).unwrap();
        let cubic = BinaryForm::from_ints(f7, &[1, 3, 6, 2]);
        assert!(cubic.p1_roots().unwrap().is_empty());
        let r = Field::Rational;
        let f = BinaryForm::new(
            r,
            vec![
                r.ratio(-1, 8).unwrap(),
                r.zero(),
                r.ratio(-3, 4).unwrap(),
                r.zero(),
            ],
        );
        assert_eq!(f.p1_roots().unwrap(), vec![P1Point::finite(r.zero())]);
        let roots = q(&[1, 0, -1]).p1_roots().unwrap();
        assert_eq!(
            roots,
            vec![P1Point::finite(r.int(-1)), P1Point::finite(r.int(1))]
        );
        assert_eq!(
            q(&[0, 1, 0]).p1_roots().unwrap(),
            vec![P1Point::finite(r.zero()), P1Point::infinity(r)]
        );
        assert_eq!(q(&[6, -5, 1]).p1_roots().unwrap().len(), 2);
        assert_eq!(
            q(&[2, -1]).p1_roots().unwrap(),
            vec![P1Point::finite(r.ratio(1, 2).unwrap())]
        );
        assert_eq!(BinaryForm::zero(r, 2).p1_roots(), Err(Error::ZeroForm));
        assert_eq!(
            BinaryForm::from_ints(Field::Real, &[1, 0]).p1_roots(),
            Err(Error::UnsupportedInMode("real-emulated"))
        );
    }

    #[test]
    fn discriminants() {
        let r = Field::Rational;
        assert_eq!(disc_quadratic(&r.int(1), &r.zero(), &r.int(-1)), r.int(4));
        assert_eq!(
            disc_cubic(&r.int(1), &r.zero(), &r.zero(), &r.zero()),
            r.zero()
        );
    }

    #[test]
    fn derivatives() {
        let f = q(&[1, 2, 3]);
        assert_eq!(f.d_t(), q(&[2, 2]));
        assert_eq!(f.d_u(), q(&[2, 6]));
    }
}
