//! Sparse multivariate polynomials over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Field, FieldElement};

/// Minimal commutative-ring interface, so discriminants can be evaluated on
/// scalars and on polynomials alike.
pub trait Ring: Clone {
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn scale_int(&self, n: i64) -> Self;
}

impl Ring for FieldElement {
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_int(&self, n: i64) -> Self {
        self * &self.field().int(n)
    }
}

/// Polynomial in `nvars` variables, stored as exponent vector -> nonzero coefficient.
/// Keys are ordered lexicographically, so the last key is the lex-leading monomial
/// with variable 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MPoly {
    pub fn zero(field: Field, nvars: usize) -> MPoly {
        MPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> MPoly {
        MPoly::monomial(c, vec![0; nvars])
    }

    pub fn monomial(c: FieldElement, exps: Vec<u32>) -> MPoly {
        let mut p = MPoly::zero(c.field(), exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(field: Field, nvars: usize, i: usize) -> MPoly {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        MPoly::monomial(field.one(), exps)
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; like terms are summed.
    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (FieldElement, Vec<u32>)>,
    ) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&exps) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, sum);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElement {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.field, self.nvars);
        }
        MPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::constant(self.field.one(), self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term = &term * &x.pow(k as u64);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &self.field.int(e[i] as i64));
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`. All images share one arity,
    /// which becomes the arity of the result.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::constant(self.field.one(), target), p.clone()])
            .collect();
        let mut out = MPoly::zero(self.field, target);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone(), target);
            for (i, &k) in e.iter().enumerate() {
                let powers = &mut cache[i];
                while powers.len() <= k as usize {
                    let next = powers.last().unwrap() * &images[i];
                    powers.push(next);
                }
                if k > 0 {
                    term = &term * &powers[k as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Adds a homogenizing variable at the end, raising every term to total degree `d`.
    pub fn homogenize(&self, d: u32) -> MPoly {
        let mut out = MPoly::zero(self.field, self.nvars + 1);
        for (e, c) in &self.terms {
            let deg: u32 = e.iter().sum();
            assert!(deg <= d, "homogenizing degree too small");
            let mut e2 = e.clone();
            e2.push(d - deg);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Lex-leading coefficient (variable 0 most significant).
    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.values().next_back()
    }

    /// Scales so the lex-leading coefficient is 1. The zero polynomial is unchanged.
    pub fn normalized(&self) -> MPoly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Whether `self = λ·other` for some nonzero λ.
    pub fn is_scalar_multiple_of(&self, other: &MPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalized() == other.normalized()
    }

    fn same_ring(&self, other: &MPoly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials in different variable counts"
        );
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.same_ring(rhs);
        let mut out = MPoly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Ring for MPoly {
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_int(&self, n: i64) -> Self {
        self.scale(&self.field.int(n))
    }
}

/// Variable names used by `Display` and by the coefficient-map serialization.
pub fn monomial_name(exps: &[u32], names: &[&str]) -> String {
    let mut s = String::new();
    for (i, &k) in exps.iter().enumerate() {
        match k {
            0 => {}
            1 => s.push_str(names[i]),
            _ => s.push_str(&format!("{}{}", names[i], k)),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["X", "Y", "Z", "W", "V", "S"];
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<&str> = NAMES.iter().copied().take(self.nvars).collect();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.iter().all(|&k| k == 0) {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", monomial_name(e, &names))?;
            } else {
                write!(f, "({c})*{}", monomial_name(e, &names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (MPoly, MPoly) {
        let q = Field::Rational;
        (MPoly::var(q, 2, 0), MPoly::var(q, 2, 1))
    }

    #[test]
    fn arithmetic_and_eval() {
        let (x, y) = xy();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        let q = Field::Rational;
        assert_eq!(p.eval(&[q.int(3), q.int(2)]), q.int(5));
        assert_eq!(p.total_degree(), Some(2));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn derivative_and_compose() {
        let (x, y) = xy();
        let p = &x.pow(3) * &y;
        let q = Field::Rational;
        assert_eq!(p.derivative(0), (&x.pow(2) * &y).scale(&q.int(3)));
        let shifted = p.compose(&[&x + &MPoly::constant(q.one(), 2), y.clone()]);
        assert_eq!(shifted.eval(&[q.zero(), q.int(2)]), q.int(2));
    }

    #[test]
    fn homogenize_and_parts() {
        let (x, y) = xy();
        let q = Field::Rational;
        let p = &(&x.pow(2) + &y) + &MPoly::constant(q.int(3), 2);
        let h = p.homogenize(2);
        assert_eq!(h.coeff(&[0, 1, 1]), q.one());
        assert_eq!(h.coeff(&[0, 0, 2]), q.int(3));
        assert_eq!(p.lowest_degree(), Some(0));
        assert_eq!(p.homogeneous_part(2), x.pow(2));
    }

    #[test]
    fn normalization() {
        let (x, y) = xy();
        let q = Field::Rational;
        let p = (&x.pow(2) + &y).scale(&q.int(-4));
        assert_eq!(p.normalized(), &x.pow(2) + &y);
        assert!(p.is_scalar_multiple_of(&(&x.pow(2) + &y)));
        assert!(!p.is_scalar_multiple_of(&x));
    }
}
