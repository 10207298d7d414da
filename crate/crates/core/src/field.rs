//! Exact scalar fields: the rationals, prime fields GF(p) with p odd, and an
//! emulated real-closed mode.
//!
//! The real-closed mode stores exact rationals and differs from the rational
//! mode only where an ordered, root-closed field would answer differently:
//! squareness is decided by sign, and square roots of positive non-squares
//! are refused rather than approximated.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field the scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
    Real,
}

/// The four field operations, for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Frac(BigRational),
    Residue(u64),
}

/// An exact element of a [`Field`]. Immutable; rationals are kept in lowest
/// terms with a positive denominator and residues are reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Tonelli-Shanks. `n` must be a nonzero quadratic residue mod `p`.
fn tonelli_shanks(n: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(n, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl Field {
    /// GF(p); `p` must be an odd prime.
    pub fn prime(p: u64) -> Result<Field> {
        if is_odd_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            Field::Rational => "rational",
            Field::Prime(_) => "prime",
            Field::Real => "real-emulated",
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let repr = match self {
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Repr::Residue(r.to_u64().expect("residue fits in u64"))
            }
            _ => Repr::Frac(BigRational::from_integer(n.clone())),
        };
        FieldElement { field: *self, repr }
    }

    /// The element `num / den`.
    pub fn ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        self.int(num).checked_div(&self.int(den))
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        match self {
            Field::Prime(_) => self
                .from_bigint(q.numer())
                .checked_div(&self.from_bigint(q.denom())),
            _ => Ok(FieldElement {
                field: *self,
                repr: Repr::Frac(q.clone()),
            }),
        }
    }

    /// Parses "a", "-a" or "a/b". Prime-field inputs are reduced mod p.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid field element {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_bigint(&num).checked_div(&self.from_bigint(&den))
    }

    /// All elements of a prime field in residue order. Empty for infinite fields.
    pub fn elements(&self) -> Vec<FieldElement> {
        match self {
            Field::Prime(p) => (0..*p)
                .map(|r| FieldElement {
                    field: *self,
                    repr: Repr::Residue(r),
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime:{p}"),
            Field::Real => write!(f, "real"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        match s.trim() {
            "rational" | "q" | "Q" => Ok(Field::Rational),
            "real" | "real-emulated" => Ok(Field::Real),
            other => {
                let p = other
                    .strip_prefix("prime:")
                    .or_else(|| other.strip_prefix("gf:"))
                    .ok_or_else(|| Error::Parse(format!("unknown field descriptor {other:?}")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
                Field::prime(p)
            }
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Frac(q) => q.is_zero(),
            Repr::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Frac(q) => q.is_one(),
            Repr::Residue(r) => *r == 1,
        }
    }

    /// The exact rational value, for rational and real-emulated elements.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Frac(q) => Some(q),
            Repr::Residue(_) => None,
        }
    }

    /// The residue in `[0, p)`, for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(r) => Some(*r),
            Repr::Frac(_) => None,
        }
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, repr: Repr) -> FieldElement {
        FieldElement {
            field: self.field,
            repr,
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(match (&self.repr, &other.repr, self.field) {
            (Repr::Frac(a), Repr::Frac(b), _) => self.with(Repr::Frac(a + b)),
            (Repr::Residue(a), Repr::Residue(b), Field::Prime(p)) => self.with(Repr::Residue(
                ((*a as u128 + *b as u128) % p as u128) as u64,
            )),
            _ => unreachable!("representation matches field"),
        })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(match (&self.repr, &other.repr, self.field) {
            (Repr::Frac(a), Repr::Frac(b), _) => self.with(Repr::Frac(a * b)),
            (Repr::Residue(a), Repr::Residue(b), Field::Prime(p)) => {
                self.with(Repr::Residue(mul_mod(*a, *b, p)))
            }
            _ => unreachable!("representation matches field"),
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&self.repr, self.field) {
            (Repr::Frac(a), _) => self.with(Repr::Frac(a.recip())),
            (Repr::Residue(a), Field::Prime(p)) => self.with(Repr::Residue(pow_mod(*a, p - 2, p))),
            _ => unreachable!("representation matches field"),
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    /// Sign of the value in the rational and real modes; `None` over GF(p).
    pub fn signum(&self) -> Option<i32> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    /// Whether the element is a square in its field. Zero counts as a square.
    pub fn is_square(&self) -> bool {
        match (&self.repr, self.field) {
            (Repr::Residue(r), Field::Prime(p)) => *r == 0 || pow_mod(*r, (p - 1) / 2, p) == 1,
            (Repr::Frac(q), Field::Rational) => {
                !q.is_negative()
                    && perfect_square_root(q.numer()).is_some()
                    && perfect_square_root(q.denom()).is_some()
            }
            (Repr::Frac(q), Field::Real) => !q.is_negative(),
            _ => unreachable!("representation matches field"),
        }
    }

    /// A square root if one exists. Over GF(p) the root in `[0, p/2]` is
    /// returned. In the real-emulated mode a positive non-square rational has
    /// an irrational root, which is refused with `UnsupportedInMode`.
    pub fn sqrt(&self) -> Result<Option<FieldElement>> {
        match (&self.repr, self.field) {
            (Repr::Residue(r), Field::Prime(p)) => {
                if *r == 0 {
                    return Ok(Some(self.clone()));
                }
                if pow_mod(*r, (p - 1) / 2, p) != 1 {
                    return Ok(None);
                }
                let root = tonelli_shanks(*r, p);
                let root = root.min(p - root);
                Ok(Some(self.with(Repr::Residue(root))))
            }
            (Repr::Frac(q), field) => {
                if q.is_negative() {
                    return Ok(None);
                }
                match (
                    perfect_square_root(q.numer()),
                    perfect_square_root(q.denom()),
                ) {
                    (Some(n), Some(d)) => Ok(Some(self.with(Repr::Frac(BigRational::new(n, d))))),
                    _ if field == Field::Real => Err(Error::UnsupportedInMode("real-emulated")),
                    _ => Ok(None),
                }
            }
            _ => unreachable!("representation matches field"),
        }
    }
}

/// Exact arithmetic with explicit error reporting.
pub fn arith(a: &FieldElement, b: &FieldElement, op: Op) -> Result<FieldElement> {
    match op {
        Op::Add => a.checked_add(b),
        Op::Sub => a.checked_sub(b),
        Op::Mul => a.checked_mul(b),
        Op::Div => a.checked_div(b),
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Frac(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Frac(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match (&self.repr, self.field) {
            (Repr::Frac(a), _) => self.with(Repr::Frac(-a)),
            (Repr::Residue(a), Field::Prime(p)) => self.with(Repr::Residue((p - a) % p)),
            _ => unreachable!("representation matches field"),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

// Operator forms panic on mixed fields or division by zero; the `checked_*`
// methods report those as errors instead.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {e}", stringify!($method)),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let q = Field::Rational;
        let a = q.ratio(1, 3).unwrap();
        let b = q.ratio(1, 6).unwrap();
        assert_eq!(&a + &b, q.ratio(1, 2).unwrap());
        assert_eq!(q.ratio(2, -4).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn prime_arithmetic() {
        let f = Field::prime(7).unwrap();
        assert_eq!(arith(&f.int(3), &f.int(5), Op::Div).unwrap(), f.int(2));
        assert_eq!(&f.int(6) * &f.int(6), f.int(1));
        assert_eq!(f.int(-1).residue(), Some(6));
    }

    #[test]
    fn errors() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.int(1).checked_div(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(
            f.int(1).checked_add(&Field::Rational.one()),
            Err(Error::FieldMismatch)
        );
        assert_eq!(Field::prime(2), Err(Error::InvalidPrime(2)));
        assert_eq!(Field::prime(9), Err(Error::InvalidPrime(9)));
    }

    #[test]
    fn squares_mod_7() {
        let f = Field::prime(7).unwrap();
        let squares: Vec<u64> = f
            .elements()
            .iter()
            .filter(|x| x.is_square())
            .map(|x| x.residue().unwrap())
            .collect();
        assert_eq!(squares, vec![0, 1, 2, 4]);
        let r = f.int(2).sqrt().unwrap().unwrap();
        assert_eq!(r, f.int(3));
        assert_eq!(f.int(3).sqrt().unwrap(), None);
    }

    #[test]
    fn rational_squares() {
        let q = Field::Rational;
        assert!(q.ratio(9, 4).unwrap().is_square());
        assert!(!q.int(2).is_square());
        assert!(!q.int(-4).is_square());
        assert_eq!(
            q.ratio(9, 4).unwrap().sqrt().unwrap(),
            Some(q.ratio(3, 2).unwrap())
        );
        assert_eq!(q.int(2).sqrt().unwrap(), None);
    }

    #[test]
    fn real_mode() {
        let r = Field::Real;
        assert!(!r.int(-1).is_square());
        assert!(r.int(2).is_square());
        assert_eq!(
            r.int(2).sqrt(),
            Err(Error::UnsupportedInMode("real-emulated"))
        );
        assert_eq!(r.int(4).sqrt().unwrap(), Some(r.int(2)));
        assert_eq!(r.int(-4).sqrt().unwrap(), None);
    }

    #[test]
    fn square_counts_by_enumeration() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = Field::prime(p).unwrap();
            let by_euler = f.elements().iter().filter(|x| x.is_square()).count();
            let mut by_squaring: Vec<u64> = f
                .elements()
                .iter()
                .map(|x| x.square().residue().unwrap())
                .collect();
            by_squaring.sort();
            by_squaring.dedup();
            assert_eq!(by_euler as u64, p.div_ceil(2));
            assert_eq!(by_squaring.len(), by_euler);
        }
    }

    #[test]
    fn tonelli_shanks_on_one_mod_four() {
        // p = 13 and p = 17 exercise the general branch.
        for p in [13u64, 17, 41, 97] {
            let f = Field::prime(p).unwrap();
            for x in f.elements() {
                match x.sqrt().unwrap() {
                    Some(r) => {
                        assert_eq!(r.square(), x);
                        assert!(r.residue().unwrap() <= p / 2);
                    }
                    None => assert!(!x.is_square()),
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let q = Field::Rational;
        assert_eq!(q.parse("-3/6").unwrap().to_string(), "-1/2");
        assert_eq!(q.parse(" 4 ").unwrap().to_string(), "4");
        assert!(q.parse("x").is_err());
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse("1/2").unwrap().to_string(), "4");
        assert_eq!("prime:13".parse::<Field>().unwrap(), Field::Prime(13));
        assert!("prime:2".parse::<Field>().is_err());
        assert_eq!(Field::Prime(5).to_string(), "prime:5");
    }
}
