use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{parse_integer, parse_rational, Integer, Rational};
use crate::error::{Error, Result};

/// An element `p + q*sqrt(D)` of the real quadratic field `Q(sqrt(D))`.
///
/// `D` is a square-free integer greater than one, so `sqrt(D)` is irrational and
/// the pair `(p, q)` is unique. Equality is therefore structural.
///
/// The `checked_*` methods report a discriminant mismatch as an error. The
/// operator impls panic on mismatch instead; use them only where every
/// operand comes from the same field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    p: Rational,
    q: Rational,
    d: u32,
}

fn validate_discriminant(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDiscriminant(d.into()));
    }
    let mut f = 2u64;
    while f * f <= d as u64 {
        if (d as u64).is_multiple_of(f * f) {
            return Err(Error::InvalidDiscriminant(d.into()));
        }
        f += 1;
    }
    Ok(())
}

impl QuadElem {
    pub fn new(p: Rational, q: Rational, d: u32) -> Result<Self> {
        validate_discriminant(d)?;
        Ok(QuadElem { p, q, d })
    }

    pub fn from_rational(p: Rational, d: u32) -> Result<Self> {
        Self::new(p, Rational::zero(), d)
    }

    pub fn from_integer(n: impl Into<Integer>, d: u32) -> Result<Self> {
        Self::from_rational(Rational::from_integer(n.into()), d)
    }

    pub fn zero(d: u32) -> Result<Self> {
        Self::from_rational(Rational::zero(), d)
    }

    pub fn one(d: u32) -> Result<Self> {
        Self::from_rational(Rational::one(), d)
    }

    /// `sqrt(D)` itself.
    pub fn sqrt_d(d: u32) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    // Same field as `self`; the discriminant is already validated.
    fn with(&self, p: Rational, q: Rational) -> Self {
        QuadElem { p, q, d: self.d }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.q
    }

    pub fn discriminant(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// The value as an integer, when the `sqrt(D)` part vanishes and the
    /// rational part has denominator one.
    pub fn to_integer(&self) -> Option<Integer> {
        (self.q.is_zero() && self.p.is_integer()).then(|| self.p.numer().clone())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::DiscriminantMismatch(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(&self.p + &other.p, &self.q + &other.q))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(&self.p - &other.p, &self.q - &other.q))
    }

    /// `(p1 p2 + D q1 q2) + (p1 q2 + p2 q1) sqrt(D)`
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = Rational::from_integer(self.d.into());
        let p = &self.p * &other.p + d * &self.q * &other.q;
        let q = &self.p * &other.q + &other.p * &self.q;
        Ok(self.with(p, q))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.with(&self.p * k, &self.q * k)
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        self.with(&self.p + k, self.q.clone())
    }

    /// `p - q sqrt(D)`
    pub fn conj(&self) -> Self {
        self.with(self.p.clone(), -&self.q)
    }

    /// `p^2 - D q^2`, the product of the element with its conjugate.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(self.d.into());
        &self.p * &self.p - d * &self.q * &self.q
    }

    pub fn trace(&self) -> Rational {
        &self.p + &self.p
    }

    /// `conj(u) / norm(u)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let n = self.norm();
        // norm vanishes only at zero because sqrt(D) is irrational
        Ok(self.conj().scale(&n.recip()))
    }

    /// Exact `k`-th power by repeated squaring; negative `k` goes through [`inv`](Self::inv).
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            if self.is_zero() {
                return Err(Error::Domain(format!("zero raised to negative power {k}")));
            }
            return self.inv()?.pow_unsigned(k.unsigned_abs());
        }
        self.pow_unsigned(k as u64)
    }

    fn pow_unsigned(&self, mut k: u64) -> Result<Self> {
        let mut acc = Self::one(self.d)?;
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for QuadElem {
    /// `"p + q*sqrt(D)"` or `"p - |q|*sqrt(D)"`, with `p`, `q` as `num` or `num/den`.
    /// The `sqrt(D)` term is always written, even when `q` is zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt({})", self.p, sign, self.q.abs(), self.d)
    }
}

impl FromStr for QuadElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"p + q*sqrt(D)\", got {s:?}"));
        let t = s.trim();
        let (head, tail) = t.split_once("*sqrt(").ok_or_else(bad)?;
        let d_str = tail.strip_suffix(')').ok_or_else(bad)?;
        let d = parse_integer(d_str)?;
        let d = u32::try_from(&d).map_err(|_| Error::Parse(format!("discriminant out of range in {s:?}")))?;

        let plus = head.rfind(" + ");
        let minus = head.rfind(" - ");
        let (split, negative) = match (plus, minus) {
            (Some(i), Some(j)) if j > i => (j, true),
            (Some(i), _) => (i, false),
            (None, Some(j)) => (j, true),
            (None, None) => return Err(bad()),
        };
        let p = parse_rational(&head[..split])?;
        let q = parse_rational(&head[split + 3..])?;
        if q.is_negative() {
            return Err(bad());
        }
        QuadElem::new(p, if negative { -q } else { q }, d)
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;

    fn add(self, rhs: &QuadElem) -> QuadElem {
        self.checked_add(rhs).expect("QuadElem addition across fields")
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;

    fn sub(self, rhs: &QuadElem) -> QuadElem {
        self.checked_sub(rhs).expect("QuadElem subtraction across fields")
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;

    fn mul(self, rhs: &QuadElem) -> QuadElem {
        self.checked_mul(rhs).expect("QuadElem multiplication across fields")
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;

    fn neg(self) -> QuadElem {
        self.with(-&self.p, -&self.q)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadElem {
            type Output = QuadElem;

            fn $m(self, rhs: QuadElem) -> QuadElem {
                (&self).$m(&rhs)
            }
        }

        impl $tr<&QuadElem> for QuadElem {
            type Output = QuadElem;

            fn $m(self, rhs: &QuadElem) -> QuadElem {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadElem {
    type Output = QuadElem;

    fn neg(self) -> QuadElem {
        -&self
    }
}
