//! Exact arithmetic: arbitrary-precision integers, canonical rationals and
//! the real quadratic field `Q(sqrt(D))`.
//!
//! [`Integer`] and [`Rational`] are the `num` big-number types. `BigRational`
//! keeps every value reduced with a positive denominator, so structural
//! equality is value equality. Nothing in this module touches floating point.

mod isqrt;
mod quad;

pub use isqrt::{isqrt, isqrt_u128};
pub use quad::QuadElem;

use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sign-magnitude arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Reduced fraction of [`Integer`]s with `den > 0`.
pub type Rational = num_rational::BigRational;

/// Parses a decimal integer, optionally signed. No exponent or grouping.
pub fn parse_integer(s: &str) -> Result<Integer> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a decimal integer: {s:?}")));
    }
    Integer::from_str(t).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// Parses `"num"` or `"num/den"` into canonical form.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_integer(t)?)),
        Some((n, d)) => {
            let num = parse_integer(n)?;
            let den = parse_integer(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// `num/den` from machine integers; `den` must be nonzero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// The integer value of `r`, if `r` has denominator one.
pub fn rational_to_integer(r: &Rational) -> Option<Integer> {
    r.is_integer().then(|| r.numer().clone())
}

/// `den > 0` and `gcd(num, den) = 1`.
pub fn is_canonical(r: &Rational) -> bool {
    use num_integer::Integer as _;
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
