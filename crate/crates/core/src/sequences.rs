//! The near-miss family `x^4 + y^4 - 8 = z^2`.
//!
//! Terms are indexed from `n = 0`:
//!
//! | n | x       | y       | z             |
//! |---|---------|---------|---------------|
//! | 0 | 22      | 23      | 717           |
//! | 1 | 1058    | 1103    | 1653213       |
//! | 2 | 50806   | 52967   | 3812308653    |
//! | 3 | 2439746 | 2543519 | 8791182100413 |
//!
//! and continue by
//!
//! ```text
//! x_n = 48 x_{n-1} + x_{n-2}
//! y_n = 48 y_{n-1} + y_{n-2}
//! z_n = 2306 z_{n-1} - z_{n-2} + (-1)^n 192
//! ```
//!
//! The same values come out of closed forms over `Q(sqrt(577))`:
//! `x_n = a L1^n + b L2^n`, `y_n = c L1^n + d L2^n` and
//! `z_n = e M1^n + f M2^n + (-1)^n g`, see [`ClosedFormConstants`].

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{ratio, Integer, QuadElem, Rational};

/// The discriminant of the field all closed-form constants live in.
pub const DISCRIMINANT: u32 = 577;

/// Coefficient of `x_{n-1}` and `y_{n-1}`.
pub const XY_STEP: u32 = 48;
/// Coefficient of `z_{n-1}`.
pub const Z_STEP: u32 = 2306;
/// Magnitude of the alternating forcing term in the `z` recurrence.
pub const Z_FORCING: u32 = 192;
/// The residual: `x^4 + y^4 - z^2` for every member of the family.
pub const FAMILY_RESIDUAL: u32 = 8;

/// One member `(n, x_n, y_n, z_n)` of the family.
///
/// The defining equation is not enforced on construction; call
/// [`Triplet::residual`] or [`Triplet::is_solution`] to check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triplet {
    pub n: u64,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub x: Integer,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub y: Integer,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub z: Integer,
}

impl Triplet {
    /// `x^4 + y^4 - 8 - z^2`
    pub fn residual(&self) -> Integer {
        residual(&self.x, &self.y, &self.z)
    }

    /// Positive entries and zero residual.
    pub fn is_solution(&self) -> bool {
        let zero = Integer::zero();
        self.x > zero && self.y > zero && self.z > zero && self.residual().is_zero()
    }
}

/// `x^4 + y^4 - 8 - z^2`, exactly.
pub fn residual(x: &Integer, y: &Integer, z: &Integer) -> Integer {
    fourth(x) + fourth(y) - Integer::from(FAMILY_RESIDUAL) - z * z
}

fn fourth(v: &Integer) -> Integer {
    let sq = v * v;
    &sq * &sq
}

/// The two leading columns the three-term recurrences start from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialTerms {
    pub x: [Integer; 2],
    pub y: [Integer; 2],
    pub z: [Integer; 2],
}

impl InitialTerms {
    /// Columns `n = 0` and `n = 1` of the table above.
    pub fn standard() -> Self {
        InitialTerms {
            x: [22.into(), 1058.into()],
            y: [23.into(), 1103.into()],
            z: [717.into(), 1653213.into()],
        }
    }
}

impl Default for InitialTerms {
    fn default() -> Self {
        Self::standard()
    }
}

/// Iterator over the family by recurrence. Holds only the last two terms.
#[derive(Clone, Debug)]
pub struct Recurrence {
    n: u64,
    prev: [Integer; 3],
    cur: [Integer; 3],
}

impl Recurrence {
    pub fn new(init: &InitialTerms) -> Self {
        // `prev` is a placeholder until two terms have been produced.
        Recurrence {
            n: 0,
            prev: [init.x[0].clone(), init.y[0].clone(), init.z[0].clone()],
            cur: [init.x[1].clone(), init.y[1].clone(), init.z[1].clone()],
        }
    }
}

impl Iterator for Recurrence {
    type Item = Triplet;

    fn next(&mut self) -> Option<Triplet> {
        let n = self.n;
        let [x, y, z] = match n {
            0 => self.prev.clone(),
            1 => self.cur.clone(),
            _ => {
                let step = Integer::from(XY_STEP);
                let x = &step * &self.cur[0] + &self.prev[0];
                let y = &step * &self.cur[1] + &self.prev[1];
                let forcing = Integer::from(Z_FORCING);
                let mut z = Integer::from(Z_STEP) * &self.cur[2] - &self.prev[2];
                if n.is_multiple_of(2) {
                    z += forcing;
                } else {
                    z -= forcing;
                }
                let next = [x, y, z];
                self.prev = std::mem::replace(&mut self.cur, next.clone());
                next
            }
        };
        self.n += 1;
        Some(Triplet { n, x, y, z })
    }
}

/// The first `count` members, `n = 0 .. count - 1`.
pub fn gen_recurrence(count: u64) -> Result<Vec<Triplet>> {
    gen_recurrence_from(&InitialTerms::standard(), count)
}

pub fn gen_recurrence_from(init: &InitialTerms, count: u64) -> Result<Vec<Triplet>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let len = usize::try_from(count).map_err(|_| Error::InvalidInput(format!("count {count} too large")))?;
    Ok(Recurrence::new(init).take(len).collect())
}

/// Constants of the closed forms, all in `Q(sqrt(577))`.
///
/// Denominators are rationalized: `265/sqrt(577)` is stored as
/// `(265/577) sqrt(577)`. Fields are public so callers can perturb them; the
/// identity checks take any values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormConstants {
    /// `24 + sqrt(577)`, root of `L^2 = 48 L + 1`
    pub lambda1: QuadElem,
    pub lambda2: QuadElem,
    /// `1153 + 48 sqrt(577)`, root of `M^2 = 2306 M - 1`
    pub mu1: QuadElem,
    pub mu2: QuadElem,
    pub a: QuadElem,
    pub b: QuadElem,
    pub c: QuadElem,
    pub d: QuadElem,
    pub e: QuadElem,
    pub f: QuadElem,
    /// Amplitude of the alternating particular solution, `48/577`.
    pub g: Rational,
}

impl ClosedFormConstants {
    pub fn standard() -> Self {
        let q = |p: Rational, s: Rational| {
            QuadElem::new(p, s, DISCRIMINANT).expect("577 is square-free")
        };
        let lambda1 = q(ratio(24, 1), ratio(1, 1));
        let mu1 = q(ratio(1153, 1), ratio(48, 1));
        let a = q(ratio(11, 1), ratio(265, 577));
        let c = q(ratio(23, 2), ratio(551, 1154));
        let e = q(ratio(413661, 1154), ratio(17221, 1154));
        ClosedFormConstants {
            lambda2: lambda1.conj(),
            mu2: mu1.conj(),
            b: a.conj(),
            d: c.conj(),
            f: e.conj(),
            lambda1,
            mu1,
            a,
            c,
            e,
            g: ratio(48, 577),
        }
    }
}

impl Default for ClosedFormConstants {
    fn default() -> Self {
        Self::standard()
    }
}

fn exponent(n: u64) -> Result<i64> {
    i64::try_from(n).map_err(|_| Error::InvalidInput(format!("index {n} too large")))
}

/// `(-1)^n g`
fn alternating(n: u64, g: &Rational) -> Rational {
    if n.is_multiple_of(2) {
        g.clone()
    } else {
        -g
    }
}

fn expect_integer(what: &str, n: u64, v: &QuadElem) -> Result<Integer> {
    v.to_integer().ok_or_else(|| {
        Error::InternalInconsistency(format!("closed form for {what}_{n} is not an integer: {v}"))
    })
}

/// `(x_n, y_n)` from `a L1^n + b L2^n` and `c L1^n + d L2^n`.
///
/// The `sqrt(577)` parts must cancel exactly and the remainder must be an
/// integer; anything else is an [`Error::InternalInconsistency`].
pub fn closed_form_xy(n: u64, k: &ClosedFormConstants) -> Result<(Integer, Integer)> {
    let e = exponent(n)?;
    let l1 = k.lambda1.pow(e)?;
    let l2 = k.lambda2.pow(e)?;
    let x = k.a.checked_mul(&l1)?.checked_add(&k.b.checked_mul(&l2)?)?;
    let y = k.c.checked_mul(&l1)?.checked_add(&k.d.checked_mul(&l2)?)?;
    Ok((expect_integer("x", n, &x)?, expect_integer("y", n, &y)?))
}

/// `z_n` from `e M1^n + f M2^n + (-1)^n g`, with the same exactness contract
/// as [`closed_form_xy`]. The result must also be positive.
pub fn closed_form_z(n: u64, k: &ClosedFormConstants) -> Result<Integer> {
    let e = exponent(n)?;
    let z = k
        .e
        .checked_mul(&k.mu1.pow(e)?)?
        .checked_add(&k.f.checked_mul(&k.mu2.pow(e)?)?)?
        .add_rational(&alternating(n, &k.g));
    let z = expect_integer("z", n, &z)?;
    if z <= Integer::zero() {
        return Err(Error::InternalInconsistency(format!("closed form gives z_{n} = {z} <= 0")));
    }
    Ok(z)
}

/// Every intermediate value of the closed-form evaluation at one index.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormTrace {
    #[serde(serialize_with = "crate::format::ser_display")]
    pub n: u64,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub lambda1_pow: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub lambda2_pow: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub mu1_pow: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub mu2_pow: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub a_term: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub b_term: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub c_term: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub d_term: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub e_term: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub f_term: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub g_term: Rational,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub x_sum: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub y_sum: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub z_sum: QuadElem,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub x: Integer,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub y: Integer,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub z: Integer,
}

impl ClosedFormTrace {
    /// `(name, value)` pairs in evaluation order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("n", self.n.to_string()),
            ("lambda1^n", self.lambda1_pow.to_string()),
            ("lambda2^n", self.lambda2_pow.to_string()),
            ("mu1^n", self.mu1_pow.to_string()),
            ("mu2^n", self.mu2_pow.to_string()),
            ("a*lambda1^n", self.a_term.to_string()),
            ("b*lambda2^n", self.b_term.to_string()),
            ("c*lambda1^n", self.c_term.to_string()),
            ("d*lambda2^n", self.d_term.to_string()),
            ("e*mu1^n", self.e_term.to_string()),
            ("f*mu2^n", self.f_term.to_string()),
            ("(-1)^n*g", self.g_term.to_string()),
            ("x_sum", self.x_sum.to_string()),
            ("y_sum", self.y_sum.to_string()),
            ("z_sum", self.z_sum.to_string()),
            ("x", self.x.to_string()),
            ("y", self.y.to_string()),
            ("z", self.z.to_string()),
        ]
    }
}

pub fn closed_form_trace(n: u64, k: &ClosedFormConstants) -> Result<ClosedFormTrace> {
    let e = exponent(n)?;
    let lambda1_pow = k.lambda1.pow(e)?;
    let lambda2_pow = k.lambda2.pow(e)?;
    let mu1_pow = k.mu1.pow(e)?;
    let mu2_pow = k.mu2.pow(e)?;
    let a_term = k.a.checked_mul(&lambda1_pow)?;
    let b_term = k.b.checked_mul(&lambda2_pow)?;
    let c_term = k.c.checked_mul(&lambda1_pow)?;
    let d_term = k.d.checked_mul(&lambda2_pow)?;
    let e_term = k.e.checked_mul(&mu1_pow)?;
    let f_term = k.f.checked_mul(&mu2_pow)?;
    let g_term = alternating(n, &k.g);
    let x_sum = a_term.checked_add(&b_term)?;
    let y_sum = c_term.checked_add(&d_term)?;
    let z_sum = e_term.checked_add(&f_term)?.add_rational(&g_term);
    Ok(ClosedFormTrace {
        n,
        x: expect_integer("x", n, &x_sum)?,
        y: expect_integer("y", n, &y_sum)?,
        z: expect_integer("z", n, &z_sum)?,
        lambda1_pow,
        lambda2_pow,
        mu1_pow,
        mu2_pow,
        a_term,
        b_term,
        c_term,
        d_term,
        e_term,
        f_term,
        g_term,
        x_sum,
        y_sum,
        z_sum,
    })
}

/// Outcome of checking one index against both the residual and the closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexCheck {
    pub n: u64,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub residual: Integer,
    pub closed_form_agrees: bool,
    /// Set when the closed-form evaluation itself failed.
    pub closed_form_error: Option<String>,
}

impl IndexCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero() && self.closed_form_agrees
    }
}

/// Checks `residual = 0` and closed-form agreement for each triplet.
pub fn check_triplets(triplets: &[Triplet], k: &ClosedFormConstants) -> Vec<IndexCheck> {
    triplets
        .iter()
        .map(|t| {
            let closed = closed_form_xy(t.n, k).and_then(|xy| Ok((xy, closed_form_z(t.n, k)?)));
            let (agrees, err) = match closed {
                Ok(((x, y), z)) => (x == t.x && y == t.y && z == t.z, None),
                Err(e) => (false, Some(e.to_string())),
            };
            IndexCheck { n: t.n, residual: t.residual(), closed_form_agrees: agrees, closed_form_error: err }
        })
        .collect()
}
