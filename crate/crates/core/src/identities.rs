//! Exact symbolic proof that the closed forms satisfy `x^4 + y^4 - 8 = z^2`
//! for every index.
//!
//! Write `L = lambda1`. Since `lambda1 * lambda2 = -1` we have
//! `lambda2^n = (-1)^n L^-n`, and since `mu1 = L^2`, `mu2 = L^-2`. Both
//! `x_n^4 + y_n^4 - 8` and `z_n^2` then become sums of five terms
//! `coeff * L^(k n)` for `k` in `{4, 2, 0, -2, -4}`, the `k = +-2` terms carrying
//! an extra `(-1)^n`. Equal coefficients slot by slot prove the identity for
//! all `n` at once.
//!
//! The coefficients are derived twice: [`expand_lhs`] / [`expand_rhs`] multiply
//! the closed forms out as Laurent series, [`verify_five_identities`] evaluates
//! the coefficient formulas written out by hand.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{QuadElem, Rational};
use crate::sequences::{ClosedFormConstants, FAMILY_RESIDUAL};

/// Slots of an expansion table, highest power first.
pub const SLOTS: [i32; 5] = [4, 2, 0, -2, -4];

/// `coeff * L^(slot n)`, times `(-1)^n` when `alternating`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionTerm {
    #[serde(serialize_with = "crate::format::ser_display")]
    pub coeff: QuadElem,
    pub alternating: bool,
}

/// One side of the Laurent-expansion comparison, keyed by slot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpansionTable {
    entries: BTreeMap<i32, ExpansionTerm>,
}

impl ExpansionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, slot: i32, term: ExpansionTerm) -> Option<ExpansionTerm> {
        self.entries.insert(slot, term)
    }

    pub fn remove(&mut self, slot: i32) -> Option<ExpansionTerm> {
        self.entries.remove(&slot)
    }

    pub fn get(&self, slot: i32) -> Option<&ExpansionTerm> {
        self.entries.get(&slot)
    }

    pub fn get_mut(&mut self, slot: i32) -> Option<&mut ExpansionTerm> {
        self.entries.get_mut(&slot)
    }

    /// Entries from the highest slot down.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &ExpansionTerm)> {
        self.entries.iter().rev().map(|(k, v)| (*k, v))
    }

    /// Exactly the five slots in [`SLOTS`].
    pub fn is_canonical(&self) -> bool {
        self.entries.len() == SLOTS.len() && SLOTS.iter().all(|s| self.entries.contains_key(s))
    }

    /// Conjugates every coefficient and moves it from slot `k` to `-k`.
    pub fn conjugated(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(k, t)| (-k, ExpansionTerm { coeff: t.coeff.conj(), alternating: t.alternating }))
            .collect();
        ExpansionTable { entries }
    }
}

impl Serialize for ExpansionTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            slot: i32,
            #[serde(flatten)]
            term: &'a ExpansionTerm,
        }
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (slot, term) in self.iter() {
            seq.serialize_element(&Entry { slot, term })?;
        }
        seq.end()
    }
}

/// Slot-by-slot equality of coefficients and parity flags.
///
/// Both tables must be canonical; a missing or extra slot is rejected.
pub fn tables_equal(lhs: &ExpansionTable, rhs: &ExpansionTable) -> Result<bool> {
    for (side, t) in [("left", lhs), ("right", rhs)] {
        if !t.is_canonical() {
            let slots: Vec<i32> = t.entries.keys().copied().collect();
            return Err(Error::InvalidInput(format!(
                "{side} expansion table has slots {slots:?}, expected {SLOTS:?}"
            )));
        }
    }
    Ok(SLOTS.iter().all(|s| lhs.entries[s] == rhs.entries[s]))
}

/// Laurent polynomial in `L^n` whose terms may carry `(-1)^n`.
#[derive(Clone, Debug)]
struct ParitySeries {
    d: u32,
    terms: BTreeMap<(i32, bool), QuadElem>,
}

impl ParitySeries {
    fn new(d: u32, terms: impl IntoIterator<Item = ((i32, bool), QuadElem)>) -> Self {
        let mut s = ParitySeries { d, terms: BTreeMap::new() };
        for (key, c) in terms {
            s.accumulate(key, c);
        }
        s
    }

    fn accumulate(&mut self, key: (i32, bool), c: QuadElem) {
        let slot = self.terms.entry(key).or_insert_with(|| QuadElem::zero(c.discriminant()).expect("valid field"));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.accumulate(*key, c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = ParitySeries { d: self.d, terms: BTreeMap::new() };
        for ((k1, p1), c1) in &self.terms {
            for ((k2, p2), c2) in &other.terms {
                // (-1)^n (-1)^n = 1
                out.accumulate((k1 + k2, p1 ^ p2), c1 * c2);
            }
        }
        out
    }

    fn pow(&self, k: u32) -> Self {
        let one = QuadElem::one(self.d).expect("valid field");
        let mut acc = ParitySeries::new(self.d, [((0, false), one)]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Collapses into a five-slot table. Empty slots get a zero coefficient and
    /// the parity the closed forms give that slot.
    fn into_table(self) -> Result<ExpansionTable> {
        let mut table = ExpansionTable::new();
        for ((slot, alternating), coeff) in self.terms {
            if !SLOTS.contains(&slot) {
                return Err(Error::InternalInconsistency(format!("expansion produced slot {slot}")));
            }
            if table.insert(slot, ExpansionTerm { coeff, alternating }).is_some() {
                return Err(Error::InternalInconsistency(format!(
                    "slot {slot} has both alternating and fixed-sign terms"
                )));
            }
        }
        for slot in SLOTS {
            if table.get(slot).is_none() {
                let coeff = QuadElem::zero(self.d).expect("valid field");
                table.insert(slot, ExpansionTerm { coeff, alternating: slot % 4 != 0 });
            }
        }
        Ok(table)
    }
}

fn rational(r: &Rational, d: u32) -> QuadElem {
    QuadElem::from_rational(r.clone(), d).expect("valid field")
}

fn integer(v: i64, d: u32) -> QuadElem {
    QuadElem::from_integer(v, d).expect("valid field")
}

/// `x_n^4 + y_n^4 - 8` expanded from `x_n = a L^n + b (-1)^n L^-n` and the
/// analogous `y_n`, by multiplying the series out.
///
/// Panics if the constants do not all share one discriminant.
pub fn expand_lhs(k: &ClosedFormConstants) -> ExpansionTable {
    let d = k.a.discriminant();
    let x = ParitySeries::new(d, [((1, false), k.a.clone()), ((-1, true), k.b.clone())]);
    let y = ParitySeries::new(d, [((1, false), k.c.clone()), ((-1, true), k.d.clone())]);
    let minus_eight = ParitySeries::new(d, [((0, false), integer(-(FAMILY_RESIDUAL as i64), d))]);
    x.pow(4)
        .add(&y.pow(4))
        .add(&minus_eight)
        .into_table()
        .expect("fourth powers of two-term series land on even slots with one parity each")
}

/// `z_n^2` expanded from `z_n = e L^2n + f L^-2n + (-1)^n g`.
///
/// Panics if the constants do not all share one discriminant.
pub fn expand_rhs(k: &ClosedFormConstants) -> ExpansionTable {
    let d = k.e.discriminant();
    let z = ParitySeries::new(
        d,
        [((2, false), k.e.clone()), ((-2, false), k.f.clone()), ((0, true), rational(&k.g, d))],
    );
    z.pow(2).into_table().expect("square of the z series lands on even slots with one parity each")
}

/// Table for `x^4 + y^4 - 8` built from the written-out coefficients
/// `a^4 + c^4`, `4a^3b + 4c^3d`, `6a^2b^2 + 6c^2d^2 - 8`, `4ab^3 + 4cd^3`, `b^4 + d^4`.
pub fn stated_lhs_table(k: &ClosedFormConstants) -> ExpansionTable {
    table_from(lhs_coefficients(k))
}

/// Table for `z^2` built from `e^2`, `2eg`, `2ef + g^2`, `2fg`, `f^2`.
pub fn stated_rhs_table(k: &ClosedFormConstants) -> ExpansionTable {
    table_from(rhs_coefficients(k))
}

fn table_from(coeffs: [QuadElem; 5]) -> ExpansionTable {
    let mut t = ExpansionTable::new();
    for (slot, coeff) in SLOTS.into_iter().zip(coeffs) {
        t.insert(slot, ExpansionTerm { coeff, alternating: slot % 4 != 0 });
    }
    t
}

// Ordered as SLOTS: 4, 2, 0, -2, -4.
fn lhs_coefficients(k: &ClosedFormConstants) -> [QuadElem; 5] {
    let d = k.a.discriminant();
    let (a, b, c, dd) = (&k.a, &k.b, &k.c, &k.d);
    let sq = |u: &QuadElem| u * u;
    let cube = |u: &QuadElem| &sq(u) * u;
    let four = integer(4, d);
    let six = integer(6, d);
    [
        sq(&sq(a)) + sq(&sq(c)),
        &four * &(&cube(a) * b) + &four * &(&cube(c) * dd),
        &six * &(&sq(a) * &sq(b)) + &six * &(&sq(c) * &sq(dd)) - integer(FAMILY_RESIDUAL as i64, d),
        &four * &(a * &cube(b)) + &four * &(c * &cube(dd)),
        sq(&sq(b)) + sq(&sq(dd)),
    ]
}

fn rhs_coefficients(k: &ClosedFormConstants) -> [QuadElem; 5] {
    let d = k.e.discriminant();
    let (e, f) = (&k.e, &k.f);
    let g = rational(&k.g, d);
    let two = integer(2, d);
    [
        e * e,
        &two * &(e * &g),
        &two * &(e * f) + &g * &g,
        &two * &(f * &g),
        f * f,
    ]
}

/// One exact equality with both sides kept for diagnosis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub left: String,
    pub right: String,
    pub equal: bool,
}

impl IdentityCheck {
    fn compare<T: PartialEq + std::fmt::Display>(name: &str, left: &T, right: &T) -> Self {
        IdentityCheck {
            name: name.to_string(),
            left: left.to_string(),
            right: right.to_string(),
            equal: left == right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_equal(&self) -> bool {
        self.checks.iter().all(|c| c.equal)
    }

    pub fn flags(&self) -> Vec<bool> {
        self.checks.iter().map(|c| c.equal).collect()
    }
}

pub const FIVE_IDENTITY_NAMES: [&str; 5] = [
    "e^2 = a^4 + c^4",
    "f^2 = b^4 + d^4",
    "2eg = 4a^3b + 4c^3d",
    "2fg = 4ab^3 + 4cd^3",
    "2ef + g^2 = 6a^2b^2 + 6c^2d^2 - 8",
];

/// The five coefficient equalities, `z^2` side on the left.
pub fn verify_five_identities(k: &ClosedFormConstants) -> IdentityReport {
    let lhs = lhs_coefficients(k);
    let rhs = rhs_coefficients(k);
    // e^2, f^2, 2eg, 2fg, 2ef + g^2 against the matching x/y coefficient
    let order = [0usize, 4, 1, 3, 2];
    let checks = FIVE_IDENTITY_NAMES
        .iter()
        .zip(order)
        .map(|(name, i)| IdentityCheck::compare(name, &rhs[i], &lhs[i]))
        .collect();
    IdentityReport { checks }
}

/// `lambda1 lambda2 = -1`, `mu1 = lambda1^2`, `mu1 mu2 = 1`.
pub fn verify_root_identities(k: &ClosedFormConstants) -> IdentityReport {
    let d = k.lambda1.discriminant();
    let checks = vec![
        IdentityCheck::compare("lambda1*lambda2 = -1", &(&k.lambda1 * &k.lambda2), &integer(-1, d)),
        IdentityCheck::compare("mu1 = lambda1^2", &k.mu1, &(&k.lambda1 * &k.lambda1)),
        IdentityCheck::compare("mu1*mu2 = 1", &(&k.mu1 * &k.mu2), &integer(1, d)),
    ];
    IdentityReport { checks }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableComparison {
    pub lhs: ExpansionTable,
    pub rhs: ExpansionTable,
    pub equal: bool,
}

/// Everything the `identities` command reports: 5 + 3 + 1 checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub five_identities: IdentityReport,
    pub root_identities: IdentityReport,
    pub expansion_tables: TableComparison,
    pub all_passed: bool,
}

pub fn run_suite(k: &ClosedFormConstants) -> SuiteReport {
    let five_identities = verify_five_identities(k);
    let root_identities = verify_root_identities(k);
    let lhs = expand_lhs(k);
    let rhs = expand_rhs(k);
    let equal = tables_equal(&lhs, &rhs).expect("expansions are canonical");
    let all_passed = five_identities.all_equal() && root_identities.all_equal() && equal;
    SuiteReport {
        five_identities,
        root_identities,
        expansion_tables: TableComparison { lhs, rhs, equal },
        all_passed,
    }
}

/// Adds `delta` to `g`; used to check that the verifier can fail.
pub fn perturb_g(k: &ClosedFormConstants, delta: &Rational) -> ClosedFormConstants {
    let mut out = k.clone();
    out.g = &out.g + delta;
    out
}
