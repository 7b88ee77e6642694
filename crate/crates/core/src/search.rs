//! Exhaustive scan for near-misses `|x^4 + y^4 - z^2| <= threshold`.
//!
//! For each pair `min_x <= x <= y <= max_x` with `s = x^4 + y^4`, the only
//! candidates are the `z >= 1` with `s - threshold <= z^2 <= s + threshold`,
//! i.e. `ceil_sqrt(s - threshold) ..= isqrt(s + threshold)`. Once
//! `s > threshold^2` consecutive squares around `s` are more than
//! `2 * threshold` apart, so that range holds at most `isqrt(s)` and
//! `isqrt(s) + 1` and there is no inner loop to speak of. With an exact residual
//! `r` the single candidate is `isqrt(s - r)`.
//!
//! Pairs are split into stripes of consecutive `x` and handed to a rayon pool
//! of `workers` threads. Hits are sorted by `(y, x, z)` after the merge, so the
//! output does not depend on the worker count.
//!
//! While `max_x <= FIXED_WIDTH_MAX_X` (and the threshold fits in 64 bits) the
//! arithmetic runs in `u128`/`i128`; beyond that it falls back to [`Integer`].

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::Sign;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{isqrt, isqrt_u128, Integer};

/// Largest `max_x` handled in fixed width: `2 * x^4 + threshold < 2^126`.
pub const FIXED_WIDTH_MAX_X: u64 = (1 << 31) - 1;

/// Number of consecutive `x` values per unit of parallel work.
const STRIPE: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub min_x: Integer,
    pub max_x: Integer,
    /// Bound on `|x^4 + y^4 - z^2|`.
    pub threshold: Integer,
    /// Keep only hits whose delta equals this value. Its magnitude may not
    /// exceed `threshold`.
    pub exact_residual: Option<Integer>,
    pub workers: usize,
}

impl SearchConfig {
    pub fn threshold(min_x: u64, max_x: u64, threshold: u64) -> Self {
        SearchConfig {
            min_x: min_x.into(),
            max_x: max_x.into(),
            threshold: threshold.into(),
            exact_residual: None,
            workers: 1,
        }
    }

    /// Hits with delta exactly `residual`; the threshold is set to `|residual|`.
    pub fn exact(min_x: u64, max_x: u64, residual: i64) -> Self {
        SearchConfig {
            min_x: min_x.into(),
            max_x: max_x.into(),
            threshold: residual.unsigned_abs().into(),
            exact_residual: Some(residual.into()),
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if self.min_x < Integer::from(1) {
            return bad(format!("min_x must be at least 1, got {}", self.min_x));
        }
        if self.min_x > self.max_x {
            return bad(format!("min_x {} exceeds max_x {}", self.min_x, self.max_x));
        }
        if self.threshold.is_negative() {
            return bad(format!("threshold must be non-negative, got {}", self.threshold));
        }
        if let Some(r) = &self.exact_residual {
            if r.abs() > self.threshold {
                return bad(format!("exact residual {r} exceeds threshold {}", self.threshold));
            }
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        if self.max_x.to_u64().is_none() {
            return bad(format!("max_x {} is too large to enumerate", self.max_x));
        }
        Ok(())
    }

    fn bounds(&self) -> (u64, u64) {
        // validated: 1 <= min_x <= max_x < 2^64
        (self.min_x.to_u64().unwrap(), self.max_x.to_u64().unwrap())
    }

    fn fits_fixed_width(&self) -> bool {
        let small = |v: &Integer| v.abs().to_u64().is_some();
        self.bounds().1 <= FIXED_WIDTH_MAX_X
            && small(&self.threshold)
            && self.exact_residual.as_ref().is_none_or(small)
    }
}

/// A pair `x <= y` and a `z >= 1` with `delta = x^4 + y^4 - z^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SearchHit {
    #[serde(serialize_with = "crate::format::ser_display")]
    pub x: Integer,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub y: Integer,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub z: Integer,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub delta: Integer,
}

impl SearchHit {
    pub fn new(x: impl Into<Integer>, y: impl Into<Integer>, z: impl Into<Integer>, delta: impl Into<Integer>) -> Self {
        SearchHit { x: x.into(), y: y.into(), z: z.into(), delta: delta.into() }
    }

    fn sort_key(&self) -> (&Integer, &Integer, &Integer) {
        (&self.y, &self.x, &self.z)
    }
}

/// Recomputes `x^4 + y^4 - z^2` and compares it with the stored delta.
pub fn verify_hit(h: &SearchHit) -> bool {
    let fourth = |v: &Integer| {
        let sq = v * v;
        &sq * &sq
    };
    fourth(&h.x) + fourth(&h.y) - &h.z * &h.z == h.delta
}

/// Which arithmetic [`scan_using`] runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanPath {
    /// Fixed width when the config allows it, big integers otherwise.
    Auto,
    /// `u128`/`i128` only; configs outside its range are rejected.
    FixedWidth,
    Arbitrary,
}

/// How far a running scan has got, in stripes of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progress {
    pub stripes_done: usize,
    pub stripes_total: usize,
}

/// All qualifying hits, sorted by `(y, x, z)`.
pub fn scan(cfg: &SearchConfig) -> Result<Vec<SearchHit>> {
    scan_using(cfg, ScanPath::Auto, &|_| {})
}

pub fn scan_with_progress(cfg: &SearchConfig, progress: &(dyn Fn(Progress) + Sync)) -> Result<Vec<SearchHit>> {
    scan_using(cfg, ScanPath::Auto, progress)
}

pub fn scan_using(cfg: &SearchConfig, path: ScanPath, progress: &(dyn Fn(Progress) + Sync)) -> Result<Vec<SearchHit>> {
    cfg.validate()?;
    let fixed = match path {
        ScanPath::Auto => cfg.fits_fixed_width(),
        ScanPath::FixedWidth if cfg.fits_fixed_width() => true,
        ScanPath::FixedWidth => {
            return Err(Error::InvalidInput(format!(
                "fixed-width scan needs max_x <= {FIXED_WIDTH_MAX_X} and 64-bit threshold/residual"
            )))
        }
        ScanPath::Arbitrary => false,
    };

    let (lo, hi) = cfg.bounds();
    let stripes: Vec<(u64, u64)> = (lo..=hi)
        .step_by(STRIPE as usize)
        .map(|start| (start, start.saturating_add(STRIPE - 1).min(hi)))
        .collect();
    let total = stripes.len();
    let done = AtomicUsize::new(0);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start {} workers: {e}", cfg.workers)))?;

    let fixed_params = fixed.then(|| FixedParams::new(cfg));
    let per_stripe: Vec<Vec<SearchHit>> = pool.install(|| {
        stripes
            .par_iter()
            .map(|&(from, to)| {
                let mut hits = Vec::new();
                for x in from..=to {
                    match &fixed_params {
                        Some(p) => p.scan_row(x, hi, &mut hits),
                        None => scan_row_big(cfg, x, hi, &mut hits),
                    }
                }
                let n = done.fetch_add(1, Ordering::Relaxed) + 1;
                progress(Progress { stripes_done: n, stripes_total: total });
                hits
            })
            .collect()
    });

    let mut hits: Vec<SearchHit> = per_stripe.into_iter().flatten().collect();
    hits.sort_unstable_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(hits)
}

struct FixedParams {
    threshold: u128,
    exact: Option<i128>,
}

impl FixedParams {
    fn new(cfg: &SearchConfig) -> Self {
        FixedParams {
            threshold: cfg.threshold.to_u128().expect("checked by fits_fixed_width"),
            exact: cfg.exact_residual.as_ref().map(|r| r.to_i128().expect("checked by fits_fixed_width")),
        }
    }

    fn scan_row(&self, x: u64, max_y: u64, out: &mut Vec<SearchHit>) {
        let x4 = (x as u128).pow(4);
        for y in x..=max_y {
            let s = x4 + (y as u128).pow(4);
            let mut emit = |z: u128| {
                let delta = s as i128 - (z * z) as i128;
                out.push(SearchHit::new(x, y, z, delta));
            };
            match self.exact {
                Some(r) => {
                    let t = s as i128 - r;
                    if t >= 1 {
                        let z = isqrt_u128(t as u128);
                        if (z * z) as i128 == t {
                            emit(z);
                        }
                    }
                }
                None => {
                    let lo = ceil_sqrt_u128(s.saturating_sub(self.threshold)).max(1);
                    let hi = isqrt_u128(s + self.threshold);
                    for z in lo..=hi {
                        emit(z);
                    }
                }
            }
        }
    }
}

fn ceil_sqrt_u128(m: u128) -> u128 {
    let r = isqrt_u128(m);
    if r * r == m {
        r
    } else {
        r + 1
    }
}

fn ceil_sqrt(m: &Integer) -> Integer {
    if m.sign() != Sign::Plus {
        return Integer::zero();
    }
    let r = isqrt(m).expect("non-negative");
    if &r * &r == *m {
        r
    } else {
        r + 1u32
    }
}

fn scan_row_big(cfg: &SearchConfig, x: u64, max_y: u64, out: &mut Vec<SearchHit>) {
    let one = Integer::from(1);
    let xb = Integer::from(x);
    let x2 = &xb * &xb;
    let x4 = &x2 * &x2;
    for y in x..=max_y {
        let yb = Integer::from(y);
        let y2 = &yb * &yb;
        let s = &x4 + &y2 * &y2;
        let mut emit = |z: Integer| {
            let delta = &s - &z * &z;
            out.push(SearchHit { x: xb.clone(), y: yb.clone(), z, delta });
        };
        match &cfg.exact_residual {
            Some(r) => {
                let t = &s - r;
                if t >= one {
                    let z = isqrt(&t).expect("positive");
                    if &z * &z == t {
                        emit(z);
                    }
                }
            }
            None => {
                let lo = ceil_sqrt(&(&s - &cfg.threshold)).max(one.clone());
                let hi = isqrt(&(&s + &cfg.threshold)).expect("positive");
                let mut z = lo;
                while z <= hi {
                    emit(z.clone());
                    z += 1u32;
                }
            }
        }
    }
}
