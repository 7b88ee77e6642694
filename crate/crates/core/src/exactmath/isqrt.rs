use num_bigint::Sign;
use num_traits::{One, Zero};

use super::Integer;
use crate::error::{Error, Result};

/// Floor of the square root: the unique `r >= 0` with `r^2 <= s < (r+1)^2`.
///
/// Integer Newton iteration started above the root, so the iterates decrease
/// monotonically until they stop decreasing. The trailing adjustment loops
/// establish the post-condition independently of how the iteration ended.
pub fn isqrt(s: &Integer) -> Result<Integer> {
    match s.sign() {
        Sign::Minus => return Err(Error::Domain(format!("isqrt of negative value {s}"))),
        Sign::NoSign => return Ok(Integer::zero()),
        Sign::Plus => {}
    }

    // 2^ceil(bits/2) > sqrt(s)
    let bits = s.bits();
    let mut r = Integer::one() << bits.div_ceil(2);
    loop {
        let next = (&r + s / &r) >> 1u32;
        if next >= r {
            break;
        }
        r = next;
    }

    while &r * &r > *s {
        r -= 1u32;
    }
    loop {
        let up = &r + 1u32;
        if &up * &up <= *s {
            r = up;
        } else {
            break;
        }
    }
    Ok(r)
}

/// `isqrt` for machine-width values, used on the search fast path.
pub fn isqrt_u128(s: u128) -> u128 {
    if s < 2 {
        return s;
    }
    // Off by at most one below 2^104; above that one Newton step absorbs the float error.
    let mut r = (s as f64).sqrt() as u128;
    if s >> 104 != 0 {
        r = (r + s / r) >> 1;
    }
    while r.checked_mul(r).is_none_or(|sq| sq > s) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= s) {
        r += 1;
    }
    r
}
