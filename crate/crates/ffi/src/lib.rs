//! C ABI over `nearmiss-core`.
//!
//! Conventions:
//!
//! * Every fallible function returns an [`NmStatus`]; results come back through
//!   out-pointers, which are written only on [`NmStatus::Ok`].
//! * After a failure, [`nm_last_error`] returns a message for the calling thread.
//! * Numbers cross the boundary as NUL-terminated decimal strings. Strings
//!   returned by the library are owned by the caller and released with
//!   [`nm_string_free`].
//! * Handles (`NmQuad`, `NmTriplets`, `NmHits`) are opaque and released with
//!   their matching `*_free` function. Freeing `NULL` is a no-op.
//! * Panics never unwind into C; they surface as [`NmStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nearmiss_core::exactmath::{isqrt, parse_integer, parse_rational};
use nearmiss_core::format::{render_all, OutputFormat};
use nearmiss_core::identities::run_suite;
use nearmiss_core::search::{scan, verify_hit, SearchConfig, SearchHit};
use nearmiss_core::sequences::{
    check_triplets, closed_form_xy, closed_form_z, gen_recurrence, residual, ClosedFormConstants, Triplet,
};
use nearmiss_core::{Error, QuadElem};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ParseError = 3,
    DomainError = 4,
    DiscriminantMismatch = 5,
    InternalError = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// Encoding for the `*_render` functions; matches the CLI `--format`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmFormat {
    Tsv = 0,
    Jsonl = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmTripletField {
    N = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmHitField {
    X = 0,
    Y = 1,
    Z = 2,
    Delta = 3,
}

/// Scan parameters. `exact_residual` is used only when `has_exact_residual`
/// is set, and then `threshold` must be at least its magnitude.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct NmSearchParams {
    pub min_x: u64,
    pub max_x: u64,
    pub threshold: u64,
    pub has_exact_residual: bool,
    pub exact_residual: i64,
    pub workers: u32,
}

/// Element of `Q(sqrt(D))`.
pub struct NmQuad(QuadElem);

/// Members `n = 0 .. len - 1` of the near-miss family.
pub struct NmTriplets(Vec<Triplet>);

/// Search results sorted by `(y, x, z)`.
pub struct NmHits(Vec<SearchHit>);

struct Failure(NmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DiscriminantMismatch(..) => NmStatus::DiscriminantMismatch,
            Error::InvalidDiscriminant(_) | Error::InvalidInput(_) => NmStatus::InvalidInput,
            Error::Domain(_) => NmStatus::DomainError,
            Error::Parse(_) => NmStatus::ParseError,
            Error::InternalInconsistency(_) => NmStatus::InternalError,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(NmStatus::NullPointer, format!("{what} is NULL"))
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            NmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(NmStatus::ParseError, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_box<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no NUL").into_raw()
}

unsafe fn write_string(out: *mut *mut c_char, s: String, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(into_c_string(s));
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn format_of(f: NmFormat) -> OutputFormat {
    match f {
        NmFormat::Tsv => OutputFormat::Tsv,
        NmFormat::Jsonl => OutputFormat::Jsonl,
    }
}

/// Library version as a static string. Do not free.
#[no_mangle]
pub extern "C" fn nm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread, or `NULL`. The pointer
/// stays valid until the next failing call on the same thread. Do not free.
#[no_mangle]
pub extern "C" fn nm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be `NULL` or a pointer obtained from this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn nm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// exact arithmetic

/// Floor square root of a non-negative decimal integer.
///
/// # Safety
/// `s` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_isqrt(s: *const c_char, out: *mut *mut c_char) -> NmStatus {
    guard(|| {
        let v = parse_integer(read_str(s, "s")?)?;
        write_string(out, isqrt(&v)?.to_string(), "out")
    })
}

/// Parses `"p + q*sqrt(D)"`, e.g. `"11 + 265/577*sqrt(577)"`.
///
/// # Safety
/// `s` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_parse(s: *const c_char, out: *mut *mut NmQuad) -> NmStatus {
    guard(|| {
        let q: QuadElem = read_str(s, "s")?.parse()?;
        write_box(out, NmQuad(q))
    })
}

/// `p + q*sqrt(d)` from rational strings `"num"` or `"num/den"`.
///
/// # Safety
/// `p`, `q` must be valid NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_new(
    p: *const c_char,
    q: *const c_char,
    d: u32,
    out: *mut *mut NmQuad,
) -> NmStatus {
    guard(|| {
        let p = parse_rational(read_str(p, "p")?)?;
        let q = parse_rational(read_str(q, "q")?)?;
        let v = QuadElem::new(p, q, d)?;
        write_box(out, NmQuad(v))
    })
}

/// # Safety
/// `q` must be `NULL` or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_free(q: *mut NmQuad) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Canonical `"p + q*sqrt(D)"` text.
///
/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_to_string(q: *const NmQuad, out: *mut *mut c_char) -> NmStatus {
    guard(|| write_string(out, handle(q, "q")?.0.to_string(), "out"))
}

/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_discriminant(q: *const NmQuad, out: *mut u32) -> NmStatus {
    guard(|| write_out(out, handle(q, "q")?.0.discriminant(), "out"))
}

unsafe fn binary(
    a: *const NmQuad,
    b: *const NmQuad,
    out: *mut *mut NmQuad,
    op: fn(&QuadElem, &QuadElem) -> nearmiss_core::Result<QuadElem>,
) -> NmStatus {
    guard(|| {
        let v = op(&handle(a, "a")?.0, &handle(b, "b")?.0)?;
        write_box(out, NmQuad(v))
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_add(a: *const NmQuad, b: *const NmQuad, out: *mut *mut NmQuad) -> NmStatus {
    binary(a, b, out, QuadElem::checked_add)
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_sub(a: *const NmQuad, b: *const NmQuad, out: *mut *mut NmQuad) -> NmStatus {
    binary(a, b, out, QuadElem::checked_sub)
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_mul(a: *const NmQuad, b: *const NmQuad, out: *mut *mut NmQuad) -> NmStatus {
    binary(a, b, out, QuadElem::checked_mul)
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_div(a: *const NmQuad, b: *const NmQuad, out: *mut *mut NmQuad) -> NmStatus {
    binary(a, b, out, QuadElem::checked_div)
}

/// `a^k`; negative `k` requires `a != 0`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_pow(a: *const NmQuad, k: i64, out: *mut *mut NmQuad) -> NmStatus {
    guard(|| {
        let v = handle(a, "a")?.0.pow(k)?;
        write_box(out, NmQuad(v))
    })
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_conj(a: *const NmQuad, out: *mut *mut NmQuad) -> NmStatus {
    guard(|| {
        let v = handle(a, "a")?.0.conj();
        write_box(out, NmQuad(v))
    })
}

/// Norm `p^2 - D q^2` as a rational string.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_quad_norm(a: *const NmQuad, out: *mut *mut c_char) -> NmStatus {
    guard(|| write_string(out, handle(a, "a")?.0.norm().to_string(), "out"))
}

// ---------------------------------------------------------------------------
// the family

/// Generates members `n = 0 .. count - 1` by recurrence. `count` must be >= 1.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_triplets_generate(count: u64, out: *mut *mut NmTriplets) -> NmStatus {
    guard(|| {
        let t = gen_recurrence(count)?;
        write_box(out, NmTriplets(t))
    })
}

/// Number of triplets in the handle, 0 for `NULL`.
///
/// # Safety
/// `t` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nm_triplets_len(t: *const NmTriplets) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// One field of triplet `index` as a decimal string.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_triplets_get(
    t: *const NmTriplets,
    index: usize,
    field: NmTripletField,
    out: *mut *mut c_char,
) -> NmStatus {
    guard(|| {
        let t = handle(t, "t")?;
        let row = t.0.get(index).ok_or_else(|| {
            Failure(NmStatus::OutOfRange, format!("index {index} out of range for {} triplets", t.0.len()))
        })?;
        let s = match field {
            NmTripletField::N => row.n.to_string(),
            NmTripletField::X => row.x.to_string(),
            NmTripletField::Y => row.y.to_string(),
            NmTripletField::Z => row.z.to_string(),
        };
        write_string(out, s, "out")
    })
}

/// All triplets encoded exactly as `nearmiss gen` prints them.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_triplets_render(
    t: *const NmTriplets,
    format: NmFormat,
    out: *mut *mut c_char,
) -> NmStatus {
    guard(|| write_string(out, render_all(&handle(t, "t")?.0, format_of(format)), "out"))
}

/// # Safety
/// `t` must be `NULL` or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nm_triplets_free(t: *mut NmTriplets) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// `x^4 + y^4 - 8 - z^2` for decimal inputs.
///
/// # Safety
/// `x`, `y`, `z` must be valid NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_residual(
    x: *const c_char,
    y: *const c_char,
    z: *const c_char,
    out: *mut *mut c_char,
) -> NmStatus {
    guard(|| {
        let x = parse_integer(read_str(x, "x")?)?;
        let y = parse_integer(read_str(y, "y")?)?;
        let z = parse_integer(read_str(z, "z")?)?;
        write_string(out, residual(&x, &y, &z).to_string(), "out")
    })
}

/// `x_n`, `y_n`, `z_n` from the exact closed forms. Each out-pointer receives
/// a string to free with [`nm_string_free`].
///
/// # Safety
/// `x`, `y`, `z` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nm_closed_form(
    n: u64,
    x: *mut *mut c_char,
    y: *mut *mut c_char,
    z: *mut *mut c_char,
) -> NmStatus {
    guard(|| {
        if x.is_null() || y.is_null() || z.is_null() {
            return Err(null("output pointer"));
        }
        let k = ClosedFormConstants::standard();
        let (xv, yv) = closed_form_xy(n, &k)?;
        let zv = closed_form_z(n, &k)?;
        write_string(x, xv.to_string(), "x")?;
        write_string(y, yv.to_string(), "y")?;
        write_string(z, zv.to_string(), "z")
    })
}

/// Checks the residual and the closed forms for `n < count`. `first_failure`
/// (may be `NULL`) receives the first failing index, or `count` if none.
///
/// # Safety
/// `all_passed` must be a valid pointer; `first_failure` may be `NULL`.
#[no_mangle]
pub unsafe extern "C" fn nm_verify(count: u64, all_passed: *mut bool, first_failure: *mut u64) -> NmStatus {
    guard(|| {
        let t = gen_recurrence(count)?;
        let checks = check_triplets(&t, &ClosedFormConstants::standard());
        let first = checks.iter().find(|c| !c.passed()).map_or(count, |c| c.n);
        write_out(all_passed, first == count, "all_passed")?;
        if !first_failure.is_null() {
            first_failure.write(first);
        }
        Ok(())
    })
}

/// The full identity report (same JSON as `nearmiss identities`).
///
/// # Safety
/// `json` and `all_passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nm_identities_report(json: *mut *mut c_char, all_passed: *mut bool) -> NmStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let report = run_suite(&ClosedFormConstants::standard());
        let text = serde_json_string(&report)?;
        write_out(all_passed, report.all_passed, "all_passed")?;
        write_string(json, text, "json")
    })
}

fn serde_json_string(report: &nearmiss_core::identities::SuiteReport) -> Result<String, Failure> {
    serde_json::to_string_pretty(report).map_err(|e| Failure(NmStatus::InternalError, e.to_string()))
}

// ---------------------------------------------------------------------------
// search

/// Runs the exhaustive scan.
///
/// # Safety
/// `params` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nm_search_run(params: *const NmSearchParams, out: *mut *mut NmHits) -> NmStatus {
    guard(|| {
        let p = handle(params, "params")?;
        let cfg = SearchConfig {
            min_x: p.min_x.into(),
            max_x: p.max_x.into(),
            threshold: p.threshold.into(),
            exact_residual: p.has_exact_residual.then(|| p.exact_residual.into()),
            workers: p.workers as usize,
        };
        let hits = scan(&cfg)?;
        write_box(out, NmHits(hits))
    })
}

/// # Safety
/// `h` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nm_hits_len(h: *const NmHits) -> usize {
    h.as_ref().map_or(0, |h| h.0.len())
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_hits_get(
    h: *const NmHits,
    index: usize,
    field: NmHitField,
    out: *mut *mut c_char,
) -> NmStatus {
    guard(|| {
        let h = handle(h, "h")?;
        let hit = h.0.get(index).ok_or_else(|| {
            Failure(NmStatus::OutOfRange, format!("index {index} out of range for {} hits", h.0.len()))
        })?;
        let s = match field {
            NmHitField::X => hit.x.to_string(),
            NmHitField::Y => hit.y.to_string(),
            NmHitField::Z => hit.z.to_string(),
            NmHitField::Delta => hit.delta.to_string(),
        };
        write_string(out, s, "out")
    })
}

/// All hits encoded exactly as `nearmiss search` prints them.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_hits_render(h: *const NmHits, format: NmFormat, out: *mut *mut c_char) -> NmStatus {
    guard(|| write_string(out, render_all(&handle(h, "h")?.0, format_of(format)), "out"))
}

/// # Safety
/// `h` must be `NULL` or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nm_hits_free(h: *mut NmHits) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Recomputes `x^4 + y^4 - z^2` and compares it with `delta`.
///
/// # Safety
/// The four strings must be valid and NUL-terminated; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_verify_hit(
    x: *const c_char,
    y: *const c_char,
    z: *const c_char,
    delta: *const c_char,
    out: *mut bool,
) -> NmStatus {
    guard(|| {
        let hit = SearchHit {
            x: parse_integer(read_str(x, "x")?)?,
            y: parse_integer(read_str(y, "y")?)?,
            z: parse_integer(read_str(z, "z")?)?,
            delta: parse_integer(read_str(delta, "delta")?)?,
        };
        write_out(out, verify_hit(&hit), "out")
    })
}
