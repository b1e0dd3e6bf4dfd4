//! C ABI over the rescurrent engine.
//!
//! Every function returns an [`RcStatus`]; on failure a message is available from
//! [`rc_last_error`] on the same thread. Handles are opaque and must be released with the
//! matching `_free` function. Strings returned through out-parameters are owned by the caller
//! and released with [`rc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rescurrent::cli::{self, json, Options};
use rescurrent::groebner::{ideal_member, Ideal, QuotientContext};
use rescurrent::homalg::{buchsbaum_eisenbud_check, free_resolution, ChainComplex};
use rescurrent::polyring::{poly_parse, MonomialOrder, PolynomialRing};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Engine = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// A polynomial ring `Q[x_1, ..., x_n]` with a monomial order.
pub struct RcRing {
    ring: PolynomialRing,
}

/// An ideal, optionally over a quotient ring.
pub struct RcIdeal {
    ideal: Ideal,
    context: Option<QuotientContext>,
}

/// A finite free complex.
pub struct RcComplex {
    complex: ChainComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Failure = (RcStatus, String);

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            RcStatus::Panic
        }
    }
}

fn engine<E: std::fmt::Display>(e: E) -> Failure {
    (RcStatus::Engine, e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((RcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (RcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| (RcStatus::NullPointer, format!("{what} is null")))
}

fn out_check<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err((RcStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

/// Message describing the last failure on this thread, or null. Valid until the next call
/// into this library on the same thread.
#[no_mangle]
pub extern "C" fn rc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map(|s| s.as_ptr()).unwrap_or(ptr::null()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a ring from comma-separated variable names and an order (`lex`, `grlex`, `grevlex`;
/// null means `grevlex`).
///
/// # Safety
/// `vars` and `order` must be null or valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_ring_new(vars: *const c_char, order: *const c_char, out: *mut *mut RcRing) -> RcStatus {
    guard(|| {
        out_check(out, "out")?;
        let vars = str_arg(vars, "vars")?;
        let order = if order.is_null() {
            MonomialOrder::GrevLex
        } else {
            let o = str_arg(order, "order")?;
            o.parse().map_err(|e| (RcStatus::Parse, format!("unknown order `{o}`: {e}")))?
        };
        let names: Vec<&str> = vars.split(',').map(str::trim).collect();
        let ring = PolynomialRing::new(&names, order).map_err(|e| (RcStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(RcRing { ring }));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from [`rc_ring_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rc_ring_free(ring: *mut RcRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

unsafe fn polys(
    ring: &PolynomialRing,
    gens: *const *const c_char,
    n: usize,
) -> Result<Vec<rescurrent::polyring::Polynomial>, Failure> {
    if n > 0 && gens.is_null() {
        return Err((RcStatus::NullPointer, "gens is null".into()));
    }
    (0..n)
        .map(|i| {
            let s = str_arg(*gens.add(i), "generator")?;
            poly_parse(s, ring).map_err(|e| (RcStatus::Parse, format!("generator {}: {e}", i + 1)))
        })
        .collect()
}

/// Creates the ideal generated by `n` polynomial strings. With `quotient_gens` non-null the
/// ideal lives in the quotient by the `m` given relations.
///
/// # Safety
/// `ring` must be a live ring handle; `gens` must hold `n` valid C strings and
/// `quotient_gens` (if non-null) `m`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_ideal_new(
    ring: *const RcRing,
    gens: *const *const c_char,
    n: usize,
    quotient_gens: *const *const c_char,
    m: usize,
    out: *mut *mut RcIdeal,
) -> RcStatus {
    guard(|| {
        out_check(out, "out")?;
        let r = &ref_arg(ring, "ring")?.ring;
        let ideal = Ideal::new(r, polys(r, gens, n)?).map_err(engine)?;
        let context = if quotient_gens.is_null() {
            None
        } else {
            Some(QuotientContext::from_gens(r, polys(r, quotient_gens, m)?).map_err(engine)?)
        };
        *out = Box::into_raw(Box::new(RcIdeal { ideal, context }));
        Ok(())
    })
}

/// # Safety
/// `ideal` must be null or a handle from [`rc_ideal_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rc_ideal_free(ideal: *mut RcIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Ideal membership (modulo the quotient relations, if any).
///
/// # Safety
/// `ideal` must be a live handle, `poly` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_ideal_contains(ideal: *const RcIdeal, poly: *const c_char, out: *mut bool) -> RcStatus {
    guard(|| {
        out_check(out, "out")?;
        let i = ref_arg(ideal, "ideal")?;
        let f = poly_parse(str_arg(poly, "poly")?, i.ideal.ring()).map_err(|e| (RcStatus::Parse, e.to_string()))?;
        *out = ideal_member(&f, &i.ideal, i.context.as_ref()).map_err(engine)?;
        Ok(())
    })
}

/// Minimal free resolution with at most `cap` differentials.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_resolve(ideal: *const RcIdeal, cap: usize, out: *mut *mut RcComplex) -> RcStatus {
    guard(|| {
        out_check(out, "out")?;
        let i = ref_arg(ideal, "ideal")?;
        let complex = free_resolution(&i.ideal, i.context.as_ref(), cap, true).map_err(engine)?;
        *out = Box::into_raw(Box::new(RcComplex { complex }));
        Ok(())
    })
}

/// # Safety
/// `complex` must be null or a handle from [`rc_resolve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_free(complex: *mut RcComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Copies the module ranks into `buf` (capacity `len`) and stores their number in `count`.
/// With a null or short buffer only `count` is written and `RC_STATUS_BUFFER_TOO_SMALL` returned.
///
/// # Safety
/// `complex` must be a live handle; `buf` must be null or hold `len` entries; `count` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_ranks(
    complex: *const RcComplex,
    buf: *mut usize,
    len: usize,
    count: *mut usize,
) -> RcStatus {
    guard(|| {
        out_check(count, "count")?;
        let ranks = ref_arg(complex, "complex")?.complex.ranks();
        *count = ranks.len();
        if buf.is_null() || len < ranks.len() {
            return Err((RcStatus::BufferTooSmall, format!("{} ranks need a larger buffer", ranks.len())));
        }
        ptr::copy_nonoverlapping(ranks.as_ptr(), buf, ranks.len());
        Ok(())
    })
}

/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_is_truncated(complex: *const RcComplex, out: *mut bool) -> RcStatus {
    guard(|| {
        out_check(out, "out")?;
        *out = ref_arg(complex, "complex")?.complex.is_truncated();
        Ok(())
    })
}

/// Canonical JSON `{"ranks": [...], "diffs": [...]}`; free with [`rc_string_free`].
///
/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_to_json(complex: *const RcComplex, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        out_check(out, "out")?;
        let c = &ref_arg(complex, "complex")?.complex;
        *out = to_c_string(json::to_canonical_string(&json::complex_to_json(c)));
        Ok(())
    })
}

/// Exactness criterion; `failing_level` is 0 when it passes.
///
/// # Safety
/// `complex` must be a live handle; `passed` and `failing_level` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_exactness(
    complex: *const RcComplex,
    passed: *mut bool,
    failing_level: *mut usize,
) -> RcStatus {
    guard(|| {
        out_check(passed, "passed")?;
        out_check(failing_level, "failing_level")?;
        let report = buchsbaum_eisenbud_check(&ref_arg(complex, "complex")?.complex).map_err(engine)?;
        *passed = report.passed;
        *failing_level = report.failing_level.unwrap_or(0);
        Ok(())
    })
}

/// Runs a script. The canonical JSON report goes to `json_out` (free with
/// [`rc_string_free`]) and the script exit code (0, 1 or 2) to `exit_code`. The call
/// itself returns `RC_STATUS_OK` whenever the report was produced.
///
/// # Safety
/// `script` must be a valid C string; `json_out` and `exit_code` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_run_script(
    script: *const c_char,
    json_out: *mut *mut c_char,
    exit_code: *mut i32,
) -> RcStatus {
    guard(|| {
        out_check(json_out, "json_out")?;
        out_check(exit_code, "exit_code")?;
        let report = cli::run_script(str_arg(script, "script")?, Options::default());
        *exit_code = report.exit_code;
        *json_out = to_c_string(report.to_json_string());
        Ok(())
    })
}
