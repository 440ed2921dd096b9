//! C ABI over the verification engine.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `*_free`. Every fallible call returns an [`IsodeformStatus`];
//! the message for the most recent failure on the calling thread is available
//! from [`isodeform_last_error`]. Strings handed out must be released with
//! [`isodeform_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isodeform::algebra::NcTorus;
use isodeform::cocycle::{parse_rational, sigma};
use isodeform::suite::{run_suite, Report, SuiteConfig};
use isodeform::{CycScalar, DeformMatrix, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsodeformStatus {
    Ok = 0,
    /// A suite ran and at least one check failed.
    CheckFailed = 1,
    /// Malformed or unsupported configuration.
    ConfigError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// An algebraic operation was rejected (rank or grading mismatch, ...).
    AlgebraError = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// Exact cyclotomic scalar.
pub struct IsodeformScalar(CycScalar);

/// Noncommutative torus `C(T^l_θ)`.
pub struct IsodeformTorus(NcTorus);

/// Result of a suite run.
pub struct IsodeformReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> IsodeformStatus {
    match e {
        Error::Config(_) | Error::Unsupported(_) | Error::BadRational(_) | Error::NotSkew(..) | Error::NotSquare => {
            IsodeformStatus::ConfigError
        }
        _ => IsodeformStatus::AlgebraError,
    }
}

fn guard<F>(f: F) -> IsodeformStatus
where
    F: FnOnce() -> Result<IsodeformStatus, (IsodeformStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside isodeform");
            IsodeformStatus::Internal
        }
    }
}

fn fail(e: Error) -> (IsodeformStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (IsodeformStatus, String) {
    (IsodeformStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (IsodeformStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (IsodeformStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<IsodeformStatus, (IsodeformStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(IsodeformStatus::Ok)
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or null. The caller owns
/// the returned string.
#[no_mangle]
pub extern "C" fn isodeform_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(s) => s.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn isodeform_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a suite described by a JSON config such as
/// `{"suite": "hopf", "group": "u2", "theta": "1/3", "max_degree": 2}`.
/// On `Ok` or `CheckFailed` a report handle is written to `out`.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_run_suite(
    config_json: *const c_char,
    out: *mut *mut IsodeformReport,
) -> IsodeformStatus {
    guard(|| {
        let text = read_str(config_json, "config")?;
        let cfg = SuiteConfig::from_json(text).map_err(fail)?;
        let report = run_suite(&cfg).map_err(fail)?;
        let passed = report.passed;
        write_out(out, IsodeformReport(report))?;
        Ok(if passed { IsodeformStatus::Ok } else { IsodeformStatus::CheckFailed })
    })
}

/// 1 if every check passed, 0 otherwise (also for a null handle).
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn isodeform_report_passed(report: *const IsodeformReport) -> c_int {
    report.as_ref().map_or(0, |r| r.0.passed as c_int)
}

/// Number of checks in the report.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn isodeform_report_num_checks(report: *const IsodeformReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.checks.len())
}

/// Report as JSON. With `canonical` nonzero, wall times are omitted so the
/// text is identical across reruns.
///
/// # Safety
/// `report` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_report_json(
    report: *const IsodeformReport,
    canonical: c_int,
    out: *mut *mut c_char,
) -> IsodeformStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = if canonical != 0 { r.0.canonical_json() } else { r.0.to_json() };
        *out = to_c_string(text);
        Ok(IsodeformStatus::Ok)
    })
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isodeform_report_free(report: *mut IsodeformReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// The rational `num/den`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_rational(num: i64, den: i64, out: *mut *mut IsodeformScalar) -> IsodeformStatus {
    guard(|| {
        if den == 0 {
            return Err((IsodeformStatus::ConfigError, "zero denominator".into()));
        }
        write_out(out, IsodeformScalar(CycScalar::from_ratio(num, den)))
    })
}

/// The root of unity `e^{2πi num/den}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_phase(num: i64, den: i64, out: *mut *mut IsodeformScalar) -> IsodeformStatus {
    guard(|| {
        if den == 0 {
            return Err((IsodeformStatus::ConfigError, "zero denominator".into()));
        }
        write_out(out, IsodeformScalar(CycScalar::phase(num_rational::Rational64::new(num, den))))
    })
}

unsafe fn binary<F>(a: *const IsodeformScalar, b: *const IsodeformScalar, out: *mut *mut IsodeformScalar, f: F) -> IsodeformStatus
where
    F: FnOnce(&CycScalar, &CycScalar) -> CycScalar,
{
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(|| null("a"))?, b.as_ref().ok_or_else(|| null("b"))?);
        write_out(out, IsodeformScalar(f(&a.0, &b.0)))
    })
}

/// # Safety
/// `a`, `b` must be live scalar handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_add(
    a: *const IsodeformScalar,
    b: *const IsodeformScalar,
    out: *mut *mut IsodeformScalar,
) -> IsodeformStatus {
    binary(a, b, out, |x, y| x + y)
}

/// # Safety
/// `a`, `b` must be live scalar handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_mul(
    a: *const IsodeformScalar,
    b: *const IsodeformScalar,
    out: *mut *mut IsodeformScalar,
) -> IsodeformStatus {
    binary(a, b, out, |x, y| x * y)
}

/// # Safety
/// `a` must be a live scalar handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_conj(a: *const IsodeformScalar, out: *mut *mut IsodeformScalar) -> IsodeformStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        write_out(out, IsodeformScalar(a.0.conj()))
    })
}

/// 1 if the scalars are equal as cyclotomic numbers, 0 otherwise.
///
/// # Safety
/// `a`, `b` must be null or live scalar handles.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_equal(a: *const IsodeformScalar, b: *const IsodeformScalar) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => (a.0 == b.0) as c_int,
        _ => 0,
    }
}

/// Floating-point value of the scalar.
///
/// # Safety
/// `a` must be a live scalar handle; `re`, `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_to_complex(a: *const IsodeformScalar, re: *mut f64, im: *mut f64) -> IsodeformStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        if re.is_null() || im.is_null() {
            return Err(null("output pointer"));
        }
        let z = a.0.to_complex();
        *re = z.re;
        *im = z.im;
        Ok(IsodeformStatus::Ok)
    })
}

/// Exact text form of the scalar.
///
/// # Safety
/// `a` must be a live scalar handle.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_to_string(a: *const IsodeformScalar) -> *mut c_char {
    a.as_ref().map_or(ptr::null_mut(), |a| to_c_string(a.0.to_string()))
}

/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isodeform_scalar_free(a: *mut IsodeformScalar) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Torus of rank `l`; `theta` is a scalar `p/q` (the same value on every
/// pair) or a bracketed skew matrix.
///
/// # Safety
/// `theta` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_torus_new(theta: *const c_char, l: usize, out: *mut *mut IsodeformTorus) -> IsodeformStatus {
    guard(|| {
        let text = read_str(theta, "theta")?;
        let m = if text.trim_start().starts_with('[') {
            text.parse::<DeformMatrix>().map_err(fail)?
        } else {
            DeformMatrix::uniform(l, parse_rational(text).map_err(fail)?)
        };
        if m.rank() != l {
            return Err((IsodeformStatus::ConfigError, format!("theta has rank {}, expected {l}", m.rank())));
        }
        write_out(out, IsodeformTorus(NcTorus::new(m)))
    })
}

/// The phase `c` in `U_j × U_k = c · U_k × U_j` (0-based `j`, `k`).
///
/// # Safety
/// `torus` must be a live torus handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_torus_commutation(
    torus: *const IsodeformTorus,
    j: usize,
    k: usize,
    out: *mut *mut IsodeformScalar,
) -> IsodeformStatus {
    guard(|| {
        let t = &torus.as_ref().ok_or_else(|| null("torus"))?.0;
        let l = t.rank();
        if j >= l || k >= l {
            return Err((IsodeformStatus::ConfigError, format!("index out of range for rank {l}")));
        }
        let e = |i: usize| {
            let mut v = vec![0i64; l];
            v[i] = 1;
            v
        };
        let (uj, uk) = (t.unitary(&e(j)).map_err(fail)?, t.unitary(&e(k)).map_err(fail)?);
        let ab = t.star(&uj, &uk).map_err(fail)?;
        let ba = t.star(&uk, &uj).map_err(fail)?;
        let ratio = isodeform::algebra::monomial_ratio(&ab, &ba)
            .ok_or_else(|| (IsodeformStatus::AlgebraError, "generators do not commute up to a phase".into()))?;
        write_out(out, IsodeformScalar(ratio))
    })
}

/// The cocycle value `σ(r, s)` with `U^r × U^s = σ(r,s) U^{r+s}`; `r` and `s`
/// point to `l` integers each.
///
/// # Safety
/// `torus` must be a live torus handle; `r`, `s` must point to `l` values;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isodeform_torus_sigma(
    torus: *const IsodeformTorus,
    r: *const i64,
    s: *const i64,
    out: *mut *mut IsodeformScalar,
) -> IsodeformStatus {
    guard(|| {
        let t = &torus.as_ref().ok_or_else(|| null("torus"))?.0;
        if r.is_null() || s.is_null() {
            return Err(null("degree vector"));
        }
        let l = t.rank();
        let (r, s) = (std::slice::from_raw_parts(r, l), std::slice::from_raw_parts(s, l));
        write_out(out, IsodeformScalar(sigma(t.theta(), r, s).map_err(fail)?))
    })
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isodeform_torus_free(t: *mut IsodeformTorus) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
