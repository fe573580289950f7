//! C ABI for `genset-core`.
//!
//! Every fallible function returns a `GensetStatus`; on failure the message
//! is available from `genset_last_error` until the next call on the same
//! thread. Strings returned through out-pointers are owned by the caller and
//! released with `genset_string_free`; verdicts with `genset_verdict_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use genset::certify::{certify, CertifyOptions, Charset, Method, Verdict};
use genset::charcalc::{decompose_theta, flag_count, kostka, Partition, ThetaVariant};
use genset::group::SymmetricSet;
use genset::marking::xmin_abelian;
use genset::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GensetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input document or argument.
    ParseError = 3,
    /// Well-formed input that the operation rejects.
    InputError = 4,
    /// The criterion does not apply and fallback was disallowed.
    FallbackForbidden = 5,
    Panic = 6,
}

/// Opaque certification result.
pub struct GensetVerdict {
    inner: Verdict,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> GensetStatus {
    match err {
        Error::FallbackForbidden => GensetStatus::FallbackForbidden,
        Error::Syntax { .. } | Error::BadPartition(_) => GensetStatus::ParseError,
        _ => GensetStatus::InputError,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (GensetStatus, String)>) -> GensetStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GensetStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GensetStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (GensetStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (GensetStatus, String)> {
    if p.is_null() {
        return Err((GensetStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (GensetStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer is valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn genset_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Certifies the elements of an input document against its declared group.
/// `charset` may be null for `auto`.
///
/// # Safety
/// `text` and a non-null `charset` must be NUL-terminated strings; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn genset_certify_text(
    text: *const c_char,
    symmetrize: bool,
    charset: *const c_char,
    allow_fallback: bool,
    out: *mut *mut GensetVerdict,
) -> GensetStatus {
    guard(|| {
        if out.is_null() {
            return Err((GensetStatus::NullPointer, "out is null".into()));
        }
        let text = str_arg(text, "text")?;
        let charset = if charset.is_null() {
            Charset::Auto
        } else {
            let s = str_arg(charset, "charset")?;
            Charset::parse(s).ok_or((GensetStatus::ParseError, format!("unknown charset {s:?}")))?
        };
        let doc = genset::io::parse(text).map_err(lib_err)?;
        let sigma = if symmetrize { SymmetricSet::symmetrize(doc.elements) } else { SymmetricSet::new(doc.elements) }
            .map_err(lib_err)?;
        let opts = CertifyOptions { charset, allow_fallback, force: false };
        let verdict = certify(&doc.spec, &sigma, &opts).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(GensetVerdict { inner: verdict }));
        Ok(())
    })
}

/// 1 if the set generates, 0 if not, -1 for a null handle.
///
/// # Safety
/// `v` must be null or a handle from `genset_certify_text`.
#[no_mangle]
pub unsafe extern "C" fn genset_verdict_generates(v: *const GensetVerdict) -> i32 {
    match v.as_ref() {
        Some(v) => v.inner.generates as i32,
        None => -1,
    }
}

/// 1 if decided by the character criterion, 0 if by the oracle fallback,
/// -1 for a null handle.
///
/// # Safety
/// `v` must be null or a handle from `genset_certify_text`.
#[no_mangle]
pub unsafe extern "C" fn genset_verdict_used_criterion(v: *const GensetVerdict) -> i32 {
    match v.as_ref() {
        Some(v) => (v.inner.method == Method::Criterion) as i32,
        None => -1,
    }
}

/// Number of checks in the verdict, 0 for a null handle.
///
/// # Safety
/// `v` must be null or a handle from `genset_certify_text`.
#[no_mangle]
pub unsafe extern "C" fn genset_verdict_check_count(v: *const GensetVerdict) -> usize {
    v.as_ref().map_or(0, |v| v.inner.checks.len())
}

/// The verdict as JSON, or its text report when `json` is false. Null for a
/// null handle.
///
/// # Safety
/// `v` must be null or a handle from `genset_certify_text`.
#[no_mangle]
pub unsafe extern "C" fn genset_verdict_report(v: *const GensetVerdict, json: bool) -> *mut c_char {
    match v.as_ref() {
        Some(v) => out_string(if json { v.inner.to_json() } else { v.inner.to_text() }),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `v` must be null or a handle from `genset_certify_text` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn genset_verdict_free(v: *mut GensetVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn genset_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Kostka number `K_{mu lambda}` for partitions written like `3,1,1`.
///
/// # Safety
/// `mu` and `lambda` must be NUL-terminated strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn genset_kostka(mu: *const c_char, lambda: *const c_char, out: *mut u64) -> GensetStatus {
    guard(|| {
        if out.is_null() {
            return Err((GensetStatus::NullPointer, "out is null".into()));
        }
        let mu: Partition = str_arg(mu, "mu")?.parse().map_err(lib_err)?;
        let lambda: Partition = str_arg(lambda, "lambda")?.parse().map_err(lib_err)?;
        *out = kostka(&mu, &lambda).map_err(lib_err)?;
        Ok(())
    })
}

/// `X(G)` for the abelian group with the given invariant factors.
///
/// # Safety
/// `factors` must point to `len` values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn genset_xmin_abelian(factors: *const u64, len: usize, out: *mut u64) -> GensetStatus {
    guard(|| {
        if factors.is_null() || out.is_null() {
            return Err((GensetStatus::NullPointer, "null argument".into()));
        }
        let f = std::slice::from_raw_parts(factors, len);
        *out = xmin_abelian(f).map_err(lib_err)?.size;
        Ok(())
    })
}

/// Number of partial flags of type `parts` over `F_q`, as a decimal string.
///
/// # Safety
/// `parts` must point to `len` values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn genset_flag_count(
    parts: *const u32,
    len: usize,
    q: u64,
    out: *mut *mut c_char,
) -> GensetStatus {
    guard(|| {
        if parts.is_null() || out.is_null() {
            return Err((GensetStatus::NullPointer, "null argument".into()));
        }
        if q < 2 {
            return Err((GensetStatus::InputError, "q must be at least 2".into()));
        }
        *out = out_string(flag_count(std::slice::from_raw_parts(parts, len), q).to_string());
        Ok(())
    })
}

/// Decomposition of `theta1`, `theta2` or `theta2_ind` as lines
/// `partition: coefficient`.
///
/// # Safety
/// `variant` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn genset_decompose_theta(n: u32, variant: *const c_char, out: *mut *mut c_char) -> GensetStatus {
    guard(|| {
        if out.is_null() {
            return Err((GensetStatus::NullPointer, "out is null".into()));
        }
        let name = str_arg(variant, "variant")?;
        let v = ThetaVariant::parse(name).ok_or((GensetStatus::ParseError, format!("unknown variant {name:?}")))?;
        let text: String =
            decompose_theta(n, v).map_err(lib_err)?.iter().map(|(p, c)| format!("{p}: {c}\n")).collect();
        *out = out_string(text);
        Ok(())
    })
}
