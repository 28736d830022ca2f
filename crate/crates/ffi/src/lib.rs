//! C interface to the quotseries engine.
//!
//! Every computation writes an owned `QsSeries` handle through an out
//! pointer and returns a `QsStatus`. On failure the message is kept per
//! thread and can be read with `qs_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quotseries::curve_quot::{z_curve_numeric, CurveSpec, KClass, Twist};
use quotseries::kawai_yoshioka::ky_table;
use quotseries::localization_oracle::{oracle_segre, WeightVector};
use quotseries::root_calculus::{general_type_series, u_series};
use quotseries::surface_quot::euler_dim0;
use quotseries::{Error, Rat, Series};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BeyondPrecision = 3,
    Unsupported = 4,
    OutOfRange = 5,
    ComputationFailed = 6,
    Panic = 7,
}

/// Opaque truncated power series with rational coefficients.
pub struct QsSeries {
    inner: Series<Rat>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> QsStatus {
    match err {
        Error::BeyondPrecision { .. } => QsStatus::BeyondPrecision,
        Error::Unsupported(_) => QsStatus::Unsupported,
        Error::OutOfTableRange { .. } | Error::SizeBound { .. } => QsStatus::OutOfRange,
        Error::InvalidWeights(_) | Error::Parse(_) => QsStatus::InvalidArgument,
        _ => QsStatus::ComputationFailed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (QsStatus, String)>) -> QsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QsStatus::Panic
        }
    }
}

fn lift<T>(r: quotseries::Result<T>) -> Result<T, (QsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn invalid(msg: &str) -> (QsStatus, String) {
    (QsStatus::InvalidArgument, msg.to_string())
}

fn null(name: &str) -> (QsStatus, String) {
    (QsStatus::NullPointer, format!("{name} is null"))
}

unsafe fn emit_series(out: *mut *mut QsSeries, s: Series<Rat>) -> Result<(), (QsStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(QsSeries { inner: s }));
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), (QsStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| invalid("string contains NUL"))?.into_raw();
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], (QsStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn rank(n: u32) -> Result<u32, (QsStatus, String)> {
    if n == 0 {
        return Err(invalid("rank must be positive"));
    }
    Ok(n)
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// The series `U_N` through `q^order`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qs_u_series(n: u32, order: u32, out: *mut *mut QsSeries) -> QsStatus {
    guard(|| emit_series(out, lift(u_series(rank(n)?, order as usize))?))
}

/// Virtual Euler characteristics of zero-dimensional Quot schemes of a
/// surface with the given `K^2`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qs_euler_dim0(n: u32, ksq: i64, order: u32, out: *mut *mut QsSeries) -> QsStatus {
    guard(|| emit_series(out, lift(euler_dim0(rank(n)?, ksq, order as usize))?))
}

/// Series for a minimal surface of general type with a canonical curve of
/// genus `g`, quotients of rank `n - l`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qs_general_type(
    n: u32,
    l: u32,
    g: i64,
    chi: i64,
    order: u32,
    out: *mut *mut QsSeries,
) -> QsStatus {
    guard(|| {
        if l > rank(n)? {
            return Err(invalid("l must not exceed n"));
        }
        emit_series(out, lift(general_type_series(n, l, g, chi, order as i64))?)
    })
}

/// Generating series on a curve of genus `genus` for classes with the given
/// ranks, degrees and integer twists.
///
/// # Safety
/// `ranks`, `degrees` and `twists` must each point to `len` readable values
/// (they may be NULL when `len` is zero); `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qs_curve(
    genus: i64,
    n: u32,
    ranks: *const i64,
    degrees: *const i64,
    twists: *const i64,
    len: usize,
    order: u32,
    out: *mut *mut QsSeries,
) -> QsStatus {
    guard(|| {
        let r = slice(ranks, len, "ranks")?;
        let d = slice(degrees, len, "degrees")?;
        let x = slice(twists, len, "twists")?;
        let classes = (0..len)
            .map(|i| KClass::new(r[i], d[i], Twist::Value(Rat::int(x[i]))))
            .collect();
        let spec = CurveSpec { genus, n: rank(n)?, classes };
        emit_series(out, lift(z_curve_numeric(&spec, order as usize))?)
    })
}

/// Localization oracle for Segre series on Quot schemes of `P^1`, using the
/// standard weights.
///
/// # Safety
/// `degrees` must point to `len` readable values; `out` must be valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn qs_oracle_segre(
    n: u32,
    degrees: *const i64,
    len: usize,
    order: u32,
    out: *mut *mut QsSeries,
) -> QsStatus {
    guard(|| {
        let n = rank(n)? as usize;
        let d = slice(degrees, len, "degrees")?;
        emit_series(out, lift(oracle_segre(n, d, order as usize, &WeightVector::standard(n)))?)
    })
}

/// The Kawai-Yoshioka number `N_{g,n}` as a decimal string.
///
/// # Safety
/// `out` must be valid for a pointer write; free the result with `qs_string_free`.
#[no_mangle]
pub unsafe extern "C" fn qs_ky_number(g: i64, n: i64, out: *mut *mut c_char) -> QsStatus {
    guard(|| {
        if g < 0 {
            return Err(invalid("g must be nonnegative"));
        }
        let table = lift(ky_table(g as usize, n.max(0) as usize))?;
        emit_string(out, lift(table.get(g, n))?.to_string())
    })
}

/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_series_valuation(s: *const QsSeries) -> i64 {
    s.as_ref().map_or(0, |s| s.inner.val())
}

/// Exclusive precision: coefficients below this exponent are known.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qs_series_precision(s: *const QsSeries) -> i64 {
    s.as_ref().map_or(0, |s| s.inner.prec())
}

/// Coefficient of `q^k` as a reduced fraction string such as `-3/4`.
///
/// # Safety
/// `s` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qs_series_coeff(s: *const QsSeries, k: i64, out: *mut *mut c_char) -> QsStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("series"))?;
        emit_string(out, lift(s.inner.coeff(k))?.to_string())
    })
}

/// Human readable form, e.g. `1 + 2*q^2 + O(q^4)`.
///
/// # Safety
/// `s` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qs_series_render(s: *const QsSeries, out: *mut *mut c_char) -> QsStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("series"))?;
        emit_string(out, s.inner.render(|c| c.to_string()))
    })
}

/// # Safety
/// `s` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qs_series_free(s: *mut QsSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must come from this library and not have been freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_is_cleared_on_success() {
        let mut s = ptr::null_mut();
        unsafe {
            assert_eq!(qs_u_series(0, 4, &mut s), QsStatus::InvalidArgument);
            assert!(!qs_last_error().is_null());
            assert_eq!(qs_u_series(1, 4, &mut s), QsStatus::Ok);
            assert!(qs_last_error().is_null());
            qs_series_free(s);
        }
    }

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Unsupported("x".into())), QsStatus::Unsupported);
        assert_eq!(status_of(&Error::OutOfTableRange { g: 1, n: 2 }), QsStatus::OutOfRange);
        assert_eq!(status_of(&Error::NeedsPrecision), QsStatus::ComputationFailed);
    }
}
