//! C ABI over the `topotype` library.
//!
//! Results come back as an opaque [`TopotypeReport`] handle that the caller
//! frees with [`topotype_report_free`]. Strings returned through `char **`
//! out-parameters are owned by the caller and freed with
//! [`topotype_string_free`]. Every entry point returns a [`TopotypeStatus`];
//! on failure [`topotype_last_error`] describes the error.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use topotype::{
    count_orbits, count_types_klein, count_types_rank1, count_types_rank2, genus_of, total_types,
    ActionParams, CountReport, Error, Guard, PartitionType, TotalReport,
};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopotypeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrime = 3,
    Inadmissible = 4,
    NoAction = 5,
    GuardExceeded = 6,
    Internal = 7,
}

/// Opaque result of a count.
pub struct TopotypeReport {
    inner: Inner,
}

enum Inner {
    Count(CountReport),
    Total(TotalReport),
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

fn status_of(err: &Error) -> TopotypeStatus {
    match err {
        Error::NotPrime(_) | Error::EvenPrime { .. } => TopotypeStatus::NotPrime,
        Error::Inadmissible { .. } => TopotypeStatus::Inadmissible,
        Error::NonHyperbolic(_) | Error::NonIntegralGenus { .. } => TopotypeStatus::NoAction,
        Error::GuardExceeded { .. } => TopotypeStatus::GuardExceeded,
        Error::Invariant(_) => TopotypeStatus::Internal,
        _ => TopotypeStatus::InvalidArgument,
    }
}

fn guarded<F: FnOnce() -> Result<(), (TopotypeStatus, String)>>(f: F) -> TopotypeStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TopotypeStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TopotypeStatus::Internal
        }
    }
}

fn lib<T>(r: topotype::Result<T>) -> Result<T, (TopotypeStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (TopotypeStatus, String) {
    (TopotypeStatus::NullPointer, format!("{what} is null"))
}

unsafe fn put_report(out: *mut *mut TopotypeReport, inner: Inner) {
    *out = Box::into_raw(Box::new(TopotypeReport { inner }));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) {
    *out = CString::new(s).expect("no interior nul").into_raw();
}

/// Counts rank-2 types for the partition with `len` parts at `parts`.
///
/// # Safety
/// `parts` must point to `len` readable `uint32_t`s and `out` must be a
/// valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn topotype_count_rank2(
    p: u64,
    parts: *const u32,
    len: usize,
    out: *mut *mut TopotypeReport,
) -> TopotypeStatus {
    guarded(|| {
        if parts.is_null() {
            return Err(null("parts"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let slice = std::slice::from_raw_parts(parts, len);
        let partition = lib(PartitionType::new(slice.to_vec()))?;
        let report = lib(count_types_rank2(&partition, p))?;
        put_report(out, Inner::Count(report));
        Ok(())
    })
}

/// Counts rank-1 types with `r` branch points.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn topotype_count_rank1(
    p: u64,
    r: u32,
    out: *mut *mut TopotypeReport,
) -> TopotypeStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let report = lib(count_types_rank1(r, p))?;
        put_report(out, Inner::Count(report));
        Ok(())
    })
}

/// Per-partition counts and their total for rank `k` and `r` branch points.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn topotype_total(
    p: u64,
    k: u32,
    r: u32,
    out: *mut *mut TopotypeReport,
) -> TopotypeStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let report = lib(total_types(p, k, r))?;
        put_report(out, Inner::Total(report));
        Ok(())
    })
}

/// Writes the count (or total) as a decimal string.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn topotype_report_count(
    report: *const TopotypeReport,
    out: *mut *mut c_char,
) -> TopotypeStatus {
    guarded(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = match &report.inner {
            Inner::Count(c) => &c.count,
            Inner::Total(t) => &t.total,
        };
        put_string(out, n.to_string());
        Ok(())
    })
}

/// Number of per-partition rows: 1 for a single count.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn topotype_report_rows(
    report: *const TopotypeReport,
    out: *mut usize,
) -> TopotypeStatus {
    guarded(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match &report.inner {
            Inner::Count(_) => 1,
            Inner::Total(t) => t.rows.len(),
        };
        Ok(())
    })
}

/// Writes the full report as JSON, numbers as decimal strings.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn topotype_report_json(
    report: *const TopotypeReport,
    out: *mut *mut c_char,
) -> TopotypeStatus {
    guarded(|| {
        let report = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let json = match &report.inner {
            Inner::Count(c) => serde_json::to_string(c),
            Inner::Total(t) => serde_json::to_string(t),
        }
        .map_err(|e| (TopotypeStatus::Internal, e.to_string()))?;
        put_string(out, json);
        Ok(())
    })
}

/// Frees a handle; null is ignored.
///
/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn topotype_report_free(report: *mut TopotypeReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Genus from Riemann-Hurwitz as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn topotype_genus(
    p: u64,
    k: u32,
    r: u32,
    out: *mut *mut c_char,
) -> TopotypeStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = lib(ActionParams::new(p, k, r).and_then(genus_of))?;
        put_string(out, g.to_string());
        Ok(())
    })
}

/// Klein four-group count for `r` branch points as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn topotype_count_klein(r: u32, out: *mut *mut c_char) -> TopotypeStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, lib(count_types_klein(r))?.to_string());
        Ok(())
    })
}

/// Exhaustive orbit count with the default feasibility guard.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn topotype_orbit_count(
    p: u64,
    k: u32,
    r: u32,
    out: *mut u64,
) -> TopotypeStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let guard = lib(Guard::from_env())?;
        *out = lib(count_orbits(p, k, r, &guard))?.total;
        Ok(())
    })
}

/// Frees a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn topotype_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn topotype_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
