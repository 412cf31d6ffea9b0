//! C ABI over `quadmult`.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `*_free` function. Every fallible call returns a [`QmStatus`];
//! on failure [`qm_last_error`] describes the problem for the calling thread.
//! Strings returned by the library are released with [`qm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quadmult::engine::{search, SearchConfig, SearchReport};
use quadmult::families::{verify_family, Family, Verdict};
use quadmult::forms::{BinaryQuadraticForm, Representation};
use quadmult::replay;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Failed = 3,
    Panic = 4,
}

/// Result of a classification run.
pub struct QmReport {
    inner: SearchReport,
}

/// Positive representations `(x, y)` of one integer.
pub struct QmRepresentations {
    inner: Vec<Representation>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, converting panics into [`QmStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), (QmStatus, String)>) -> QmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QmStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside quadmult");
            QmStatus::Panic
        }
    }
}

fn invalid(e: impl ToString) -> (QmStatus, String) {
    (QmStatus::InvalidArgument, e.to_string())
}

fn null(name: &str) -> (QmStatus, String) {
    (QmStatus::NullPointer, format!("{name} is null"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn qm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Classifies the multiplicative functions commuting with `a x² + b xy + c y²`
/// on `[1, limit]`. Zero caps select the defaults.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qm_classify(
    a: i64,
    b: i64,
    c: i64,
    limit: u64,
    threads: u32,
    degree_cap: u32,
    max_depth: u32,
    max_branches: u32,
    out: *mut *mut QmReport,
) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let defaults = SearchConfig::default();
        let pick = |v: u32, d: usize| if v == 0 { d } else { v as usize };
        let config = SearchConfig {
            degree_cap: if degree_cap == 0 { defaults.degree_cap } else { degree_cap },
            max_depth: pick(max_depth, defaults.max_depth),
            max_branches: pick(max_branches, defaults.max_branches),
            threads: pick(threads, 1),
            ..defaults
        };
        let report = search(&BinaryQuadraticForm::new(a, b, c), limit, &config).map_err(invalid)?;
        *out = Box::into_raw(Box::new(QmReport { inner: report }));
        Ok(())
    })
}

/// Number of leaves (consistent and stuck).
///
/// # Safety
/// `report` must be null or a live handle from [`qm_classify`].
#[no_mangle]
pub unsafe extern "C" fn qm_report_leaf_count(report: *const QmReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.leaves.len())
}

/// # Safety
/// As [`qm_report_leaf_count`].
#[no_mangle]
pub unsafe extern "C" fn qm_report_consistent_count(report: *const QmReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.consistent().count())
}

/// # Safety
/// As [`qm_report_leaf_count`].
#[no_mangle]
pub unsafe extern "C" fn qm_report_stuck_count(report: *const QmReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.stuck().count())
}

/// Consistent leaves that match no known family.
///
/// # Safety
/// As [`qm_report_leaf_count`].
#[no_mangle]
pub unsafe extern "C" fn qm_report_unexplained_count(report: *const QmReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.unexplained().count())
}

/// Whether a depth or branch cap cut the search short.
///
/// # Safety
/// As [`qm_report_leaf_count`].
#[no_mangle]
pub unsafe extern "C" fn qm_report_incomplete(report: *const QmReport) -> bool {
    report.as_ref().is_some_and(|r| r.inner.incomplete)
}

/// The report as JSON; null if `report` is null.
///
/// # Safety
/// As [`qm_report_leaf_count`]. Free the result with [`qm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qm_report_to_json(report: *const QmReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(r.inner.to_json()),
        None => {
            set_error("report is null");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `report` must be null or a handle from [`qm_classify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qm_report_free(report: *mut QmReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Checks a family ("identity", "const1", "fp:<p>") on `[1, bound]²`. On failure
/// `*passed` is false and `(*x, *y)` is the first failing pair.
///
/// # Safety
/// `family` must be a nul-terminated string; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_verify_family(
    a: i64,
    b: i64,
    c: i64,
    family: *const c_char,
    bound: u64,
    passed: *mut bool,
    x: *mut u64,
    y: *mut u64,
) -> QmStatus {
    guard(|| {
        if family.is_null() || passed.is_null() || x.is_null() || y.is_null() {
            return Err(null("argument"));
        }
        let family: Family = CStr::from_ptr(family).to_str().map_err(invalid)?.parse().map_err(invalid)?;
        let form = BinaryQuadraticForm::new(a, b, c);
        if !form.is_positive_definite() {
            return Err(invalid(format!("form {form} is not positive definite")));
        }
        match verify_family(&family, &form, bound) {
            Verdict::Pass => {
                *passed = true;
                *x = 0;
                *y = 0;
            }
            Verdict::Fail { x: fx, y: fy } => {
                *passed = false;
                *x = fx;
                *y = fy;
            }
        }
        Ok(())
    })
}

/// Representations of `n` with `x, y ≥ 1`, in lexicographic order.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_representations(a: i64, b: i64, c: i64, n: u64, out: *mut *mut QmRepresentations) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let reps = BinaryQuadraticForm::new(a, b, c).representations(n).map_err(invalid)?;
        *out = Box::into_raw(Box::new(QmRepresentations { inner: reps }));
        Ok(())
    })
}

/// # Safety
/// `list` must be null or a live handle from [`qm_representations`].
#[no_mangle]
pub unsafe extern "C" fn qm_representations_len(list: *const QmRepresentations) -> usize {
    list.as_ref().map_or(0, |l| l.inner.len())
}

/// # Safety
/// `list` must be a live handle; `x` and `y` writable.
#[no_mangle]
pub unsafe extern "C" fn qm_representations_get(
    list: *const QmRepresentations,
    index: usize,
    x: *mut u64,
    y: *mut u64,
) -> QmStatus {
    guard(|| {
        let list = list.as_ref().ok_or_else(|| null("list"))?;
        if x.is_null() || y.is_null() {
            return Err(null("output"));
        }
        let r = list.inner.get(index).ok_or_else(|| invalid(format!("index {index} out of range")))?;
        *x = r.x;
        *y = r.y;
        Ok(())
    })
}

/// # Safety
/// `list` must be null or a handle from [`qm_representations`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qm_representations_free(list: *mut QmRepresentations) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Runs replay 1 or 2 and returns its step table as JSON; null on failure.
#[no_mangle]
pub extern "C" fn qm_replay_json(theorem: u32) -> *mut c_char {
    let mut json = None;
    let status = guard(|| {
        let s = match theorem {
            1 => replay::replay_theorem1().map(|r| serde_json::to_string_pretty(&r)),
            2 => replay::replay_theorem2_cases().map(|r| serde_json::to_string_pretty(&r)),
            t => return Err(invalid(format!("no replay for theorem {t}"))),
        };
        let s = s.map_err(|e| (QmStatus::Failed, e.to_string()))?;
        json = Some(s.map_err(|e| (QmStatus::Failed, e.to_string()))?);
        Ok(())
    });
    match (status, json) {
        (QmStatus::Ok, Some(s)) => into_c_string(s),
        _ => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn qm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
