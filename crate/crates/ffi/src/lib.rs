//! C ABI over `pnverify-core`.
//!
//! Input files are parsed into an opaque `PnvSpec`, run into an opaque
//! `PnvReport`, and rendered as text or JSON. Every fallible call returns a
//! `PnvStatus`; on anything but `PNV_STATUS_OK` a message is available from
//! `pnv_last_error` on the same thread. Strings returned by the library are
//! owned by the caller and released with `pnv_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pnverify_core::cli::{parse_specfile, run_spec, RunOptions, SpecFile};
use pnverify_core::pairgroupoid::Convention;
use pnverify_core::report::CheckReport;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnvStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnvConvention {
    Right = 0,
    Left = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PnvOptions {
    /// Seed for the numeric oracle, unless the file sets one.
    pub seed: u64,
    /// Random points per oracle instance; must be at least 1.
    pub trials: u64,
    /// Convention for checks that do not name one.
    pub convention: PnvConvention,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PnvSummary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub informational: usize,
}

/// A parsed input file.
pub struct PnvSpec(SpecFile);

/// The ordered results of running a `PnvSpec`.
pub struct PnvReport(CheckReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: PnvStatus, msg: impl Into<String>) -> PnvStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting a panic into `PNV_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> PnvStatus) -> PnvStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".into());
            fail(PnvStatus::Panic, msg)
        }
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs replaced").into_raw()
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn pnv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pnv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn pnv_options_default() -> PnvOptions {
    let d = RunOptions::default();
    PnvOptions { seed: d.seed, trials: d.trials as u64, convention: PnvConvention::Right }
}

/// Parses the text of an input file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pnv_spec_parse(text: *const c_char, out: *mut *mut PnvSpec) -> PnvStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(PnvStatus::NullArgument, "null argument to pnv_spec_parse");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(PnvStatus::InvalidUtf8, "input is not valid UTF-8");
        };
        match parse_specfile(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(PnvSpec(spec)));
                PnvStatus::Ok
            }
            Err(e) => fail(PnvStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `spec` must be NULL or a handle from `pnv_spec_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pnv_spec_free(spec: *mut PnvSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Canonical form of a parsed file.
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pnv_spec_format(spec: *const PnvSpec, out: *mut *mut c_char) -> PnvStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return fail(PnvStatus::NullArgument, "null argument to pnv_spec_format");
        }
        *out = into_c_string((*spec).0.to_string());
        PnvStatus::Ok
    })
}

/// Runs every check of `spec`. `options` may be NULL for the defaults.
///
/// # Safety
/// `spec` must be a live handle, `options` NULL or valid, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pnv_run(
    spec: *const PnvSpec,
    options: *const PnvOptions,
    out: *mut *mut PnvReport,
) -> PnvStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return fail(PnvStatus::NullArgument, "null argument to pnv_run");
        }
        *out = ptr::null_mut();
        let o = if options.is_null() { pnv_options_default() } else { *options };
        if o.trials == 0 {
            return fail(PnvStatus::InvalidArgument, "trials must be at least 1");
        }
        let Ok(trials) = usize::try_from(o.trials) else {
            return fail(PnvStatus::InvalidArgument, "trials does not fit in usize");
        };
        let convention = match o.convention {
            PnvConvention::Right => Convention::Right,
            PnvConvention::Left => Convention::Left,
        };
        let report = run_spec(&(*spec).0, RunOptions { seed: o.seed, trials, convention });
        *out = Box::into_raw(Box::new(PnvReport(report)));
        PnvStatus::Ok
    })
}

/// # Safety
/// `report` must be NULL or a handle from `pnv_run` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pnv_report_free(report: *mut PnvReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// 0 when every non-informational entry passes, 1 otherwise, -1 for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pnv_report_exit_code(report: *const PnvReport) -> i32 {
    if report.is_null() {
        return -1;
    }
    i32::from(!(*report).0.all_pass())
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pnv_report_summary(report: *const PnvReport, out: *mut PnvSummary) -> PnvStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(PnvStatus::NullArgument, "null argument to pnv_report_summary");
        }
        let s = (*report).0.summary();
        *out = PnvSummary { pass: s.pass, fail: s.fail, error: s.error, informational: s.informational };
        PnvStatus::Ok
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pnv_report_json(report: *const PnvReport, out: *mut *mut c_char) -> PnvStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(PnvStatus::NullArgument, "null argument to pnv_report_json");
        }
        *out = into_c_string((*report).0.to_json());
        PnvStatus::Ok
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pnv_report_text(report: *const PnvReport, out: *mut *mut c_char) -> PnvStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(PnvStatus::NullArgument, "null argument to pnv_report_text");
        }
        *out = into_c_string((*report).0.to_text());
        PnvStatus::Ok
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pnv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
