//! C ABI over the widerec engine.
//!
//! Every entry point returns a [`WrStatus`]. On failure a message is kept per
//! thread and can be read with [`wr_last_error`]. Strings handed out by this
//! library must be released with [`wr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use widerec::error::Error;
use widerec::problem::ProblemSpec;
use widerec::recollement::RecollementCtx;
use widerec::suite::Suite;
use widerec::wide::{ReductionChecker, WideBounds};

/// Same numbering as the command-line exit codes, plus FFI-only cases.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WrStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    NullPointer = 4,
    Internal = 5,
}

/// Selects one of the three module categories of a context.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WrAlgebra {
    Whole = 0,
    Quotient = 1,
    Corner = 2,
}

/// Opaque handle: the algebra, its idempotent and the three catalogs.
pub struct WrContext {
    ctx: RecollementCtx,
    bounds: WideBounds,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> WrStatus {
    set_error(e.to_string());
    if e.is_budget() {
        WrStatus::BudgetExceeded
    } else if matches!(e, Error::ExactnessFailure(_)) {
        WrStatus::CheckFailed
    } else {
        WrStatus::InvalidInput
    }
}

fn guard(body: impl FnOnce() -> Result<WrStatus, WrStatus>) -> WrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            WrStatus::Internal
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), WrStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(WrStatus::NullPointer);
    }
    Ok(())
}

unsafe fn context<'a>(handle: *const WrContext) -> Result<&'a WrContext, WrStatus> {
    non_null(handle, "context")?;
    Ok(&*handle)
}

unsafe fn hand_out(text: String, out: *mut *mut c_char) -> Result<(), WrStatus> {
    non_null(out, "output pointer")?;
    let s = CString::new(text).map_err(|_| {
        set_error("report contains a NUL byte");
        WrStatus::Internal
    })?;
    *out = s.into_raw();
    Ok(())
}

fn checker(c: &WrContext) -> Result<ReductionChecker<'_>, WrStatus> {
    ReductionChecker::new(&c.ctx, c.bounds).map_err(|e| status_of(&e))
}

/// Parses a JSON problem description and builds the catalogs.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wr_context_new(
    spec_json: *const c_char,
    out: *mut *mut WrContext,
) -> WrStatus {
    guard(|| {
        non_null(spec_json, "spec_json")?;
        non_null(out, "output pointer")?;
        *out = ptr::null_mut();
        let text = CStr::from_ptr(spec_json).to_str().map_err(|_| {
            set_error("spec is not UTF-8");
            WrStatus::InvalidInput
        })?;
        let build = || -> Result<WrContext, Error> {
            let spec = ProblemSpec::from_json(text)?;
            Ok(WrContext {
                bounds: spec.wide_bounds()?,
                ctx: spec.context()?,
            })
        };
        let handle = build().map_err(|e| status_of(&e))?;
        *out = Box::into_raw(Box::new(handle));
        Ok(WrStatus::Ok)
    })
}

/// # Safety
/// `handle` must come from [`wr_context_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn wr_context_free(handle: *mut WrContext) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of indecomposables in the selected catalog.
///
/// # Safety
/// `handle` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wr_catalog_size(
    handle: *const WrContext,
    which: WrAlgebra,
    out: *mut usize,
) -> WrStatus {
    guard(|| {
        let c = context(handle)?;
        non_null(out, "output pointer")?;
        *out = match which {
            WrAlgebra::Whole => c.ctx.big_catalog().len(),
            WrAlgebra::Quotient => c.ctx.small_catalog().len(),
            WrAlgebra::Corner => c.ctx.local_catalog().len(),
        };
        Ok(WrStatus::Ok)
    })
}

/// Number of wide subcategories of the whole algebra, optionally only those
/// containing the image of the quotient category.
///
/// # Safety
/// `handle` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wr_wide_count(
    handle: *const WrContext,
    containing_image: bool,
    out: *mut usize,
) -> WrStatus {
    guard(|| {
        let c = context(handle)?;
        non_null(out, "output pointer")?;
        let ch = checker(c)?;
        let list = if containing_image {
            ch.containing_base()
        } else {
            ch.big().enumerate_wide()
        };
        *out = list.map_err(|e| status_of(&e))?.len();
        Ok(WrStatus::Ok)
    })
}

/// Runs one verifier suite ("2.4", "2.5", "3.1", "3.4", "3.5", "3.8" or "all")
/// and writes its JSON report to `report_out`, if non-null. Returns
/// `CheckFailed` when a check fails; the report is written either way.
///
/// # Safety
/// `handle` must be a live context, `theorem` NUL-terminated, and
/// `report_out` null or writable. The report must be freed with [`wr_string_free`].
#[no_mangle]
pub unsafe extern "C" fn wr_check(
    handle: *const WrContext,
    theorem: *const c_char,
    report_out: *mut *mut c_char,
) -> WrStatus {
    guard(|| {
        let c = context(handle)?;
        non_null(theorem, "theorem")?;
        let name = CStr::from_ptr(theorem).to_str().unwrap_or("");
        let suites = if name == "all" {
            Suite::ALL.to_vec()
        } else {
            match Suite::from_number(name) {
                Some(s) => vec![s],
                None => {
                    set_error(format!("unknown theorem {name:?}"));
                    return Err(WrStatus::InvalidInput);
                }
            }
        };
        let ch = checker(c)?;
        let mut sections = Vec::new();
        let mut passed = true;
        for suite in suites {
            let report = suite.run(&ch).map_err(|e| status_of(&e))?;
            passed &= report.passed();
            sections.push(serde_json::json!({
                "theorem": suite.number(),
                "passed": report.passed(),
                "items": report.items,
            }));
        }
        if !report_out.is_null() {
            let text = serde_json::json!({"passed": passed, "results": sections}).to_string();
            hand_out(text, report_out)?;
        }
        if passed {
            Ok(WrStatus::Ok)
        } else {
            set_error("a check failed; see the report");
            Ok(WrStatus::CheckFailed)
        }
    })
}

/// Writes the correspondence between wide subcategories containing the
/// quotient image and wide subcategories of the corner as JSON.
///
/// # Safety
/// `handle` must be a live context and `out` writable. Free the result with [`wr_string_free`].
#[no_mangle]
pub unsafe extern "C" fn wr_bijection_json(
    handle: *const WrContext,
    out: *mut *mut c_char,
) -> WrStatus {
    guard(|| {
        let c = context(handle)?;
        let b = checker(c)?.bijection().map_err(|e| status_of(&e))?;
        let (big, local) = (c.ctx.big_catalog(), c.ctx.local_catalog());
        let rows: Vec<_> = b
            .rows
            .iter()
            .map(|(s, w)| serde_json::json!({"subcategory": s.describe(big), "restriction": w.describe(local)}))
            .collect();
        let text = serde_json::json!({"passed": b.passed(), "rows": rows}).to_string();
        hand_out(text, out)?;
        Ok(if b.passed() {
            WrStatus::Ok
        } else {
            WrStatus::CheckFailed
        })
    })
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn wr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; empty if none. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn wr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
