use std::ffi::{CStr, CString};
use std::ptr;

use widerec_ffi::*;

const EXAMPLE: &str = include_str!("../../core/data/example.json");

fn open(spec: &str) -> (WrStatus, *mut WrContext) {
    let text = CString::new(spec).unwrap();
    let mut handle = ptr::null_mut();
    let status = unsafe { wr_context_new(text.as_ptr(), &mut handle) };
    (status, handle)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(wr_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { wr_string_free(s) };
    out
}

#[test]
fn example_counts() {
    let (status, h) = open(EXAMPLE);
    assert_eq!(status, WrStatus::Ok);
    let mut n = 0usize;
    for (which, want) in [
        (WrAlgebra::Whole, 6),
        (WrAlgebra::Quotient, 1),
        (WrAlgebra::Corner, 3),
    ] {
        assert_eq!(unsafe { wr_catalog_size(h, which, &mut n) }, WrStatus::Ok);
        assert_eq!(n, want);
    }
    assert_eq!(unsafe { wr_wide_count(h, true, &mut n) }, WrStatus::Ok);
    assert_eq!(n, 5);
    unsafe { wr_context_free(h) };
}

#[test]
fn check_and_bijection_reports() {
    let (_, h) = open(EXAMPLE);
    let theorem = CString::new("all").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { wr_check(h, theorem.as_ptr(), &mut report) },
        WrStatus::Ok
    );
    let json: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["results"].as_array().unwrap().len(), 6);

    let theorem = CString::new("3.8").unwrap();
    assert_eq!(
        unsafe { wr_check(h, theorem.as_ptr(), ptr::null_mut()) },
        WrStatus::Ok
    );

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wr_bijection_json(h, &mut out) }, WrStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 5);
    assert_eq!(json["rows"][0]["subcategory"], "{1}");
    assert_eq!(json["rows"][0]["restriction"], "{}");
    unsafe { wr_context_free(h) };
}

#[test]
fn error_codes() {
    let (status, h) = open("{ not json");
    assert_eq!(status, WrStatus::InvalidInput);
    assert!(h.is_null());
    assert!(last_error().contains("invalid problem spec"));

    let cyclic = EXAMPLE.replace(r#""from": "2", "to": "3""#, r#""from": "1", "to": "2""#);
    let cyclic = cyclic.replace(
        r#""from": "2", "to": "1""#,
        r#""from": "2", "to": "1"}, {"name": "c", "from": "1", "to": "2""#,
    );
    assert_eq!(open(&cyclic).0, WrStatus::InvalidInput);

    let mut handle = ptr::null_mut();
    assert_eq!(
        unsafe { wr_context_new(ptr::null(), &mut handle) },
        WrStatus::NullPointer
    );
    let mut n = 0usize;
    assert_eq!(
        unsafe { wr_catalog_size(ptr::null(), WrAlgebra::Whole, &mut n) },
        WrStatus::NullPointer
    );

    let (_, h) = open(EXAMPLE);
    let bad = CString::new("9.9").unwrap();
    assert_eq!(
        unsafe { wr_check(h, bad.as_ptr(), ptr::null_mut()) },
        WrStatus::InvalidInput
    );
    assert!(last_error().contains("9.9"));
    unsafe { wr_context_free(h) };
    unsafe { wr_context_free(ptr::null_mut()) };
    unsafe { wr_string_free(ptr::null_mut()) };
}

#[test]
fn budget_exceeded() {
    let tight = EXAMPLE.replace(r#""total_dim": 4"#, r#""total_dim": 4, "hom_budget": 1"#);
    if std::env::var("WIDEREC_BUDGET").is_ok() {
        return;
    }
    let (status, h) = open(&tight);
    assert_eq!(status, WrStatus::BudgetExceeded);
    assert!(h.is_null());
    assert!(last_error().contains("budget"));
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(wr_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/widerec.h");
    for name in [
        "wr_context_new",
        "wr_context_free",
        "wr_catalog_size",
        "wr_wide_count",
        "wr_check",
        "wr_bijection_json",
        "wr_string_free",
        "wr_last_error",
        "wr_version",
        "WR_STATUS_BUDGET_EXCEEDED",
        "typedef struct WrContext WrContext;",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
