use std::ffi::{CStr, CString};
use std::ptr;

use quadpoisson_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qp_last_error()) }.to_string_lossy().into_owned()
}

fn dh2(a: &str, b: &str) -> *mut QpStructure {
    let mut h = ptr::null_mut();
    let st = unsafe { qp_structure_dh2(cs(a).as_ptr(), cs(b).as_ptr(), &mut h) };
    assert_eq!(st, QpStatus::Ok, "{}", last_error());
    h
}

#[test]
fn anchor_slice_dims() {
    let h = dh2("1", "1");
    for (d, k, r, want) in [(0, 2, 3, 1), (1, 2, 3, 3), (2, 2, 3, 3), (3, 2, 3, 1), (3, 0, 0, 1), (2, 1, 1, 0)] {
        let (mut got, mut exp) = (usize::MAX, usize::MAX);
        unsafe {
            assert_eq!(qp_slice_dim(h, QpComplex::R, d, k, r, &mut got), QpStatus::Ok);
            assert_eq!(qp_expected_dim(h, d, k, r, &mut exp), QpStatus::Ok);
        }
        assert_eq!((got, exp), (want, want), "d={d} ({k},{r})");
    }
    unsafe { qp_structure_free(h) };
}

#[test]
fn p_and_s_slices() {
    let h = dh2("0", "1");
    let mut n = 0;
    unsafe {
        assert_eq!(qp_slice_dim(h, QpComplex::P, 2, 1, 1, &mut n), QpStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(qp_slice_dim(h, QpComplex::S, 3, 1, 1, &mut n), QpStatus::Ok);
        assert_eq!(n, 0);
        qp_structure_free(h);
    }
}

#[test]
fn report_json_verify() {
    let mut h = ptr::null_mut();
    let st = unsafe { qp_structure_dh7(cs("0").as_ptr(), cs("-1").as_ptr(), cs("2").as_ptr(), &mut h) };
    assert_eq!(st, QpStatus::Ok, "{}", last_error());
    let mut out = ptr::null_mut();
    let st = unsafe { qp_report(h, QpMode::Verify, 6, QpFormat::Json, &mut out) };
    assert_eq!(st, QpStatus::Ok, "{}", last_error());
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["summary"]["failures"], 0);
    assert_eq!(v["verification"].as_array().unwrap().len(), 4 * 28);
    unsafe {
        qp_string_free(out);
        qp_structure_free(h);
    }
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(qp_structure_dh2(cs("1.5").as_ptr(), cs("1").as_ptr(), &mut h), QpStatus::ParseError);
        assert!(h.is_null());
        assert!(last_error().contains("exact rational"));
        assert_eq!(qp_structure_dh2(ptr::null(), cs("1").as_ptr(), &mut h), QpStatus::NullPointer);
        assert_eq!(qp_structure_dh2(cs("1").as_ptr(), cs("1").as_ptr(), ptr::null_mut()), QpStatus::NullPointer);
        assert_eq!(qp_structure_custom(cs("(x2*x3)*d23 + (x1^2)*d31").as_ptr(), &mut h), QpStatus::NotPoisson);
        assert!(last_error().contains("[Λ,Λ]"));
        assert_eq!(qp_structure_custom(cs("(x1^2)*d23").as_ptr(), &mut h), QpStatus::NotAdmissible);
        assert_eq!(qp_structure_custom(cs("(x1^^2)*d23").as_ptr(), &mut h), QpStatus::ParseError);

        let d = dh2("1", "0");
        let mut n = 0;
        assert_eq!(qp_expected_dim(d, 0, 0, 0, &mut n), QpStatus::TheoremUnavailable);
        assert_eq!(qp_slice_dim(d, QpComplex::R, 4, 0, 0, &mut n), QpStatus::InvalidArgument);
        assert_eq!(qp_slice_dim(d, QpComplex::R, 0, 3, 2, &mut n), QpStatus::InvalidArgument);
        assert_eq!(qp_slice_dim(ptr::null(), QpComplex::R, 0, 0, 0, &mut n), QpStatus::NullPointer);
        let mut out = ptr::null_mut();
        assert_eq!(qp_report(d, QpMode::Verify, 3, QpFormat::Csv, &mut out), QpStatus::TheoremUnavailable);
        assert!(out.is_null());
        qp_structure_free(d);
        qp_structure_free(ptr::null_mut());
        qp_string_free(ptr::null_mut());
    }
}

#[test]
fn custom_handle_and_unsupported_expected() {
    let mut h = ptr::null_mut();
    let t = cs("(2*x1*x3 - x2*x3)*d23 + (x1*x3 + 2*x2*x3)*d31 + (x1^2 + x2^2)*d12");
    unsafe {
        assert_eq!(qp_structure_custom(t.as_ptr(), &mut h), QpStatus::Ok);
        let mut n = 0;
        assert_eq!(qp_slice_dim(h, QpComplex::R, 2, 2, 3, &mut n), QpStatus::Ok);
        assert_eq!(n, 3);
        assert_eq!(qp_expected_dim(h, 2, 2, 3, &mut n), QpStatus::Unsupported);
        qp_structure_free(h);
    }
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/quadpoisson.h")).unwrap();
    for name in [
        "qp_structure_dh2",
        "qp_structure_dh7",
        "qp_structure_custom",
        "qp_structure_free",
        "qp_slice_dim",
        "qp_expected_dim",
        "qp_report",
        "qp_string_free",
        "qp_last_error",
        "typedef struct QpStructure QpStructure",
        "QP_STATUS_NOT_POISSON = 4",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
