//! C ABI over the quadpoisson engine.
//!
//! Structures are opaque handles created by `qp_structure_*` and released
//! with `qp_structure_free`. Every fallible call returns a `QpStatus`; the
//! message of the most recent failure on the calling thread is available
//! from `qp_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quadpoisson::complex::{slice_cohomology, ComplexError, ComplexKind};
use quadpoisson::multivector::{MultiVector, MultivectorError};
use quadpoisson::poly::Bigrade;
use quadpoisson::report::{emit, parse_rational, run, Format, Mode, RMatrixMode, RunConfig, RunError};
use quadpoisson::structures::{expected_dim, Structure, StructureError, StructureParams};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotPoisson = 4,
    NotAdmissible = 5,
    TheoremUnavailable = 6,
    Unsupported = 7,
    VerificationFailed = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpComplex {
    R = 0,
    P = 1,
    S = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpMode {
    Compute = 0,
    Verify = 1,
    LesCheck = 2,
    Stabilizer = 3,
    YangBaxter = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpFormat {
    Json = 0,
    Markdown = 1,
    Csv = 2,
}

/// Opaque structure handle.
pub struct QpStructure {
    inner: Structure,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: QpStatus, msg: impl Into<String>) -> QpStatus {
    set_error(msg.into());
    status
}

fn multivector_status(e: &MultivectorError) -> QpStatus {
    match e {
        MultivectorError::NotPoisson(_) => QpStatus::NotPoisson,
        MultivectorError::Parse(_) => QpStatus::ParseError,
        _ => QpStatus::InvalidArgument,
    }
}

fn structure_status(e: &StructureError) -> QpStatus {
    match e {
        StructureError::Multivector(m) => multivector_status(m),
        StructureError::NotAdmissible(_) => QpStatus::NotAdmissible,
        StructureError::TheoremUnavailable(_) => QpStatus::TheoremUnavailable,
        StructureError::Unsupported => QpStatus::Unsupported,
        StructureError::MissingTensor | StructureError::Overflow(_) => QpStatus::InvalidArgument,
    }
}

fn complex_status(e: &ComplexError) -> QpStatus {
    match e {
        ComplexError::Inconsistent { .. } => QpStatus::VerificationFailed,
        _ => QpStatus::Internal,
    }
}

fn run_status(e: &RunError) -> QpStatus {
    match e {
        RunError::Structure(s) => structure_status(s),
        RunError::Complex(c) => complex_status(c),
        RunError::Multivector(m) => multivector_status(m),
        RunError::Io { .. } | RunError::Usage(_) => QpStatus::InvalidArgument,
    }
}

/// Runs `f`, turning panics into `QpStatus::Internal`.
fn guard(f: impl FnOnce() -> QpStatus) -> QpStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(QpStatus::Internal, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QpStatus> {
    if p.is_null() {
        return Err(fail(QpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(QpStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn read_rational(p: *const c_char) -> Result<quadpoisson::Rational, QpStatus> {
    parse_rational(read_str(p)?).map_err(|m| fail(QpStatus::ParseError, m))
}

unsafe fn finish_structure(params: StructureParams, out: *mut *mut QpStructure) -> QpStatus {
    match Structure::new(params) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(QpStructure { inner }));
            QpStatus::Ok
        }
        Err(e) => fail(structure_status(&e), e.to_string()),
    }
}

/// Creates structure 2 from exact rationals such as `"3/2"`.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_structure_dh2(a: *const c_char, b: *const c_char, out: *mut *mut QpStructure) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QpStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        match (read_rational(a), read_rational(b)) {
            (Ok(a), Ok(b)) => finish_structure(StructureParams::dh2(a, b), out),
            (Err(s), _) | (_, Err(s)) => s,
        }
    })
}

/// Creates structure 7 from exact rationals.
///
/// # Safety
/// `a`, `b`, `c` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_structure_dh7(
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    out: *mut *mut QpStructure,
) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QpStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        match (read_rational(a), read_rational(b), read_rational(c)) {
            (Ok(a), Ok(b), Ok(c)) => finish_structure(StructureParams::dh7(a, b, c), out),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => s,
        }
    })
}

/// Creates a custom structure from a bivector in the multivector grammar,
/// e.g. `"(x1*x3)*d23 + (x1^2 + x2^2)*d12"`.
///
/// # Safety
/// `tensor` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_structure_custom(tensor: *const c_char, out: *mut *mut QpStructure) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QpStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(tensor) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match MultiVector::parse_with_degree(text.trim(), 2) {
            Ok(t) => finish_structure(StructureParams::custom(t), out),
            Err(e) => fail(multivector_status(&e), e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` must come from a `qp_structure_*` constructor and not be used again.
#[no_mangle]
pub unsafe extern "C" fn qp_structure_free(s: *mut QpStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn grade<'a>(s: *const QpStructure, d: u32, k: u32, r: u32) -> Result<(&'a Structure, Bigrade), QpStatus> {
    if s.is_null() {
        return Err(fail(QpStatus::NullPointer, "null structure handle"));
    }
    if d > 3 || k > r {
        return Err(fail(QpStatus::InvalidArgument, format!("no slice d={d}, (k,r)=({k},{r})")));
    }
    Ok((&(*s).inner, Bigrade::new(k, r)))
}

/// Dimension of the cohomology slice of degree `d` and bigrade `(k, r)`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_slice_dim(
    s: *const QpStructure,
    complex: QpComplex,
    d: u32,
    k: u32,
    r: u32,
    out: *mut usize,
) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QpStatus::NullPointer, "null output pointer");
        }
        let (st, g) = match grade(s, d, k, r) {
            Ok(x) => x,
            Err(e) => return e,
        };
        let kind = match complex {
            QpComplex::R => ComplexKind::R,
            QpComplex::P => ComplexKind::P,
            QpComplex::S => ComplexKind::S,
        };
        match slice_cohomology(kind, d as usize, g, st) {
            Ok(h) => {
                *out = h.dim;
                QpStatus::Ok
            }
            Err(e) => fail(complex_status(&e), e.to_string()),
        }
    })
}

/// Closed-form dimension of the R-slice, for the preset families.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_expected_dim(s: *const QpStructure, d: u32, k: u32, r: u32, out: *mut usize) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QpStatus::NullPointer, "null output pointer");
        }
        let (st, g) = match grade(s, d, k, r) {
            Ok(x) => x,
            Err(e) => return e,
        };
        match expected_dim(&st.params, d as usize, g) {
            Ok(n) => {
                *out = n;
                QpStatus::Ok
            }
            Err(e) => fail(structure_status(&e), e.to_string()),
        }
    })
}

/// Runs a full report over `k <= r <= rmax` and returns it rendered in
/// `format`. The string must be released with `qp_string_free`. A report
/// with failed checks is still returned, together with
/// `QpStatus::VerificationFailed`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_report(
    s: *const QpStructure,
    mode: QpMode,
    rmax: u32,
    format: QpFormat,
    out: *mut *mut c_char,
) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QpStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        if s.is_null() {
            return fail(QpStatus::NullPointer, "null structure handle");
        }
        let mode = match mode {
            QpMode::Compute => Mode::Compute,
            QpMode::Verify => Mode::Verify,
            QpMode::LesCheck => Mode::LesCheck,
            QpMode::Stabilizer => Mode::RMatrix(RMatrixMode::Stabilizer),
            QpMode::YangBaxter => Mode::RMatrix(RMatrixMode::YangBaxter),
        };
        let format = match format {
            QpFormat::Json => Format::Json,
            QpFormat::Markdown => Format::Markdown,
            QpFormat::Csv => Format::Csv,
        };
        let config = RunConfig {
            structure: (*s).inner.params.clone(),
            rmax,
            complexes: vec![ComplexKind::R],
            format,
            mode,
        };
        match run(&config) {
            Ok(report) => {
                let text = CString::new(emit(&report, format)).unwrap_or_default();
                *out = text.into_raw();
                if report.exit_code() == 0 {
                    QpStatus::Ok
                } else {
                    fail(QpStatus::VerificationFailed, format!("{} checks failed", report.summary.failures))
                }
            }
            Err(e) => fail(run_status(&e), e.to_string()),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

/// Message of the most recent failure on this thread, or an empty string.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn qp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
