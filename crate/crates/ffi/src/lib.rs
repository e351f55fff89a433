//! C ABI for the `monogenic` crate.
//!
//! Objects are opaque handles created by `*_from_json` and released by the
//! matching `*_free`. Every fallible call returns an [`MgStatus`]; on failure
//! [`mg_last_error_message`] describes the problem for the calling thread.
//! Element buffers hold `n` [`MgComplex`] coefficients over `I_1..I_n`.
//!
//! # Safety
//!
//! Pointers must be valid for the stated lengths and handles must come from
//! this library and not be used after being freed.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use monogenic::algebra::{AlgebraElement, AlgebraSpec};
use monogenic::holomorphic::QuadratureOptions;
use monogenic::io::{self, InputError};
use monogenic::monogenic::{
    check_cauchy_riemann, eval_monogenic, eval_monogenic_contour, MonogenicFunction,
    VariableFrame,
};
use monogenic::resolvent::{invert, resolvent};
use monogenic::{Error, C64};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    DimensionMismatch = 5,
    NotInvertible = 6,
    Pole = 7,
    ContourDegenerate = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MgComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for MgComplex {
    fn from(c: C64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<MgComplex> for C64 {
    fn from(c: MgComplex) -> Self {
        C64::new(c.re, c.im)
    }
}

/// An algebra 𝔸ₙᵐ.
pub struct MgAlgebra {
    spec: AlgebraSpec,
}

/// A frame `e_1 = 1, e_2, …, e_k` bound to an algebra.
pub struct MgFrame {
    frame: VariableFrame,
}

/// A monogenic function together with its algebra and frame.
pub struct MgMonogenic {
    spec: AlgebraSpec,
    mf: MonogenicFunction,
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

fn status_of(e: &Error) -> MgStatus {
    match e {
        Error::DimensionMismatch { .. } => MgStatus::DimensionMismatch,
        Error::NotInvertible { .. } => MgStatus::NotInvertible,
        Error::PoleAt { .. } => MgStatus::Pole,
        Error::ContourDegenerate { .. } => MgStatus::ContourDegenerate,
        _ => MgStatus::InvalidInput,
    }
}

struct Fail(MgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

impl From<InputError> for Fail {
    fn from(e: InputError) -> Self {
        let status = match &e {
            InputError::Semantic { source, .. } => status_of(source),
            _ => MgStatus::Parse,
        };
        Fail(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> MgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MgStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MgStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(MgStatus::NullPointer, "null pointer argument".into())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(MgStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn check_len(expected: usize, found: usize) -> Result<(), Fail> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found }.into())
    }
}

unsafe fn read_element(spec: &AlgebraSpec, p: *const MgComplex, len: usize) -> Result<AlgebraElement, Fail> {
    check_len(spec.n(), len)?;
    Ok(AlgebraElement::new(
        slice(p, len)?.iter().map(|&c| c.into()).collect(),
    ))
}

unsafe fn write_element(a: &AlgebraElement, out: *mut MgComplex, len: usize) -> Result<(), Fail> {
    check_len(a.len(), len)?;
    if out.is_null() {
        return Err(null());
    }
    let dst = std::slice::from_raw_parts_mut(out, len);
    for (d, &c) in dst.iter_mut().zip(a.coeffs()) {
        *d = c.into();
    }
    Ok(())
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(MgStatus::InvalidInput, "interior NUL".into()))?;
    write_out(out, c.into_raw())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn mg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn mg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra spec from JSON.
#[no_mangle]
pub unsafe extern "C" fn mg_algebra_from_json(json: *const c_char, out: *mut *mut MgAlgebra) -> MgStatus {
    guard(|| {
        let spec = io::parse_algebra(text(json)?, "<algebra>")?;
        write_out(out, Box::into_raw(Box::new(MgAlgebra { spec })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn mg_algebra_free(a: *mut MgAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Writes the number of idempotents `m` and the dimension `n`.
#[no_mangle]
pub unsafe extern "C" fn mg_algebra_dim(a: *const MgAlgebra, m: *mut usize, n: *mut usize) -> MgStatus {
    guard(|| {
        let a = borrow(a)?;
        write_out(m, a.spec.m())?;
        write_out(n, a.spec.n())
    })
}

/// Checks associativity; `valid` receives the verdict.
#[no_mangle]
pub unsafe extern "C" fn mg_algebra_is_valid(a: *const MgAlgebra, valid: *mut bool) -> MgStatus {
    guard(|| write_out(valid, borrow(a)?.spec.validate().valid))
}

/// Validation report as JSON; free with [`mg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mg_algebra_validation_json(a: *const MgAlgebra, out: *mut *mut c_char) -> MgStatus {
    guard(|| {
        let report = borrow(a)?.spec.validate();
        write_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// `out = a · b`; all buffers have length `n`.
#[no_mangle]
pub unsafe extern "C" fn mg_mul(
    alg: *const MgAlgebra,
    a: *const MgComplex,
    b: *const MgComplex,
    out: *mut MgComplex,
    n: usize,
) -> MgStatus {
    guard(|| {
        let spec = &borrow(alg)?.spec;
        let x = read_element(spec, a, n)?;
        let y = read_element(spec, b, n)?;
        write_element(&spec.mul(&x, &y)?, out, n)
    })
}

/// `out = b⁻¹`.
#[no_mangle]
pub unsafe extern "C" fn mg_invert(
    alg: *const MgAlgebra,
    b: *const MgComplex,
    out: *mut MgComplex,
    n: usize,
) -> MgStatus {
    guard(|| {
        let spec = &borrow(alg)?.spec;
        let x = read_element(spec, b, n)?;
        write_element(&invert(spec, &x)?, out, n)
    })
}

/// Parses a frame spec against an algebra.
#[no_mangle]
pub unsafe extern "C" fn mg_frame_from_json(
    alg: *const MgAlgebra,
    json: *const c_char,
    out: *mut *mut MgFrame,
) -> MgStatus {
    guard(|| {
        let spec = &borrow(alg)?.spec;
        let frame = io::parse_frame(text(json)?, "<frame>", spec)?;
        write_out(out, Box::into_raw(Box::new(MgFrame { frame })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn mg_frame_free(f: *mut MgFrame) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of real variables `k`.
#[no_mangle]
pub unsafe extern "C" fn mg_frame_k(f: *const MgFrame, k: *mut usize) -> MgStatus {
    guard(|| write_out(k, borrow(f)?.frame.k()))
}

/// `out = (t e_1 − ζ)⁻¹` with `ζ = Σ x_j e_j`; `x` has length `k`.
#[no_mangle]
pub unsafe extern "C" fn mg_resolvent(
    alg: *const MgAlgebra,
    frame: *const MgFrame,
    x: *const f64,
    k: usize,
    t: MgComplex,
    out: *mut MgComplex,
    n: usize,
) -> MgStatus {
    guard(|| {
        let spec = &borrow(alg)?.spec;
        let frame = &borrow(frame)?.frame;
        let r = resolvent(spec, frame, slice(x, k)?, t.into())?;
        write_element(&r, out, n)
    })
}

/// Parses a monogenic function spec; the handle keeps its own copies of the
/// algebra and frame.
#[no_mangle]
pub unsafe extern "C" fn mg_monogenic_from_json(
    alg: *const MgAlgebra,
    frame: *const MgFrame,
    json: *const c_char,
    out: *mut *mut MgMonogenic,
) -> MgStatus {
    guard(|| {
        let spec = borrow(alg)?.spec.clone();
        let frame = borrow(frame)?.frame.clone();
        let mf = io::parse_monogenic(text(json)?, "<function>", &spec, frame)?;
        write_out(out, Box::into_raw(Box::new(MgMonogenic { spec, mf })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn mg_monogenic_free(f: *mut MgMonogenic) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `out = Φ(x)` in closed residue form.
#[no_mangle]
pub unsafe extern "C" fn mg_monogenic_eval(
    f: *const MgMonogenic,
    x: *const f64,
    k: usize,
    out: *mut MgComplex,
    n: usize,
) -> MgStatus {
    guard(|| {
        let f = borrow(f)?;
        write_element(&eval_monogenic(&f.spec, &f.mf, slice(x, k)?)?, out, n)
    })
}

/// `out = Φ(x)` by contour quadrature with at most `max_nodes` nodes per
/// circle (0 selects the default).
#[no_mangle]
pub unsafe extern "C" fn mg_monogenic_eval_contour(
    f: *const MgMonogenic,
    x: *const f64,
    k: usize,
    max_nodes: usize,
    out: *mut MgComplex,
    n: usize,
    converged: *mut bool,
) -> MgStatus {
    guard(|| {
        let f = borrow(f)?;
        let opts = if max_nodes > 0 {
            QuadratureOptions::with_max_nodes(max_nodes)
        } else {
            QuadratureOptions::default()
        };
        let r = eval_monogenic_contour(&f.spec, &f.mf, slice(x, k)?, opts)?;
        write_element(&r.value, out, n)?;
        if !converged.is_null() {
            converged.write(r.converged);
        }
        Ok(())
    })
}

/// Largest Cauchy–Riemann residual at `x` with central-difference step `h`.
#[no_mangle]
pub unsafe extern "C" fn mg_check_cauchy_riemann(
    f: *const MgMonogenic,
    x: *const f64,
    k: usize,
    h: f64,
    max_residual: *mut f64,
) -> MgStatus {
    guard(|| {
        let f = borrow(f)?;
        let r = check_cauchy_riemann(&f.spec, f.mf.frame(), &f.mf.bind(&f.spec), slice(x, k)?, h)?;
        write_out(max_residual, r.max_residual)
    })
}

/// Runs the bundled fixture suite; the JSON report is freed with
/// [`mg_string_free`]. `passed` receives the overall verdict.
#[no_mangle]
pub unsafe extern "C" fn mg_selftest_json(seed: u64, out: *mut *mut c_char, passed: *mut bool) -> MgStatus {
    guard(|| {
        let r = monogenic::selftest::run_selftest(seed);
        write_out(passed, r.all_passed)?;
        write_string(out, serde_json::to_string(&r).expect("report serializes"))
    })
}
