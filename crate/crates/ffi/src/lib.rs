//! C ABI over `foldbetti`.
//!
//! Every fallible function returns an [`FbStatus`]; on failure a message is
//! available from [`fb_last_error`] on the same thread. Instances are opaque
//! handles released with [`fb_instance_free`], and strings returned by the
//! library are released with [`fb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use foldbetti::betti::{BettiEngine, BettiTable, Method};
use foldbetti::cli::{parse_instance, run, Command, Folds, Instance, InstanceFile, Options};
use foldbetti::exactlin::Field;
use foldbetti::forms::FormCollection;
use foldbetti::matroid::{hamming_weights, height_of_fold_ideal};
use foldbetti::oracle::OracleLimits;
use foldbetti::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    FoldOutOfRange = 5,
    Precondition = 6,
    Unsupported = 7,
    Guardrail = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FbMethod {
    Auto = 0,
    Recursion = 1,
    TutteHk = 2,
    Oracle = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FbCommand {
    Betti = 0,
    Tutte = 1,
    Hamming = 2,
    Height = 3,
    Hilbert = 4,
    Verify = 5,
}

enum Inner {
    Rational(FormCollection<foldbetti::exactlin::Rationals>, BettiEngine<foldbetti::exactlin::Rationals>),
    Prime(FormCollection<foldbetti::exactlin::PrimeField>, BettiEngine<foldbetti::exactlin::PrimeField>),
}

/// A parsed instance together with its memo tables.
pub struct FbInstance {
    file: InstanceFile,
    inner: Inner,
}

macro_rules! with_sigma {
    ($inst:expr, |$sigma:ident, $engine:ident| $body:expr) => {
        match &$inst.inner {
            Inner::Rational($sigma, $engine) => $body,
            Inner::Prime($sigma, $engine) => $body,
        }
    };
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let msg = CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> FbStatus {
    match e {
        Error::Parse(_) | Error::Io(_) => FbStatus::Parse,
        Error::InvalidArgument(_) | Error::EmptyCollection => FbStatus::InvalidArgument,
        Error::FoldOutOfRange { .. } => FbStatus::FoldOutOfRange,
        Error::Precondition(_) | Error::LinearResolutionViolated(_) => FbStatus::Precondition,
        Error::HeightWindowUnsupported(_) => FbStatus::Unsupported,
        Error::Guardrail(_) => FbStatus::Guardrail,
    }
}

fn fail(status: FbStatus, msg: impl Into<Vec<u8>>) -> FbStatus {
    set_error(msg);
    status
}

/// Runs `f`, mapping library errors and panics to status codes.
fn guarded(f: impl FnOnce() -> Result<(), FbStatus>) -> FbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FbStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(FbStatus::Internal, "internal panic"),
    }
}

fn lib<T>(r: foldbetti::Result<T>) -> Result<T, FbStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, FbStatus> {
    if p.is_null() {
        return Err(fail(FbStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(FbStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn inst_arg<'a>(p: *const FbInstance) -> Result<&'a FbInstance, FbStatus> {
    p.as_ref().ok_or_else(|| fail(FbStatus::NullPointer, "null instance"))
}

unsafe fn write_slice<T: Copy>(values: &[T], out: *mut T, cap: usize, written: *mut usize) -> Result<(), FbStatus> {
    if !written.is_null() {
        *written = values.len();
    }
    if values.len() > cap {
        return Err(fail(FbStatus::BufferTooSmall, format!("need room for {} values, got {cap}", values.len())));
    }
    if values.is_empty() {
        return Ok(());
    }
    if out.is_null() {
        return Err(fail(FbStatus::NullPointer, "null output buffer"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

unsafe fn write_string(s: String, out: *mut *mut c_char) -> Result<(), FbStatus> {
    if out.is_null() {
        return Err(fail(FbStatus::NullPointer, "null output pointer"));
    }
    let s = CString::new(s).map_err(|_| fail(FbStatus::Internal, "output contained NUL"))?;
    *out = s.into_raw();
    Ok(())
}

/// Message of the last failure on this thread, or NULL. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn fb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses instance JSON and stores a new handle in `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fb_instance_from_json(json: *const c_char, out: *mut *mut FbInstance) -> FbStatus {
    guarded(|| {
        if out.is_null() {
            return Err(fail(FbStatus::NullPointer, "null output pointer"));
        }
        let file = lib(parse_instance(str_arg(json)?.as_bytes()))?;
        let limits = lib(OracleLimits::from_env())?;
        let inner = match lib(file.build())? {
            Instance::Rational(s) => Inner::Rational(s, BettiEngine::new().with_oracle_limits(limits)),
            Instance::Prime(s) => Inner::Prime(s, BettiEngine::new().with_oracle_limits(limits)),
        };
        *out = Box::into_raw(Box::new(FbInstance { file, inner }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `inst` must come from [`fb_instance_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fb_instance_free(inst: *mut FbInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of forms counted with multiplicity, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fb_instance_n(inst: *const FbInstance) -> usize {
    inst.as_ref().map_or(0, |i| with_sigma!(i, |s, _e| s.n()))
}

/// Rank of the span of the forms, the length of every Betti table; 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fb_instance_rank(inst: *const FbInstance) -> usize {
    inst.as_ref().map_or(0, |i| with_sigma!(i, |s, _e| s.rank()))
}

fn method_of(m: FbMethod) -> Method {
    match m {
        FbMethod::Auto => Method::Auto,
        FbMethod::Recursion => Method::Recursion,
        FbMethod::TutteHk => Method::TutteHk,
        FbMethod::Oracle => Method::Oracle,
    }
}

fn compute<F: Field>(engine: &BettiEngine<F>, sigma: &FormCollection<F>, a: usize, method: Method) -> foldbetti::Result<BettiTable> {
    engine.compute(&sigma.essentialize(), a, method)
}

/// Writes `b_1, ..., b_r` of `I_a` into `out`, where `r` is the rank.
/// `*written` receives `r` even when the buffer is too small.
///
/// # Safety
/// `inst` must be a live handle, `out` must hold `cap` values, `written` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn fb_betti(
    inst: *const FbInstance,
    a: usize,
    method: FbMethod,
    out: *mut u64,
    cap: usize,
    written: *mut usize,
) -> FbStatus {
    guarded(|| {
        let inst = inst_arg(inst)?;
        let table = lib(with_sigma!(inst, |s, e| compute(e, s, a, method_of(method))))?;
        write_slice(&table.b, out, cap, written)
    })
}

/// Writes the generalized Hamming weights `d_1, ..., d_r`.
///
/// # Safety
/// As for [`fb_betti`].
#[no_mangle]
pub unsafe extern "C" fn fb_hamming_weights(inst: *const FbInstance, out: *mut usize, cap: usize, written: *mut usize) -> FbStatus {
    guarded(|| {
        let inst = inst_arg(inst)?;
        let hw = lib(with_sigma!(inst, |s, _e| hamming_weights(&s.essentialize())))?;
        write_slice(&hw.d, out, cap, written)
    })
}

/// Height of `I_a` for `1 <= a <= n`.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fb_height(inst: *const FbInstance, a: usize, out: *mut usize) -> FbStatus {
    guarded(|| {
        let inst = inst_arg(inst)?;
        if out.is_null() {
            return Err(fail(FbStatus::NullPointer, "null output pointer"));
        }
        *out = lib(with_sigma!(inst, |s, _e| height_of_fold_ideal(s, a)))?;
        Ok(())
    })
}

fn command_of(c: FbCommand) -> Command {
    match c {
        FbCommand::Betti => Command::Betti,
        FbCommand::Tutte => Command::Tutte,
        FbCommand::Hamming => Command::Hamming,
        FbCommand::Height => Command::Height,
        FbCommand::Hilbert => Command::Hilbert,
        FbCommand::Verify => Command::Verify,
    }
}

/// Runs a command and returns its key-sorted JSON report in `*out`, to be
/// released with [`fb_string_free`]. `fold == 0` selects every fold.
/// The report is returned even when a computation inside it failed; check its `ok` field.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fb_report_json(
    inst: *const FbInstance,
    command: FbCommand,
    fold: usize,
    method: FbMethod,
    out: *mut *mut c_char,
) -> FbStatus {
    guarded(|| {
        let inst = inst_arg(inst)?;
        let options = Options {
            folds: if fold == 0 { Folds::All } else { Folds::Only(vec![fold]) },
            method: method_of(method),
            limits: lib(OracleLimits::from_env())?,
            ..Options::default()
        };
        let report = lib(run(command_of(command), &inst.file, &options))?;
        write_string(report.to_json(), out)
    })
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
