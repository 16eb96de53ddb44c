//! C ABI over `bmw2k`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Every fallible call returns a
//! [`Bmw2kStatus`]; on failure a description is available from
//! [`bmw2k_last_error`] on the same thread. Strings returned through `out`
//! parameters are NUL-terminated UTF-8 JSON and must be released with
//! [`bmw2k_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bmw2k::algebra::Algebra;
use bmw2k::io::{element_to_json, params_from_json, params_to_json};
use bmw2k::params::{admissibility_report, generic_admissible, random_admissible_finite_field, ParamSet, Sign};
use bmw2k::words::parse_word;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bmw2kStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParams = 3,
    InvalidWord = 4,
    AlgebraError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bmw2kSign {
    Plus = 0,
    Minus = 1,
}

/// Opaque parameter set.
pub struct Bmw2kParams(ParamSet);

/// Opaque algebra with its cached multiplication tables.
pub struct Bmw2kAlgebra(Algebra);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("NULs removed"));
}

type Outcome = Result<(), (Bmw2kStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome) -> Bmw2kStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            Bmw2kStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            Bmw2kStatus::Panic
        }
    }
}

fn null(name: &str) -> (Bmw2kStatus, String) {
    (Bmw2kStatus::NullPointer, format!("{name} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (Bmw2kStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (Bmw2kStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Outcome {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(text).map_err(|_| (Bmw2kStatus::AlgebraError, "output contains NUL".to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn params_ref<'a>(p: *const Bmw2kParams) -> Result<&'a ParamSet, (Bmw2kStatus, String)> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("params"))
}

unsafe fn algebra_ref<'a>(a: *const Bmw2kAlgebra) -> Result<&'a Algebra, (Bmw2kStatus, String)> {
    a.as_ref().map(|h| &h.0).ok_or_else(|| null("algebra"))
}

fn params_error(e: impl std::fmt::Display) -> (Bmw2kStatus, String) {
    (Bmw2kStatus::InvalidParams, e.to_string())
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn bmw2k_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a parameter file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_params_from_json(json: *const c_char, out: *mut *mut Bmw2kParams) -> Bmw2kStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let ps = params_from_json(text).map_err(params_error)?;
        write_handle(out, Bmw2kParams(ps))
    })
}

/// Generic admissible parameters over a rational function field.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_params_generic(k: usize, sign: Bmw2kSign, out: *mut *mut Bmw2kParams) -> Bmw2kStatus {
    guard(|| {
        let sign = match sign {
            Bmw2kSign::Plus => Sign::Plus,
            Bmw2kSign::Minus => Sign::Minus,
        };
        let ps = generic_admissible(k, sign).map_err(params_error)?;
        write_handle(out, Bmw2kParams(ps))
    })
}

/// Seeded admissible parameters over `F_p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_params_finite_field(
    k: usize,
    p: u64,
    seed: u64,
    out: *mut *mut Bmw2kParams,
) -> Bmw2kStatus {
    guard(|| {
        let ps = random_admissible_finite_field(k, p, seed).map_err(params_error)?;
        write_handle(out, Bmw2kParams(ps))
    })
}

/// # Safety
/// `params` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_params_free(params: *mut Bmw2kParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// `k` of a parameter set, or 0 for a null handle.
///
/// # Safety
/// `params` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_params_k(params: *const Bmw2kParams) -> usize {
    params.as_ref().map_or(0, |h| h.0.k())
}

/// Serializes a parameter set in the parameter file format.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_params_to_json(params: *const Bmw2kParams, out: *mut *mut c_char) -> Bmw2kStatus {
    guard(|| {
        let ps = params_ref(params)?;
        write_string(out, params_to_json(ps).to_string())
    })
}

/// Writes the admissibility report as JSON and, if `admissible` is non-null,
/// the verdict.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable; `admissible` may be null.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_admissibility(
    params: *const Bmw2kParams,
    admissible: *mut bool,
    out: *mut *mut c_char,
) -> Bmw2kStatus {
    guard(|| {
        let ps = params_ref(params)?;
        let report = admissibility_report(ps);
        if !admissible.is_null() {
            admissible.write(report.admissible);
        }
        write_string(out, report.to_json(ps.domain()).to_string())
    })
}

/// Builds the algebra for a parameter set. The parameter handle may be freed
/// afterwards.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_algebra_new(params: *const Bmw2kParams, out: *mut *mut Bmw2kAlgebra) -> Bmw2kStatus {
    guard(|| {
        let ps = params_ref(params)?;
        let alg = Algebra::from_params(ps).map_err(|e| (Bmw2kStatus::AlgebraError, e.to_string()))?;
        write_handle(out, Bmw2kAlgebra(alg))
    })
}

/// # Safety
/// `algebra` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_algebra_free(algebra: *mut Bmw2kAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Rank `3k²` of the algebra, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_algebra_dim(algebra: *const Bmw2kAlgebra) -> usize {
    algebra.as_ref().map_or(0, |h| h.0.dim())
}

/// Basis expansion of a word, as a JSON object from basis labels to
/// coefficients.
///
/// # Safety
/// `algebra` must be a live handle; `word` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_reduce_word(
    algebra: *const Bmw2kAlgebra,
    word: *const c_char,
    out: *mut *mut c_char,
) -> Bmw2kStatus {
    guard(|| {
        let alg = algebra_ref(algebra)?;
        let w = parse_word(read_str(word, "word")?).map_err(|e| (Bmw2kStatus::InvalidWord, e.to_string()))?;
        write_string(out, element_to_json(alg, &alg.reduce_word(&w)).to_string())
    })
}

/// Product of the reductions of `count` words, left to right.
///
/// # Safety
/// `algebra` must be a live handle; `words` must point to `count`
/// NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_multiply_words(
    algebra: *const Bmw2kAlgebra,
    words: *const *const c_char,
    count: usize,
    out: *mut *mut c_char,
) -> Bmw2kStatus {
    guard(|| {
        let alg = algebra_ref(algebra)?;
        if words.is_null() && count > 0 {
            return Err(null("words"));
        }
        let mut acc = alg.one_element();
        for i in 0..count {
            let text = read_str(*words.add(i), "words[i]")?;
            let w = parse_word(text).map_err(|e| (Bmw2kStatus::InvalidWord, format!("words[{i}]: {e}")))?;
            acc = alg.multiply(&acc, &alg.reduce_word(&w)).expect("elements of one algebra");
        }
        write_string(out, element_to_json(alg, &acc).to_string())
    })
}

/// Runs every module and basis check. `passed` receives the verdict; `out`,
/// if non-null, receives the full report.
///
/// # Safety
/// `algebra` must be a live handle; `passed` writable; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bmw2k_verify(
    algebra: *const Bmw2kAlgebra,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> Bmw2kStatus {
    guard(|| {
        let alg = algebra_ref(algebra)?;
        let result = alg.verify_all();
        write_out(passed, result.passed())?;
        if !out.is_null() {
            write_string(out, result.to_json(alg.domain(), false).to_string())?;
        }
        Ok(())
    })
}
