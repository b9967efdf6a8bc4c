//! C ABI for the vsing calculator.
//!
//! Conventions:
//!
//! - every function returns a [`VsStatus`] code; `VS_STATUS_OK` is 0;
//! - results are written through out-pointers, JSON payloads as
//!   NUL-terminated UTF-8 strings allocated by this library — release
//!   them with [`vs_string_free`];
//! - parameter handles are opaque; release them with [`vs_params_free`];
//! - on failure, [`vs_last_error_message`] returns a thread-local
//!   description of the most recent error;
//! - rationals cross the boundary as `num/den` strings, never as floats.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use vsing::rational::Rational;
use vsing::report::Report;
use vsing::state::{FockState, WhittakerParams};
use vsing::{checks, singlet, whittaker};

/// Result code of every C-ABI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VsStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    InvalidArgument = 3,
    Domain = 4,
    CheckFailed = 5,
    Panic = 6,
}

/// Opaque handle to a validated parameter tuple `(p, zeta_0..zeta_r)`.
pub struct VsParams {
    inner: Arc<WhittakerParams>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let cstring = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message contained NUL").expect("literal"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &vsing::Error) -> VsStatus {
    use vsing::Error::*;
    match err {
        InvalidParams(_) | Parse { .. } => VsStatus::InvalidArgument,
        ChargeMismatch(..)
        | ParamsMismatch
        | NonHomogeneous
        | UnsupportedCharge(_)
        | HypothesisViolation(_) => VsStatus::Domain,
        NoUniqueCoefficient { .. }
        | NotInSpan(_)
        | AmbiguousCoordinate
        | NonTriangular(_)
        | EngineMismatch(_) => VsStatus::CheckFailed,
    }
}

fn fail(err: vsing::Error) -> VsStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn guarded(body: impl FnOnce() -> VsStatus) -> VsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in vsing".to_string());
            set_error(message);
            VsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, VsStatus> {
    if ptr.is_null() {
        set_error("null string argument".into());
        return Err(VsStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        VsStatus::Utf8
    })
}

fn write_string(out: *mut *mut c_char, content: String) -> VsStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return VsStatus::NullPointer;
    }
    match CString::new(content) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            VsStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL".into());
            VsStatus::Panic
        }
    }
}

fn parse_zeta(text: &str) -> Result<Vec<Rational>, VsStatus> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<Rational>().map_err(|e| {
                set_error(format!("invalid zeta entry: {e}"));
                VsStatus::InvalidArgument
            })
        })
        .collect()
}

/// Message describing the most recent failure on this thread, or null.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn vs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(std::ptr::null())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `ptr` must have been returned by a `vs_*` function and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn vs_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

/// Builds a parameter handle from `p >= 2` and a comma-separated rational
/// tuple, e.g. `"0,2"` or `"1/2,1/3"`.
///
/// # Safety
/// `zeta_csv` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to a pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vs_params_new(
    p: u32,
    zeta_csv: *const c_char,
    out: *mut *mut VsParams,
) -> VsStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer".into());
            return VsStatus::NullPointer;
        }
        let text = match read_str(zeta_csv) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let zeta = match parse_zeta(text) {
            Ok(z) => z,
            Err(status) => return status,
        };
        match WhittakerParams::new(p, zeta) {
            Ok(params) => {
                let handle = Box::new(VsParams {
                    inner: Arc::new(params),
                });
                *out = Box::into_raw(handle);
                VsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a parameter handle.
///
/// # Safety
/// `ptr` must have been returned by [`vs_params_new`] and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn vs_params_free(ptr: *mut VsParams) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Classification record of the tuple as JSON:
/// `{"p", "zeta", "lambda", "q", "partner_zeta"}`, all rationals exact.
/// Requires `r >= 1` and `zeta_r != 0`.
///
/// # Safety
/// `params` must be a live handle from [`vs_params_new`]; `out_json` must
/// be a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vs_classification_json(
    params: *const VsParams,
    out_json: *mut *mut c_char,
) -> VsStatus {
    guarded(|| {
        if params.is_null() {
            set_error("null params handle".into());
            return VsStatus::NullPointer;
        }
        let handle = &*params;
        match whittaker::classification_record(&handle.inner) {
            Ok(record) => write_string(
                out_json,
                serde_json::to_string_pretty(&record.to_json()).expect("serializable"),
            ),
            Err(e) => fail(e),
        }
    })
}

/// Graded kernel reports of the screening operator for weights
/// `0..=max_weight`, as a JSON array of
/// `{"weight", "dim", "kernel_dim", "basis"}`.
///
/// # Safety
/// `out_json` must be a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vs_kernel_json(
    p: u32,
    max_weight: u32,
    out_json: *mut *mut c_char,
) -> VsStatus {
    guarded(|| {
        let mut reports = Vec::new();
        for w in 0..=max_weight {
            match singlet::kernel_basis(p, w) {
                Ok(r) => reports.push(r.to_json()),
                Err(e) => return fail(e),
            }
        }
        write_string(
            out_json,
            serde_json::to_string_pretty(&serde_json::Value::Array(reports)).expect("serializable"),
        )
    })
}

/// Solves the generator relation; JSON
/// `{"p", "coefficient", "residual_terms"}`.
///
/// # Safety
/// `out_json` must be a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vs_relation_json(p: u32, out_json: *mut *mut c_char) -> VsStatus {
    guarded(|| match singlet::solve_omega_h_relation(p) {
        Ok(sol) => {
            let json = serde_json::json!({
                "p": p,
                "coefficient": sol.coefficient.to_string(),
                "residual_terms": {
                    "3/(2p)": sol.residual_at_small.num_terms(),
                    "2p/3": sol.residual_at_big.num_terms(),
                },
            });
            write_string(
                out_json,
                serde_json::to_string_pretty(&json).expect("serializable"),
            )
        }
        Err(e) => fail(e),
    })
}

/// Runs the full verification suite. Writes the JSON report and sets
/// `*all_pass` to 1 when every check passed, 0 otherwise.
///
/// # Safety
/// `out_json` and `all_pass` must be valid pointer slots.
#[no_mangle]
pub unsafe extern "C" fn vs_verify_json(
    p: u32,
    max_weight: u32,
    mode_window: u32,
    seed: u64,
    out_json: *mut *mut c_char,
    all_pass: *mut c_int,
) -> VsStatus {
    guarded(|| {
        if all_pass.is_null() {
            set_error("null all_pass pointer".into());
            return VsStatus::NullPointer;
        }
        let checks = match checks::run_suite(p, max_weight, mode_window as i64, seed) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        let config = serde_json::json!({
            "max_weight": max_weight,
            "mode_window": mode_window,
            "seed": seed,
        });
        let report = Report::new(p, config, checks);
        *all_pass = if report.all_passed() { 1 } else { 0 };
        write_string(out_json, report.to_json())
    })
}

/// Parses a state in the versioned text format and returns its canonical
/// serialization (a parse-print round trip).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out_text` must be a
/// valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn vs_state_roundtrip(
    text: *const c_char,
    out_text: *mut *mut c_char,
) -> VsStatus {
    guarded(|| {
        let input = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match FockState::deserialize(input) {
            Ok(state) => write_string(out_text, state.serialize()),
            Err(e) => fail(e),
        }
    })
}
