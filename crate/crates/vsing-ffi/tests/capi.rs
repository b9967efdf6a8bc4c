//! Exercises the C ABI exactly as a foreign caller would: through raw
//! pointers and NUL-terminated strings.

use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use vsing_ffi::*;

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { vs_string_free(ptr) };
    s
}

fn last_error() -> String {
    let ptr = vs_last_error_message();
    assert!(!ptr.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
}

#[test]
fn classification_through_the_c_abi() {
    let zeta = CString::new("0,2").unwrap();
    let mut params: *mut VsParams = ptr::null_mut();
    let status = unsafe { vs_params_new(2, zeta.as_ptr(), &mut params) };
    assert_eq!(status, VsStatus::Ok);
    assert!(!params.is_null());

    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { vs_classification_json(params, &mut out) };
    assert_eq!(status, VsStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(json["q"], "4/3");
    assert_eq!(json["lambda"]["2"], "-1/1");
    assert_eq!(json["partner_zeta"][0], "4/1");

    unsafe { vs_params_free(params) };
}

#[test]
fn error_paths_set_messages() {
    // p too small
    let zeta = CString::new("0,2").unwrap();
    let mut params: *mut VsParams = ptr::null_mut();
    let status = unsafe { vs_params_new(1, zeta.as_ptr(), &mut params) };
    assert_eq!(status, VsStatus::InvalidArgument);
    assert!(last_error().contains("p must be >= 2"));

    // malformed rational
    let bad = CString::new("0,0.5").unwrap();
    let status = unsafe { vs_params_new(2, bad.as_ptr(), &mut params) };
    assert_eq!(status, VsStatus::InvalidArgument);

    // degenerate tuple: classification needs zeta_r != 0
    let degenerate = CString::new("3").unwrap();
    let status = unsafe { vs_params_new(2, degenerate.as_ptr(), &mut params) };
    assert_eq!(status, VsStatus::Ok);
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { vs_classification_json(params, &mut out) };
    assert_eq!(status, VsStatus::InvalidArgument);
    assert!(last_error().contains("Whittaker"));
    unsafe { vs_params_free(params) };

    // null pointers fail cleanly
    let status = unsafe { vs_params_new(2, ptr::null(), &mut params) };
    assert_eq!(status, VsStatus::NullPointer);
    let status = unsafe { vs_classification_json(ptr::null(), &mut out) };
    assert_eq!(status, VsStatus::NullPointer);
}

#[test]
fn kernel_and_relation_json() {
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { vs_kernel_json(2, 2, &mut out) };
    assert_eq!(status, VsStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    let dims: Vec<u64> = json
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["kernel_dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 0, 1]);

    let status = unsafe { vs_relation_json(2, &mut out) };
    assert_eq!(status, VsStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(json["coefficient"], "3/4");
    assert_eq!(json["residual_terms"]["3/(2p)"], 0);
}

#[test]
fn verify_small_suite_passes() {
    let mut out: *mut c_char = ptr::null_mut();
    let mut all_pass: c_int = -1;
    let status = unsafe { vs_verify_json(2, 1, 1, 0, &mut out, &mut all_pass) };
    assert_eq!(status, VsStatus::Ok);
    assert_eq!(all_pass, 1);
    let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(json["version"], "1");
    assert_eq!(json["summary"]["fail"], 0);
}

#[test]
fn state_round_trip_and_parse_errors() {
    let text =
        CString::new("vsing-state v1\np 2\nr 1\nzeta 0/1,2/1\ncharge 0\nterm [2,1] 3/2\n").unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { vs_state_roundtrip(text.as_ptr(), &mut out) };
    assert_eq!(status, VsStatus::Ok);
    assert_eq!(take_string(out), text.to_str().unwrap());

    let bad = CString::new("vsing-state v1\np 2\nr 0\nzeta 0/1\ncharge 0\nterm [1 x\n").unwrap();
    let status = unsafe { vs_state_roundtrip(bad.as_ptr(), &mut out) };
    assert_eq!(status, VsStatus::InvalidArgument);
    assert!(last_error().contains("line 6"));
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/vsing.h"),
    )
    .expect("header generated at build time");
    for symbol in [
        "vs_params_new",
        "vs_params_free",
        "vs_classification_json",
        "vs_kernel_json",
        "vs_relation_json",
        "vs_verify_json",
        "vs_state_roundtrip",
        "vs_string_free",
        "vs_last_error_message",
        "VS_STATUS_OK",
        "typedef struct VsParams VsParams;",
    ] {
        assert!(header.contains(symbol), "header missing {symbol}");
    }
}
