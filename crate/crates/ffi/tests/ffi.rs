use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use serde_json::Value;
use weylpieces_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn new_system(t: &str) -> *mut WpRootSystem {
    let mut rs = ptr::null_mut();
    let code = unsafe { wp_root_system_new(cstr(t).as_ptr(), &mut rs) };
    assert_eq!(code, WP_OK);
    rs
}

fn take_json(p: *mut c_char) -> Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap();
    unsafe { wp_string_free(p) };
    v
}

fn last_error() -> String {
    let p = wp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn handle_lifecycle_and_sizes() {
    let rs = new_system("B3");
    unsafe {
        assert_eq!(wp_root_system_rank(rs), 3);
        assert_eq!(wp_root_system_num_roots(rs), 18);
        let mut order = 0u64;
        assert_eq!(wp_root_system_weyl_order(rs, &mut order), WP_OK);
        assert_eq!(order, 48);
        wp_root_system_free(rs);
        assert_eq!(wp_root_system_rank(ptr::null()), 0);
        wp_root_system_free(ptr::null_mut());
    }
}

#[test]
fn bad_type_is_config_error() {
    let mut rs = ptr::null_mut();
    let code = unsafe { wp_root_system_new(cstr("Q7").as_ptr(), &mut rs) };
    assert_eq!(code, WP_ERR_CONFIG);
    assert!(rs.is_null());
    assert!(last_error().contains("Q7"));
}

#[test]
fn null_and_utf8_errors() {
    let mut rs = ptr::null_mut();
    assert_eq!(unsafe { wp_root_system_new(ptr::null(), &mut rs) }, WP_ERR_NULL_POINTER);
    let bad = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { wp_root_system_new(bad.as_ptr() as *const c_char, &mut rs) }, WP_ERR_INVALID_UTF8);
    assert_eq!(unsafe { wp_root_system_new(cstr("A2").as_ptr(), ptr::null_mut()) }, WP_ERR_NULL_POINTER);
    let mut out = ptr::null_mut();
    let code = unsafe { wp_enumerate_pieces_json(ptr::null(), cstr("1").as_ptr(), cstr("id").as_ptr(), &mut out) };
    assert_eq!(code, WP_ERR_NULL_POINTER);
}

#[test]
fn enumerate_json() {
    let rs = new_system("A2");
    let mut out = ptr::null_mut();
    let code = unsafe { wp_enumerate_pieces_json(rs, cstr("1").as_ptr(), cstr("id").as_ptr(), &mut out) };
    assert_eq!(code, WP_OK);
    let v = take_json(out);
    assert_eq!(v["version"], "weylpieces/1");
    assert_eq!(v["records"].as_array().unwrap().len(), 3);
    unsafe { wp_root_system_free(rs) };
}

#[test]
fn epsilon_and_classify_json() {
    let rs = new_system("A2");
    let mut out = ptr::null_mut();
    let code = unsafe { wp_epsilon_json(rs, cstr("1").as_ptr(), cstr("id").as_ptr(), cstr("1,2").as_ptr(), &mut out) };
    assert_eq!(code, WP_OK);
    let v = take_json(out);
    assert_eq!(v["records"][0]["v"], serde_json::json!([1, 2]));
    assert_eq!(v["records"][0]["witness"], serde_json::json!([1]));
    let code = unsafe { wp_classify_json(rs, cstr("1").as_ptr(), cstr("id").as_ptr(), cstr("1").as_ptr(), &mut out) };
    assert_eq!(code, WP_OK);
    let v = take_json(out);
    assert_eq!(v["records"][0]["w"], serde_json::json!([]));
    // s1 is not in W^{1}
    let code = unsafe { wp_epsilon_json(rs, cstr("1").as_ptr(), cstr("id").as_ptr(), cstr("1").as_ptr(), &mut out) };
    assert_eq!(code, WP_ERR_CONFIG);
    unsafe { wp_root_system_free(rs) };
}

#[test]
fn guard_error() {
    let rs = new_system("A5");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(wp_root_system_set_guard(rs, 10), WP_OK);
        let code = wp_enumerate_pieces_json(rs, cstr("").as_ptr(), cstr("id").as_ptr(), &mut out);
        assert_eq!(code, WP_ERR_GUARD);
        wp_root_system_free(rs);
    }
}

#[test]
fn format_version_string() {
    let v = unsafe { CStr::from_ptr(wp_format_version()) };
    assert_eq!(v.to_str().unwrap(), "weylpieces/1");
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/weylpieces.h")).unwrap();
    for name in [
        "wp_root_system_new",
        "wp_root_system_free",
        "wp_root_system_rank",
        "wp_root_system_num_roots",
        "wp_root_system_weyl_order",
        "wp_root_system_set_guard",
        "wp_enumerate_pieces_json",
        "wp_epsilon_json",
        "wp_classify_json",
        "wp_string_free",
        "wp_last_error_message",
        "wp_format_version",
        "typedef struct WpRootSystem WpRootSystem",
        "#define WP_ERR_CONTRACT 4",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs a C program against the header and the static library
/// when a C compiler is on the path.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = dir.join("../../target/debug");
    let lib = target.join("libweylpieces_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
