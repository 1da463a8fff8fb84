use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bitoeplitz_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = bt_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn model(name: &str, radius: usize) -> *mut BtModel {
    let mut m = ptr::null_mut();
    let status = unsafe { bt_model_builtin(cstr(name).as_ptr(), radius, &mut m) };
    assert_eq!(status, BtStatus::Ok);
    m
}

#[test]
fn builtin_dimensions() {
    let m = model("m2-inner", 2);
    let mut dim = 0usize;
    for n in -4..=4 {
        assert_eq!(unsafe { bt_model_level_dim(m, n, &mut dim) }, BtStatus::Ok);
        assert_eq!(dim, 4);
    }
    assert_eq!(unsafe { bt_model_level_dim(m, 5, &mut dim) }, BtStatus::OutOfRange);
    assert!(last_error().contains("outside ladder range"));
    let mut window = 0usize;
    assert_eq!(unsafe { bt_model_window(m, &mut window) }, BtStatus::Ok);
    assert_eq!(window, 2);
    unsafe { bt_model_free(m) };
}

#[test]
fn errors_map_to_codes() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { bt_model_builtin(cstr("nope").as_ptr(), 2, &mut m) }, BtStatus::UnknownModel);
    assert!(m.is_null());
    assert_eq!(unsafe { bt_model_builtin(ptr::null(), 2, &mut m) }, BtStatus::NullPointer);
    assert_eq!(unsafe { bt_model_builtin(cstr("scalar").as_ptr(), 0, &mut m) }, BtStatus::Structural);
    let real = model("scalar", 1);
    assert_eq!(unsafe { bt_model_level_dim(real, 0, ptr::null_mut()) }, BtStatus::NullPointer);
    // success clears the message
    let mut dim = 0usize;
    assert_eq!(unsafe { bt_model_level_dim(real, 0, &mut dim) }, BtStatus::Ok);
    assert!(bt_last_error_message().is_null());
    unsafe {
        bt_model_free(real);
        bt_model_free(ptr::null_mut());
        bt_section_free(ptr::null_mut());
        bt_operator_free(ptr::null_mut());
    }
}

#[test]
fn lambda_check_and_synthesize() {
    let m = model("flip", 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bt_section_new(&mut s) }, BtStatus::Ok);
    let vals: [[f64; 4]; 3] = [[1.0, 0.5, -0.25, 0.0], [0.0, 1.0, 2.0, -1.0], [0.3, 0.3, 0.0, 0.7]];
    for (k, v) in (-1..=1).zip(vals.iter()) {
        assert_eq!(unsafe { bt_section_set(m, s, k, v.as_ptr(), 2) }, BtStatus::Ok);
    }
    // wrong dimension for the level
    assert_eq!(unsafe { bt_section_set(m, s, 0, vals[0].as_ptr(), 1) }, BtStatus::Structural);

    let mut op = ptr::null_mut();
    assert_eq!(unsafe { bt_lambda(m, s, 2, &mut op) }, BtStatus::Ok);
    let (mut ok, mut res) = (false, f64::NAN);
    assert_eq!(unsafe { bt_operator_is_toeplitz(m, op, 1e-8, &mut ok, &mut res) }, BtStatus::Ok);
    assert!(ok && res < 1e-9);

    let mut back = ptr::null_mut();
    let mut spread = f64::NAN;
    assert_eq!(unsafe { bt_synthesize(m, op, 4, 1e-8, &mut back, &mut spread) }, BtStatus::Ok);
    assert!(spread < 1e-9);
    for (k, v) in (-1..=1).zip(vals.iter()) {
        let mut got = [0.0f64; 4];
        assert_eq!(unsafe { bt_section_get(m, back, k, got.as_mut_ptr(), 2) }, BtStatus::Ok);
        for (a, b) in got.iter().zip(v) {
            assert!((a - b).abs() < 1e-9);
        }
    }
    unsafe {
        bt_section_free(back);
        bt_operator_free(op);
        bt_section_free(s);
        bt_model_free(m);
    }
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m = model("scalar", 2);
    let mut s = ptr::null_mut();
    unsafe { bt_section_new(&mut s) };
    let v = [0.5, -1.5];
    assert_eq!(unsafe { bt_section_set(m, s, 2, v.as_ptr(), 1) }, BtStatus::Ok);
    let spath = cstr(dir.path().join("s.json").to_str().unwrap());
    assert_eq!(unsafe { bt_section_save(s, spath.as_ptr()) }, BtStatus::Ok);
    let mut s2 = ptr::null_mut();
    assert_eq!(unsafe { bt_section_load(m, spath.as_ptr(), &mut s2) }, BtStatus::Ok);
    let mut got = [0.0; 2];
    unsafe { bt_section_get(m, s2, 2, got.as_mut_ptr(), 1) };
    assert_eq!(got, v);

    let mut op = ptr::null_mut();
    unsafe { bt_lambda(m, s2, 2, &mut op) };
    let opath = cstr(dir.path().join("op.json").to_str().unwrap());
    assert_eq!(unsafe { bt_operator_save(op, opath.as_ptr()) }, BtStatus::Ok);
    let mut op2 = ptr::null_mut();
    assert_eq!(unsafe { bt_operator_load(m, opath.as_ptr(), &mut op2) }, BtStatus::Ok);
    let mut r = 0;
    assert_eq!(unsafe { bt_operator_radius(op2, &mut r) }, BtStatus::Ok);
    assert_eq!(r, 2);

    let missing = cstr(dir.path().join("missing.json").to_str().unwrap());
    let mut op3 = ptr::null_mut();
    assert_eq!(unsafe { bt_operator_load(m, missing.as_ptr(), &mut op3) }, BtStatus::Io);
    unsafe {
        bt_operator_free(op2);
        bt_operator_free(op);
        bt_section_free(s2);
        bt_section_free(s);
        bt_model_free(m);
    }
}

#[test]
fn non_toeplitz_synthesis_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("op.json");
    // identity on the window with one diagonal entry doubled
    let mut blocks = Vec::new();
    for i in -1..=1 {
        for j in -1..=1 {
            let z = if i != j { 0.0 } else if i == 0 { 2.0 } else { 1.0 };
            blocks.push(format!(r#"{{"i":{i},"j":{j},"rows":1,"cols":1,"data":[[{z},0.0]]}}"#));
        }
    }
    std::fs::write(&path, format!(r#"{{"radius":1,"blocks":[{}]}}"#, blocks.join(","))).unwrap();
    let m = model("scalar", 1);
    let mut op = ptr::null_mut();
    let p = cstr(path.to_str().unwrap());
    assert_eq!(unsafe { bt_operator_load(m, p.as_ptr(), &mut op) }, BtStatus::Ok);
    let mut out = ptr::null_mut();
    let status = unsafe { bt_synthesize(m, op, 2, 1e-8, &mut out, ptr::null_mut()) };
    assert_eq!(status, BtStatus::NotToeplitz);
    assert!(out.is_null());
    unsafe {
        bt_operator_free(op);
        bt_model_free(m);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(header.join("bitoeplitz.h").exists());
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        r#"#include "bitoeplitz.h"
int main(void) {
    BtModel *m = NULL;
    size_t dim = 0;
    if (bt_model_builtin("flip", 2, &m) != BT_STATUS_OK) return 1;
    if (bt_model_level_dim(m, 3, &dim) != BT_STATUS_OK) return 1;
    bt_model_free(m);
    return dim == 2 ? 0 : 1;
}
"#,
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&header)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
