use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rgkernel_ffi::*;

fn fixture(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn space(vars: &str, domain: u32) -> *mut RgkSpace {
    let vars = CString::new(vars).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rgk_space_new(vars.as_ptr(), domain, &mut out) }, RgkStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = rgk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

/// Takes ownership of a returned report.
fn take(report: *mut c_char) -> serde_json::Value {
    assert!(!report.is_null());
    let v = serde_json::from_slice(unsafe { CStr::from_ptr(report) }.to_bytes()).unwrap();
    unsafe { rgk_string_free(report) };
    v
}

fn verify(s: *const RgkSpace, prog: &str, spec: &str, bound: usize) -> (RgkStatus, *mut c_char) {
    let (prog, spec) = (fixture(prog), fixture(spec));
    let mut report = ptr::null_mut();
    let st = unsafe { rgk_verify(s, prog.as_ptr(), spec.as_ptr(), bound, RgkGuarantee::Contextual, &mut report) };
    (st, report)
}

#[test]
fn statuses_mirror_the_cli_exit_codes() {
    let s = space("x,y,z", 8);
    assert_eq!(unsafe { rgk_space_size(s) }, 512);

    let (st, report) = verify(s, "par_assign.prog", "par_assign.spec", 6);
    assert_eq!(st, RgkStatus::Ok);
    assert_eq!(take(report)["verdict"], "pass");

    let (st, report) = verify(s, "par_assign.prog", "par_assign_wrong.spec", 6);
    assert_eq!(st, RgkStatus::Fail);
    assert!(take(report)["checks"][0]["witness"].is_array());
    unsafe { rgk_space_free(s) };

    let s = space("x,y", 6);
    let (st, report) = verify(s, "late_violation.prog", "late_violation.spec", 4);
    assert_eq!(st, RgkStatus::BoundInsufficient);
    take(report);
    unsafe { rgk_space_free(s) };
}

#[test]
fn outlines_are_checked() {
    let s = space("x, y, z", 8);
    for (name, want) in [("par_assign_outline.json", RgkStatus::Ok), ("par_assign_wrong_outline.json", RgkStatus::Fail)] {
        let outline = fixture(name);
        let mut report = ptr::null_mut();
        let st = unsafe { rgk_verify_outline(s, outline.as_ptr(), 6, RgkGuarantee::Contextual, &mut report) };
        assert_eq!(st, want, "{name}");
        assert!(take(report)["nodes"].as_array().is_some_and(|n| n.len() == 4));
    }
    unsafe { rgk_space_free(s) };
}

#[test]
fn errors_leave_a_message_and_no_report() {
    let s = space("x", 4);
    let (st, report) = verify(s, "par_assign.prog", "par_assign.spec", 6);
    assert_eq!(st, RgkStatus::Invalid);
    assert!(report.is_null());
    assert!(last_error().contains('y'), "{}", last_error());

    let mut report = ptr::null_mut();
    let st = unsafe { rgk_verify(s, ptr::null(), ptr::null(), 3, RgkGuarantee::Literal, &mut report) };
    assert_eq!(st, RgkStatus::BadArgument);
    assert!(report.is_null());
    let st = unsafe { rgk_verify(ptr::null(), ptr::null(), ptr::null(), 3, RgkGuarantee::Literal, &mut report) };
    assert_eq!(st, RgkStatus::BadArgument);
    assert_eq!(last_error(), "space is null");
    unsafe { rgk_space_free(s) };

    let vars = CString::new("a,a").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rgk_space_new(vars.as_ptr(), 3, &mut out) }, RgkStatus::Invalid);
    assert!(out.is_null());
    assert!(last_error().contains("duplicate"));

    // a successful call clears the message
    unsafe { rgk_space_free(space("a", 2)) };
    assert!(rgk_last_error().is_null());
    unsafe { rgk_space_free(ptr::null_mut()) };
    unsafe { rgk_string_free(ptr::null_mut()) };
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/rgkernel.h");
    assert!(std::fs::read_to_string(&header).unwrap().contains("rgk_verify_outline"));
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(out) = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .output()
        else {
            eprintln!("{compiler} not found, skipping");
            continue;
        };
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
