//! C ABI for the rgkernel checker.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Strings returned by the library are released
//! with [`rgk_string_free`]. When a call returns [`RgkStatus::Invalid`] or
//! worse, [`rgk_last_error`] describes what went wrong on this thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rgkernel::run::{run, GuaranteeChoice, Mode, RunConfig};
use rgkernel::state::StateSpace;

/// Result codes. The first four match the `rgk` exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RgkStatus {
    /// Every check passed.
    Ok = 0,
    /// A check failed within the bound.
    Fail = 1,
    /// Configuration or parse error.
    Invalid = 2,
    /// A violation exists only beyond the bound.
    BoundInsufficient = 3,
    /// A required pointer argument was null or not UTF-8.
    BadArgument = 4,
    /// The library panicked; the handle may be unusable.
    Internal = 5,
}

/// How guarantees are read.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RgkGuarantee {
    /// Only the steps the program takes in context must lie in the guarantee.
    Contextual = 0,
    /// Every program letter must lie in the guarantee.
    Literal = 1,
}

/// A state space: named variables over values `0..domain`.
pub struct RgkSpace {
    space: StateSpace,
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

/// # Safety
/// `p` is null or points to a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, RgkStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(RgkStatus::BadArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        RgkStatus::BadArgument
    })
}

fn guard(f: impl FnOnce() -> Result<RgkStatus, RgkStatus>) -> RgkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            RgkStatus::Internal
        }
    }
}

fn status(code: i32) -> RgkStatus {
    match code {
        0 => RgkStatus::Ok,
        1 => RgkStatus::Fail,
        3 => RgkStatus::BoundInsufficient,
        _ => RgkStatus::Invalid,
    }
}

/// Creates a state space. `vars` is a comma-separated list of variable
/// names. On success `*out` receives a handle.
///
/// # Safety
/// `vars` is a NUL-terminated string and `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rgk_space_new(vars: *const c_char, domain: u32, out: *mut *mut RgkSpace) -> RgkStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is null");
            return Err(RgkStatus::BadArgument);
        }
        *out = ptr::null_mut();
        let names: Vec<&str> = text(vars, "vars")?.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let space = StateSpace::new(&names, domain).map_err(|e| {
            set_error(e.to_string());
            RgkStatus::Invalid
        })?;
        *out = Box::into_raw(Box::new(RgkSpace { space }));
        Ok(RgkStatus::Ok)
    })
}

/// Number of states in the space, or 0 for a null handle.
///
/// # Safety
/// `space` is null or a live handle from [`rgk_space_new`].
#[no_mangle]
pub unsafe extern "C" fn rgk_space_size(space: *const RgkSpace) -> usize {
    space.as_ref().map_or(0, |s| s.space.size())
}

/// Releases a space. Null is ignored.
///
/// # Safety
/// `space` is null or a live handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rgk_space_free(space: *mut RgkSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

unsafe fn verify(
    space: *const RgkSpace,
    bound: usize,
    guarantee: RgkGuarantee,
    report: *mut *mut c_char,
    fill: impl FnOnce(&mut RunConfig) -> Result<(), RgkStatus>,
) -> RgkStatus {
    guard(|| {
        if report.is_null() {
            set_error("report is null");
            return Err(RgkStatus::BadArgument);
        }
        *report = ptr::null_mut();
        let Some(space) = space.as_ref() else {
            set_error("space is null");
            return Err(RgkStatus::BadArgument);
        };
        let mut config = RunConfig::new(Mode::Verify);
        config.vars = space.space.variables().to_vec();
        config.domain = Some(space.space.domain());
        config.bound = Some(bound);
        config.guarantee = match guarantee {
            RgkGuarantee::Contextual => GuaranteeChoice::Contextual,
            RgkGuarantee::Literal => GuaranteeChoice::Literal,
        };
        fill(&mut config)?;
        let result = run(config).map_err(|e| {
            set_error(e.to_string());
            RgkStatus::Invalid
        })?;
        let json = CString::new(result.to_json()).expect("JSON has no NUL");
        *report = json.into_raw();
        Ok(status(result.exit_code()))
    })
}

/// Checks `program` against `spec` by exploration up to `bound` letters.
/// On `Ok`, `Fail` and `BoundInsufficient`, `*report` receives a JSON
/// report; otherwise it is set to null.
///
/// # Safety
/// `space` is a live handle, `program` and `spec` are NUL-terminated
/// strings and `report` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rgk_verify(
    space: *const RgkSpace,
    program: *const c_char,
    spec: *const c_char,
    bound: usize,
    guarantee: RgkGuarantee,
    report: *mut *mut c_char,
) -> RgkStatus {
    verify(space, bound, guarantee, report, |c| {
        c.program = Some(text(program, "program")?.to_owned());
        c.spec = Some(text(spec, "spec")?.to_owned());
        Ok(())
    })
}

/// Checks a JSON proof outline: every rule application and every
/// brute-force leaf. Reports like [`rgk_verify`].
///
/// # Safety
/// As for [`rgk_verify`], with `outline` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rgk_verify_outline(
    space: *const RgkSpace,
    outline: *const c_char,
    bound: usize,
    guarantee: RgkGuarantee,
    report: *mut *mut c_char,
) -> RgkStatus {
    verify(space, bound, guarantee, report, |c| {
        c.outline = Some(text(outline, "outline")?.to_owned());
        Ok(())
    })
}

/// Message for the last error on this thread, or null. The pointer stays
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn rgk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rgk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
