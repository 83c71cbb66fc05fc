//! C ABI over the semigraphoid library.
//!
//! Every fallible function returns an [`SgStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can
//! be read with [`sg_last_error`]. Strings returned by the library are owned
//! by the caller and released with [`sg_string_free`]; statement sets with
//! [`sg_statement_set_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use semigraphoid::fixtures::FixtureSet;
use semigraphoid::verify::verify_all;
use semigraphoid::{Error, StatementSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    NotSemigraphoid = 5,
    Internal = 6,
    Panic = 7,
}

/// Opaque set of CI statements over a fixed ground set.
pub struct SgStatementSet {
    inner: StatementSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::Parse { .. } | Error::InvalidStatement(_) => SgStatus::ParseError,
        Error::NotSemigraphoid => SgStatus::NotSemigraphoid,
        Error::Internal(_) => SgStatus::Internal,
        _ => SgStatus::InvalidArgument,
    }
}

/// Runs `f`, recording its error or panic.
fn guard(f: impl FnOnce() -> Result<(), (SgStatus, String)>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside the library");
            SgStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (SgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (SgStatus, String) {
    (SgStatus::NullPointer, format!("{name} is null"))
}

unsafe fn set_ref<'a>(p: *const SgStatementSet, name: &str) -> Result<&'a StatementSet, (SgStatus, String)> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null(name))
}

fn new_string(s: String) -> Result<*mut c_char, (SgStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (SgStatus::Internal, "string contains NUL".into()))
}

/// Message of the last failing call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses whitespace- or comma-separated `i.j|K` tokens. `n == 0` infers the
/// ground set from the largest element mentioned.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_statement_set_parse(text: *const c_char, n: u32, out: *mut *mut SgStatementSet) -> SgStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (SgStatus::InvalidUtf8, "text is not UTF-8".to_string()))?;
        let n = (n != 0).then_some(n as usize);
        let set = semigraphoid::text::parse_statement_set(s, n).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(SgStatementSet { inner: set }));
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a pointer from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_statement_set_free(set: *mut SgStatementSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_statement_set_len(set: *const SgStatementSet, out: *mut usize) -> SgStatus {
    guard(|| {
        let s = set_ref(set, "set")?;
        *out.as_mut().ok_or_else(|| null("out"))? = s.len();
        Ok(())
    })
}

/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_statement_set_ground(set: *const SgStatementSet, out: *mut u32) -> SgStatus {
    guard(|| {
        let s = set_ref(set, "set")?;
        *out.as_mut().ok_or_else(|| null("out"))? = s.n() as u32;
        Ok(())
    })
}

/// One statement per line in canonical order. Free with [`sg_string_free`].
///
/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_statement_set_to_text(set: *const SgStatementSet, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let s = set_ref(set, "set")?;
        let o = out.as_mut().ok_or_else(|| null("out"))?;
        *o = new_string(s.to_string())?;
        Ok(())
    })
}

/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_is_semigraphoid(set: *const SgStatementSet, out: *mut bool) -> SgStatus {
    guard(|| {
        let s = set_ref(set, "set")?;
        *out.as_mut().ok_or_else(|| null("out"))? = semigraphoid::is_semigraphoid(s);
        Ok(())
    })
}

/// Writes a new set; free it with [`sg_statement_set_free`].
///
/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_closure(set: *const SgStatementSet, out: *mut *mut SgStatementSet) -> SgStatus {
    guard(|| {
        let s = set_ref(set, "set")?;
        let o = out.as_mut().ok_or_else(|| null("out"))?;
        *o = Box::into_raw(Box::new(SgStatementSet {
            inner: semigraphoid::closure(s),
        }));
        Ok(())
    })
}

/// Fails with `NotSemigraphoid` when the input is not closed.
///
/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_is_submodular(set: *const SgStatementSet, out: *mut bool) -> SgStatus {
    guard(|| {
        let s = set_ref(set, "set")?;
        let o = out.as_mut().ok_or_else(|| null("out"))?;
        *o = semigraphoid::is_submodular(s).map_err(lib_err)?.submodular;
        Ok(())
    })
}

/// Fails with `NotSemigraphoid` when the input is not closed.
///
/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_is_coarsest(set: *const SgStatementSet, out: *mut bool) -> SgStatus {
    guard(|| {
        let s = set_ref(set, "set")?;
        let o = out.as_mut().ok_or_else(|| null("out"))?;
        *o = semigraphoid::is_coarsest(s).map_err(lib_err)?;
        Ok(())
    })
}

/// Number of CI statements over `[n]`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_gamma(n: u32, out: *mut usize) -> SgStatus {
    guard(|| {
        let o = out.as_mut().ok_or_else(|| null("out"))?;
        *o = semigraphoid::gamma(n as usize).map_err(lib_err)?;
        Ok(())
    })
}

/// Runs the reproduction suite on the embedded fixtures. `full` adds the
/// n=4 sweep. The rendered report goes to `report` when it is non-null.
///
/// # Safety
/// `passed` must be valid; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn sg_verify_fixtures(full: bool, passed: *mut bool, report: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let p = passed.as_mut().ok_or_else(|| null("passed"))?;
        let r = verify_all(&FixtureSet::embedded(), full);
        *p = r.passed();
        if let Some(out) = report.as_mut() {
            *out = new_string(r.to_string())?;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
