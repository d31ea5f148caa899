//! C ABI over `loopdirac`.
//!
//! Root systems are handed out as opaque `LdRootSystem` pointers. Every
//! fallible call returns an `LdStatus`; on failure the message of the last
//! error on the calling thread is available from `ld_last_error_message`.
//! Weights cross the boundary as integer fundamental-weight coordinates.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use loopdirac::affine::level_k_alcove;
use loopdirac::dirac::quantize_conjugacy_class;
use loopdirac::rootsys::{RootSystem, Weight};
use loopdirac::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidType = 2,
    InvalidArgument = 3,
    NotInAlcove = 4,
    InsufficientTruncation = 5,
    Ambiguous = 6,
    BufferTooSmall = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque handle to a root system.
pub struct LdRootSystem {
    inner: RootSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> LdStatus {
    match e {
        Error::InvalidType { .. } => LdStatus::InvalidType,
        Error::NotInLevelAlcove { .. } | Error::OutsideAlcove(_) | Error::NonIntegralClass { .. } => {
            LdStatus::NotInAlcove
        }
        Error::InsufficientTruncation { .. } => LdStatus::InsufficientTruncation,
        Error::Ambiguous(_) => LdStatus::Ambiguous,
        Error::Numerical(_) => LdStatus::Internal,
        _ => LdStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (LdStatus, String)>) -> LdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LdStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside loopdirac");
            LdStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (LdStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (LdStatus, String) {
    (LdStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(rs: *const LdRootSystem) -> Result<&'a RootSystem, (LdStatus, String)> {
    rs.as_ref().map(|h| &h.inner).ok_or_else(|| null_err("root system handle"))
}

/// Writes `values` to `buf` if it has room; always reports the needed length.
unsafe fn write_out(values: &[i64], buf: *mut i64, len: usize, out_len: *mut usize) -> Result<(), (LdStatus, String)> {
    if out_len.is_null() {
        return Err(null_err("out_len"));
    }
    *out_len = values.len();
    if values.len() > len {
        return Err((
            LdStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null_err("buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

fn integer_coords(w: &Weight) -> Vec<i64> {
    w.coords.iter().map(|c| c.to_integer()).collect()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ld_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ld_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds the root system named like `"A2"` or `"G2"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ld_root_system_new(name: *const c_char, out: *mut *mut LdRootSystem) -> LdStatus {
    guard(|| {
        if name.is_null() {
            return Err(null_err("name"));
        }
        if out.is_null() {
            return Err(null_err("out"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| (LdStatus::InvalidArgument, "name is not UTF-8".to_string()))?;
        let rs = RootSystem::from_name(name).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(LdRootSystem { inner: rs }));
        Ok(())
    })
}

/// Releases a handle; NULL is ignored.
///
/// # Safety
/// `rs` must come from `ld_root_system_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ld_root_system_free(rs: *mut LdRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Rank of the root system, or 0 for a NULL handle.
///
/// # Safety
/// `rs` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ld_root_system_rank(rs: *const LdRootSystem) -> usize {
    rs.as_ref().map_or(0, |h| h.inner.rank)
}

/// Dual Coxeter number, or 0 for a NULL handle.
///
/// # Safety
/// `rs` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ld_root_system_dual_coxeter(rs: *const LdRootSystem) -> i64 {
    rs.as_ref().map_or(0, |h| h.inner.dual_coxeter)
}

/// Number of positive roots, or 0 for a NULL handle.
///
/// # Safety
/// `rs` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ld_root_system_num_positive_roots(rs: *const LdRootSystem) -> usize {
    rs.as_ref().map_or(0, |h| h.inner.num_positive_roots())
}

/// Weights of the level-`level` alcove, flattened row by row (`rank` integers
/// per weight) in canonical order. `out_len` receives the number of integers
/// required even when the buffer is too small.
///
/// # Safety
/// `buf` must have room for `len` integers; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ld_alcove_weights(
    rs: *const LdRootSystem,
    level: i64,
    buf: *mut i64,
    len: usize,
    out_len: *mut usize,
) -> LdStatus {
    guard(|| {
        let rs = handle(rs)?;
        if level < 0 {
            return Err((LdStatus::InvalidArgument, format!("negative level {level}")));
        }
        let flat: Vec<i64> = level_k_alcove(rs, level).iter().flat_map(integer_coords).collect();
        write_out(&flat, buf, len, out_len)
    })
}

/// Index vector of the conjugacy class through `exp(eta / level)`, one entry
/// per alcove weight in the order of `ld_alcove_weights`, computed with
/// energy truncation `n`. On `LD_STATUS_INSUFFICIENT_TRUNCATION` the required
/// truncation is written to `required_n` when it is non-NULL.
///
/// # Safety
/// `eta` must point to `rank` integers, `buf` to `len` writable integers,
/// `out_len` must be writable and `required_n` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn ld_quantize(
    rs: *const LdRootSystem,
    level: i64,
    eta: *const i64,
    n: u32,
    buf: *mut i64,
    len: usize,
    out_len: *mut usize,
    required_n: *mut u32,
) -> LdStatus {
    guard(|| {
        let rs = handle(rs)?;
        if eta.is_null() {
            return Err(null_err("eta"));
        }
        let eta = Weight::from_ints(std::slice::from_raw_parts(eta, rs.rank));
        match quantize_conjugacy_class(rs, &eta, level, n) {
            Ok(r) => write_out(&r.index.entries, buf, len, out_len),
            Err(e) => {
                if let (Error::InsufficientTruncation { required, .. }, false) = (&e, required_n.is_null()) {
                    *required_n = *required;
                }
                Err(lib_err(e))
            }
        }
    })
}
