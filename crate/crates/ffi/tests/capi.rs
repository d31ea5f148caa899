use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use loopdirac_ffi::*;

fn new_rs(name: &str) -> *mut LdRootSystem {
    let name = CString::new(name).unwrap();
    let mut rs = ptr::null_mut();
    assert_eq!(unsafe { ld_root_system_new(name.as_ptr(), &mut rs) }, LdStatus::Ok);
    rs
}

fn last_error() -> String {
    let p = ld_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn handle_lifecycle_and_queries() {
    let rs = new_rs("A2");
    unsafe {
        assert_eq!(ld_root_system_rank(rs), 2);
        assert_eq!(ld_root_system_dual_coxeter(rs), 3);
        assert_eq!(ld_root_system_num_positive_roots(rs), 3);
        ld_root_system_free(rs);
        ld_root_system_free(ptr::null_mut());
        assert_eq!(ld_root_system_rank(ptr::null()), 0);
    }
}

#[test]
fn invalid_type_sets_message() {
    let name = CString::new("Z9").unwrap();
    let mut rs = ptr::null_mut();
    assert_eq!(unsafe { ld_root_system_new(name.as_ptr(), &mut rs) }, LdStatus::InvalidType);
    assert!(rs.is_null());
    assert!(last_error().contains("Z9"));
    assert_eq!(unsafe { ld_root_system_new(ptr::null(), &mut rs) }, LdStatus::NullPointer);
}

#[test]
fn alcove_weights_with_size_query() {
    let rs = new_rs("A2");
    let mut needed = 0usize;
    let s = unsafe { ld_alcove_weights(rs, 1, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(s, LdStatus::BufferTooSmall);
    assert_eq!(needed, 6);
    let mut buf = vec![0i64; needed];
    let s = unsafe { ld_alcove_weights(rs, 1, buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(s, LdStatus::Ok);
    assert_eq!(buf, vec![0, 0, 0, 1, 1, 0]);
    unsafe { ld_root_system_free(rs) };
}

#[test]
fn quantize_through_the_abi() {
    let rs = new_rs("A1");
    let eta = [1i64];
    let mut buf = [9i64; 3];
    let mut len = 0usize;
    let s = unsafe { ld_quantize(rs, 2, eta.as_ptr(), 4, buf.as_mut_ptr(), 3, &mut len, ptr::null_mut()) };
    assert_eq!(s, LdStatus::Ok);
    assert_eq!((len, buf), (3, [0, 1, 0]));
    let bad = [3i64];
    let s = unsafe { ld_quantize(rs, 2, bad.as_ptr(), 4, buf.as_mut_ptr(), 3, &mut len, ptr::null_mut()) };
    assert_eq!(s, LdStatus::NotInAlcove);
    unsafe { ld_root_system_free(rs) };

    let rs = new_rs("A2");
    let eta = [3i64, 0];
    let mut req = 0u32;
    let mut buf = [0i64; 10];
    let s = unsafe { ld_quantize(rs, 3, eta.as_ptr(), 0, buf.as_mut_ptr(), 10, &mut len, &mut req) };
    assert_eq!(s, LdStatus::InsufficientTruncation);
    assert_eq!(req, 1);
    assert!(last_error().contains("at least 1"));
    unsafe { ld_root_system_free(rs) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(ld_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn header() -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/loopdirac.h");
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn header_declares_the_abi() {
    let h = header();
    for sym in [
        "typedef struct LdRootSystem LdRootSystem",
        "LD_STATUS_OK = 0",
        "LD_STATUS_INSUFFICIENT_TRUNCATION",
        "ld_root_system_new",
        "ld_root_system_free",
        "ld_alcove_weights",
        "ld_quantize",
        "ld_last_error_message",
        "ld_version",
    ] {
        assert!(h.contains(sym), "header lacks {sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler on PATH; header compile check not run");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"loopdirac.h\"\nint main(void) { LdRootSystem *rs = 0; return ld_root_system_new(\"A1\", &rs) == LD_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let out = Command::new(cc)
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "clang", "gcc"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
