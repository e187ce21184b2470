use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use dihedral_ffi::*;

fn build(q: usize, w: &str) -> *mut DihedralRep {
    let w = CString::new(w).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dihedral_string_module(q, w.as_ptr(), &mut out) }, DihedralStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dihedral_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn build_tensor_and_free() {
    let a = build(2, "a b- a");
    let b = build(2, "b a");
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(dihedral_rep_dim(a), 4);
        assert_eq!(dihedral_tensor(a, b, &mut t), DihedralStatus::Ok);
        assert_eq!(dihedral_rep_dim(t), 12);
        dihedral_rep_free(t);
        dihedral_rep_free(a);
        dihedral_rep_free(b);
        dihedral_rep_free(ptr::null_mut());
    }
}

#[test]
fn errors_set_status_and_message() {
    let w = CString::new("a a").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { dihedral_string_module(2, w.as_ptr(), &mut out) };
    assert_eq!(st, DihedralStatus::InvalidWord);
    assert!(out.is_null());
    assert!(last_error().contains("alternate"));

    let w = CString::new("a").unwrap();
    assert_eq!(unsafe { dihedral_string_module(3, w.as_ptr(), &mut out) }, DihedralStatus::InvalidQ);
    assert_eq!(unsafe { dihedral_string_module(2, ptr::null(), &mut out) }, DihedralStatus::NullPointer);

    let a = build(2, "a");
    let b = build(4, "a");
    let st = unsafe { dihedral_tensor(a, b, &mut out) };
    assert_eq!(st, DihedralStatus::GroupMismatch);
    let odd = build(2, "a b");
    let (mut r, mut s) = (0i64, 0i64);
    assert_eq!(unsafe { dihedral_signature(odd, &mut r, &mut s) }, DihedralStatus::NotEligible);
    unsafe {
        dihedral_rep_free(odd);
        dihedral_rep_free(a);
        dihedral_rep_free(b);
    }
}

#[test]
fn json_round_trip_and_isomorphism() {
    let a = build(2, "a b- a b a-");
    let mut json = ptr::null_mut();
    let mut back = ptr::null_mut();
    let mut verdict = DihedralIso::Undecided;
    unsafe {
        assert_eq!(dihedral_rep_to_json(a, &mut json), DihedralStatus::Ok);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"q\":2"));
        assert_eq!(dihedral_rep_from_json(json, &mut back), DihedralStatus::Ok);
        dihedral_string_free(json);
        assert_eq!(dihedral_is_isomorphic(a, back, 0, &mut verdict), DihedralStatus::Ok);
        assert_eq!(verdict, DihedralIso::Isomorphic);
        let bad = CString::new("{\"q\":2}").unwrap();
        assert_eq!(dihedral_rep_from_json(bad.as_ptr(), &mut back), DihedralStatus::Json);
        dihedral_rep_free(back);
        dihedral_rep_free(a);
    }
}

#[test]
fn heller_dual_and_signature() {
    let m = build(2, "a b- a");
    let (mut om, mut back, mut d) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    let (mut r, mut s) = (9i64, 9i64);
    let mut verdict = DihedralIso::Undecided;
    unsafe {
        assert_eq!(dihedral_signature(m, &mut r, &mut s), DihedralStatus::Ok);
        assert_eq!((r, s), (0, 0));
        assert_eq!(dihedral_heller(m, -2, &mut om), DihedralStatus::Ok);
        assert_eq!(dihedral_signature(om, &mut r, &mut s), DihedralStatus::Ok);
        assert_eq!((r, s), (2, 2));
        assert_eq!(dihedral_heller(om, 2, &mut back), DihedralStatus::Ok);
        assert_eq!(dihedral_is_isomorphic(m, back, 0, &mut verdict), DihedralStatus::Ok);
        assert_eq!(verdict, DihedralIso::Isomorphic);
        assert_eq!(dihedral_dual(m, &mut d), DihedralStatus::Ok);
        assert_eq!(dihedral_rep_dim(d), 4);
        for p in [m, om, back, d] {
            dihedral_rep_free(p);
        }
    }
}

#[test]
fn header_declares_the_api_and_compiles() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/dihedral.h")).unwrap();
    for f in [
        "dihedral_last_error", "dihedral_string_module", "dihedral_rep_from_json", "dihedral_rep_to_json",
        "dihedral_rep_dim", "dihedral_rep_free", "dihedral_string_free", "dihedral_heller",
        "dihedral_tensor", "dihedral_dual", "dihedral_signature", "dihedral_is_isomorphic",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    let status = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", &format!("{dir}/include/dihedral.h")])
        .status()
        .unwrap();
    assert!(status.success());
}
