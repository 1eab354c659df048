use std::ffi::{CStr, CString};
use std::ptr;

use sublogic_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sublogic_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    sublogic_string_free(s);
    out
}

#[test]
fn formula_round_trip() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(sublogic_formula_parse(c("(p * q) -> !r").as_ptr(), &mut f), SublogicStatus::Ok);
        assert_eq!(sublogic_formula_size(f), 6);
        let mut s = ptr::null_mut();
        assert_eq!(sublogic_formula_to_string(f, &mut s), SublogicStatus::Ok);
        assert_eq!(take(s), "p * q -> !r");
        let mut taut = true;
        assert_eq!(sublogic_formula_tautology(f, &mut taut), SublogicStatus::Ok);
        assert!(!taut);
        sublogic_formula_free(f);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(sublogic_formula_parse(c("p -> ").as_ptr(), &mut f), SublogicStatus::ParseError);
        assert!(f.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(sublogic_formula_parse(ptr::null(), &mut f), SublogicStatus::NullPointer);
        assert_eq!(sublogic_formula_parse(c("p").as_ptr(), ptr::null_mut()), SublogicStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(sublogic_formula_parse(bad.as_ptr().cast(), &mut f), SublogicStatus::InvalidUtf8);
        let mut calc = ptr::null_mut();
        assert_eq!(sublogic_calculus_parse(c("NOPE").as_ptr(), &mut calc), SublogicStatus::ParseError);
        // A successful call clears the message.
        assert_eq!(sublogic_calculus_parse(c("FL_e").as_ptr(), &mut calc), SublogicStatus::Ok);
        assert_eq!(last_error(), "");
        sublogic_calculus_free(calc);
        sublogic_formula_free(ptr::null_mut());
        sublogic_proof_free(ptr::null_mut());
        sublogic_string_free(ptr::null_mut());
    }
}

#[test]
fn horn_proof_checks_and_round_trips() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sublogic_horn_prove(c("p, p -> q, q -> r => r").as_ptr(), &mut p), SublogicStatus::Ok);
        let mut m = SublogicMetrics::default();
        assert_eq!(sublogic_proof_check(p, ptr::null(), &mut m), SublogicStatus::Ok);
        assert!(m.node_count > 0 && m.size >= m.lines);

        let mut json = ptr::null_mut();
        assert_eq!(sublogic_proof_to_json(p, &mut json), SublogicStatus::Ok);
        let json = take(json);
        let mut q = ptr::null_mut();
        assert_eq!(sublogic_proof_from_json(c(&json).as_ptr(), &mut q), SublogicStatus::Ok);
        let mut m2 = SublogicMetrics::default();
        assert_eq!(sublogic_proof_check(q, ptr::null(), &mut m2), SublogicStatus::Ok);
        assert_eq!(m, m2);
        let mut concl = ptr::null_mut();
        assert_eq!(sublogic_proof_conclusion(q, &mut concl), SublogicStatus::Ok);
        assert_eq!(take(concl), "p, p -> q, q -> r => r");

        // LK_u rules are not available in FL_e.
        let mut calc = ptr::null_mut();
        assert_eq!(sublogic_calculus_parse(c("FL_e").as_ptr(), &mut calc), SublogicStatus::Ok);
        assert_eq!(sublogic_proof_check(q, calc, ptr::null_mut()), SublogicStatus::Violation);
        assert!(last_error().contains("node"));

        sublogic_calculus_free(calc);
        sublogic_proof_free(p);
        sublogic_proof_free(q);
    }
}

#[test]
fn invalid_horn_sequent_is_negative() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sublogic_horn_prove(c("p -> q => q").as_ptr(), &mut p), SublogicStatus::Negative);
        assert_eq!(sublogic_horn_prove(c("p \\/ q => q").as_ptr(), &mut p), SublogicStatus::Unsupported);
        assert!(p.is_null());
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(sublogic_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/sublogic.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    for line in src.lines().filter(|l| l.contains("extern \"C\" fn ")) {
        let name = line.split("fn ").nth(1).unwrap().split('(').next().unwrap();
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}
