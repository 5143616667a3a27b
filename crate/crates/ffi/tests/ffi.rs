use std::ffi::{CStr, CString};
use std::ptr;

use d4_gradings_ffi::*;

fn last_error() -> String {
    let p = d4_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn named(name: &str) -> *mut D4Grading {
    let c = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { d4_grading_named(c.as_ptr(), &mut g) }, D4Status::Ok);
    g
}

#[test]
fn group_and_anchors() {
    assert_eq!(d4_init(24), D4Status::Ok);
    let mut n = 0;
    assert_eq!(d4_isometry_group_len(&mut n), D4Status::Ok);
    assert_eq!(n, 1152);
    let mut m = [0i32; 16];
    assert_eq!(unsafe { d4_isometry_matrix(259, m.as_mut_ptr()) }, D4Status::Ok);
    assert_eq!(m, [-1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1]);
    assert_eq!(unsafe { d4_isometry_matrix(0, m.as_mut_ptr()) }, D4Status::InvalidArgument);
    assert!(last_error().contains("out of range"));
}

#[test]
fn named_grading_invariants() {
    let g = named("Q14");
    let (mut rank, mut dim_e, mut comps) = (9, 9, 0);
    assert_eq!(unsafe { d4_grading_summary(g, &mut rank, &mut dim_e, &mut comps) }, D4Status::Ok);
    assert_eq!((rank, dim_e, comps), (0, 0, 26));
    let mut buf = [0usize; 4];
    let mut len = 0;
    assert_eq!(unsafe { d4_grading_torsion(g, buf.as_mut_ptr(), 4, &mut len) }, D4Status::Ok);
    assert_eq!(&buf[..len], &[3, 3, 3]);
    assert_eq!(unsafe { d4_grading_type(g, buf.as_mut_ptr(), 1, &mut len) }, D4Status::BufferTooSmall);
    assert_eq!(len, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { d4_grading_json(g, &mut s) }, D4Status::Ok);
    let json: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert_eq!(json["type"], serde_json::json!([24, 2]));
    unsafe {
        d4_string_free(s);
        d4_grading_free(g);
    }
}

#[test]
fn triality_grading_through_ffi() {
    let g = named("p2");
    let mut buf = [0usize; 8];
    let mut len = 0;
    assert_eq!(unsafe { d4_grading_type(g, buf.as_mut_ptr(), 8, &mut len) }, D4Status::Ok);
    assert_eq!(&buf[..len], &[14, 7]);
    unsafe { d4_grading_free(g) };
}

#[test]
fn spec_documents_and_errors() {
    let spec = CString::new(r#"{"name":"t","generators":[{"kind":"torus","values":[-1,1,1,1]}]}"#).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { d4_grading_from_spec(spec.as_ptr(), &mut g) }, D4Status::Ok);
    let (mut rank, mut dim_e, mut comps) = (0, 0, 0);
    assert_eq!(unsafe { d4_grading_summary(g, &mut rank, &mut dim_e, &mut comps) }, D4Status::Ok);
    assert_eq!((rank, dim_e, comps), (0, 16, 2));
    unsafe { d4_grading_free(g) };

    let bad = CString::new(r#"{"generators":[{"kind":"torus","values":[1]}]}"#).unwrap();
    assert_eq!(unsafe { d4_grading_from_spec(bad.as_ptr(), &mut g) }, D4Status::Spec);
    assert!(last_error().contains("$.generators[0].values"));

    let garbage = CString::new("{").unwrap();
    assert_eq!(unsafe { d4_grading_from_spec(garbage.as_ptr(), &mut g) }, D4Status::Spec);

    let unknown = CString::new("Q15").unwrap();
    assert_eq!(unsafe { d4_grading_named(unknown.as_ptr(), &mut g) }, D4Status::Spec);
}

#[test]
fn null_pointers_are_rejected() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { d4_grading_named(ptr::null(), &mut g) }, D4Status::NullPointer);
    assert_eq!(d4_isometry_group_len(ptr::null_mut()), D4Status::NullPointer);
    let (mut a, mut b, mut c) = (0, 0, 0);
    assert_eq!(unsafe { d4_grading_summary(ptr::null(), &mut a, &mut b, &mut c) }, D4Status::NullPointer);
    unsafe {
        d4_grading_free(ptr::null_mut());
        d4_string_free(ptr::null_mut());
    }
    assert_eq!(d4_isometry_group_len(&mut a), D4Status::Ok);
    assert!(d4_last_error().is_null());
}

#[test]
fn verify_subset_and_bad_suite() {
    let only = CString::new("census,table2").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { d4_verify(only.as_ptr(), &mut s) }, D4Status::Ok);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    unsafe { d4_string_free(s) };
    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { d4_verify(bad.as_ptr(), &mut s) }, D4Status::InvalidArgument);
}

#[test]
fn switching_conductor_is_refused() {
    assert_eq!(d4_init(24), D4Status::Ok);
    assert_eq!(d4_init(12), D4Status::Conductor);
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/d4_gradings.h");
    let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99", header]).output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
