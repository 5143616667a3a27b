//! C interface to the d4 gradings library.
//!
//! Every function returns a [`D4Status`]; on failure the message is available
//! from [`d4_last_error`] on the same thread. Handles and strings returned by
//! the library must be released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use d4_gradings::exact::init_conductor;
use d4_gradings::gradings::{compute_grading, family_quasitorus, parse_spec_value, q_family, table1_row, Grading};
use d4_gradings::liealg::d4_model;
use d4_gradings::report::{all_passed, verify, Suite, VerifyOptions};
use d4_gradings::triality::{triality_grading, TrialityGrading};
use d4_gradings::weyl::isometry_group;
use d4_gradings::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D4Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Conductor = 4,
    Spec = 5,
    NonCommuting = 6,
    VerificationFailed = 7,
    BufferTooSmall = 8,
    Internal = 9,
    Panic = 10,
}

/// A computed grading.
pub struct D4Grading {
    grading: Grading,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> D4Status {
    match e {
        Error::ConductorInsufficient { .. } | Error::ConductorLocked { .. } => D4Status::Conductor,
        Error::Spec(_) | Error::Json(_) => D4Status::Spec,
        Error::NonCommuting { .. } | Error::NoTwist { .. } => D4Status::NonCommuting,
        Error::IndexOutOfRange(..) => D4Status::InvalidArgument,
        _ => D4Status::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), D4Status>) -> D4Status {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => D4Status::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside the library");
            D4Status::Panic
        }
    }
}

fn fail(e: Error) -> D4Status {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, D4Status> {
    if p.is_null() {
        set_error("null string argument");
        return Err(D4Status::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        D4Status::InvalidUtf8
    })
}

fn check_out<T>(p: *mut T) -> Result<(), D4Status> {
    if p.is_null() {
        set_error("null output pointer");
        return Err(D4Status::NullPointer);
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes replaced").into_raw()
}

/// Message of the most recent call on this thread if it failed, else NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn d4_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Fix the conductor N of Q(ζ_N). Must precede any other call; repeating the same N is allowed.
#[no_mangle]
pub extern "C" fn d4_init(conductor: u32) -> D4Status {
    guard(|| init_conductor(conductor).map(|_| ()).map_err(fail))
}

/// Number of elements of the isometry group.
#[no_mangle]
pub extern "C" fn d4_isometry_group_len(out: *mut usize) -> D4Status {
    guard(|| {
        check_out(out)?;
        unsafe { *out = isometry_group().len() };
        Ok(())
    })
}

/// Writes the 4×4 matrix of σ_index (row i is the image of αᵢ) row-major into `out[16]`.
///
/// # Safety
/// `out` must point to 16 writable ints.
#[no_mangle]
pub unsafe extern "C" fn d4_isometry_matrix(index: usize, out: *mut i32) -> D4Status {
    guard(|| {
        check_out(out)?;
        let m = isometry_group().matrix(index).map_err(fail)?;
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                *out.add(4 * i + j) = x;
            }
        }
        Ok(())
    })
}

fn named_grading(name: &str) -> Result<Grading, Error> {
    if let Some(row) = table1_row(name) {
        let (q, _) = q_family(row)?;
        return compute_grading(&d4_model().algebra, &q);
    }
    if let Some(p) = TrialityGrading::parse(name) {
        return triality_grading(p);
    }
    Err(Error::Spec(format!("unknown grading '{name}'")))
}

/// Compute a named grading: Q1..Q14 or P1..P4.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn d4_grading_named(name: *const c_char, out: *mut *mut D4Grading) -> D4Status {
    guard(|| {
        check_out(out)?;
        let name = read_str(name)?;
        let grading = named_grading(name).map_err(fail)?;
        *out = Box::into_raw(Box::new(D4Grading { grading }));
        Ok(())
    })
}

/// Compute the grading of a quasitorus described by a JSON spec document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn d4_grading_from_spec(json: *const c_char, out: *mut *mut D4Grading) -> D4Status {
    guard(|| {
        check_out(out)?;
        let text = read_str(json)?;
        let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| fail(e.into()))?;
        let (name, family) = parse_spec_value(&doc).map_err(fail)?;
        let (q, _) = family_quasitorus(name, &family).map_err(fail)?;
        let grading = compute_grading(&d4_model().algebra, &q).map_err(fail)?;
        *out = Box::into_raw(Box::new(D4Grading { grading }));
        Ok(())
    })
}

/// Release a grading. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn d4_grading_free(g: *mut D4Grading) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

unsafe fn grading_ref<'a>(g: *const D4Grading) -> Result<&'a Grading, D4Status> {
    if g.is_null() {
        set_error("null grading handle");
        return Err(D4Status::NullPointer);
    }
    Ok(&(*g).grading)
}

/// Free rank, identity-component dimension and number of components.
///
/// # Safety
/// `g` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn d4_grading_summary(
    g: *const D4Grading,
    rank: *mut usize,
    dim_identity: *mut usize,
    components: *mut usize,
) -> D4Status {
    guard(|| {
        let g = grading_ref(g)?;
        check_out(rank)?;
        check_out(dim_identity)?;
        check_out(components)?;
        let inv = g.invariants();
        *rank = inv.group.rank;
        *dim_identity = inv.dim_identity;
        *components = g.components.len();
        Ok(())
    })
}

unsafe fn write_list(values: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> Result<(), D4Status> {
    check_out(len)?;
    *len = values.len();
    if values.len() > cap {
        set_error(format!("buffer holds {cap}, need {}", values.len()));
        return Err(D4Status::BufferTooSmall);
    }
    if !values.is_empty() {
        check_out(buf)?;
        for (i, &v) in values.iter().enumerate() {
            *buf.add(i) = v;
        }
    }
    Ok(())
}

/// Invariant factors of the torsion part of the grading group. `*len` always receives the count.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn d4_grading_torsion(g: *const D4Grading, buf: *mut usize, cap: usize, len: *mut usize) -> D4Status {
    guard(|| {
        let g = grading_ref(g)?;
        let t: Vec<usize> = g.invariants().group.torsion.iter().map(|&x| x as usize).collect();
        write_list(&t, buf, cap, len)
    })
}

/// The type (h₁, …, h_l) of the grading. `*len` always receives l.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn d4_grading_type(g: *const D4Grading, buf: *mut usize, cap: usize, len: *mut usize) -> D4Status {
    guard(|| {
        let g = grading_ref(g)?;
        write_list(&g.invariants().type_tuple, buf, cap, len)
    })
}

/// The full grading report as JSON. Release with [`d4_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn d4_grading_json(g: *const D4Grading, out: *mut *mut c_char) -> D4Status {
    guard(|| {
        let g = grading_ref(g)?;
        check_out(out)?;
        *out = into_c_string(g.to_json().to_string());
        Ok(())
    })
}

/// Run acceptance suites. `only` is a comma-separated list or NULL for all.
/// Writes the JSON report to `out` and returns D4_STATUS_VERIFICATION_FAILED if any check failed.
///
/// # Safety
/// `only` is NULL or a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn d4_verify(only: *const c_char, out: *mut *mut c_char) -> D4Status {
    guard(|| {
        check_out(out)?;
        let mut opts = VerifyOptions::default();
        if !only.is_null() {
            for name in read_str(only)?.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let s = Suite::parse(name).ok_or_else(|| {
                    set_error(format!("unknown suite '{name}'"));
                    D4Status::InvalidArgument
                })?;
                opts.only.push(s);
            }
        }
        let records = verify(&opts);
        *out = into_c_string(serde_json::to_string(&records).expect("serializable"));
        if all_passed(&records) {
            Ok(())
        } else {
            set_error("some checks failed");
            Err(D4Status::VerificationFailed)
        }
    })
}

/// Release a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn d4_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
