//! C interface to the sublogic proof kernel.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every call returns a
//! [`SublogicStatus`]; on failure a message is available from
//! [`sublogic_last_error`] until the next call on the same thread. Panics
//! are caught and reported as [`SublogicStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sublogic::calculus::{Calculus, System};
use sublogic::formula::{parse_formula, Formula};
use sublogic::horn::{unit_prop_prove, HornError};
use sublogic::proof::{check_proof, proof_from_json, proof_to_json, Proof};
use sublogic::search::boolean_valid;
use sublogic::sequent::parse_sequent;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SublogicStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// The proof failed to check.
    Violation = 4,
    /// A negative verdict: not valid, not provable.
    Negative = 5,
    /// Input outside what the operation supports.
    Unsupported = 6,
    Panic = 7,
}

/// A hash-consed formula.
pub struct SublogicFormula(Formula);

/// A sequent calculus with its optional parameters.
pub struct SublogicCalculus(Calculus);

/// A proof together with the calculus it was written for.
pub struct SublogicProof {
    calculus: Calculus,
    proof: Proof,
}

/// Size measures of a checked proof.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SublogicMetrics {
    pub size: u64,
    pub lines: u64,
    pub node_count: u64,
    pub tree_like: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

type Outcome = Result<(), (SublogicStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome) -> SublogicStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SublogicStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            SublogicStatus::Panic
        }
    }
}

fn fail<T>(status: SublogicStatus, msg: impl ToString) -> Result<T, (SublogicStatus, String)> {
    Err((status, msg.to_string()))
}

unsafe fn utf8<'a>(ptr: *const c_char) -> Result<&'a str, (SublogicStatus, String)> {
    if ptr.is_null() {
        return fail(SublogicStatus::NullPointer, "null string");
    }
    CStr::from_ptr(ptr).to_str().or_else(|e| fail(SublogicStatus::InvalidUtf8, e))
}

unsafe fn handle<'a, T>(ptr: *const T) -> Result<&'a T, (SublogicStatus, String)> {
    ptr.as_ref().ok_or((SublogicStatus::NullPointer, "null handle".to_string()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return fail(SublogicStatus::NullPointer, "null output pointer");
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return fail(SublogicStatus::NullPointer, "null output pointer");
    }
    *out = CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn sublogic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sublogic_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sublogic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a formula such as `p * q -> !r`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublogic_formula_parse(text: *const c_char, out: *mut *mut SublogicFormula) -> SublogicStatus {
    guard(|| {
        let f = parse_formula(utf8(text)?).or_else(|e| fail(SublogicStatus::ParseError, e))?;
        put(out, SublogicFormula(f))
    })
}

/// Number of nodes in the formula tree, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn sublogic_formula_size(f: *const SublogicFormula) -> u64 {
    f.as_ref().map_or(0, |f| f.0.size())
}

/// Renders a formula; free the result with [`sublogic_string_free`].
///
/// # Safety
/// `f` must be a live formula handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublogic_formula_to_string(
    f: *const SublogicFormula,
    out: *mut *mut c_char,
) -> SublogicStatus {
    guard(|| put_string(out, handle(f)?.0.to_string()))
}

/// Classical validity of the formula read with every connective as its
/// Boolean counterpart.
///
/// # Safety
/// `f` must be a live formula handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublogic_formula_tautology(f: *const SublogicFormula, out: *mut bool) -> SublogicStatus {
    guard(|| {
        let valid = boolean_valid(&handle(f)?.0.forgetful()).or_else(|e| fail(SublogicStatus::Unsupported, e))?;
        if out.is_null() {
            return fail(SublogicStatus::NullPointer, "null output pointer");
        }
        *out = valid;
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sublogic_formula_free(f: *mut SublogicFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Parses a calculus name such as `FL_e`, `LK-` or `iG_D(FL_e; D=d; N=n)`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublogic_calculus_parse(
    text: *const c_char,
    out: *mut *mut SublogicCalculus,
) -> SublogicStatus {
    guard(|| {
        let c: Calculus = utf8(text)?.parse().or_else(|e| fail(SublogicStatus::ParseError, e))?;
        put(out, SublogicCalculus(c))
    })
}

/// # Safety
/// `c` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sublogic_calculus_free(c: *mut SublogicCalculus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Reads a proof in the JSON exchange format.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublogic_proof_from_json(json: *const c_char, out: *mut *mut SublogicProof) -> SublogicStatus {
    guard(|| {
        let (calculus, proof) = proof_from_json(utf8(json)?).or_else(|e| fail(SublogicStatus::ParseError, e))?;
        put(out, SublogicProof { calculus, proof })
    })
}

/// Writes a proof in the JSON exchange format; free the result with
/// [`sublogic_string_free`].
///
/// # Safety
/// `p` must be a live proof handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublogic_proof_to_json(p: *const SublogicProof, out: *mut *mut c_char) -> SublogicStatus {
    guard(|| {
        let p = handle(p)?;
        put_string(out, proof_to_json(&p.calculus, &p.proof))
    })
}

/// Renders the end sequent; free the result with [`sublogic_string_free`].
///
/// # Safety
/// `p` must be a live proof handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublogic_proof_conclusion(p: *const SublogicProof, out: *mut *mut c_char) -> SublogicStatus {
    guard(|| put_string(out, handle(p)?.proof.conclusion().to_string()))
}

/// Checks a proof, against `calculus` when given and against the calculus
/// named in the proof otherwise. Fills `metrics` when it is not null.
///
/// # Safety
/// `p` must be a live proof handle; `calculus` and `metrics` may be null.
#[no_mangle]
pub unsafe extern "C" fn sublogic_proof_check(
    p: *const SublogicProof,
    calculus: *const SublogicCalculus,
    metrics: *mut SublogicMetrics,
) -> SublogicStatus {
    guard(|| {
        let p = handle(p)?;
        let calc = calculus.as_ref().map_or(&p.calculus, |c| &c.0);
        let m = check_proof(calc, &p.proof, &[]).or_else(|v| fail(SublogicStatus::Violation, v))?;
        if let Some(out) = metrics.as_mut() {
            *out = SublogicMetrics { size: m.size, lines: m.lines, node_count: m.node_count, tree_like: m.tree_like };
        }
        Ok(())
    })
}

/// Proves an implicational Horn sequent in `LK_u` by unit propagation.
/// Returns [`SublogicStatus::Negative`] when the sequent is not valid.
///
/// # Safety
/// `sequent` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sublogic_horn_prove(sequent: *const c_char, out: *mut *mut SublogicProof) -> SublogicStatus {
    guard(|| {
        let s = parse_sequent(utf8(sequent)?).or_else(|e| fail(SublogicStatus::ParseError, e))?;
        let proof = unit_prop_prove(&s).or_else(|e| {
            let status = match e {
                HornError::Invalid { .. } => SublogicStatus::Negative,
                _ => SublogicStatus::Unsupported,
            };
            fail(status, e)
        })?;
        put(out, SublogicProof { calculus: Calculus::new(System::LKu), proof })
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sublogic_proof_free(p: *mut SublogicProof) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}
