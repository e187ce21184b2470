//! C interface. Modules cross the boundary as opaque `DihedralRep` handles;
//! every fallible call returns a `DihedralStatus` and, on failure, leaves a
//! message readable through `dihedral_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dihedral::decomp::{is_isomorphic, IsoVerdict};
use dihedral::klein::signature_of;
use dihedral::module::{heller, string_module};
use dihedral::{Error, QParam, Rep, Word};

/// Opaque module handle.
pub struct DihedralRep(Rep);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DihedralStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidQ = 4,
    InvalidWord = 5,
    InvalidModule = 6,
    GroupMismatch = 7,
    NotEligible = 8,
    Json = 9,
    Other = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DihedralIso {
    Isomorphic = 0,
    NotIsomorphic = 1,
    Undecided = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(DihedralStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => DihedralStatus::Parse,
            Error::InvalidQ(_) => DihedralStatus::InvalidQ,
            Error::InvalidWord(..) | Error::NotAlternating(_) => DihedralStatus::InvalidWord,
            Error::InvalidRep(_) | Error::Dimension(_) => DihedralStatus::InvalidModule,
            Error::QMismatch(..) => DihedralStatus::GroupMismatch,
            Error::NotSignatureEligible(_) => DihedralStatus::NotEligible,
            _ => DihedralStatus::Other,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DihedralStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DihedralStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DihedralStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DihedralStatus::Panic
        }
    }
}

unsafe fn rep<'a>(p: *const DihedralRep, what: &str) -> Result<&'a Rep, Failure> {
    p.as_ref().map(|r| &r.0).ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(DihedralStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn emit(out: *mut *mut DihedralRep, r: Rep) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(DihedralRep(r)));
    Ok(())
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dihedral_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds the string module `M(word)` for the group of order `4q`.
/// `word` is space separated, e.g. `"a b- a"`.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dihedral_string_module(
    q: usize,
    word: *const c_char,
    out: *mut *mut DihedralRep,
) -> DihedralStatus {
    guard(|| {
        let q = QParam::new(q)?;
        let w: Word = text(word, "word")?.parse()?;
        emit(out, string_module(&w, q)?)
    })
}

/// Reads a module from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dihedral_rep_from_json(
    json: *const c_char,
    out: *mut *mut DihedralRep,
) -> DihedralStatus {
    guard(|| {
        let r: Rep = serde_json::from_str(text(json, "json")?)
            .map_err(|e| Failure(DihedralStatus::Json, e.to_string()))?;
        r.check()?;
        emit(out, r)
    })
}

/// Writes the JSON form of `rep` to `*out`; release it with
/// `dihedral_string_free`.
///
/// # Safety
/// `rep` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dihedral_rep_to_json(
    rep: *const DihedralRep,
    out: *mut *mut c_char,
) -> DihedralStatus {
    guard(|| {
        let r = self::rep(rep, "rep")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = serde_json::to_string(r).map_err(|e| Failure(DihedralStatus::Json, e.to_string()))?;
        *out = CString::new(s).map_err(|e| Failure(DihedralStatus::Json, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// Dimension of `rep`, or 0 for null.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dihedral_rep_dim(rep: *const DihedralRep) -> usize {
    rep.as_ref().map_or(0, |r| r.0.dim())
}

/// # Safety
/// `rep` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dihedral_rep_free(rep: *mut DihedralRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dihedral_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `Ω^{-power}` of `rep`: negative powers take syzygies.
///
/// # Safety
/// `rep` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dihedral_heller(
    rep: *const DihedralRep,
    power: i64,
    out: *mut *mut DihedralRep,
) -> DihedralStatus {
    guard(|| emit(out, heller(self::rep(rep, "rep")?, power)))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dihedral_tensor(
    a: *const DihedralRep,
    b: *const DihedralRep,
    out: *mut *mut DihedralRep,
) -> DihedralStatus {
    guard(|| emit(out, rep(a, "a")?.tensor(rep(b, "b")?)?))
}

/// # Safety
/// `rep` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dihedral_dual(
    rep: *const DihedralRep,
    out: *mut *mut DihedralRep,
) -> DihedralStatus {
    guard(|| emit(out, self::rep(rep, "rep")?.dual()))
}

/// Signature `[r, s]` of an even-dimensional non-periodic module.
///
/// # Safety
/// `rep` must be a live handle; `r` and `s` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dihedral_signature(
    rep: *const DihedralRep,
    r: *mut i64,
    s: *mut i64,
) -> DihedralStatus {
    guard(|| {
        let m = self::rep(rep, "rep")?;
        if r.is_null() || s.is_null() {
            return Err(null("output"));
        }
        let (sig, _) = signature_of(m)?;
        *r = sig.0[0];
        *s = sig.0[1];
        Ok(())
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dihedral_is_isomorphic(
    a: *const DihedralRep,
    b: *const DihedralRep,
    seed: u64,
    out: *mut DihedralIso,
) -> DihedralStatus {
    guard(|| {
        let v = is_isomorphic(rep(a, "a")?, rep(b, "b")?, seed)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match v {
            IsoVerdict::Isomorphic => DihedralIso::Isomorphic,
            IsoVerdict::NotIsomorphic => DihedralIso::NotIsomorphic,
            IsoVerdict::NotDecided => DihedralIso::Undecided,
        };
        Ok(())
    })
}
