//! C interface to `lieaff`.
//!
//! Every entry point returns a [`LieaffStatus`]. On failure the message is
//! kept per thread and read back with [`lieaff_last_error`]. Strings handed
//! out by the library are freed with [`lieaff_string_free`], handles with
//! their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lieaff::affgebra::Affgebra;
use lieaff::genderiv::solve_pairs;
use lieaff::isoclass::{canonicalize, CanonicalForm};
use lieaff::liecore::Catalog;
use lieaff::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieaffStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    DimensionMismatch = 4,
    SingularMatrix = 5,
    BadParameter = 6,
    NotAutomorphism = 7,
    FieldExtensionRequired = 8,
    UnverifiedPair = 9,
    NotCatalogAlgebra = 10,
    /// An axiom check found a counterexample.
    Violation = 11,
    Internal = 12,
    Panic = 13,
}

impl From<&Error> for LieaffStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DimensionMismatch { .. } => LieaffStatus::DimensionMismatch,
            Error::SingularMatrix => LieaffStatus::SingularMatrix,
            Error::BadParameter(_) => LieaffStatus::BadParameter,
            Error::NotAutomorphism(_) => LieaffStatus::NotAutomorphism,
            Error::FieldExtensionRequired { .. } => LieaffStatus::FieldExtensionRequired,
            Error::UnverifiedPair(_) => LieaffStatus::UnverifiedPair,
            Error::NotCatalogAlgebra => LieaffStatus::NotCatalogAlgebra,
            Error::Parse(_) => LieaffStatus::Parse,
            Error::Internal(_) => LieaffStatus::Internal,
        }
    }
}

/// Opaque affgebra handle.
pub struct LieaffAffgebra(Affgebra);

/// Opaque normal-form handle.
pub struct LieaffCanonicalForm(CanonicalForm);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(LieaffStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(body: impl FnOnce() -> FfiResult<()>) -> LieaffStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            LieaffStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside lieaff".into());
            LieaffStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(LieaffStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(LieaffStatus::InvalidUtf8, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn c_string(text: String) -> *mut c_char {
    CString::new(text).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn lieaff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn lieaff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dimension of the space of pairs `(f, g)` on a catalog algebra. `lambda`
/// may be null except for `"r3lambda"`.
///
/// # Safety
/// `tag` and `lambda` must be null or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lieaff_solve_dimension(
    tag: *const c_char,
    lambda: *const c_char,
    out: *mut usize,
) -> LieaffStatus {
    guard(|| {
        let tag = read_str(tag)?;
        let lambda = if lambda.is_null() {
            None
        } else {
            Some(read_str(lambda)?.parse()?)
        };
        let catalog = Catalog::from_tag(tag, lambda)?;
        put(out, solve_pairs(&catalog.algebra()).dimension())
    })
}

/// Parses the JSON document accepted by the command-line tool.
///
/// # Safety
/// `json` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lieaff_affgebra_from_json(json: *const c_char, out: *mut *mut LieaffAffgebra) -> LieaffStatus {
    guard(|| {
        let text = read_str(json)?;
        let x: Affgebra = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        put(out, Box::into_raw(Box::new(LieaffAffgebra(x))))
    })
}

/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lieaff_affgebra_to_json(x: *const LieaffAffgebra, out: *mut *mut c_char) -> LieaffStatus {
    guard(|| {
        let x = deref(x)?;
        let text = serde_json::to_string(&x.0).expect("serializable");
        put(out, c_string(text))
    })
}

/// Checks both axioms on the grid. Returns `LIEAFF_STATUS_VIOLATION` with
/// the counterexample as the error message when one fails.
///
/// # Safety
/// `x` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lieaff_affgebra_check_axioms(x: *const LieaffAffgebra) -> LieaffStatus {
    guard(|| {
        deref(x)?
            .0
            .check_axioms()
            .map_err(|v| Failure(LieaffStatus::Violation, v.to_string()))
    })
}

/// # Safety
/// `x` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lieaff_affgebra_free(x: *mut LieaffAffgebra) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lieaff_canonicalize(
    x: *const LieaffAffgebra,
    out: *mut *mut LieaffCanonicalForm,
) -> LieaffStatus {
    guard(|| {
        let (form, _) = canonicalize(&deref(x)?.0)?;
        put(out, Box::into_raw(Box::new(LieaffCanonicalForm(form))))
    })
}

/// Readable form such as `F1(2, 3, 5, 0, 0)`.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lieaff_canonical_form_display(
    form: *const LieaffCanonicalForm,
    out: *mut *mut c_char,
) -> LieaffStatus {
    guard(|| {
        let form = deref(form)?;
        put(out, c_string(form.0.to_string()))
    })
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lieaff_canonical_form_to_json(
    form: *const LieaffCanonicalForm,
    out: *mut *mut c_char,
) -> LieaffStatus {
    guard(|| {
        let form = deref(form)?;
        put(out, c_string(serde_json::to_string(&form.0).expect("serializable")))
    })
}

/// The affgebra the normal form names.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lieaff_canonical_form_representative(
    form: *const LieaffCanonicalForm,
    out: *mut *mut LieaffAffgebra,
) -> LieaffStatus {
    guard(|| {
        let x = deref(form)?.0.representative()?;
        put(out, Box::into_raw(Box::new(LieaffAffgebra(x))))
    })
}

/// # Safety
/// `form` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lieaff_canonical_form_free(form: *mut LieaffCanonicalForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}
