//! C ABI over `superchar`.
//!
//! Strings cross the boundary as NUL-terminated UTF-8. Decompositions are
//! returned as opaque [`SupercharCombination`] handles released with
//! [`superchar_combination_free`]. Every fallible call returns a
//! [`SupercharStatus`]; on failure the message is available from
//! [`superchar_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use superchar::certificates::{restriction_coeff_nonzero, tensor_coeff_nonzero, trivial_coeff_nonzero};
use superchar::engine::{expand, restrict, tensor, CharacterCombination};
use superchar::{ArcMultiset, Error, NodeSet, PrimeModulus, QSetPartition};

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupercharStatus {
    Ok = 0,
    /// Malformed arc, label or node-set text.
    Parse = 1,
    NotPrime = 2,
    /// Node sets or arcs violate a precondition.
    Precondition = 3,
    /// A closed form's hypothesis does not hold.
    Hypothesis = 4,
    GuardExceeded = 5,
    Overflow = 6,
    NullPointer = 7,
    InvalidUtf8 = 8,
    /// A coefficient does not fit in 64 bits.
    OutOfRange = 9,
    Panic = 10,
}

/// Opaque decomposition handle.
pub struct SupercharCombination(CharacterCombination);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SupercharStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::BadLabel { .. } | Error::BadArc { .. } => SupercharStatus::Parse,
            Error::NotPrime(_) => SupercharStatus::NotPrime,
            Error::Hypothesis(_) => SupercharStatus::Hypothesis,
            Error::GuardExceeded(_) | Error::DepthExhausted(_) => SupercharStatus::GuardExceeded,
            Error::Overflow => SupercharStatus::Overflow,
            _ => SupercharStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

fn guarded(body: impl FnOnce() -> Result<(), Failure>) -> SupercharStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SupercharStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SupercharStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SupercharStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SupercharStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn nodes(p: *const c_char, what: &str) -> Result<NodeSet, Failure> {
    Ok(text(p, what)?.parse::<NodeSet>()?)
}

unsafe fn partition(
    q: PrimeModulus,
    support: &NodeSet,
    p: *const c_char,
    what: &str,
) -> Result<QSetPartition, Failure> {
    Ok(QSetPartition::parse(q, support.clone(), text(p, what)?)?)
}

fn out_ptr<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(SupercharStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

unsafe fn emit(out: *mut *mut SupercharCombination, comb: CharacterCombination) {
    *out = Box::into_raw(Box::new(SupercharCombination(comb)));
}

/// Message of the last failed call on this thread, or null. Free with
/// [`superchar_string_free`].
#[no_mangle]
pub extern "C" fn superchar_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn superchar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn superchar_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Restriction of `χ^arcs` from `U_L(q)` to `U_K(q)`.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn superchar_restrict(
    q: u32,
    l: *const c_char,
    k: *const c_char,
    arcs: *const c_char,
    out: *mut *mut SupercharCombination,
) -> SupercharStatus {
    guarded(|| {
        out_ptr(out)?;
        let q = PrimeModulus::new(q)?;
        let (l, k) = (nodes(l, "L")?, nodes(k, "K")?);
        let lambda = partition(q, &l, arcs, "arcs")?;
        emit(out, restrict(&lambda, &k, &l)?);
        Ok(())
    })
}

/// Decomposition of `χ^a ⊗ χ^b` over `U_K(q)`.
///
/// # Safety
/// As for [`superchar_restrict`].
#[no_mangle]
pub unsafe extern "C" fn superchar_tensor(
    q: u32,
    k: *const c_char,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut SupercharCombination,
) -> SupercharStatus {
    guarded(|| {
        out_ptr(out)?;
        let q = PrimeModulus::new(q)?;
        let k = nodes(k, "K")?;
        let (a, b) = (partition(q, &k, a, "a")?, partition(q, &k, b, "b")?);
        emit(out, tensor(&a, &b, &k)?);
        Ok(())
    })
}

/// Decomposition of the character of an arc multiset over `U_K(q)`.
///
/// # Safety
/// As for [`superchar_restrict`].
#[no_mangle]
pub unsafe extern "C" fn superchar_expand(
    q: u32,
    k: *const c_char,
    arcs: *const c_char,
    out: *mut *mut SupercharCombination,
) -> SupercharStatus {
    guarded(|| {
        out_ptr(out)?;
        let q = PrimeModulus::new(q)?;
        let k = nodes(k, "K")?;
        let lambda = ArcMultiset::parse(q, k.clone(), text(arcs, "arcs")?)?;
        emit(out, expand(&lambda, &k)?);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn superchar_combination_free(h: *mut SupercharCombination) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of terms with nonzero coefficient; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn superchar_combination_len(h: *const SupercharCombination) -> usize {
    h.as_ref().map_or(0, |c| c.0.len())
}

/// Coefficient of `χ^nu` (a partition of the handle's node set).
///
/// # Safety
/// `h` must be a live handle, `nu` a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn superchar_combination_coefficient(
    h: *const SupercharCombination,
    nu: *const c_char,
    out: *mut u64,
) -> SupercharStatus {
    guarded(|| {
        out_ptr(out)?;
        let comb = &h
            .as_ref()
            .ok_or_else(|| Failure(SupercharStatus::NullPointer, "handle is null".into()))?
            .0;
        let nu = partition(comb.modulus(), comb.ambient(), nu, "nu")?;
        let c = comb.coefficient(&nu);
        *out = u64::try_from(c)
            .map_err(|_| Failure(SupercharStatus::OutOfRange, format!("coefficient {c} exceeds 64 bits")))?;
        Ok(())
    })
}

/// JSON object mapping canonical partition strings to coefficients, or null.
/// Free with [`superchar_string_free`].
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn superchar_combination_to_json(h: *const SupercharCombination) -> *mut c_char {
    let Some(comb) = h.as_ref() else {
        set_error("handle is null".into());
        return ptr::null_mut();
    };
    let body: Vec<String> = comb
        .0
        .to_string_map()
        .iter()
        .map(|(k, v)| format!("\"{k}\":{v}"))
        .collect();
    CString::new(format!("{{{}}}", body.join(",")))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Whether the trivial character occurs in the restriction of `χ^arcs` to `U_K`.
///
/// # Safety
/// As for [`superchar_restrict`].
#[no_mangle]
pub unsafe extern "C" fn superchar_trivial_nonzero(
    q: u32,
    l: *const c_char,
    k: *const c_char,
    arcs: *const c_char,
    out: *mut bool,
) -> SupercharStatus {
    guarded(|| {
        out_ptr(out)?;
        let q = PrimeModulus::new(q)?;
        let (l, k) = (nodes(l, "L")?, nodes(k, "K")?);
        let lambda = partition(q, &l, arcs, "arcs")?;
        *out = trivial_coeff_nonzero(&lambda, &k, &l)?;
        Ok(())
    })
}

/// Whether `χ^nu` occurs in `χ^a ⊗ χ^b`.
///
/// # Safety
/// As for [`superchar_restrict`].
#[no_mangle]
pub unsafe extern "C" fn superchar_tensor_nonzero(
    q: u32,
    k: *const c_char,
    a: *const c_char,
    b: *const c_char,
    nu: *const c_char,
    out: *mut bool,
) -> SupercharStatus {
    guarded(|| {
        out_ptr(out)?;
        let q = PrimeModulus::new(q)?;
        let k = nodes(k, "K")?;
        let a = partition(q, &k, a, "a")?;
        let b = partition(q, &k, b, "b")?;
        let nu = partition(q, &k, nu, "nu")?;
        *out = tensor_coeff_nonzero(&a, &b, &nu, &k)?;
        Ok(())
    })
}

/// Whether `χ^mu` occurs in the restriction of `χ^arcs` from `U_L` to `U_K`.
///
/// # Safety
/// As for [`superchar_restrict`].
#[no_mangle]
pub unsafe extern "C" fn superchar_restriction_nonzero(
    q: u32,
    l: *const c_char,
    k: *const c_char,
    arcs: *const c_char,
    mu: *const c_char,
    out: *mut bool,
) -> SupercharStatus {
    guarded(|| {
        out_ptr(out)?;
        let q = PrimeModulus::new(q)?;
        let (l, k) = (nodes(l, "L")?, nodes(k, "K")?);
        let lambda = partition(q, &l, arcs, "arcs")?;
        let mu = partition(q, &k, mu, "mu")?;
        *out = restriction_coeff_nonzero(&lambda, &mu, &k, &l)?;
        Ok(())
    })
}
