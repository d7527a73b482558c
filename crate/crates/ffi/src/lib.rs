//! C ABI for the `piso` workbench.
//!
//! Every fallible function returns a [`PisoStatus`] and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and
//! [`piso_last_error_message`] describes the error. Handles are opaque and
//! each has its own `_free` function; strings handed out are released with
//! [`piso_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use piso::coherence::{self, check_free, check_model, Diagram, LiftOutcome, Verdict};
use piso::matrix::{matrix_rep, reconstruct};
use piso::sexpr::arrow_to_sexpr;
use piso::{Error, Matrix2, PrefixArrow, SelfSimilar};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PisoStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Typing = 4,
    NotOrthogonal = 5,
    NotUnitary = 6,
    NotCanonical = 7,
    InvalidDiagram = 8,
    Invalid = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PisoVerdict {
    Commutes = 0,
    Rejected = 1,
    Undecided = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PisoMode {
    Free = 0,
    Model = 1,
    Lift = 2,
}

/// An arrow of the prefix model.
pub struct PisoArrow(PrefixArrow);

/// A self-similar structure at `S`.
pub struct PisoSss(SelfSimilar);

/// A 2×2 matrix of endo-arrows of `S`.
pub struct PisoMatrix(Matrix2);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PisoStatus {
    match e {
        Error::Syntax { .. } => PisoStatus::Syntax,
        Error::Typing { .. } => PisoStatus::Typing,
        Error::NotOrthogonal(_) | Error::JoinUndefined(_) => PisoStatus::NotOrthogonal,
        Error::NotUnitary(_) => PisoStatus::NotUnitary,
        Error::NoInst(_) | Error::NotCanonical(_) => PisoStatus::NotCanonical,
        Error::Diagram(_) => PisoStatus::InvalidDiagram,
        Error::BadLeaf { .. } | Error::Invalid(_) => PisoStatus::Invalid,
    }
}

struct Failure(PisoStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PisoStatus::NullArgument, format!("{what} is null"))
}

/// Runs `body`, storing its value in `out`, and converts errors and panics
/// into status codes.
fn guard<T>(out: *mut T, body: impl FnOnce() -> Result<T, Failure>) -> PisoStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return PisoStatus::NullArgument;
    }
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(v)) => {
            unsafe { out.write(v) };
            set_error("");
            PisoStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PisoStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(PisoStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn arrow_out(f: PrefixArrow) -> *mut PisoArrow {
    boxed(PisoArrow(f))
}

/// Message for the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn piso_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn piso_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a term and evaluates it. Internal operations (`code`, `p`,
/// `tau-int`, ...) are resolved against `sss`, which may be null when the
/// term has none.
#[no_mangle]
pub unsafe extern "C" fn piso_arrow_parse(
    src: *const c_char,
    sss: *const PisoSss,
    out: *mut *mut PisoArrow,
) -> PisoStatus {
    guard(out, || {
        let term = coherence::parse_term(text(src, "src")?)?;
        term.signature()?;
        let s = sss.as_ref().map(|s| &s.0);
        Ok(arrow_out(term.eval(s)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn piso_arrow_free(f: *mut PisoArrow) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `g ∘ f`.
#[no_mangle]
pub unsafe extern "C" fn piso_arrow_compose(
    g: *const PisoArrow,
    f: *const PisoArrow,
    out: *mut *mut PisoArrow,
) -> PisoStatus {
    guard(out, || {
        Ok(arrow_out(borrow(g, "g")?.0.compose(&borrow(f, "f")?.0)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn piso_arrow_dagger(
    f: *const PisoArrow,
    out: *mut *mut PisoArrow,
) -> PisoStatus {
    guard(out, || Ok(arrow_out(borrow(f, "f")?.0.dagger())))
}

#[no_mangle]
pub unsafe extern "C" fn piso_arrow_tensor(
    f: *const PisoArrow,
    g: *const PisoArrow,
    out: *mut *mut PisoArrow,
) -> PisoStatus {
    guard(out, || {
        Ok(arrow_out(borrow(f, "f")?.0.tensor(&borrow(g, "g")?.0)))
    })
}

/// Join of two arrows; fails with `NotOrthogonal` when it is undefined.
#[no_mangle]
pub unsafe extern "C" fn piso_arrow_join(
    f: *const PisoArrow,
    g: *const PisoArrow,
    out: *mut *mut PisoArrow,
) -> PisoStatus {
    guard(out, || {
        Ok(arrow_out(borrow(f, "f")?.0.join(&borrow(g, "g")?.0)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn piso_arrow_equals(
    f: *const PisoArrow,
    g: *const PisoArrow,
    out: *mut bool,
) -> PisoStatus {
    guard(out, || Ok(borrow(f, "f")?.0 == borrow(g, "g")?.0))
}

#[no_mangle]
pub unsafe extern "C" fn piso_arrow_is_unitary(f: *const PisoArrow, out: *mut bool) -> PisoStatus {
    guard(out, || Ok(borrow(f, "f")?.0.is_unitary()))
}

/// The arrow as an `(arrow ...)` form that [`piso_arrow_parse`] reads back.
#[no_mangle]
pub unsafe extern "C" fn piso_arrow_to_string(
    f: *const PisoArrow,
    out: *mut *mut c_char,
) -> PisoStatus {
    guard(out, || {
        let s = arrow_to_sexpr(&borrow(f, "f")?.0);
        Ok(CString::new(s)
            .expect("no NUL in printed arrows")
            .into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn piso_sss_standard(out: *mut *mut PisoSss) -> PisoStatus {
    guard(out, || Ok(boxed(PisoSss(SelfSimilar::standard()))))
}

#[no_mangle]
pub unsafe extern "C" fn piso_sss_swap(out: *mut *mut PisoSss) -> PisoStatus {
    guard(out, || Ok(boxed(PisoSss(SelfSimilar::swap()))))
}

/// A structure from a unitary code `S□S → S`.
#[no_mangle]
pub unsafe extern "C" fn piso_sss_from_code(
    code: *const PisoArrow,
    out: *mut *mut PisoSss,
) -> PisoStatus {
    guard(out, || {
        Ok(boxed(PisoSss(SelfSimilar::new(
            borrow(code, "code")?.0.clone(),
        )?)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn piso_sss_free(s: *mut PisoSss) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn piso_sss_tau(s: *const PisoSss, out: *mut *mut PisoArrow) -> PisoStatus {
    guard(out, || Ok(arrow_out(borrow(s, "sss")?.0.tau())))
}

#[no_mangle]
pub unsafe extern "C" fn piso_sss_sigma(s: *const PisoSss, out: *mut *mut PisoArrow) -> PisoStatus {
    guard(out, || Ok(arrow_out(borrow(s, "sss")?.0.sigma())))
}

/// `code ∘ (a ⊎ b) ∘ decode`.
#[no_mangle]
pub unsafe extern "C" fn piso_sss_internalize(
    s: *const PisoSss,
    a: *const PisoArrow,
    b: *const PisoArrow,
    out: *mut *mut PisoArrow,
) -> PisoStatus {
    guard(out, || {
        let s = &borrow(s, "sss")?.0;
        Ok(arrow_out(
            s.internalize(&borrow(a, "a")?.0, &borrow(b, "b")?.0)?,
        ))
    })
}

#[no_mangle]
pub unsafe extern "C" fn piso_matrix_rep(
    f: *const PisoArrow,
    s: *const PisoSss,
    out: *mut *mut PisoMatrix,
) -> PisoStatus {
    guard(out, || {
        Ok(boxed(PisoMatrix(matrix_rep(
            &borrow(f, "f")?.0,
            &borrow(s, "sss")?.0,
        )?)))
    })
}

/// A copy of entry `(i, j)`, both indices 0 or 1.
#[no_mangle]
pub unsafe extern "C" fn piso_matrix_entry(
    m: *const PisoMatrix,
    i: usize,
    j: usize,
    out: *mut *mut PisoArrow,
) -> PisoStatus {
    guard(out, || {
        let m = &borrow(m, "m")?.0;
        if i > 1 || j > 1 {
            return Err(Failure(
                PisoStatus::Invalid,
                format!("index ({i}, {j}) out of range"),
            ));
        }
        Ok(arrow_out(m.entry(i, j).clone()))
    })
}

#[no_mangle]
pub unsafe extern "C" fn piso_matrix_mul(
    m: *const PisoMatrix,
    n: *const PisoMatrix,
    out: *mut *mut PisoMatrix,
) -> PisoStatus {
    guard(out, || {
        Ok(boxed(PisoMatrix(
            borrow(m, "m")?.0.mul(&borrow(n, "n")?.0)?,
        )))
    })
}

/// The endo-arrow whose representation under `s` is `m`.
#[no_mangle]
pub unsafe extern "C" fn piso_matrix_reconstruct(
    m: *const PisoMatrix,
    s: *const PisoSss,
    out: *mut *mut PisoArrow,
) -> PisoStatus {
    guard(out, || {
        Ok(arrow_out(reconstruct(
            &borrow(m, "m")?.0,
            &borrow(s, "sss")?.0,
        )?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn piso_matrix_free(m: *mut PisoMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

fn verdict(v: Verdict) -> PisoVerdict {
    match v {
        Verdict::Commutes => PisoVerdict::Commutes,
        Verdict::Rejected => PisoVerdict::Rejected,
        Verdict::Undecided => PisoVerdict::Undecided,
    }
}

/// Checks a diagram document (JSON). `sss` is used by model mode and may be
/// null for the standard structure; `bound` is the lift leaf bound. A lift
/// that is not certified reports `Undecided`.
#[no_mangle]
pub unsafe extern "C" fn piso_coherence_check(
    json: *const c_char,
    mode: PisoMode,
    sss: *const PisoSss,
    bound: usize,
    out: *mut PisoVerdict,
) -> PisoStatus {
    guard(out, || {
        let d = Diagram::from_json(text(json, "json")?)?;
        let standard;
        let s = match sss.as_ref() {
            Some(s) => &s.0,
            None => {
                standard = SelfSimilar::standard();
                &standard
            }
        };
        Ok(match mode {
            PisoMode::Free => verdict(check_free(&d)?.verdict()),
            PisoMode::Model => verdict(check_model(&d, s)?.verdict()),
            PisoMode::Lift => match coherence::lift(&d, bound)? {
                LiftOutcome::Certified { .. } => PisoVerdict::Commutes,
                _ => PisoVerdict::Undecided,
            },
        })
    })
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn piso_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version has no interior NUL"),
        };
    VERSION.as_ptr()
}
