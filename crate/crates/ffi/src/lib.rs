//! C ABI over the quasilinkage library.
//!
//! Games and complexes are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a
//! [`QlStatus`]; on failure a JSON description of the error is available from
//! [`ql_last_error`] on the same thread. Strings returned through out
//! parameters are allocated here and must be released with
//! [`ql_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use quasilinkage::complex::{CellComplex, Variant};
use quasilinkage::homology::cellular_homology;
use quasilinkage::{io, Error, LengthVector, Quasilinkage, Subset};

/// Opaque quasilinkage.
pub struct QlGame(Quasilinkage);

/// Opaque cell complex.
pub struct QlComplex(CellComplex);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// The input breaks a quasilinkage axiom.
    Violation = 4,
    /// Any other domain error, e.g. flipping a set that is not maximal short.
    Domain = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlVariant {
    Moduli = 0,
    Stable = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("error text contained NUL").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: QlStatus, message: String) -> QlStatus {
    set_error(message);
    status
}

fn from_error(e: Error) -> QlStatus {
    let status = match e {
        Error::Violation(_) => QlStatus::Violation,
        Error::Parse(_) => QlStatus::Parse,
        _ => QlStatus::Domain,
    };
    fail(status, e.to_json().to_string())
}

fn guard<F: FnOnce() -> QlStatus>(f: F) -> QlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(QlStatus::Panic, "internal panic".into()))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QlStatus> {
    if s.is_null() {
        return Err(fail(QlStatus::NullPointer, "null string argument".into()));
    }
    // SAFETY: caller passes a NUL-terminated string.
    CStr::from_ptr(s).to_str().map_err(|_| fail(QlStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> QlStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            QlStatus::Ok
        }
        Err(_) => fail(QlStatus::Panic, "output contained NUL".into()),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(QlStatus::NullPointer, format!("{} is null", stringify!($p)));
        })+
    };
}

/// Last error on this thread as a newly allocated JSON string, or NULL.
#[no_mangle]
pub extern "C" fn ql_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ql_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse and validate a game from `{"n": .., "maximal_short": [[..]]}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_game_from_json(json: *const c_char, out: *mut *mut QlGame) -> QlStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match io::parse_game(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(QlGame(g)));
                QlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Short-set game of a generic length vector such as `"1,1,1,1,1"`.
///
/// # Safety
/// `csv` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_game_from_lengths(csv: *const c_char, out: *mut *mut QlGame) -> QlStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(csv) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match LengthVector::parse_csv(text).and_then(|l| l.short_sets()) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(QlGame(g)));
                QlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `game` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ql_game_free(game: *mut QlGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Ground set size, 0 for NULL.
///
/// # Safety
/// `game` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ql_game_n(game: *const QlGame) -> size_t {
    game.as_ref().map_or(0, |g| g.0.n())
}

/// Bit `i - 1` of `mask` stands for element `i`.
///
/// # Safety
/// `game` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_game_is_short(game: *const QlGame, mask: u32, out: *mut bool) -> QlStatus {
    guard(|| {
        non_null!(game, out);
        let g = &(*game).0;
        if !Subset(mask).fits(g.n()) {
            return fail(QlStatus::Domain, format!("mask {mask:#x} exceeds [{}]", g.n()));
        }
        *out = g.is_short(Subset(mask));
        QlStatus::Ok
    })
}

/// # Safety
/// `game` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_game_to_json(game: *const QlGame, out: *mut *mut c_char) -> QlStatus {
    guard(|| {
        non_null!(game, out);
        write_string(out, io::game_to_json(&(*game).0).to_string())
    })
}

/// Flip the maximal short set `mask` into a new game.
///
/// # Safety
/// `game` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_game_flip(game: *const QlGame, mask: u32, out: *mut *mut QlGame) -> QlStatus {
    guard(|| {
        non_null!(game, out);
        match (*game).0.flip(Subset(mask)) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(QlGame(g)));
                QlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Realization or Farkas certificate as JSON.
///
/// # Safety
/// `game` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_game_realize(game: *const QlGame, out: *mut *mut c_char) -> QlStatus {
    guard(|| {
        non_null!(game, out);
        match io::realization_to_json(&(*game).0) {
            Ok(v) => write_string(out, v.to_string()),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `game` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_complex_build(
    game: *const QlGame,
    variant: QlVariant,
    out: *mut *mut QlComplex,
) -> QlStatus {
    guard(|| {
        non_null!(game, out);
        let v = match variant {
            QlVariant::Moduli => Variant::Moduli,
            QlVariant::Stable => Variant::Stable,
        };
        *out = Box::into_raw(Box::new(QlComplex(CellComplex::build(&(*game).0, v))));
        QlStatus::Ok
    })
}

/// # Safety
/// `complex` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ql_complex_free(complex: *mut QlComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Number of cells, 0 for NULL.
///
/// # Safety
/// `complex` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ql_complex_cell_count(complex: *const QlComplex) -> size_t {
    complex.as_ref().map_or(0, |x| x.0.len())
}

/// Euler characteristic, 0 for NULL.
///
/// # Safety
/// `complex` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ql_complex_euler(complex: *const QlComplex) -> i64 {
    complex.as_ref().map_or(0, |x| x.0.euler_characteristic())
}

/// Copy the f-vector into `buf`. `len` receives the full length; if it
/// exceeds `cap` nothing is copied and `BufferTooSmall` is returned.
///
/// # Safety
/// `complex` must be a live handle; `buf` must hold `cap` entries; `len`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_complex_f_vector(
    complex: *const QlComplex,
    buf: *mut size_t,
    cap: size_t,
    len: *mut size_t,
) -> QlStatus {
    guard(|| {
        non_null!(complex, len);
        let f = (*complex).0.f_vector();
        *len = f.len();
        if f.len() > cap {
            return fail(QlStatus::BufferTooSmall, format!("need {} entries", f.len()));
        }
        if !f.is_empty() {
            non_null!(buf);
            ptr::copy_nonoverlapping(f.as_ptr(), buf, f.len());
        }
        QlStatus::Ok
    })
}

/// `{"betti": [..], "torsion": [[..]]}` of the complex.
///
/// # Safety
/// `complex` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_complex_homology(complex: *const QlComplex, out: *mut *mut c_char) -> QlStatus {
    guard(|| {
        non_null!(complex, out);
        match cellular_homology(&(*complex).0) {
            Ok(h) => write_string(out, serde_json::to_string(&h).expect("JSON values serialize")),
            Err(e) => from_error(e),
        }
    })
}

/// Full dump: cells with labels and dimensions, covering pairs.
///
/// # Safety
/// `complex` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_complex_to_json(complex: *const QlComplex, out: *mut *mut c_char) -> QlStatus {
    guard(|| {
        non_null!(complex, out);
        write_string(out, io::complex_to_json(&(*complex).0).to_string())
    })
}
