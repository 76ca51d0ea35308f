//! C ABI over `nervelab`.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or
//! `*_new` functions and released with the matching `*_free`. Every fallible
//! call returns an [`NlStatus`]; on failure a message for the calling thread
//! is available from [`nl_last_error`] until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nervelab::mmspace::{cheeger_radius_r, circle_space, parse_space, torus_space, CheegerMode, CheegerOptions};
use nervelab::nerve::{net_to_nerve, NerveParams};
use nervelab::numeric::Rational;
use nervelab::simplicial::{betti_numbers, SimplicialComplex};
use nervelab::{Error, FiniteMMSpace};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Malformed = 3,
    Contract = 4,
    Parse = 5,
    Io = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque simplicial complex.
pub struct NlComplex(SimplicialComplex);

/// Opaque finite metric measure space.
pub struct NlSpace(FiniteMMSpace);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: NlStatus, msg: &str) -> NlStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> NlStatus {
    let status = match &e {
        Error::Malformed(_) | Error::Triangle { .. } => NlStatus::Malformed,
        Error::Contract(_) => NlStatus::Contract,
        Error::Parse { .. } => NlStatus::Parse,
        Error::Io(_) => NlStatus::Io,
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> NlStatus) -> NlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(NlStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, NlStatus> {
    if s.is_null() {
        return Err(fail(NlStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(NlStatus::InvalidUtf8, "string is not UTF-8"))
}

fn rational(num: i64, den: i64) -> Result<Rational, NlStatus> {
    if den == 0 {
        return Err(fail(NlStatus::Contract, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Message of the last failing call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn nl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the text complex format (one simplex per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_complex_parse(text: *const c_char, out: *mut *mut NlComplex) -> NlStatus {
    guard(|| {
        if out.is_null() {
            return fail(NlStatus::NullPointer, "null output");
        }
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match SimplicialComplex::parse(s) {
            Ok(k) => {
                *out = Box::into_raw(Box::new(NlComplex(k)));
                NlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds a complex from `count` simplices stored back to back in
/// `vertices`, the `i`-th having `sizes[i]` vertices.
///
/// # Safety
/// `vertices` must hold the sum of `sizes[0..count]` entries and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nl_complex_from_simplices(
    vertices: *const u32,
    sizes: *const usize,
    count: usize,
    max_dim: usize,
    out: *mut *mut NlComplex,
) -> NlStatus {
    guard(|| {
        if out.is_null() || (count > 0 && (vertices.is_null() || sizes.is_null())) {
            return fail(NlStatus::NullPointer, "null argument");
        }
        let sizes = if count == 0 { &[][..] } else { std::slice::from_raw_parts(sizes, count) };
        let total: usize = sizes.iter().sum();
        let flat = if total == 0 { &[][..] } else { std::slice::from_raw_parts(vertices, total) };
        let mut simplices = Vec::with_capacity(count);
        let mut at = 0;
        for &s in sizes {
            simplices.push(flat[at..at + s].to_vec());
            at += s;
        }
        match SimplicialComplex::from_maximal(&simplices, max_dim) {
            Ok(k) => {
                *out = Box::into_raw(Box::new(NlComplex(k)));
                NlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `complex` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nl_complex_free(complex: *mut NlComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Number of vertices, 0 for null.
///
/// # Safety
/// `complex` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nl_complex_vertex_count(complex: *const NlComplex) -> usize {
    complex.as_ref().map_or(0, |k| k.0.vertex_count())
}

/// Number of `d`-simplices, 0 for null.
///
/// # Safety
/// `complex` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nl_complex_count(complex: *const NlComplex, d: usize) -> usize {
    complex.as_ref().map_or(0, |k| k.0.count(d))
}

/// Writes `b_0..=b_up_to` into `out`, which must have room for `up_to + 1` values.
///
/// # Safety
/// `complex` must be a live handle and `out` must point to `out_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn nl_complex_betti(
    complex: *const NlComplex,
    up_to: usize,
    out: *mut usize,
    out_len: usize,
) -> NlStatus {
    guard(|| {
        let Some(k) = complex.as_ref() else {
            return fail(NlStatus::NullPointer, "null complex");
        };
        if out.is_null() {
            return fail(NlStatus::NullPointer, "null output");
        }
        if out_len < up_to + 1 {
            return fail(NlStatus::BufferTooSmall, "output buffer shorter than up_to + 1");
        }
        let k = if up_to + 1 > k.0.max_dim() { k.0.with_max_dim(up_to + 1) } else { k.0.clone() };
        match betti_numbers(&k, up_to) {
            Ok(b) => {
                std::slice::from_raw_parts_mut(out, b.len()).copy_from_slice(&b);
                NlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Parses the text space format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_space_parse(text: *const c_char, out: *mut *mut NlSpace) -> NlStatus {
    guard(|| {
        if out.is_null() {
            return fail(NlStatus::NullPointer, "null output");
        }
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_space(s) {
            Ok(x) => {
                *out = Box::into_raw(Box::new(NlSpace(x)));
                NlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Circle of circumference `length_num / length_den` sampled every `step_num / step_den`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_space_circle(
    length_num: i64,
    length_den: i64,
    step_num: i64,
    step_den: i64,
    out: *mut *mut NlSpace,
) -> NlStatus {
    guard(|| {
        if out.is_null() {
            return fail(NlStatus::NullPointer, "null output");
        }
        let (l, h) = match (rational(length_num, length_den), rational(step_num, step_den)) {
            (Ok(l), Ok(h)) => (l, h),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match circle_space(l, h) {
            Ok(x) => {
                *out = Box::into_raw(Box::new(NlSpace(x)));
                NlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Square flat torus of side `side_num / side_den` sampled every `step_num / step_den`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_space_torus(
    side_num: i64,
    side_den: i64,
    step_num: i64,
    step_den: i64,
    out: *mut *mut NlSpace,
) -> NlStatus {
    guard(|| {
        if out.is_null() {
            return fail(NlStatus::NullPointer, "null output");
        }
        let (l, h) = match (rational(side_num, side_den), rational(step_num, step_den)) {
            (Ok(l), Ok(h)) => (l, h),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match torus_space(l, h) {
            Ok(x) => {
                *out = Box::into_raw(Box::new(NlSpace(x)));
                NlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `space` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nl_space_free(space: *mut NlSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of points, 0 for null.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nl_space_len(space: *const NlSpace) -> usize {
    space.as_ref().map_or(0, |s| s.0.len())
}

/// Runs the net-to-nerve pipeline with default parameters for `eps` and
/// writes the Betti numbers `b_0..b_{len-1}` to `out`; `len` receives the count.
///
/// # Safety
/// `space` must be a live handle, `out` must have `out_len` writable values and `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nl_nerve_betti(
    space: *const NlSpace,
    eps: f64,
    seed: u64,
    out: *mut usize,
    out_len: usize,
    len: *mut usize,
) -> NlStatus {
    guard(|| {
        let Some(s) = space.as_ref() else {
            return fail(NlStatus::NullPointer, "null space");
        };
        if out.is_null() || len.is_null() {
            return fail(NlStatus::NullPointer, "null output");
        }
        match net_to_nerve(&s.0, &NerveParams::new(eps, seed)) {
            Ok(run) => {
                *len = run.betti.len();
                if out_len < run.betti.len() {
                    return fail(NlStatus::BufferTooSmall, "output buffer too short for the Betti numbers");
                }
                std::slice::from_raw_parts_mut(out, run.betti.len()).copy_from_slice(&run.betti);
                NlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Radius-`r` Cheeger constant as an exact fraction. `heuristic` selects the
/// seeded upper bound instead of exhaustive enumeration.
///
/// # Safety
/// `space` must be a live handle; `num` and `den` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nl_cheeger(
    space: *const NlSpace,
    r: f64,
    heuristic: bool,
    seed: u64,
    num: *mut i64,
    den: *mut i64,
) -> NlStatus {
    guard(|| {
        let Some(s) = space.as_ref() else {
            return fail(NlStatus::NullPointer, "null space");
        };
        if num.is_null() || den.is_null() {
            return fail(NlStatus::NullPointer, "null output");
        }
        let mode = if heuristic { CheegerMode::Heuristic } else { CheegerMode::Exact };
        let options = CheegerOptions { mode, seed, ..Default::default() };
        match cheeger_radius_r(&s.0, r, options) {
            Ok(res) => {
                *num = *res.value.numer();
                *den = *res.value.denom();
                NlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
