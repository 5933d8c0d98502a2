//! C ABI over the `polychrome` library.
//!
//! Colorings are opaque heap handles released with [`pc_coloring_free`].
//! Every fallible call returns a [`PcStatus`]; on `PC_STATUS_INVALID`,
//! `PC_STATUS_NULL` or `PC_STATUS_PANIC` a message is available from
//! [`pc_last_error`] on the same thread. Strings handed out by the library
//! are released with [`pc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Instant;

use polychrome::bounds;
use polychrome::certificate::Certificate;
use polychrome::search::{find_coloring, SearchOptions, SearchStatus};
use polychrome::{fixture, is_polychromatic_with, CheckOptions, CountingVector, Error, LinearColoring, XRange};

/// Opaque coloring handle.
pub struct PcColoring(LinearColoring);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcStatus {
    /// Success; for checks and searches, the positive outcome.
    Ok = 0,
    /// Not polychromatic, or no coloring exists.
    Negative = 1,
    /// Bad argument or input data.
    Invalid = 2,
    /// Budget or resource limit reached before a verdict.
    Undecided = 3,
    /// A required pointer was null.
    Null = 4,
    /// The library panicked; this is a bug.
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(e: Error) -> PcStatus {
    let status = match e {
        Error::Resource(_) => PcStatus::Undecided,
        _ => PcStatus::Invalid,
    };
    set_error(e.to_string());
    status
}

fn null(what: &str) -> PcStatus {
    set_error(format!("{what} is null"));
    PcStatus::Null
}

fn guard(f: impl FnOnce() -> PcStatus) -> PcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            PcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, PcStatus> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        PcStatus::Invalid
    })
}

unsafe fn hand_out(c: LinearColoring, out: *mut *mut PcColoring) -> PcStatus {
    *out = Box::into_raw(Box::new(PcColoring(c)));
    PcStatus::Ok
}

/// Builds a coloring over `Z/moduli[0] ⊕ … ⊕ Z/moduli[rank-1]` from `ell+1`
/// columns stored row by row in `columns` (`(ell+1) * rank` entries, any sign).
///
/// # Safety
/// `moduli` must point to `rank` values, `columns` to `(ell+1) * rank` values
/// (either may be null when `rank` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pc_coloring_new(
    ell: usize,
    moduli: *const u64,
    rank: usize,
    columns: *const i64,
    out: *mut *mut PcColoring,
) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        if rank > 0 && (moduli.is_null() || columns.is_null()) {
            return null("moduli or columns");
        }
        let moduli: &[u64] = if rank == 0 { &[] } else { std::slice::from_raw_parts(moduli, rank) };
        let flat: &[i64] = if rank == 0 { &[] } else { std::slice::from_raw_parts(columns, (ell + 1) * rank) };
        let cols: Vec<&[i64]> = if rank == 0 { vec![&[]; ell + 1] } else { flat.chunks(rank).collect() };
        match LinearColoring::from_raw(ell, moduli, &cols) {
            Ok(c) => hand_out(c, out),
            Err(e) => fail(e),
        }
    })
}

/// Parses a coloring spec (or certificate) from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_coloring_from_json(json: *const c_char, out: *mut *mut PcColoring) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let text = match read_str(json, "json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match LinearColoring::from_spec_json(text) {
            Ok(c) => hand_out(c, out),
            Err(e) => fail(e),
        }
    })
}

/// Loads a built-in coloring such as `"chi26"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_coloring_fixture(name: *const c_char, out: *mut *mut PcColoring) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let name = match read_str(name, "name") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match fixture(name) {
            Ok(c) => hand_out(c, out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `c` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn pc_coloring_free(c: *mut PcColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of colors, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pc_coloring_colors(c: *const PcColoring) -> u64 {
    c.as_ref().map_or(0, |c| c.0.colors())
}

/// Number of group components.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pc_coloring_rank(c: *const PcColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.group().rank())
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pc_coloring_ell(c: *const PcColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.ell())
}

/// Colors the counting vector `v` (`ell+1` entries) and writes the `rank` residues to `out`.
///
/// # Safety
/// `c` must be a live handle, `v` must hold `len` values and `out` must hold `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn pc_coloring_evaluate(
    c: *const PcColoring,
    v: *const u64,
    len: usize,
    out: *mut u64,
    out_len: usize,
) -> PcStatus {
    guard(|| {
        let Some(c) = c.as_ref() else { return null("coloring") };
        if v.is_null() && len > 0 {
            return null("v");
        }
        let v = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(v, len).to_vec() };
        let color = match c.0.evaluate(&CountingVector(v)) {
            Ok(g) => g,
            Err(e) => return fail(e),
        };
        if out_len < color.0.len() || (out.is_null() && !color.0.is_empty()) {
            set_error(format!("output buffer needs {} entries", color.0.len()));
            return PcStatus::Invalid;
        }
        for (i, &x) in color.0.iter().enumerate() {
            *out.add(i) = x;
        }
        PcStatus::Ok
    })
}

/// Checks whether `c` is `d`-polychromatic. Returns `PC_STATUS_OK` if it is and
/// `PC_STATUS_NEGATIVE` if not; in the latter case the witness counting vector
/// (`d+1` entries) is copied to `witness` when `witness_cap` allows and its
/// length is stored in `witness_len`. Either output may be null.
///
/// # Safety
/// `c` must be a live handle; `witness` must hold `witness_cap` values.
#[no_mangle]
pub unsafe extern "C" fn pc_is_polychromatic(
    c: *const PcColoring,
    d: usize,
    paper_range: bool,
    witness: *mut u64,
    witness_cap: usize,
    witness_len: *mut usize,
) -> PcStatus {
    guard(|| {
        let Some(c) = c.as_ref() else { return null("coloring") };
        let range = if paper_range { XRange::Paper } else { XRange::Exponent };
        let verdict = match is_polychromatic_with(&c.0, d, CheckOptions { range, exhaustive: false }) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        if verdict.polychromatic {
            if !witness_len.is_null() {
                *witness_len = 0;
            }
            return PcStatus::Ok;
        }
        let w = verdict.witness.expect("negative verdicts carry a witness");
        if !witness_len.is_null() {
            *witness_len = w.len();
        }
        if !witness.is_null() && witness_cap >= w.len() {
            for (i, &x) in w.0.iter().enumerate() {
                *witness.add(i) = x;
            }
        }
        PcStatus::Negative
    })
}

/// Searches all linear `Q_ell`-colorings with `colors` colors. `threads = 0`
/// uses every core; `budget = 0` means unlimited. On `PC_STATUS_OK` the first
/// polychromatic coloring is stored in `out`; `PC_STATUS_NEGATIVE` means none
/// exists and `PC_STATUS_UNDECIDED` that the budget ran out.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pc_find_coloring(
    ell: usize,
    d: usize,
    colors: u64,
    threads: usize,
    budget: u64,
    out: *mut *mut PcColoring,
) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        *out = ptr::null_mut();
        let opts = SearchOptions {
            threads: (threads > 0).then_some(threads),
            budget: (budget > 0).then_some(budget),
            ..Default::default()
        };
        let result = match find_coloring(ell, d, colors, &opts) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        match result.status {
            SearchStatus::Found => match result.found.expect("found").to_coloring(ell) {
                Ok(c) => hand_out(c, out),
                Err(e) => fail(e),
            },
            SearchStatus::NoneExists => PcStatus::Negative,
            SearchStatus::Undecided => PcStatus::Undecided,
        }
    })
}

/// Colors of the best basic coloring, or 0 outside `1 <= ell <= d`.
#[no_mangle]
pub extern "C" fn pc_p_bas(ell: u64, d: u64) -> u64 {
    bounds::p_bas(ell, d).unwrap_or(0)
}

/// `C(d+1, ell+1)`, or 0 outside `1 <= ell <= d`.
#[no_mangle]
pub extern "C" fn pc_upper_os(ell: u64, d: u64) -> u64 {
    bounds::upper_os(ell, d).unwrap_or(0)
}

/// Verifies `c` at dimension `d` and stores the certificate JSON in `out`
/// (release with [`pc_string_free`]). The status reflects the verdict as in
/// [`pc_is_polychromatic`].
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_certificate_json(c: *const PcColoring, d: usize, out: *mut *mut c_char) -> PcStatus {
    guard(|| {
        let Some(c) = c.as_ref() else { return null("coloring") };
        if out.is_null() {
            return null("out");
        }
        *out = ptr::null_mut();
        let started = Instant::now();
        let verdict = match is_polychromatic_with(&c.0, d, CheckOptions::default()) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        let cert = Certificate::from_verdict(&c.0, d, &verdict, XRange::Exponent, started.elapsed());
        let json = match cert.to_json() {
            Ok(j) => j,
            Err(e) => return fail(e),
        };
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        if verdict.polychromatic {
            PcStatus::Ok
        } else {
            PcStatus::Negative
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
