//! C ABI over `tpforest`.
//!
//! Matrices are opaque handles owned by the caller and released with
//! `tpf_matrix_free`. Strings returned through out-parameters are
//! heap-allocated UTF-8 and released with `tpf_string_free`.
//!
//! Every function returns a status: `TPF_OK`, `TPF_FAIL` (a check ran and
//! found a negative minor), one of the ABI codes below, or the numeric code
//! of a core error (10 and up). After a non-OK status,
//! `tpf_last_error` describes it until the next call on the same thread.

use std::cell::RefCell;
use std::collections::HashMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tpforest::cli::parse_bindings;
use tpforest::exactalg::{MultiPoly, Var};
use tpforest::tpcheck::{check_hankel_tp, check_tp, TPReport};
use tpforest::triangle::named::named_triangle;
use tpforest::triangle::seqs::sequence;
use tpforest::triangle::{production_matrix, PolyMatrix};
use tpforest::Error;

pub const TPF_OK: i32 = 0;
pub const TPF_FAIL: i32 = 1;
pub const TPF_NULL_POINTER: i32 = 2;
pub const TPF_BAD_UTF8: i32 = 3;
pub const TPF_OUT_OF_RANGE: i32 = 4;
pub const TPF_PANIC: i32 = 5;

/// Opaque square polynomial matrix.
pub struct TpfMatrix(PolyMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Code(i32, String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

type R<T> = std::result::Result<T, Fail>;

fn guard(f: impl FnOnce() -> R<i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(code)) => code,
        Ok(Err(Fail::Code(code, msg))) => {
            set_error(&msg);
            code
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(&e.to_string());
            e.code()
        }
        Err(_) => {
            set_error("internal panic");
            TPF_PANIC
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> R<&'a str> {
    if p.is_null() {
        return Err(Fail::Code(TPF_NULL_POINTER, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Code(TPF_BAD_UTF8, format!("{what} is not UTF-8")))
}

/// `"a=1;q=1+r"`; null or empty means no specialization.
unsafe fn bindings_arg(p: *const c_char) -> R<HashMap<Var, MultiPoly>> {
    if p.is_null() {
        return Ok(HashMap::new());
    }
    let s = str_arg(p, "bindings")?;
    let parts: Vec<String> = s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect();
    Ok(parse_bindings(&parts)?)
}

unsafe fn put<T>(out: *mut T, v: T) -> R<()> {
    if out.is_null() {
        return Err(Fail::Code(TPF_NULL_POINTER, "output pointer is null".into()));
    }
    *out = v;
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

fn report_status(rep: &TPReport) -> R<(i32, String)> {
    let json = serde_json::to_string(rep).map_err(|e| Fail::Code(TPF_PANIC, e.to_string()))?;
    Ok((if rep.passed() { TPF_OK } else { TPF_FAIL }, json))
}

/// Message for the last non-OK status on this thread. Valid until the next
/// call into the library on the same thread; do not free.
#[no_mangle]
pub extern "C" fn tpf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn tpf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build the leading `n x n` window of a named triangle.
///
/// # Safety
/// `name` must be a NUL-terminated string, `bindings` null or one, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpf_triangle_new(name: *const c_char, bindings: *const c_char, n: usize, out: *mut *mut TpfMatrix) -> i32 {
    guard(|| {
        let name = str_arg(name, "name")?;
        let bind = bindings_arg(bindings)?;
        let m = named_triangle(name, &bind, n)?;
        put(out, Box::into_raw(Box::new(TpfMatrix(m))))?;
        Ok(TPF_OK)
    })
}

/// Production matrix of a lower-triangular matrix; one size smaller.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpf_production_matrix(m: *const TpfMatrix, out: *mut *mut TpfMatrix) -> i32 {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| Fail::Code(TPF_NULL_POINTER, "matrix is null".into()))?;
        let pm = production_matrix(&m.0)?;
        put(out, Box::into_raw(Box::new(TpfMatrix(pm))))?;
        Ok(TPF_OK)
    })
}

/// # Safety
/// `m` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn tpf_matrix_free(m: *mut TpfMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Side length, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpf_matrix_size(m: *const TpfMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.size())
}

/// Entry `(i, j)` as a polynomial string.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpf_matrix_entry(m: *const TpfMatrix, i: usize, j: usize, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| Fail::Code(TPF_NULL_POINTER, "matrix is null".into()))?;
        let n = m.0.size();
        if i >= n || j >= n {
            return Err(Fail::Code(TPF_OUT_OF_RANGE, format!("entry ({i}, {j}) outside a {n} x {n} matrix")));
        }
        put(out, c_string(m.0.get(i, j).to_string()))?;
        Ok(TPF_OK)
    })
}

/// Check all minors of order `<= r` in the leading `window x window` part.
/// Returns `TPF_OK` or `TPF_FAIL` with a JSON report in `report_json`.
///
/// # Safety
/// `m` must be a live handle and `report_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpf_check_tp(m: *const TpfMatrix, r: usize, window: usize, report_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| Fail::Code(TPF_NULL_POINTER, "matrix is null".into()))?;
        let (code, json) = report_status(&check_tp(&m.0, r, window)?)?;
        put(report_json, c_string(json))?;
        Ok(code)
    })
}

/// Hankel total-positivity check of a named sequence on an `n x n` window.
///
/// # Safety
/// `seq` must be a NUL-terminated string, `bindings` null or one, and
/// `report_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpf_check_hankel(seq: *const c_char, bindings: *const c_char, n: usize, r: usize, report_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let name = str_arg(seq, "seq")?;
        let bind = bindings_arg(bindings)?;
        let s = sequence(name, &bind, (2 * n).saturating_sub(1))?;
        let (code, json) = report_status(&check_hankel_tp(&s, n, r)?)?;
        put(report_json, c_string(json))?;
        Ok(code)
    })
}

/// Run the command-line front end on `argv[0..argc]` (without a program
/// name). Returns its exit code; the emission goes to `output`.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings and `output` be valid.
#[no_mangle]
pub unsafe extern "C" fn tpf_cli_run(argc: usize, argv: *const *const c_char, output: *mut *mut c_char) -> i32 {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(Fail::Code(TPF_NULL_POINTER, "argv is null".into()));
        }
        let mut args = vec!["tpforest".to_string()];
        for k in 0..argc {
            args.push(str_arg(*argv.add(k), "argument")?.to_string());
        }
        let (code, text) = tpforest::cli::run(args);
        put(output, c_string(text))?;
        Ok(code)
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn tpf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
