//! C ABI for weylpieces.
//!
//! Root systems are opaque handles. Every fallible call returns a status code
//! (`WP_OK` or one of the `WP_ERR_*` values) and writes its result through an
//! out-pointer; results that are documents come back as JSON strings owned
//! by the library and released with [`wp_string_free`]. The message of the
//! last failure on the calling thread is available from
//! [`wp_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weylpieces::cli::{parse_automorphism, parse_subset};
use weylpieces::report::{self, Document};
use weylpieces::{build_root_system, piece_maps, pieces, CartanSpec, Error, RootSystem, Word};

pub const WP_OK: i32 = 0;
/// Bad input: unparsable type, subset, word or automorphism, or a violated precondition.
pub const WP_ERR_CONFIG: i32 = 2;
/// The requested enumeration exceeds the size guard.
pub const WP_ERR_GUARD: i32 = 3;
/// A checked invariant failed.
pub const WP_ERR_CONTRACT: i32 = 4;
pub const WP_ERR_NULL_POINTER: i32 = 5;
pub const WP_ERR_INVALID_UTF8: i32 = 6;
/// A Rust panic was caught at the boundary.
pub const WP_ERR_PANIC: i32 = 7;

/// Opaque root system handle.
pub struct WpRootSystem {
    inner: RootSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(code: i32, msg: &str) -> i32 {
    set_error(msg);
    code
}

fn from_error(e: &Error) -> i32 {
    fail(e.exit_code(), &e.to_string())
}

/// Runs `f`, mapping errors and panics to status codes.
fn guarded(f: impl FnOnce() -> Result<(), i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WP_OK,
        Ok(Err(code)) => code,
        Err(_) => fail(WP_ERR_PANIC, "panic inside weylpieces"),
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, i32> {
    if p.is_null() {
        return Err(fail(WP_ERR_NULL_POINTER, &format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(WP_ERR_INVALID_UTF8, &format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a>(rs: *const WpRootSystem) -> Result<&'a RootSystem, i32> {
    rs.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(WP_ERR_NULL_POINTER, "root system handle is null"))
}

unsafe fn write_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), i32> {
    let text = serde_json::to_string(value).map_err(|e| fail(WP_ERR_CONTRACT, &e.to_string()))?;
    let c = CString::new(text).map_err(|_| fail(WP_ERR_CONTRACT, "JSON contained a nul byte"))?;
    *out = c.into_raw();
    Ok(())
}

fn check<T>(r: weylpieces::Result<T>) -> Result<T, i32> {
    r.map_err(|e| from_error(&e))
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Format version of the JSON documents, as a static string.
#[no_mangle]
pub extern "C" fn wp_format_version() -> *const c_char {
    static VERSION: &[u8] = b"weylpieces/1\0";
    VERSION.as_ptr() as *const c_char
}

/// Builds the root system of a Cartan type such as `"B3"` or `"A2xA2"`.
///
/// # Safety
/// `cartan_type` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_root_system_new(cartan_type: *const c_char, out: *mut *mut WpRootSystem) -> i32 {
    guarded(|| {
        if out.is_null() {
            return Err(fail(WP_ERR_NULL_POINTER, "out is null"));
        }
        let t = read_str(cartan_type, "cartan_type")?;
        let spec: CartanSpec = check(t.parse())?;
        let inner = check(build_root_system(&spec))?;
        *out = Box::into_raw(Box::new(WpRootSystem { inner }));
        Ok(())
    })
}

/// Sets the largest enumeration size the handle will attempt.
///
/// # Safety
/// `rs` must come from [`wp_root_system_new`].
#[no_mangle]
pub unsafe extern "C" fn wp_root_system_set_guard(rs: *mut WpRootSystem, guard: u64) -> i32 {
    guarded(|| {
        let h = rs.as_mut().ok_or_else(|| fail(WP_ERR_NULL_POINTER, "root system handle is null"))?;
        h.inner = h.inner.clone().with_guard(guard);
        Ok(())
    })
}

/// # Safety
/// `rs` must come from [`wp_root_system_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wp_root_system_free(rs: *mut WpRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Rank, or 0 for a null handle.
///
/// # Safety
/// `rs` must be null or come from [`wp_root_system_new`].
#[no_mangle]
pub unsafe extern "C" fn wp_root_system_rank(rs: *const WpRootSystem) -> usize {
    rs.as_ref().map_or(0, |h| h.inner.rank())
}

/// Number of roots, or 0 for a null handle.
///
/// # Safety
/// `rs` must be null or come from [`wp_root_system_new`].
#[no_mangle]
pub unsafe extern "C" fn wp_root_system_num_roots(rs: *const WpRootSystem) -> usize {
    rs.as_ref().map_or(0, |h| h.inner.roots().len())
}

/// Order of the Weyl group.
///
/// # Safety
/// `rs` must come from [`wp_root_system_new`] and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_root_system_weyl_order(rs: *const WpRootSystem, out: *mut u64) -> i32 {
    guarded(|| {
        let rs = handle(rs)?;
        if out.is_null() {
            return Err(fail(WP_ERR_NULL_POINTER, "out is null"));
        }
        let order = rs.weyl_order().ok_or_else(|| fail(WP_ERR_CONFIG, "order unknown for this system"))?;
        *out = u64::try_from(order).map_err(|_| fail(WP_ERR_GUARD, "order does not fit in 64 bits"))?;
        Ok(())
    })
}

struct Inputs<'a> {
    rs: &'a RootSystem,
    j: weylpieces::IndexSubset,
    delta: weylpieces::RootAutomorphism,
}

unsafe fn inputs<'a>(
    rs: *const WpRootSystem,
    j: *const c_char,
    delta: *const c_char,
    out: *mut *mut c_char,
) -> Result<Inputs<'a>, i32> {
    let rs = handle(rs)?;
    if out.is_null() {
        return Err(fail(WP_ERR_NULL_POINTER, "out is null"));
    }
    let j = check(parse_subset(read_str(j, "J")?, rs.rank()))?;
    let delta = check(parse_automorphism(rs, read_str(delta, "delta")?))?;
    Ok(Inputs { rs, j, delta })
}

unsafe fn element(rs: &RootSystem, w: *const c_char, what: &str) -> Result<weylpieces::WeylElement, i32> {
    let word: Word = check(read_str(w, what)?.parse())?;
    check(rs.from_word(&word))
}

/// Pieces for every `w ∈ W^{δ(J)}` as a JSON document.
///
/// `j` is a 1-based index list such as `"1,3"`; `delta` is `id`, `flip`,
/// `neg`, `productSwap`, or `@path` to a matrix file.
///
/// # Safety
/// Pointers must be valid; strings nul-terminated. Free `*out_json` with
/// [`wp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn wp_enumerate_pieces_json(
    rs: *const WpRootSystem,
    j: *const c_char,
    delta: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let inp = inputs(rs, j, delta, out_json)?;
        let ps = check(pieces::enumerate_pieces(inp.rs, inp.j, &inp.delta))?;
        let records = ps.iter().map(|p| report::piece_record(inp.rs, p)).collect();
        write_json(out_json, &Document::new("enumerate", inp.rs, inp.j, &inp.delta, records))
    })
}

/// `ε_{J,δ}(w)` with its witness and dual sequence as a JSON document.
///
/// # Safety
/// As [`wp_enumerate_pieces_json`]; `w` is a word such as `"1,2"` or `"e"`.
#[no_mangle]
pub unsafe extern "C" fn wp_epsilon_json(
    rs: *const WpRootSystem,
    j: *const c_char,
    delta: *const c_char,
    w: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let inp = inputs(rs, j, delta, out_json)?;
        let w = element(inp.rs, w, "w")?;
        let (v, dual) = check(piece_maps::epsilon(inp.rs, inp.j, &inp.delta, &w))?;
        let cert = check(piece_maps::epsilon_oracle(inp.rs, inp.j, &inp.delta, &w))?;
        if cert.v != v {
            return Err(fail(WP_ERR_CONTRACT, "dual sequence and W_J scan disagree"));
        }
        let rec = report::epsilon_record(inp.rs, &cert, Some(&dual));
        write_json(out_json, &Document::new("epsilon", inp.rs, inp.j, &inp.delta, vec![rec]))
    })
}

/// The piece index of `x` with its trace as a JSON document.
///
/// # Safety
/// As [`wp_epsilon_json`].
#[no_mangle]
pub unsafe extern "C" fn wp_classify_json(
    rs: *const WpRootSystem,
    j: *const c_char,
    delta: *const c_char,
    x: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let inp = inputs(rs, j, delta, out_json)?;
        let x = element(inp.rs, x, "x")?;
        let trace = check(pieces::classify_trace(inp.rs, inp.j, &inp.delta, &x))?;
        let rec = report::classify_record(inp.rs, &x, &trace, true);
        write_json(out_json, &Document::new("classify", inp.rs, inp.j, &inp.delta, vec![rec]))
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn wp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
