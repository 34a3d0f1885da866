//! C ABI over `hdroute`.
//!
//! Graphs live behind an opaque `HdrGraph` handle. Every fallible call
//! returns an `HdrStatus`; on failure the message is kept per thread and
//! can be fetched with `hdr_last_error`. Strings handed out by the library
//! must be released with `hdr_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hdroute::cycles::{count_elementary_cycles, CycleCount};
use hdroute::router::{best_hd_simple_path, hd_path_decide};
use hdroute::sat::{parse_dimacs, reduce};
use hdroute::{Capacity, Digraph, Error};
use serde_json::json;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    InvalidParameter = 5,
    NoPath = 6,
    LimitExceeded = 7,
    Internal = 8,
}

/// Opaque graph handle.
pub struct HdrGraph {
    graph: Digraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> HdrStatus {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::NotThreeCnf(_) => HdrStatus::Parse,
        Error::InvalidGraph(_) => HdrStatus::InvalidGraph,
        Error::InvalidParameter(_) => HdrStatus::InvalidParameter,
        Error::NoPath => HdrStatus::NoPath,
        Error::LimitExceeded(_) | Error::CycleBudgetExceeded(_) => HdrStatus::LimitExceeded,
        _ => HdrStatus::Internal,
    }
}

fn fail(status: HdrStatus, msg: &str) -> HdrStatus {
    set_error(msg);
    status
}

/// Runs `body`, turning errors and panics into status codes.
fn guard<F>(body: F) -> HdrStatus
where
    F: FnOnce() -> Result<(), HdrStatus>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HdrStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(HdrStatus::Internal, "panic inside hdroute"),
    }
}

fn lift<T>(r: hdroute::Result<T>) -> Result<T, HdrStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HdrStatus> {
    if p.is_null() {
        return Err(fail(HdrStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(HdrStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn graph_ref<'a>(g: *const HdrGraph) -> Result<&'a Digraph, HdrStatus> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| fail(HdrStatus::NullPointer, "null graph handle"))
}

fn out_ptr<T>(p: *mut T) -> Result<(), HdrStatus> {
    if p.is_null() {
        Err(fail(HdrStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).expect("JSON has no interior NULs").into_raw()
}

/// Parses a JSON graph document into a new handle stored in `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hdr_graph_from_json(json: *const c_char, out: *mut *mut HdrGraph) -> HdrStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let text = read_str(json)?;
        let graph = lift(Digraph::from_json(text))?;
        *out = Box::into_raw(Box::new(HdrGraph { graph }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `graph` must come from `hdr_graph_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hdr_graph_free(graph: *mut HdrGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hdr_graph_vertex_count(graph: *const HdrGraph) -> usize {
    graph.as_ref().map_or(0, |h| h.graph.vertex_count())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hdr_graph_edge_count(graph: *const HdrGraph) -> usize {
    graph.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// Best HD simple route as JSON `{"path":[...],"hd_capacity":"p/q","iterations":n}`.
///
/// # Safety
/// `graph` must be a live handle and `out_json` a valid pointer. The string
/// written to `*out_json` must be released with `hdr_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hdr_route(graph: *const HdrGraph, out_json: *mut *mut c_char) -> HdrStatus {
    guard(|| {
        out_ptr(out_json)?;
        *out_json = ptr::null_mut();
        let g = graph_ref(graph)?;
        let r = lift(best_hd_simple_path(g))?;
        let doc = json!({
            "path": r.path.names(g),
            "hd_capacity": r.hd_capacity.to_fraction_string(),
            "iterations": r.iterations,
        });
        *out_json = into_c_string(doc.to_string());
        Ok(())
    })
}

/// Whether a simple route reaches `threshold` (decimal or `p/q`).
///
/// # Safety
/// `graph` must be a live handle, `threshold` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hdr_decide(graph: *const HdrGraph, threshold: *const c_char, out: *mut bool) -> HdrStatus {
    guard(|| {
        out_ptr(out)?;
        let g = graph_ref(graph)?;
        let t: Capacity = lift(read_str(threshold)?.parse())?;
        *out = lift(hd_path_decide(g, &t))?;
        Ok(())
    })
}

/// Counts elementary cycles up to `limit`. When the count passes the limit
/// `*exceeds` is set and `*count` is left at 0.
///
/// # Safety
/// `graph` must be a live handle; `count` and `exceeds` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hdr_cycles(graph: *const HdrGraph, limit: u64, count: *mut u64, exceeds: *mut bool) -> HdrStatus {
    guard(|| {
        out_ptr(count)?;
        out_ptr(exceeds)?;
        let g = graph_ref(graph)?;
        match lift(count_elementary_cycles(g, limit))? {
            CycleCount::Exact(n) => {
                *count = n;
                *exceeds = false;
            }
            CycleCount::ExceedsLimit => {
                *count = 0;
                *exceeds = true;
            }
        }
        Ok(())
    })
}

/// Builds the HD-path instance of a DIMACS 3-CNF formula at scale `z` and
/// writes its JSON graph document (with the threshold) to `*out_json`.
///
/// # Safety
/// `dimacs` and `z` must be NUL-terminated; `out_json` valid. Release the
/// result with `hdr_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hdr_reduce(dimacs: *const c_char, z: *const c_char, out_json: *mut *mut c_char) -> HdrStatus {
    guard(|| {
        out_ptr(out_json)?;
        *out_json = ptr::null_mut();
        let inst = lift(parse_dimacs(read_str(dimacs)?))?;
        let z: Capacity = lift(read_str(z)?.parse())?;
        let red = lift(reduce(&inst, &z))?;
        let mut doc = red.graph.to_doc();
        doc.threshold = Some(red.threshold);
        let text = serde_json::to_string(&doc).map_err(|e| fail(HdrStatus::Internal, &e.to_string()))?;
        *out_json = into_c_string(text);
        Ok(())
    })
}

/// Copy of the calling thread's last error message, or null if none.
/// Release with `hdr_string_free`.
#[no_mangle]
pub extern "C" fn hdr_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hdr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
