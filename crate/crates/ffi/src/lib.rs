//! C ABI surface for the shortest path graph library.
//!
//! Conventions, uniformly applied:
//!
//! * Graphs and computed results live behind opaque handles; callers free
//!   them with the matching `*_free` function, exactly once.
//! * Strings returned by the library are NUL terminated, UTF-8, owned by
//!   the caller, and released with [`spg_string_free`].
//! * Fallible calls either return an error code directly or return
//!   null/negative and store the failure for [`spg_last_error_code`] and
//!   [`spg_last_error_message`]. Every entry point clears the stored
//!   error on success.
//! * Panics never cross the boundary; they surface as [`SPG_ERR_PANIC`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spg_core::budget::{WorkBudget, DEFAULT_WORK_BUDGET};
use spg_core::classifier::classify;
use spg_core::error::Error;
use spg_core::geodesics::{build_spg, SpgGraph, DEFAULT_MAX_PATHS};
use spg_core::graph::Graph;
use spg_core::io::{read_graph, spg_to_json};
use spg_core::synthesis::{synthesize, SynthesisMode};

/// The call succeeded.
pub const SPG_OK: i32 = 0;
/// Malformed input: bad text, vertex out of range, self-loop, or equal
/// endpoints.
pub const SPG_ERR_INVALID_INPUT: i32 = 1;
/// The requested endpoints are not connected.
pub const SPG_ERR_UNREACHABLE: i32 = 2;
/// A geodesic cap or work budget was exhausted.
pub const SPG_ERR_CAP_EXCEEDED: i32 = 3;
/// An operation precondition failed (for example, synthesizing a graph
/// that is not a shortest path graph).
pub const SPG_ERR_PRECONDITION: i32 = 4;
/// The library detected an internal inconsistency.
pub const SPG_ERR_INTERNAL: i32 = 5;
/// A required pointer argument was null.
pub const SPG_ERR_NULL_ARG: i32 = 6;
/// A panic was caught at the boundary.
pub const SPG_ERR_PANIC: i32 = 7;
/// A string argument was not valid UTF-8.
pub const SPG_ERR_UTF8: i32 = 8;

/// Opaque undirected graph handle.
pub struct SpgGraphHandle {
    graph: Graph,
}

/// Opaque computed shortest path graph.
pub struct SpgResultHandle {
    spg: SpgGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<(i32, CString)>> = const { RefCell::new(None) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn set_error(code: i32, message: &str) -> i32 {
    let message = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message unavailable").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some((code, message)));
    code
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Unreachable { .. } => SPG_ERR_UNREACHABLE,
        Error::CapExceeded { .. } | Error::BudgetExhausted => SPG_ERR_CAP_EXCEEDED,
        Error::Precondition { .. } => SPG_ERR_PRECONDITION,
        Error::InternalInconsistency(_) => SPG_ERR_INTERNAL,
        _ => SPG_ERR_INVALID_INPUT,
    }
}

fn set_error_from(e: &Error) -> i32 {
    set_error(code_of(e), &e.to_string())
}

/// Run `f` with panics converted to `SPG_ERR_PANIC`; `on_panic` is the
/// value returned to the caller in that case.
fn guarded<T>(on_panic: T, f: impl FnOnce() -> T) -> T {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(value) => value,
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".into());
            set_error(SPG_ERR_PANIC, &format!("panic at the C boundary: {what}"));
            on_panic
        }
    }
}

fn export_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(std::ptr::null_mut())
}

unsafe fn import_str<'a>(ptr: *const c_char) -> Result<&'a str, i32> {
    if ptr.is_null() {
        return Err(set_error(SPG_ERR_NULL_ARG, "string argument is null"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| set_error(SPG_ERR_UTF8, "string argument is not valid UTF-8"))
}

/// Create an empty graph on `n` vertices, numbered `0..n`. Never fails;
/// free with [`spg_graph_free`].
#[no_mangle]
pub extern "C" fn spg_graph_new(n: u32) -> *mut SpgGraphHandle {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        Box::into_raw(Box::new(SpgGraphHandle { graph: Graph::new(n as usize) }))
    })
}

/// Parse a graph from text in either supported format (edge list or
/// JSON). Returns null and stores an error on failure.
///
/// # Safety
/// `text` must be a valid NUL-terminated string or null.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_parse(text: *const c_char) -> *mut SpgGraphHandle {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        let text = match import_str(text) {
            Ok(t) => t,
            Err(_) => return std::ptr::null_mut(),
        };
        match read_graph(text) {
            Ok(graph) => Box::into_raw(Box::new(SpgGraphHandle { graph })),
            Err(e) => {
                set_error_from(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Add the undirected edge `u v`. Adding an existing edge is a no-op.
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_add_edge(g: *mut SpgGraphHandle, u: u32, v: u32) -> i32 {
    guarded(SPG_ERR_PANIC, || {
        clear_error();
        let Some(handle) = g.as_mut() else {
            return set_error(SPG_ERR_NULL_ARG, "graph handle is null");
        };
        match handle.graph.add_edge(u, v) {
            Ok(()) => SPG_OK,
            Err(e) => set_error_from(&e),
        }
    })
}

/// Number of vertices, or -1 on a null handle.
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_order(g: *const SpgGraphHandle) -> i64 {
    guarded(-1, || {
        clear_error();
        match g.as_ref() {
            Some(handle) => handle.graph.n() as i64,
            None => {
                set_error(SPG_ERR_NULL_ARG, "graph handle is null");
                -1
            }
        }
    })
}

/// Release a graph handle. Null is accepted and ignored.
///
/// # Safety
/// `g` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn spg_graph_free(g: *mut SpgGraphHandle) {
    guarded((), || {
        if !g.is_null() {
            drop(Box::from_raw(g));
        }
    })
}

/// Compute the shortest path graph between `a` and `b`. `max_paths` caps
/// the geodesic count; pass 0 for the default cap. Returns null and
/// stores an error on failure; free the result with [`spg_result_free`].
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn spg_compute(
    g: *const SpgGraphHandle,
    a: u32,
    b: u32,
    max_paths: u64,
) -> *mut SpgResultHandle {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        let Some(handle) = g.as_ref() else {
            set_error(SPG_ERR_NULL_ARG, "graph handle is null");
            return std::ptr::null_mut();
        };
        let cap = if max_paths == 0 { DEFAULT_MAX_PATHS } else { max_paths };
        match build_spg(&handle.graph, a, b, cap) {
            Ok(spg) => Box::into_raw(Box::new(SpgResultHandle { spg })),
            Err(e) => {
                set_error_from(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Number of geodesics (vertices of the result), or -1 on a null handle.
///
/// # Safety
/// `r` must be a live result from this library or null.
#[no_mangle]
pub unsafe extern "C" fn spg_result_order(r: *const SpgResultHandle) -> i64 {
    guarded(-1, || {
        clear_error();
        match r.as_ref() {
            Some(handle) => handle.spg.order() as i64,
            None => {
                set_error(SPG_ERR_NULL_ARG, "result handle is null");
                -1
            }
        }
    })
}

/// Number of labeled edges, or -1 on a null handle.
///
/// # Safety
/// `r` must be a live result from this library or null.
#[no_mangle]
pub unsafe extern "C" fn spg_result_edge_count(r: *const SpgResultHandle) -> i64 {
    guarded(-1, || {
        clear_error();
        match r.as_ref() {
            Some(handle) => handle.spg.edges.len() as i64,
            None => {
                set_error(SPG_ERR_NULL_ARG, "result handle is null");
                -1
            }
        }
    })
}

/// Fetch edge `index` as endpoints and difference index. Out parameters
/// may individually be null to skip them.
///
/// # Safety
/// `r` must be a live result from this library or null; non-null out
/// pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn spg_result_edge(
    r: *const SpgResultHandle,
    index: u64,
    u: *mut u32,
    v: *mut u32,
    level: *mut u32,
) -> i32 {
    guarded(SPG_ERR_PANIC, || {
        clear_error();
        let Some(handle) = r.as_ref() else {
            return set_error(SPG_ERR_NULL_ARG, "result handle is null");
        };
        let Some(&(eu, ev, elevel)) = handle.spg.edges.get(index as usize) else {
            return set_error(
                SPG_ERR_INVALID_INPUT,
                &format!("edge index {index} out of range"),
            );
        };
        if !u.is_null() {
            *u = eu;
        }
        if !v.is_null() {
            *v = ev;
        }
        if !level.is_null() {
            *level = elevel;
        }
        SPG_OK
    })
}

/// Serialize the result as JSON. Returns null and stores an error on a
/// null handle; free with [`spg_string_free`].
///
/// # Safety
/// `r` must be a live result from this library or null.
#[no_mangle]
pub unsafe extern "C" fn spg_result_to_json(r: *const SpgResultHandle) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        match r.as_ref() {
            Some(handle) => export_string(spg_to_json(&handle.spg)),
            None => {
                set_error(SPG_ERR_NULL_ARG, "result handle is null");
                std::ptr::null_mut()
            }
        }
    })
}

/// Release a computed result. Null is accepted and ignored.
///
/// # Safety
/// `r` must be a result from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn spg_result_free(r: *mut SpgResultHandle) {
    guarded((), || {
        if !r.is_null() {
            drop(Box::from_raw(r));
        }
    })
}

/// Classify a graph; returns the verdict as JSON (`status` is
/// `SpgByTheorem`, `NotSpg`, or `UnknownContainsC4`). Returns null and
/// stores an error on failure; free with [`spg_string_free`].
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn spg_classify_json(g: *const SpgGraphHandle) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        let Some(handle) = g.as_ref() else {
            set_error(SPG_ERR_NULL_ARG, "graph handle is null");
            return std::ptr::null_mut();
        };
        let mut budget = WorkBudget::new(DEFAULT_WORK_BUDGET);
        match classify(&handle.graph, &mut budget) {
            Ok(verdict) => match serde_json_string(&verdict) {
                Some(text) => export_string(text),
                None => {
                    set_error(SPG_ERR_INTERNAL, "verdict failed to serialize");
                    std::ptr::null_mut()
                }
            },
            Err(e) => {
                set_error_from(&e);
                std::ptr::null_mut()
            }
        }
    })
}

/// Synthesize a base graph realizing `g`; returns the certificate as
/// JSON. `fast` skips per-step self-checks. Returns null and stores an
/// error on failure (code `SPG_ERR_PRECONDITION` when `g` is refuted or
/// out of the certified range); free with [`spg_string_free`].
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn spg_synthesize_json(g: *const SpgGraphHandle, fast: bool) -> *mut c_char {
    guarded(std::ptr::null_mut(), || {
        clear_error();
        let Some(handle) = g.as_ref() else {
            set_error(SPG_ERR_NULL_ARG, "graph handle is null");
            return std::ptr::null_mut();
        };
        let mode = if fast { SynthesisMode::Fast } else { SynthesisMode::Strict };
        let mut budget = WorkBudget::new(DEFAULT_WORK_BUDGET);
        match synthesize(&handle.graph, mode, &mut budget) {
            Ok(cert) => match serde_json_string(&cert) {
                Some(text) => export_string(text),
                None => {
                    set_error(SPG_ERR_INTERNAL, "certificate failed to serialize");
                    std::ptr::null_mut()
                }
            },
            Err(e) => {
                set_error_from(&e);
                std::ptr::null_mut()
            }
        }
    })
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> Option<String> {
    serde_json::to_string(value).ok()
}

/// Release a string returned by this library. Null is accepted and
/// ignored.
///
/// # Safety
/// `s` must be a string from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn spg_string_free(s: *mut c_char) {
    guarded((), || {
        if !s.is_null() {
            drop(CString::from_raw(s));
        }
    })
}

/// Error code of the most recent failed call on this thread, or
/// `SPG_OK` if the most recent call succeeded.
#[no_mangle]
pub extern "C" fn spg_last_error_code() -> i32 {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(SPG_OK, |(code, _)| *code))
}

/// Message of the most recent failed call on this thread, or null if the
/// most recent call succeeded. Free with [`spg_string_free`].
#[no_mangle]
pub extern "C" fn spg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null_mut(), |(_, msg)| msg.clone().into_raw())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null(), "expected a string");
        let text = CStr::from_ptr(ptr).to_str().expect("library strings are UTF-8").to_owned();
        spg_string_free(ptr);
        text
    }

    fn six_cycle() -> *mut SpgGraphHandle {
        let g = spg_graph_new(6);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)] {
            assert_eq!(unsafe { spg_graph_add_edge(g, u, v) }, SPG_OK);
        }
        g
    }

    #[test]
    fn computes_through_the_handle_api() {
        unsafe {
            let g = spg_graph_new(4);
            for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
                assert_eq!(spg_graph_add_edge(g, u, v), SPG_OK);
            }
            assert_eq!(spg_graph_order(g), 4);
            let r = spg_compute(g, 0, 2, 0);
            assert!(!r.is_null());
            assert_eq!(spg_result_order(r), 2);
            assert_eq!(spg_result_edge_count(r), 1);
            let (mut u, mut v, mut level) = (u32::MAX, u32::MAX, u32::MAX);
            assert_eq!(spg_result_edge(r, 0, &mut u, &mut v, &mut level), SPG_OK);
            assert_eq!((u, v, level), (0, 1, 1));
            assert_eq!(
                spg_result_edge(r, 1, &mut u, &mut v, &mut level),
                SPG_ERR_INVALID_INPUT
            );
            let json = take_string(spg_result_to_json(r));
            assert!(json.contains("\"geodesics\""), "unexpected JSON: {json}");
            spg_result_free(r);
            spg_graph_free(g);
        }
    }

    #[test]
    fn parses_both_text_formats() {
        unsafe {
            let text = CString::new("3 2\n0 1\n1 2\n").unwrap();
            let g = spg_graph_parse(text.as_ptr());
            assert!(!g.is_null());
            assert_eq!(spg_graph_order(g), 3);
            spg_graph_free(g);

            let json = CString::new(r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap();
            let g = spg_graph_parse(json.as_ptr());
            assert!(!g.is_null());
            assert_eq!(spg_graph_order(g), 2);
            spg_graph_free(g);

            let bad = CString::new("not a graph").unwrap();
            assert!(spg_graph_parse(bad.as_ptr()).is_null());
            assert_eq!(spg_last_error_code(), SPG_ERR_INVALID_INPUT);
        }
    }

    #[test]
    fn error_codes_follow_the_failure() {
        unsafe {
            let g = spg_graph_new(4);
            assert_eq!(spg_graph_add_edge(g, 0, 1), SPG_OK);
            assert_eq!(spg_graph_add_edge(g, 2, 3), SPG_OK);
            assert_eq!(spg_graph_add_edge(g, 0, 9), SPG_ERR_INVALID_INPUT);

            let r = spg_compute(g, 0, 2, 0);
            assert!(r.is_null());
            assert_eq!(spg_last_error_code(), SPG_ERR_UNREACHABLE);
            let msg = take_string(spg_last_error_message());
            assert!(msg.contains("no path"), "unexpected message: {msg}");

            let ok = spg_compute(g, 0, 1, 0);
            assert!(!ok.is_null());
            assert_eq!(spg_last_error_code(), SPG_OK, "success clears the error");
            assert!(spg_last_error_message().is_null());
            spg_result_free(ok);
            spg_graph_free(g);
        }
    }

    #[test]
    fn null_and_bad_utf8_arguments_are_rejected() {
        unsafe {
            assert!(spg_graph_parse(std::ptr::null()).is_null());
            assert_eq!(spg_last_error_code(), SPG_ERR_NULL_ARG);

            let bad = [0xf0u8, 0x28, 0x8c, 0x28, 0x00];
            assert!(spg_graph_parse(bad.as_ptr().cast()).is_null());
            assert_eq!(spg_last_error_code(), SPG_ERR_UTF8);

            assert_eq!(spg_graph_add_edge(std::ptr::null_mut(), 0, 1), SPG_ERR_NULL_ARG);
            assert_eq!(spg_graph_order(std::ptr::null()), -1);
            assert_eq!(spg_result_order(std::ptr::null()), -1);
            assert!(spg_compute(std::ptr::null(), 0, 1, 0).is_null());
            assert_eq!(spg_last_error_code(), SPG_ERR_NULL_ARG);
            spg_graph_free(std::ptr::null_mut());
            spg_result_free(std::ptr::null_mut());
            spg_string_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn classifies_and_synthesizes_through_json() {
        unsafe {
            let g = six_cycle();
            let verdict = take_string(spg_classify_json(g));
            assert!(verdict.contains("SpgByTheorem"), "unexpected verdict: {verdict}");

            let cert_text = take_string(spg_synthesize_json(g, false));
            let cert: spg_core::synthesis::SynthesisCertificate =
                serde_json::from_str(&cert_text).expect("certificate JSON parses");
            let six = Graph::cycle(6);
            let check = spg_core::synthesis::verify_certificate(
                &six,
                &cert,
                DEFAULT_MAX_PATHS,
            )
            .expect("verification runs");
            assert!(check.passed, "exported certificate fails: {:?}", check.failures);
            spg_graph_free(g);
        }
    }

    #[test]
    fn synthesis_refusals_surface_as_precondition_errors() {
        unsafe {
            let g = spg_graph_new(5);
            for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)] {
                assert_eq!(spg_graph_add_edge(g, u, v), SPG_OK);
            }
            assert!(spg_synthesize_json(g, true).is_null());
            assert_eq!(spg_last_error_code(), SPG_ERR_PRECONDITION);
            spg_graph_free(g);
        }
    }
}
