//! C ABI for the core toolkit: opaque graph handles, status codes, and
//! JSON-string results. Every entry point catches panics and never unwinds
//! across the FFI boundary; strings returned through `out` parameters must
//! be released with `bei_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bei::binomial_edge::exists_d_sequence_order;
use bei::graph::{classify_tree, internal_vertex_count, Graph};
use bei::poly::FieldMode;
use bei::regularity::{predict, regularity};
use bei::BeiError;

/// Opaque graph handle.
pub struct BeiGraph(Graph);

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeiStatus {
    /// success
    BeiOk = 0,
    /// malformed input (JSON or numbers)
    BeiErrParse = 1,
    /// input violates a precondition (not a tree, no rule applies, ...)
    BeiErrPrecondition = 2,
    /// computation hit its budget before reaching a verdict
    BeiErrInconclusive = 3,
    /// a required pointer argument was null
    BeiErrNullArgument = 4,
    /// internal panic (a bug; the library state is still consistent)
    BeiErrPanic = 5,
}

fn status_for(e: &BeiError) -> BeiStatus {
    match e {
        BeiError::Parse(_) => BeiStatus::BeiErrParse,
        BeiError::BudgetExceeded(_) | BeiError::ResourceLimit(_) => BeiStatus::BeiErrInconclusive,
        _ => BeiStatus::BeiErrPrecondition,
    }
}

/// Runs `f` with panics converted to `BeiErrPanic` and the JSON result
/// written to `out`.
fn with_json_out(
    out: *mut *mut c_char,
    f: impl FnOnce() -> Result<serde_json::Value, BeiError>,
) -> BeiStatus {
    if out.is_null() {
        return BeiStatus::BeiErrNullArgument;
    }
    // the caller sees either a valid string or null, never garbage
    unsafe { *out = ptr::null_mut() };
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(value)) => {
            let s = CString::new(value.to_string()).expect("JSON has no interior NUL");
            unsafe { *out = s.into_raw() };
            BeiStatus::BeiOk
        }
        Ok(Err(e)) => status_for(&e),
        Err(_) => BeiStatus::BeiErrPanic,
    }
}

/// Parses a graph from `{"n": ..., "edges": [[i, j], ...]}` JSON and writes
/// a new handle to `out`. The handle must be released with `bei_graph_free`.
#[no_mangle]
pub extern "C" fn bei_graph_from_json(json: *const c_char, out: *mut *mut BeiGraph) -> BeiStatus {
    if json.is_null() || out.is_null() {
        return BeiStatus::BeiErrNullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { CStr::from_ptr(json) }.to_str() {
        Ok(t) => t,
        Err(_) => return BeiStatus::BeiErrParse,
    };
    match catch_unwind(|| Graph::from_json_str(text)) {
        Ok(Ok(g)) => {
            unsafe { *out = Box::into_raw(Box::new(BeiGraph(g))) };
            BeiStatus::BeiOk
        }
        Ok(Err(e)) => status_for(&e),
        Err(_) => BeiStatus::BeiErrPanic,
    }
}

/// Releases a graph handle. Passing null is a no-op.
#[no_mangle]
pub extern "C" fn bei_graph_free(g: *mut BeiGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Releases a string returned by this library. Passing null is a no-op.
#[no_mangle]
pub extern "C" fn bei_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Classifies a tree into the d-sequence degree-sequence families; writes
/// `{"classification": ..., "internal_vertices": ...}` JSON to `out`.
#[no_mangle]
pub extern "C" fn bei_classify_json(g: *const BeiGraph, out: *mut *mut c_char) -> BeiStatus {
    if g.is_null() {
        return BeiStatus::BeiErrNullArgument;
    }
    let g = unsafe { &(*g).0 };
    with_json_out(out, || {
        let c = classify_tree(g)?;
        let i = internal_vertex_count(g)?;
        Ok(serde_json::json!({"classification": c, "internal_vertices": i}))
    })
}

/// Searches for a d-sequence ordering of the edge binomials over `F_p`
/// (`fp_prime = 0` selects the rationals) with an optional budget of
/// Groebner runs (`budget = 0` means unlimited); writes the verdict JSON.
#[no_mangle]
pub extern "C" fn bei_dseq_check_json(
    g: *const BeiGraph,
    fp_prime: u32,
    budget: u64,
    out: *mut *mut c_char,
) -> BeiStatus {
    if g.is_null() {
        return BeiStatus::BeiErrNullArgument;
    }
    let g = unsafe { &(*g).0 };
    let field = if fp_prime == 0 { FieldMode::Q } else { FieldMode::Fp(fp_prime) };
    let budget = (budget > 0).then_some(budget);
    with_json_out(out, || {
        let v = exists_d_sequence_order(g, field, budget)?;
        Ok(serde_json::to_value(v).expect("verdict serializes"))
    })
}

/// Computes (and, when a closed form applies, predicts) the regularity of
/// `S/J_G^power`; writes the report JSON including the Betti table.
#[no_mangle]
pub extern "C" fn bei_regularity_json(
    g: *const BeiGraph,
    power: u32,
    fp_prime: u32,
    out: *mut *mut c_char,
) -> BeiStatus {
    if g.is_null() {
        return BeiStatus::BeiErrNullArgument;
    }
    let g = unsafe { &(*g).0 };
    let field = if fp_prime == 0 { FieldMode::Q } else { FieldMode::Fp(fp_prime) };
    with_json_out(out, || {
        let hint = predict(g, power as usize).ok();
        let ideal = bei::binomial_edge::binomial_edge_ideal(g, field)?.power(power as usize);
        let mut report = regularity(&ideal, hint.as_ref().map(|p| p.value))?;
        report.predicted = hint;
        Ok(report.to_json())
    })
}
