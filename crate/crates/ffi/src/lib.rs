//! C ABI for the `graphon` crate.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or
//! `*_make_*` functions and released with the matching `*_free`. Every
//! fallible function returns a [`GraphonStatus`]; on failure a description
//! is available from [`graphon_last_error`] on the same thread. Strings
//! returned to the caller are NUL-terminated and released with
//! [`graphon_string_free`]. Panics are caught and reported as
//! [`GraphonStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphon::geometry::{check_general_position, intersection_graph, normalize, Representation};
use graphon::graph::{make_special_graph, SpecialKind};
use graphon::graphon::{edge_density, entropy, make_wka, t_ind_exact, StepGraphon};
use graphon::recognizers::{
    classify_outerstring, classify_string, is_comparability, is_incomparability, is_two_clique, ClassifyOptions,
    Verdict,
};
use graphon::sampling::{is_constructible, sample_w_random};
use graphon::{Error, Graph, Rational, SeedSpec};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphonStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// The input is outside the range in which the operation is exact.
    Envelope = 4,
    Geometry = 5,
    Io = 6,
    /// A string argument is not valid UTF-8.
    Utf8 = 7,
    Panic = 8,
}

/// Three-valued class membership.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphonVerdict {
    Member = 0,
    NonMember = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphonClass {
    String = 0,
    Outerstring = 1,
    Comparability = 2,
    Incomparability = 3,
    Twoclique = 4,
}

/// Opaque finite simple graph.
pub struct GraphonGraph(Graph);

/// Opaque step graphon.
pub struct GraphonStep(StepGraphon);

/// Opaque polygonal representation.
pub struct GraphonRepresentation(Representation);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GraphonStatus {
    match e {
        Error::Parse { .. } => GraphonStatus::Parse,
        Error::EnvelopeExceeded { .. } => GraphonStatus::Envelope,
        Error::Geometry(_) | Error::PerturbationBudgetExhausted { .. } => GraphonStatus::Geometry,
        Error::Io(_) => GraphonStatus::Io,
        _ => GraphonStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic for [`graphon_last_error`].
fn guard(f: impl FnOnce() -> Result<(), GraphonStatus>) -> GraphonStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GraphonStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            GraphonStatus::Panic
        }
    }
}

fn fail(e: Error) -> GraphonStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> GraphonStatus {
    set_error("null pointer argument");
    GraphonStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, GraphonStatus> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        GraphonStatus::Utf8
    })
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, GraphonStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, GraphonStatus> {
    p.as_mut().ok_or_else(null)
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Description of the last failure on this thread. Valid until the next
/// call on the same thread; never NULL.
#[no_mangle]
pub extern "C" fn graphon_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn graphon_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the graph text format (`n m`, then `u v` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_graph_parse(text: *const c_char, out_graph: *mut *mut GraphonGraph) -> GraphonStatus {
    guard(|| {
        let slot = out(out_graph)?;
        let g = Graph::parse_text(str_arg(text)?).map_err(fail)?;
        *slot = Box::into_raw(Box::new(GraphonGraph(g)));
        Ok(())
    })
}

/// `kind` is `'G'`, `'B'` or `'H'`.
///
/// # Safety
/// `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_graph_make_special(
    kind: c_char,
    k: usize,
    out_graph: *mut *mut GraphonGraph,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_graph)?;
        let kind = match kind as u8 {
            b'G' => SpecialKind::G,
            b'B' => SpecialKind::B,
            b'H' => SpecialKind::H,
            _ => {
                set_error("kind must be 'G', 'B' or 'H'");
                return Err(GraphonStatus::InvalidArgument);
            }
        };
        let g = make_special_graph(kind, k).map_err(fail)?;
        *slot = Box::into_raw(Box::new(GraphonGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn graphon_graph_free(g: *mut GraphonGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn graphon_graph_vertex_count(g: *const GraphonGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn graphon_graph_edge_count(g: *const GraphonGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// False for out-of-range vertices.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn graphon_graph_has_edge(g: *const GraphonGraph, u: usize, v: usize) -> bool {
    g.as_ref()
        .is_some_and(|g| u < g.0.vertex_count() && v < g.0.vertex_count() && g.0.has_edge(u, v))
}

/// Graph text format; free with [`graphon_string_free`].
///
/// # Safety
/// `g` must be a live graph handle and `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_graph_to_text(g: *const GraphonGraph, out_text: *mut *mut c_char) -> GraphonStatus {
    guard(|| {
        let slot = out(out_text)?;
        *slot = c_string(obj(g)?.0.to_text());
        Ok(())
    })
}

/// Parses the step graphon text format: `k`, the `k` block measures, then
/// `k` rows of values, all as rationals `p/q`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out_step` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_step_parse(text: *const c_char, out_step: *mut *mut GraphonStep) -> GraphonStatus {
    guard(|| {
        let slot = out(out_step)?;
        let w = StepGraphon::parse_text(str_arg(text)?).map_err(fail)?;
        *slot = Box::into_raw(Box::new(GraphonStep(w)));
        Ok(())
    })
}

/// `W^k_a` with `a = a_num / a_den`.
///
/// # Safety
/// `out_step` must be writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_step_make_wka(
    k: usize,
    a_num: i64,
    a_den: i64,
    out_step: *mut *mut GraphonStep,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_step)?;
        if a_den == 0 {
            set_error("zero denominator");
            return Err(GraphonStatus::InvalidArgument);
        }
        let w = make_wka(k, &Rational::new(a_num.into(), a_den.into())).map_err(fail)?;
        *slot = Box::into_raw(Box::new(GraphonStep(w)));
        Ok(())
    })
}

/// # Safety
/// `w` must be NULL or a live step graphon handle.
#[no_mangle]
pub unsafe extern "C" fn graphon_step_free(w: *mut GraphonStep) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Entropy in bits.
///
/// # Safety
/// `w` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_step_entropy(w: *const GraphonStep, out_value: *mut f64) -> GraphonStatus {
    guard(|| {
        let slot = out(out_value)?;
        *slot = entropy(&obj(w)?.0);
        Ok(())
    })
}

/// Exact edge density as `"p/q"`; free with [`graphon_string_free`].
///
/// # Safety
/// `w` must be a live handle and `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_step_edge_density(w: *const GraphonStep, out_text: *mut *mut c_char) -> GraphonStatus {
    guard(|| {
        let slot = out(out_text)?;
        *slot = c_string(edge_density(&obj(w)?.0).to_string());
        Ok(())
    })
}

/// Exact induced density of `g` in `w` as `"p/q"`; free with
/// [`graphon_string_free`].
///
/// # Safety
/// Handles must be live and `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_t_ind_exact(
    g: *const GraphonGraph,
    w: *const GraphonStep,
    out_text: *mut *mut c_char,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_text)?;
        let t = t_ind_exact(&obj(g)?.0, &obj(w)?.0).map_err(fail)?;
        *slot = c_string(t.to_string());
        Ok(())
    })
}

/// Samples `G(n, W)`. When `out_blocks` is not NULL it receives the block of
/// each of the `n` vertices.
///
/// # Safety
/// `w` must be live, `out_graph` writable and `out_blocks` NULL or valid
/// for `n` writes.
#[no_mangle]
pub unsafe extern "C" fn graphon_sample(
    w: *const GraphonStep,
    n: usize,
    seed: u64,
    out_graph: *mut *mut GraphonGraph,
    out_blocks: *mut usize,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_graph)?;
        let (g, a) = sample_w_random(&obj(w)?.0, n, SeedSpec::new(seed));
        if !out_blocks.is_null() {
            std::slice::from_raw_parts_mut(out_blocks, n).copy_from_slice(a.blocks());
        }
        *slot = Box::into_raw(Box::new(GraphonGraph(g)));
        Ok(())
    })
}

/// Sets `*out_found` and, when found and `out_blocks` is not NULL, writes
/// one block per vertex of `g`.
///
/// # Safety
/// Handles must be live, `out_found` writable and `out_blocks` NULL or
/// valid for one write per vertex of `g`.
#[no_mangle]
pub unsafe extern "C" fn graphon_is_constructible(
    g: *const GraphonGraph,
    w: *const GraphonStep,
    out_found: *mut bool,
    out_blocks: *mut usize,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_found)?;
        let g = &obj(g)?.0;
        let found = is_constructible(g, &obj(w)?.0).map_err(fail)?;
        *slot = found.is_some();
        if let (Some(a), false) = (found, out_blocks.is_null()) {
            std::slice::from_raw_parts_mut(out_blocks, g.vertex_count()).copy_from_slice(a.blocks());
        }
        Ok(())
    })
}

/// Evidence for membership of `g` in `class`. When `out_certificate` is not
/// NULL it receives the verdict and certificate in the text form printed by
/// the command line tool; free it with [`graphon_string_free`].
///
/// # Safety
/// `g` must be live, `out_verdict` writable and `out_certificate` NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_classify(
    g: *const GraphonGraph,
    class: GraphonClass,
    out_verdict: *mut GraphonVerdict,
    out_certificate: *mut *mut c_char,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_verdict)?;
        let g = &obj(g)?.0;
        let opts = ClassifyOptions::default();
        let ev = match class {
            GraphonClass::String => classify_string(g, &opts),
            GraphonClass::Outerstring => classify_outerstring(g, &opts),
            GraphonClass::Comparability => is_comparability(g),
            GraphonClass::Incomparability => is_incomparability(g),
            GraphonClass::Twoclique => is_two_clique(g),
        };
        *slot = match ev.verdict {
            Verdict::Member => GraphonVerdict::Member,
            Verdict::NonMember => GraphonVerdict::NonMember,
            Verdict::Unknown => GraphonVerdict::Unknown,
        };
        if let Some(c) = out_certificate.as_mut() {
            *c = c_string(ev.to_string());
        }
        Ok(())
    })
}

/// Parses the representation text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out_rep` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_rep_parse(
    text: *const c_char,
    out_rep: *mut *mut GraphonRepresentation,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_rep)?;
        let r = Representation::parse_text(str_arg(text)?).map_err(fail)?;
        *slot = Box::into_raw(Box::new(GraphonRepresentation(r)));
        Ok(())
    })
}

/// # Safety
/// `r` must be NULL or a live representation handle.
#[no_mangle]
pub unsafe extern "C" fn graphon_rep_free(r: *mut GraphonRepresentation) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be live and `out_graph` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_rep_intersection_graph(
    r: *const GraphonRepresentation,
    out_graph: *mut *mut GraphonGraph,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_graph)?;
        *slot = Box::into_raw(Box::new(GraphonGraph(intersection_graph(&obj(r)?.0))));
        Ok(())
    })
}

/// Whether the sets meet in finitely many proper crossings with no triple
/// points.
///
/// # Safety
/// `r` must be live and `out_pass` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_rep_general_position(
    r: *const GraphonRepresentation,
    out_pass: *mut bool,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_pass)?;
        *slot = check_general_position(&obj(r)?.0).pass;
        Ok(())
    })
}

/// Simple open polygonal curves in general position with the same
/// intersection graph.
///
/// # Safety
/// `r` must be live and `out_rep` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_rep_normalize(
    r: *const GraphonRepresentation,
    seed: u64,
    out_rep: *mut *mut GraphonRepresentation,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_rep)?;
        let n = normalize(&obj(r)?.0, SeedSpec::new(seed)).map_err(fail)?;
        *slot = Box::into_raw(Box::new(GraphonRepresentation(n)));
        Ok(())
    })
}

/// Representation text format; free with [`graphon_string_free`].
///
/// # Safety
/// `r` must be live and `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn graphon_rep_to_text(
    r: *const GraphonRepresentation,
    out_text: *mut *mut c_char,
) -> GraphonStatus {
    guard(|| {
        let slot = out(out_text)?;
        *slot = c_string(obj(r)?.0.to_text());
        Ok(())
    })
}
