//! C ABI over `cycgraph`.
//!
//! Objects are opaque heap handles created by `cg_*_new`/`cg_*_build`/
//! `cg_*_compute` and released with the matching `cg_*_free`. Every fallible
//! function returns a status code (`CG_OK` or a negative `CG_ERR_*`) and
//! writes results through out-pointers. After a failure,
//! `cg_last_error_message` describes it for the calling thread.
//!
//! Strings returned through `char **` are owned by the caller and must be
//! released with `cg_string_free`. Vertex indices are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cycgraph::aut::{automorphism_group_with, AutOptions, AutResult, DEFAULT_MAX_VERTICES};
use cycgraph::enumerate::{search_min_vertices, CyclicOfOrder, EnumOptions, OfOrder, SearchOptions};
use cycgraph::graph::GraphBuilder;
use cycgraph::{build_gamma, graph6, AutError, EnumerateError, Graph};

pub const CG_OK: i32 = 0;
/// A required pointer argument was null.
pub const CG_ERR_NULL: i32 = -1;
/// An argument was out of range or otherwise invalid.
pub const CG_ERR_INVALID: i32 = -2;
/// Text input could not be parsed.
pub const CG_ERR_PARSE: i32 = -3;
/// A size or resource cap was exceeded.
pub const CG_ERR_LIMIT: i32 = -4;
pub const CG_ERR_INTERNAL: i32 = -255;

/// Mutable graph under construction, or a finished graph.
pub struct CgGraph {
    builder: GraphBuilder,
}

/// Automorphism group and canonical form of a graph.
pub struct CgAut {
    result: AutResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(code: i32, msg: impl AsRef<str>) -> i32 {
    set_error(msg.as_ref());
    code
}

/// Runs `f`, turning panics into `CG_ERR_INTERNAL`.
fn guard(f: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => {
            if code == CG_OK {
                set_error("");
            }
            code
        }
        Err(_) => fail(CG_ERR_INTERNAL, "internal panic"),
    }
}

fn aut_code(e: &AutError) -> i32 {
    match e {
        AutError::TooLarge { .. } => CG_ERR_LIMIT,
        AutError::Perm(cycgraph::PermError::CapExceeded { .. }) => CG_ERR_LIMIT,
        AutError::Perm(_) => CG_ERR_INTERNAL,
    }
}

fn enumerate_code(e: &EnumerateError) -> i32 {
    match e {
        EnumerateError::CapExceeded { .. } => CG_ERR_LIMIT,
        EnumerateError::Aut(a) => aut_code(a),
        EnumerateError::Checkpoint(_) => CG_ERR_INVALID,
    }
}

fn give_string(s: String, out: *mut *mut c_char) -> i32 {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: caller checked `out` is non-null.
            unsafe { *out = c.into_raw() };
            CG_OK
        }
        Err(_) => fail(CG_ERR_INTERNAL, "string contains NUL"),
    }
}

fn give_graph(g: Graph, out: *mut *mut CgGraph) {
    let handle = Box::new(CgGraph {
        builder: GraphBuilder::from_graph(g),
    });
    // SAFETY: caller checked `out` is non-null.
    unsafe { *out = Box::into_raw(handle) };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next `cg_*` call on the same thread.
#[no_mangle]
pub extern "C" fn cg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates an edgeless graph on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_new(n: usize, out: *mut *mut CgGraph) -> i32 {
    guard(|| {
        if out.is_null() {
            return fail(CG_ERR_NULL, "out is null");
        }
        give_graph(Graph::empty(n), out);
        CG_OK
    })
}

/// Parses one graph6 string.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_from_graph6(text: *const c_char, out: *mut *mut CgGraph) -> i32 {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(CG_ERR_NULL, "null argument");
        }
        let bytes = CStr::from_ptr(text).to_bytes();
        let trimmed = bytes.strip_suffix(b"\n").unwrap_or(bytes);
        match graph6::decode(trimmed) {
            Ok(g) => {
                give_graph(g, out);
                CG_OK
            }
            Err(e) => fail(CG_ERR_PARSE, format!("invalid graph6: {e}")),
        }
    })
}

/// Builds the graph on `2^n_exp + 6` vertices with cyclic automorphism
/// group of order `2^n_exp`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_gamma_build(n_exp: u32, out: *mut *mut CgGraph) -> i32 {
    guard(|| {
        if out.is_null() {
            return fail(CG_ERR_NULL, "out is null");
        }
        match build_gamma(n_exp) {
            Ok(inst) => {
                give_graph(inst.graph, out);
                CG_OK
            }
            Err(e) => fail(CG_ERR_INVALID, e.to_string()),
        }
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_free(g: *mut CgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Adds the edge `{i, j}` (idempotent).
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_add_edge(g: *mut CgGraph, i: usize, j: usize) -> i32 {
    guard(|| {
        let Some(g) = g.as_mut() else {
            return fail(CG_ERR_NULL, "graph is null");
        };
        match g.builder.add_edge(i, j) {
            Ok(_) => CG_OK,
            Err(e) => fail(CG_ERR_INVALID, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_vertex_count(g: *const CgGraph, out: *mut usize) -> i32 {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        *out = g.builder.vertex_count();
        CG_OK
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_edge_count(g: *const CgGraph, out: *mut usize) -> i32 {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        *out = g.builder.graph().edge_count();
        CG_OK
    })
}

/// graph6 encoding of `g`; free the result with `cg_string_free`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_to_graph6(g: *const CgGraph, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        give_string(graph6::encode_string(g.builder.graph()), out)
    })
}

/// Computes the automorphism group of `g`. `max_vertices` of 0 selects
/// the default limit.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_compute(g: *const CgGraph, max_vertices: usize, out: *mut *mut CgAut) -> i32 {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        let limit = if max_vertices == 0 { DEFAULT_MAX_VERTICES } else { max_vertices };
        match automorphism_group_with(g.builder.graph(), AutOptions { max_vertices: limit }) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(CgAut { result }));
                CG_OK
            }
            Err(e) => fail(aut_code(&e), e.to_string()),
        }
    })
}

/// Releases an automorphism result. Null is ignored.
///
/// # Safety
/// `a` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_free(a: *mut CgAut) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Group order; `CG_ERR_LIMIT` if it does not fit in 64 bits.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_order(a: *const CgAut, out: *mut u64) -> i32 {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        match a.result.order_u64() {
            Some(o) => {
                *out = o;
                CG_OK
            }
            None => fail(CG_ERR_LIMIT, format!("group order {} exceeds 64 bits", a.result.order())),
        }
    })
}

/// Group order in decimal; free with `cg_string_free`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_order_string(a: *const CgAut, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        give_string(a.result.order().to_string(), out)
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_is_cyclic(a: *const CgAut, out: *mut bool) -> i32 {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        *out = a.result.is_cyclic();
        CG_OK
    })
}

/// Number of vertex orbits.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_orbit_count(a: *const CgAut, out: *mut usize) -> i32 {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        *out = a.result.orbits().len();
        CG_OK
    })
}

/// Orbit index of every vertex: `orbit_of[v]` for `v < len`. `len` must
/// equal the vertex count.
///
/// # Safety
/// `a` must be a live handle; `orbit_of` must hold `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_orbits(a: *const CgAut, orbit_of: *mut usize, len: usize) -> i32 {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), orbit_of.is_null() && len > 0) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        if len != a.result.degree() {
            return fail(CG_ERR_INVALID, format!("buffer holds {len} entries, need {}", a.result.degree()));
        }
        if len == 0 {
            return CG_OK;
        }
        let buf = std::slice::from_raw_parts_mut(orbit_of, len);
        for (k, orbit) in a.result.orbits().iter().enumerate() {
            for &v in orbit {
                buf[v] = k;
            }
        }
        CG_OK
    })
}

/// Number of generators (0 for the trivial group).
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_generator_count(a: *const CgAut, out: *mut usize) -> i32 {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        *out = a.result.generators().len();
        CG_OK
    })
}

/// Images of generator `index`: `images[v]` receives the image of `v`.
/// `len` must equal the vertex count.
///
/// # Safety
/// `a` must be a live handle; `images` must hold `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_generator(a: *const CgAut, index: usize, images: *mut usize, len: usize) -> i32 {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), images.is_null() && len > 0) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        let Some(p) = a.result.generators().get(index) else {
            return fail(CG_ERR_INVALID, format!("generator index {index} out of range"));
        };
        if len != p.degree() {
            return fail(CG_ERR_INVALID, format!("buffer holds {len} entries, need {}", p.degree()));
        }
        if len > 0 {
            std::slice::from_raw_parts_mut(images, len).copy_from_slice(p.images());
        }
        CG_OK
    })
}

/// Canonical graph6 form; free with `cg_string_free`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_aut_canonical_form(a: *const CgAut, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(CG_ERR_NULL, "null argument");
        };
        give_string(a.result.canonical_form_string(), out)
    })
}

/// Exhaustive search over all graphs on `n_max` vertices for those whose
/// automorphism group has order `order` (and is cyclic if `cyclic`).
/// Writes the number of classes examined, hits, and hits up to
/// complementation. `jobs` of 0 means 1.
///
/// # Safety
/// All out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_search(
    order: u64,
    cyclic: bool,
    n_max: usize,
    jobs: usize,
    out_total: *mut u64,
    out_hits: *mut usize,
    out_up_to_complement: *mut usize,
) -> i32 {
    guard(|| {
        if out_total.is_null() || out_hits.is_null() || out_up_to_complement.is_null() {
            return fail(CG_ERR_NULL, "null argument");
        }
        if n_max == 0 || order == 0 {
            return fail(CG_ERR_INVALID, "n_max and order must be positive");
        }
        let opts = SearchOptions {
            enumeration: EnumOptions {
                jobs: jobs.max(1),
                ..EnumOptions::default()
            },
            ..SearchOptions::default()
        };
        let result = if cyclic {
            search_min_vertices(&CyclicOfOrder(order), n_max, &opts)
        } else {
            search_min_vertices(&OfOrder(order), n_max, &opts)
        };
        match result {
            Ok(reports) => {
                let last = reports.last().expect("n_max >= 1 gives a report");
                *out_total = last.total_graphs;
                *out_hits = last.hits.len();
                *out_up_to_complement = last.hits_up_to_complement;
                CG_OK
            }
            Err(e) => fail(enumerate_code(&e), e.to_string()),
        }
    })
}
