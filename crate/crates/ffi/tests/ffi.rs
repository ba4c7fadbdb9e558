use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cycgraph_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cg_last_error_message()) }.to_string_lossy().into_owned()
}

fn take_string(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { cg_string_free(s) };
    out
}

fn gamma(n_exp: u32) -> *mut CgGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cg_gamma_build(n_exp, &mut g) }, CG_OK);
    g
}

fn aut_of(g: *const CgGraph) -> *mut CgAut {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { cg_aut_compute(g, 0, &mut a) }, CG_OK);
    a
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(cg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn gamma4_through_the_c_surface() {
    let g = gamma(2);
    let (mut n, mut e) = (0usize, 0usize);
    unsafe {
        assert_eq!(cg_graph_vertex_count(g, &mut n), CG_OK);
        assert_eq!(cg_graph_edge_count(g, &mut e), CG_OK);
    }
    assert_eq!((n, e), (10, 20));

    let a = aut_of(g);
    let mut order = 0u64;
    let mut cyclic = false;
    let mut orbits = 0usize;
    let mut gens = 0usize;
    unsafe {
        assert_eq!(cg_aut_order(a, &mut order), CG_OK);
        assert_eq!(cg_aut_is_cyclic(a, &mut cyclic), CG_OK);
        assert_eq!(cg_aut_orbit_count(a, &mut orbits), CG_OK);
        assert_eq!(cg_aut_generator_count(a, &mut gens), CG_OK);
    }
    assert_eq!((order, cyclic, orbits), (4, true, 3));
    assert!(gens >= 1);

    let mut orbit_of = [usize::MAX; 10];
    assert_eq!(unsafe { cg_aut_orbits(a, orbit_of.as_mut_ptr(), 10) }, CG_OK);
    assert_eq!(orbit_of, [0, 0, 0, 0, 1, 1, 1, 1, 2, 2]);

    // every generator is an automorphism
    let graph = cycgraph::build_gamma(2).unwrap().graph;
    for k in 0..gens {
        let mut images = [0usize; 10];
        assert_eq!(unsafe { cg_aut_generator(a, k, images.as_mut_ptr(), 10) }, CG_OK);
        assert!(graph.is_automorphism(&images));
    }

    let mut canon = ptr::null_mut();
    assert_eq!(unsafe { cg_aut_canonical_form(a, &mut canon) }, CG_OK);
    let canon = take_string(canon);
    assert_eq!(canon.len(), 9);
    unsafe {
        cg_aut_free(a);
        cg_graph_free(g);
    }
}

#[test]
fn build_graph_edge_by_edge() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(cg_graph_new(3, &mut g), CG_OK);
        for (i, j) in [(0, 1), (1, 2), (0, 2), (2, 0)] {
            assert_eq!(cg_graph_add_edge(g, i, j), CG_OK);
        }
        let mut s = ptr::null_mut();
        assert_eq!(cg_graph_to_graph6(g, &mut s), CG_OK);
        assert_eq!(take_string(s), "Bw");

        assert_eq!(cg_graph_add_edge(g, 1, 1), CG_ERR_INVALID);
        assert!(last_error().contains("self-loop"));
        assert_eq!(cg_graph_add_edge(g, 0, 3), CG_ERR_INVALID);

        let a = aut_of(g);
        let mut cyclic = true;
        let mut order = 0;
        assert_eq!(cg_aut_is_cyclic(a, &mut cyclic), CG_OK);
        assert_eq!(cg_aut_order(a, &mut order), CG_OK);
        assert_eq!((order, cyclic), (6, false));
        assert!(last_error().is_empty());
        cg_aut_free(a);
        cg_graph_free(g);
    }
}

#[test]
fn graph6_parse_errors() {
    let mut g = ptr::null_mut();
    let bad = CString::new("!!").unwrap();
    assert_eq!(unsafe { cg_graph_from_graph6(bad.as_ptr(), &mut g) }, CG_ERR_PARSE);
    assert!(g.is_null());
    assert!(last_error().starts_with("invalid graph6"));
    let good = CString::new("DQc\n").unwrap();
    assert_eq!(unsafe { cg_graph_from_graph6(good.as_ptr(), &mut g) }, CG_OK);
    let mut n = 0;
    assert_eq!(unsafe { cg_graph_vertex_count(g, &mut n) }, CG_OK);
    assert_eq!(n, 5);
    unsafe { cg_graph_free(g) };
}

#[test]
fn null_arguments_are_rejected() {
    let mut n = 0usize;
    unsafe {
        assert_eq!(cg_graph_new(3, ptr::null_mut()), CG_ERR_NULL);
        assert_eq!(cg_graph_vertex_count(ptr::null(), &mut n), CG_ERR_NULL);
        assert_eq!(cg_graph_add_edge(ptr::null_mut(), 0, 1), CG_ERR_NULL);
        assert_eq!(cg_graph_from_graph6(ptr::null(), ptr::null_mut()), CG_ERR_NULL);
        assert_eq!(cg_aut_compute(ptr::null(), 0, ptr::null_mut()), CG_ERR_NULL);
        assert_eq!(cg_aut_order(ptr::null(), ptr::null_mut()), CG_ERR_NULL);
        cg_graph_free(ptr::null_mut());
        cg_aut_free(ptr::null_mut());
        cg_string_free(ptr::null_mut());
    }
    assert!(!last_error().is_empty());
}

#[test]
fn limits_and_invalid_arguments() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(cg_gamma_build(1, &mut g), CG_ERR_INVALID);
        assert!(last_error().contains("n >= 2"));

        assert_eq!(cg_graph_new(30, &mut g), CG_OK);
        let mut a = ptr::null_mut();
        assert_eq!(cg_aut_compute(g, 10, &mut a), CG_ERR_LIMIT);
        assert_eq!(cg_aut_compute(g, 0, &mut a), CG_OK);
        let mut order = 0;
        assert_eq!(cg_aut_order(a, &mut order), CG_ERR_LIMIT);
        let mut s = ptr::null_mut();
        assert_eq!(cg_aut_order_string(a, &mut s), CG_OK);
        assert_eq!(take_string(s), "265252859812191058636308480000000");

        let mut buf = [0usize; 4];
        assert_eq!(cg_aut_orbits(a, buf.as_mut_ptr(), 4), CG_ERR_INVALID);
        assert_eq!(cg_aut_generator(a, 10_000, buf.as_mut_ptr(), 4), CG_ERR_INVALID);
        cg_aut_free(a);
        cg_graph_free(g);
    }
}

#[test]
fn search_through_the_c_surface() {
    let (mut total, mut hits, mut up) = (0u64, 0usize, 0usize);
    unsafe {
        assert_eq!(cg_search(3, true, 9, 2, &mut total, &mut hits, &mut up), CG_OK);
        assert_eq!((total, hits, up), (274_668, 4, 2));
        assert_eq!(cg_search(4, true, 11, 1, &mut total, &mut hits, &mut up), CG_ERR_LIMIT);
        assert_eq!(cg_search(4, true, 0, 1, &mut total, &mut hits, &mut up), CG_ERR_INVALID);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/cycgraph.h");
    for name in [
        "cg_version",
        "cg_last_error_message",
        "cg_string_free",
        "cg_graph_new",
        "cg_graph_from_graph6",
        "cg_gamma_build",
        "cg_graph_free",
        "cg_graph_add_edge",
        "cg_graph_vertex_count",
        "cg_graph_edge_count",
        "cg_graph_to_graph6",
        "cg_aut_compute",
        "cg_aut_free",
        "cg_aut_order",
        "cg_aut_order_string",
        "cg_aut_is_cyclic",
        "cg_aut_orbit_count",
        "cg_aut_orbits",
        "cg_aut_generator_count",
        "cg_aut_generator",
        "cg_aut_canonical_form",
        "cg_search",
    ] {
        let declared = header
            .lines()
            .any(|l| l.split(|c: char| !(c.is_alphanumeric() || c == '_')).any(|w| w == name) && l.contains(&format!("{name}(")));
        assert!(declared, "{name} missing from header");
    }
    for code in ["CG_OK 0", "CG_ERR_NULL -1", "CG_ERR_INVALID -2", "CG_ERR_PARSE -3", "CG_ERR_LIMIT -4", "CG_ERR_INTERNAL -255"] {
        assert!(header.contains(&format!("#define {code}")));
    }
    assert!(header.contains("typedef struct CgGraph CgGraph;"));
}
