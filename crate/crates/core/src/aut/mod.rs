//! Automorphism groups and canonical forms.
//!
//! [`automorphism_group`] runs an individualization-refinement search
//! (see [`search`](self::search) internals) and returns generators, the
//! exact group order, orbits and a canonical labelling. [`brute_force_aut`]
//! is an independent exhaustive oracle for graphs on at most ten vertices.

mod brute;
mod partition;
pub(crate) mod search;

use num_bigint::BigUint;

pub use brute::{brute_force_aut, BRUTE_FORCE_MAX};
pub use partition::{refine, OrderedPartition};
pub(crate) use search::{SearchOutcome, Searcher};

use crate::error::AutError;
use crate::graph::Graph;
use crate::graph6;
use crate::perm::{orbits_of, PermGroup, Permutation, DEFAULT_GROUP_CAP};

/// Default vertex limit for [`automorphism_group`].
pub const DEFAULT_MAX_VERTICES: usize = 512;

#[derive(Debug, Clone, Copy)]
pub struct AutOptions {
    pub max_vertices: usize,
}

impl Default for AutOptions {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

/// Full automorphism group of a graph plus its canonical labelling.
#[derive(Clone, Debug)]
pub struct AutResult {
    degree: usize,
    generators: Vec<Permutation>,
    stabilizer_indices: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    /// Vertex `v` receives canonical label `canonical_labeling.apply(v)`.
    pub canonical_labeling: Permutation,
    /// graph6 of the canonically relabelled graph.
    pub canonical_form: Vec<u8>,
    /// Search-tree nodes visited.
    pub node_count: u64,
}

impl AutResult {
    pub(crate) fn from_outcome(g: &Graph, out: SearchOutcome) -> Self {
        let n = g.vertex_count();
        let generators: Vec<Permutation> = out
            .generators
            .into_iter()
            .map(Permutation::from_images_unchecked)
            .collect();
        let orbits = orbits_of(n, &generators);
        let mut labeling = vec![0; n];
        for (label, &v) in out.canon_lab.iter().enumerate() {
            labeling[v] = label;
        }
        let canonical_form = graph6::encode(&g.relabel(&labeling));
        Self {
            degree: n,
            generators,
            stabilizer_indices: out.stabilizer_indices,
            orbits,
            canonical_labeling: Permutation::from_images_unchecked(labeling),
            canonical_form,
            node_count: out.nodes,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Generators of the automorphism group (possibly empty).
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Exact group order, the product of the stabiliser-chain indices.
    pub fn order(&self) -> BigUint {
        self.stabilizer_indices
            .iter()
            .fold(BigUint::from(1u32), |acc, &k| acc * BigUint::from(k))
    }

    /// Group order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        order_u64(&self.stabilizer_indices)
    }

    /// Orbits on vertices, each sorted, ordered by smallest vertex.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Orbit sizes in descending order.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn canonical_form_string(&self) -> String {
        String::from_utf8(self.canonical_form.clone()).expect("graph6 is ASCII")
    }

    /// Enumerates the group with the default element cap.
    pub fn group(&self) -> Result<PermGroup, AutError> {
        self.group_with_cap(DEFAULT_GROUP_CAP)
    }

    pub fn group_with_cap(&self, cap: usize) -> Result<PermGroup, AutError> {
        Ok(PermGroup::generate_with_cap(self.degree, &self.generators, cap)?)
    }

    /// True iff the group is cyclic of order `m`. Decided from the order
    /// first; the group is only enumerated when the order matches.
    pub fn is_cyclic_of_order(&self, m: u64) -> Result<bool, AutError> {
        if self.order_u64() != Some(m) {
            return Ok(false);
        }
        let cap = usize::try_from(m).unwrap_or(usize::MAX);
        Ok(self.group_with_cap(cap)?.is_cyclic_of_order(cap))
    }
}

impl AutResult {
    /// True iff the group is cyclic, decided without enumerating it: a
    /// group is cyclic iff its generators commute pairwise and the lcm of
    /// their orders equals the group order.
    pub fn is_cyclic(&self) -> bool {
        let gens = &self.generators;
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if a.compose(b).ok() != b.compose(a).ok() {
                    return false;
                }
            }
        }
        let exponent = gens
            .iter()
            .fold(BigUint::from(1u32), |acc, g| lcm(&acc, &BigUint::from(g.order())));
        exponent == self.order()
    }
}

fn lcm(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut x, mut y) = (a.clone(), b.clone());
    while y != BigUint::ZERO {
        let r = &x % &y;
        x = y;
        y = r;
    }
    a / &x * b
}

pub(crate) fn order_u64(indices: &[usize]) -> Option<u64> {
    indices
        .iter()
        .try_fold(1u64, |acc, &k| acc.checked_mul(k as u64))
}

/// Automorphism group and canonical form of `g` with default options.
pub fn automorphism_group(g: &Graph) -> Result<AutResult, AutError> {
    automorphism_group_with(g, AutOptions::default())
}

pub fn automorphism_group_with(g: &Graph, opts: AutOptions) -> Result<AutResult, AutError> {
    let n = g.vertex_count();
    if n > opts.max_vertices {
        return Err(AutError::TooLarge {
            n,
            limit: opts.max_vertices,
        });
    }
    let out = Searcher::new().run(g);
    Ok(AutResult::from_outcome(g, out))
}

/// canonical graph6 form of `g`.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, AutError> {
    Ok(automorphism_group(g)?.canonical_form)
}

/// If `g` and `h` are isomorphic, returns `φ` with `u ~ v` in `g` iff
/// `φ(u) ~ φ(v)` in `h`.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Permutation>, AutError> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let a = automorphism_group(g)?;
    let b = automorphism_group(h)?;
    if a.canonical_form != b.canonical_form {
        return Ok(None);
    }
    let phi = b
        .canonical_labeling
        .inverse()
        .compose(&a.canonical_labeling)
        .expect("equal vertex counts");
    Ok(Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(g: &Graph) -> u64 {
        automorphism_group(g).unwrap().order_u64().unwrap()
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(order(&Graph::cycle(4)), 8);
        assert_eq!(order(&Graph::complete(3)), 6);
        assert_eq!(order(&Graph::complete(7)), 5040);
        assert_eq!(order(&Graph::empty(6)), 720);
        assert_eq!(order(&Graph::path(5)), 2);
        assert_eq!(order(&Graph::empty(0)), 1);
        assert_eq!(order(&Graph::empty(1)), 1);
    }

    #[test]
    fn petersen_has_120_automorphisms() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        let r = automorphism_group(&g).unwrap();
        assert_eq!(r.order_u64(), Some(120));
        assert_eq!(r.group().unwrap().order(), 120);
    }

    #[test]
    fn big_symmetric_group_order_is_exact() {
        let r = automorphism_group(&Graph::empty(40)).unwrap();
        let expected: BigUint = (1..=40u32).map(BigUint::from).product();
        assert_eq!(r.order(), expected);
        assert_eq!(r.order_u64(), None);
        assert!(r.group_with_cap(1000).is_err());
    }

    #[test]
    fn isomorphism_witness() {
        let c5 = Graph::cycle(5);
        let sigma = [3, 0, 4, 1, 2];
        let h = c5.relabel(&sigma);
        let phi = are_isomorphic(&c5, &h).unwrap().unwrap();
        for (u, v) in c5.edges() {
            assert!(h.has_edge(phi.apply(u), phi.apply(v)));
        }
    }

    #[test]
    fn hexagon_is_not_two_triangles() {
        let c6 = Graph::cycle(6);
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(c6.degree_sequence(), tt.degree_sequence());
        assert!(are_isomorphic(&c6, &tt).unwrap().is_none());
    }

    #[test]
    fn size_limit() {
        let g = Graph::empty(600);
        assert!(matches!(automorphism_group(&g), Err(AutError::TooLarge { n: 600, limit: 512 })));
        let ok = automorphism_group_with(&g, AutOptions { max_vertices: 600 });
        assert!(ok.is_ok());
    }

    #[test]
    fn cyclic_check_without_enumerating_large_groups() {
        let r = automorphism_group(&Graph::complete(9)).unwrap();
        assert!(!r.is_cyclic_of_order(4).unwrap());
        let r = automorphism_group(&Graph::cycle(5)).unwrap();
        assert!(!r.is_cyclic_of_order(10).unwrap());
        let r = automorphism_group(&Graph::path(4)).unwrap();
        assert!(r.is_cyclic_of_order(2).unwrap());
    }

    #[test]
    fn cyclicity_from_generators() {
        assert!(!automorphism_group(&Graph::complete(3)).unwrap().is_cyclic());
        assert!(!automorphism_group(&Graph::complete(30)).unwrap().is_cyclic());
        assert!(automorphism_group(&Graph::complete(2)).unwrap().is_cyclic());
        assert!(automorphism_group(&Graph::path(5)).unwrap().is_cyclic());
        assert!(automorphism_group(&Graph::empty(1)).unwrap().is_cyclic());
        // two disjoint edges: Klein-like group of order 8 is not cyclic
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!automorphism_group(&g).unwrap().is_cyclic());
    }
}
