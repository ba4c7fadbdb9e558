//! The graphs `Γ_m` on `m + 6` vertices (`m = 2^n`) whose automorphism
//! group is cyclic of order `m`, together with their rotation generator,
//! orbit sets, block-complement variants and the 11-vertex `Z/6Z` example.
//!
//! Labels in this module's documentation are 1-based: vertex `k` is index
//! `k - 1`. The cycle `O₁ = {1..m}` carries the rotation; `O₂ = {m+1..m+4}`
//! and `O₃ = {m+5, m+6}` are the two small orbits.
//!
//! Edges, with `i ∈ O₁`:
//!
//! | type | edges |
//! |------|-------|
//! | 1 | `i ~ i+1`, `1 ~ m` |
//! | 2 | `m+1 ~ i` iff `i ≡ 1, 2 (mod 4)` |
//! | 3 | `m+2 ~ i` iff `i ≡ 2, 3 (mod 4)` |
//! | 4 | `m+3 ~ i` iff `i ≡ 3, 0 (mod 4)` |
//! | 5 | `m+4 ~ i` iff `i ≡ 0, 1 (mod 4)` |
//! | 6 | `m+5 ~ i` iff `i` odd |
//! | 7 | `m+6 ~ i` iff `i` even |
//! | 8 | `m+1 ~ m+5 ~ m+3`, `m+2 ~ m+6 ~ m+4` |

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::ConstructError;
use crate::graph::{Graph, GraphBuilder};
use crate::graph6;
use crate::perm::Permutation;

/// Largest supported exponent (`2^14 + 6` vertices).
pub const MAX_EXPONENT: u32 = 14;

/// A built `Γ_m` with its rotation and orbit sets (0-based indices).
#[derive(Clone, Debug)]
pub struct GammaInstance {
    pub n_exp: u32,
    pub m: usize,
    pub graph: Graph,
    /// `(1,2,...,m)(m+1,m+2,m+3,m+4)(m+5,m+6)`.
    pub generator: Permutation,
    pub orbit_sets: [Vec<usize>; 3],
}

/// `i ≡ r (mod q)` on the 1-based label of index `idx`.
#[inline]
fn label_mod(idx: usize, q: usize) -> usize {
    (idx + 1) % q
}

/// Residues mod 4 of the `O₁` labels adjacent to `m + k`, `k = 1..=4`.
const O2_RESIDUES: [[usize; 2]; 4] = [[1, 2], [2, 3], [3, 0], [0, 1]];

pub fn build_gamma(n_exp: u32) -> Result<GammaInstance, ConstructError> {
    if n_exp < 2 {
        return Err(ConstructError::ExponentTooSmall(n_exp));
    }
    if n_exp > MAX_EXPONENT {
        return Err(ConstructError::ExponentTooLarge(n_exp));
    }
    let m = 1usize << n_exp;
    let n = m + 6;
    let mut b = GraphBuilder::new(n);
    let mut add = |u: usize, v: usize| {
        b.add_edge(u, v).expect("construction only adds valid edges");
    };
    for i in 0..m {
        add(i, (i + 1) % m);
    }
    for i in 0..m {
        let r4 = label_mod(i, 4);
        for (k, residues) in O2_RESIDUES.iter().enumerate() {
            if residues.contains(&r4) {
                add(m + k, i);
            }
        }
        if label_mod(i, 2) == 1 {
            add(m + 4, i);
        } else {
            add(m + 5, i);
        }
    }
    add(m, m + 4);
    add(m + 4, m + 2);
    add(m + 1, m + 5);
    add(m + 5, m + 3);
    let graph = b.build();

    let mut images: Vec<usize> = (0..n).collect();
    for (i, img) in images.iter_mut().enumerate().take(m) {
        *img = (i + 1) % m;
    }
    for k in 0..4 {
        images[m + k] = m + (k + 1) % 4;
    }
    images[m + 4] = m + 5;
    images[m + 5] = m + 4;
    let generator = Permutation::from_images(images).expect("rotation is a bijection");

    Ok(GammaInstance {
        n_exp,
        m,
        graph,
        generator,
        orbit_sets: [(0..m).collect(), (m..m + 4).collect(), vec![m + 4, m + 5]],
    })
}

impl GammaInstance {
    pub fn vertex_count(&self) -> usize {
        self.m + 6
    }

    /// Which of `O₁, O₂, O₃` (as 1, 2, 3) holds index `v`.
    pub fn orbit_of(&self, v: usize) -> u8 {
        if v < self.m {
            1
        } else if v < self.m + 4 {
            2
        } else {
            3
        }
    }

    /// Expected degree multiset `5^m (m/2+1)^4 (m/2+2)^2`, descending.
    pub fn expected_degree_sequence(&self) -> Vec<usize> {
        let m = self.m;
        let mut d = vec![5; m];
        d.extend([m / 2 + 1; 4]);
        d.extend([m / 2 + 2; 2]);
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Edge type 1..=8 of an unordered pair of indices, or `None` for pairs
    /// that no rule produces (only present in variants).
    pub fn edge_type(&self, u: usize, v: usize) -> Option<u8> {
        let m = self.m;
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        match (self.orbit_of(a), self.orbit_of(b)) {
            (1, 1) => Some(1),
            (1, 2) => Some(2 + (b - m) as u8),
            (1, 3) => Some(6 + (b - m - 4) as u8),
            (2, 3) => Some(8),
            _ => None,
        }
    }

    /// Checks that the canonical rotation maps every edge to an edge.
    pub fn verify_generator(&self) -> GeneratorReport {
        self.verify_permutation(&self.graph, &self.generator)
    }

    /// Checks `perm` against the edges of `graph` (which must be on the same
    /// vertex set), classifying each edge and its image by type.
    pub fn verify_permutation(&self, graph: &Graph, perm: &Permutation) -> GeneratorReport {
        let mut transitions = BTreeMap::new();
        let mut missing = Vec::new();
        for (u, v) in graph.edges() {
            let (gu, gv) = (perm.apply(u), perm.apply(v));
            if graph.has_edge(gu, gv) {
                *transitions
                    .entry((self.edge_type(u, v), self.edge_type(gu, gv)))
                    .or_insert(0usize) += 1;
            } else {
                missing.push((u, v));
            }
        }
        GeneratorReport { transitions, missing }
    }

    /// Applies wholesale complementation of the selected orbit blocks.
    pub fn variant(&self, spec: &VariantSpec) -> Graph {
        let mut b = GraphBuilder::from_graph(self.graph.clone());
        for &(i, j) in &spec.blocks {
            let a = &self.orbit_sets[usize::from(i) - 1];
            let c = &self.orbit_sets[usize::from(j) - 1];
            for (x, &u) in a.iter().enumerate() {
                let others: &[usize] = if i == j { &c[x + 1..] } else { c };
                for &v in others {
                    b.toggle_edge(u, v).expect("orbit sets are disjoint and in range");
                }
            }
        }
        b.build()
    }

    /// The four vertices of the `Γ₀`-type subgraph anchored at `O₁` label
    /// `k` (1-based): `{k, k+1}` with the matching `O₂` and `O₃` vertex.
    pub fn gamma0_quadruple(&self, k: usize) -> [usize; 4] {
        let m = self.m;
        let (o2, o3) = match k % 4 {
            1 => (m + 1, m + 5),
            2 => (m + 2, m + 6),
            3 => (m + 3, m + 5),
            _ => (m + 4, m + 6),
        };
        [k - 1, k % m, o2 - 1, o3 - 1]
    }

    /// Plain `key=value` certificate for `graph` (Γ_m itself or a variant).
    pub fn certificate(&self, graph: &Graph) -> String {
        let mut out = String::new();
        let degrees = graph.degree_sequence();
        let join = |xs: &mut dyn Iterator<Item = usize>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        writeln!(out, "n_exp={}", self.n_exp).unwrap();
        writeln!(out, "m={}", self.m).unwrap();
        writeln!(out, "vertices={}", graph.vertex_count()).unwrap();
        writeln!(out, "edges={}", graph.edge_count()).unwrap();
        writeln!(out, "degree_sequence={}", join(&mut degrees.iter().copied())).unwrap();
        writeln!(out, "degree_multiset={}", multiset(&degrees)).unwrap();
        writeln!(out, "generator={}", self.generator).unwrap();
        writeln!(out, "generator_order={}", self.generator.order()).unwrap();
        for (k, orbit) in self.orbit_sets.iter().enumerate() {
            writeln!(out, "orbit_{}={}", k + 1, join(&mut orbit.iter().map(|v| v + 1))).unwrap();
        }
        writeln!(out, "graph6={}", graph6::encode_string(graph)).unwrap();
        out
    }
}

/// Renders a descending degree list as `5^4 4^2 3^4`.
pub fn multiset(sorted_desc: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted_desc.len() {
        let d = sorted_desc[i];
        let run = sorted_desc[i..].iter().take_while(|&&x| x == d).count();
        parts.push(format!("{d}^{run}"));
        i += run;
    }
    parts.join(" ")
}

/// Result of checking a permutation against Γ_m's edges.
#[derive(Clone, Debug, Default)]
pub struct GeneratorReport {
    /// `(edge type, image edge type) -> count` over edges whose image is an
    /// edge.
    pub transitions: BTreeMap<(Option<u8>, Option<u8>), usize>,
    /// Edges whose image is not an edge.
    pub missing: Vec<(usize, usize)>,
}

impl GeneratorReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
    }

    /// The image type of each edge type, if it is unique.
    pub fn type_map(&self) -> BTreeMap<u8, u8> {
        let mut out = BTreeMap::new();
        for &(from, to) in self.transitions.keys() {
            if let (Some(a), Some(b)) = (from, to) {
                out.insert(a, b);
            }
        }
        out
    }
}

/// Which orbit blocks to complement. A block `(i, i)` is the set of pairs
/// inside `O_i`; `(i, j)` with `i < j` is the bipartite block between them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariantSpec {
    pub blocks: Vec<(u8, u8)>,
}

impl VariantSpec {
    pub fn keep() -> Self {
        Self::default()
    }

    /// Parses a comma-separated list such as `33,13`; `keep` or the empty
    /// string select no blocks.
    pub fn parse(s: &str) -> Result<Self, ConstructError> {
        let s = s.trim();
        let mut blocks = Vec::new();
        if s.is_empty() || s == "keep" {
            return Ok(Self { blocks });
        }
        for tok in s.split(',') {
            let tok = tok.trim();
            let digits: Vec<u8> = tok.bytes().map(|b| b.wrapping_sub(b'0')).collect();
            let (i, j) = match digits.as_slice() {
                [a, b] if (1..=3).contains(a) && (1..=3).contains(b) => ((*a).min(*b), (*a).max(*b)),
                _ => return Err(ConstructError::BadVariant(tok.to_string())),
            };
            if blocks.contains(&(i, j)) {
                return Err(ConstructError::BadVariant(format!("block {tok} listed twice")));
            }
            blocks.push((i, j));
        }
        blocks.sort_unstable();
        Ok(Self { blocks })
    }
}

/// 9-vertex graph with automorphism group `Z/3Z`, as found by exhaustive
/// search; see the provenance header of `data/delta9.g6`.
const DELTA_FIXTURE: &str = include_str!("../data/delta9.g6");

pub fn delta_fixture() -> Result<Graph, ConstructError> {
    let line = DELTA_FIXTURE
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| ConstructError::Fixture("no graph line in delta9.g6".into()))?;
    graph6::decode_str(line).map_err(|e| ConstructError::Fixture(e.to_string()))
}

/// `Δ ∪ K₂` on 11 vertices, whose automorphism group is `Z/6Z`.
pub fn cyclic6_example() -> Result<Graph, ConstructError> {
    Ok(delta_fixture()?.disjoint_union(&Graph::complete(2)))
}
