//! Simple undirected graphs stored as per-vertex bitset rows.
//!
//! A [`Graph`] is immutable; edges are added through a [`GraphBuilder`]
//! and frozen with [`GraphBuilder::build`]. Vertices are `0..n`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::GraphError;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Simple undirected graph. Row `i` is a bitset of the neighbours of `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

/// Distance from a vertex to the farthest vertex, or `Infinite` when some
/// vertex cannot be reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eccentricity {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Eccentricity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eccentricity::Finite(d) => write!(f, "{d}"),
            Eccentricity::Infinite => f.write_str("inf"),
        }
    }
}

/// Mutable edge accumulator that produces a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            graph: Graph::empty(n),
        }
    }

    /// Start from an existing graph.
    pub fn from_graph(graph: Graph) -> Self {
        Self { graph }
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    /// Adds the edge `{i, j}`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<&mut Self, GraphError> {
        self.graph.check_pair(i, j)?;
        self.graph.set(i, j, true);
        Ok(self)
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> Result<&mut Self, GraphError> {
        self.graph.check_pair(i, j)?;
        self.graph.set(i, j, false);
        Ok(self)
    }

    /// Flips adjacency of `{i, j}`.
    pub fn toggle_edge(&mut self, i: usize, j: usize) -> Result<&mut Self, GraphError> {
        self.graph.check_pair(i, j)?;
        let now = self.graph.has_edge(i, j);
        self.graph.set(i, j, !now);
        Ok(self)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.graph.has_edge(i, j)
    }

    /// The graph as built so far.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn build(self) -> Graph {
        self.graph
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Self {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    /// Cycle `C_n` with edges `i ~ i+1 (mod n)`; `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            b.add_edge(i, (i + 1) % n).expect("valid cycle edge");
        }
        b.build()
    }

    /// Path `P_n` with edges `i ~ i+1`.
    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 1..n {
            b.add_edge(i - 1, i).expect("valid path edge");
        }
        b.build()
    }

    /// Builds a graph from an edge list, rejecting loops and bad indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(i, j) in edges {
            b.add_edge(i, j)?;
        }
        Ok(b.build())
    }

    pub(crate) fn from_rows_unchecked(n: usize, adj: Vec<u64>) -> Self {
        let words = words_for(n);
        debug_assert_eq!(adj.len(), n * words);
        Self { n, words, adj }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` as raw bitset words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && (self.adj[i * self.words + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        Neighbors {
            row: self.row(v),
            word: 0,
            bits: self.row(v).first().copied().unwrap_or(0),
        }
    }

    /// Edges `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    /// Eccentricity of `v` by breadth-first search over bitset frontiers.
    pub fn eccentricity(&self, v: usize) -> Result<Eccentricity, GraphError> {
        self.check_vertex(v)?;
        let words = self.words;
        let mut seen = vec![0u64; words];
        let mut frontier = vec![0u64; words];
        seen[v / WORD_BITS] |= 1 << (v % WORD_BITS);
        frontier[v / WORD_BITS] |= 1 << (v % WORD_BITS);
        let mut reached = 1;
        let mut depth = 0;
        let mut next = vec![0u64; words];
        while reached < self.n {
            next.iter_mut().for_each(|w| *w = 0);
            for u in BitIter::new(&frontier) {
                for (nw, rw) in next.iter_mut().zip(self.row(u)) {
                    *nw |= rw;
                }
            }
            let mut grew = 0;
            for (nw, sw) in next.iter_mut().zip(seen.iter_mut()) {
                *nw &= !*sw;
                *sw |= *nw;
                grew += nw.count_ones() as usize;
            }
            if grew == 0 {
                return Ok(Eccentricity::Infinite);
            }
            reached += grew;
            depth += 1;
            std::mem::swap(&mut frontier, &mut next);
        }
        Ok(Eccentricity::Finite(depth))
    }

    /// Shortest-path distances from `v`; `None` marks unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertex(v)?;
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.eccentricity(0).map(|e| e != Eccentricity::Infinite).unwrap_or(false)
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    /// The returned vector maps new index to old index.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut seen = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let k = vertices.len();
        let mut out = Graph::empty(k);
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &w) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, w) {
                    out.set(a, b, true);
                }
            }
        }
        Ok((out, vertices.to_vec()))
    }

    pub fn complement(&self) -> Graph {
        let mut out = self.clone();
        for i in 0..self.n {
            let row = &mut out.adj[i * self.words..(i + 1) * self.words];
            for w in row.iter_mut() {
                *w = !*w;
            }
            clear_tail(row, self.n);
            row[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
        }
        out
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut out = Graph::empty(self.n + other.n);
        for (i, j) in self.edges() {
            out.set(i, j, true);
        }
        for (i, j) in other.edges() {
            out.set(i + shift, j + shift, true);
        }
        out
    }

    /// Relabels by `perm`: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "relabelling must cover every vertex");
        let mut out = Graph::empty(self.n);
        for (i, j) in self.edges() {
            out.set(perm[i], perm[j], true);
        }
        out
    }

    /// True iff `perm` maps edges onto edges (and hence non-edges onto
    /// non-edges, since it is a bijection).
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n && self.edges().all(|(i, j)| self.has_edge(perm[i], perm[j]))
    }

    /// Symmetry and loop-freeness of the stored rows.
    pub fn check_invariants(&self) -> bool {
        (0..self.n).all(|i| {
            !self.has_edge(i, i)
                && self.neighbors(i).all(|j| j < self.n && self.has_edge(j, i))
                && self.row(i).last().is_none_or(|&w| {
                    let tail = self.n % WORD_BITS;
                    tail == 0 || w >> tail == 0
                })
        })
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(), GraphError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, on: bool) {
        let (wi, bi) = (i * self.words + j / WORD_BITS, j % WORD_BITS);
        let (wj, bj) = (j * self.words + i / WORD_BITS, i % WORD_BITS);
        if on {
            self.adj[wi] |= 1 << bi;
            self.adj[wj] |= 1 << bj;
        } else {
            self.adj[wi] &= !(1 << bi);
            self.adj[wj] &= !(1 << bj);
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn clear_tail(row: &mut [u64], n: usize) {
    let tail = n % WORD_BITS;
    if tail != 0 {
        if let Some(last) = row.last_mut() {
            *last &= (1u64 << tail) - 1;
        }
    }
}

/// Iterator over neighbours of a vertex.
pub struct Neighbors<'a> {
    row: &'a [u64],
    word: usize,
    bits: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * WORD_BITS + b);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.bits = self.row[self.word];
        }
    }
}

/// Iterator over set bits of a word slice.
pub(crate) struct BitIter<'a> {
    inner: Neighbors<'a>,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        Self {
            inner: Neighbors {
                row: words,
                word: 0,
                bits: words.first().copied().unwrap_or(0),
            },
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        self.inner.next()
    }
}
