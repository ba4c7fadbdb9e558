//! Ordered partitions and equitable refinement.

use std::collections::VecDeque;

use crate::error::GraphError;
use crate::graph::{Graph, WORD_BITS};

/// Ordered partition of `0..n` into nonempty cells.
///
/// Stored as a vertex array `lab` in which every cell occupies a contiguous
/// range; `cell_len` is meaningful only at the first position of a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    pub(crate) lab: Vec<usize>,
    pub(crate) pos: Vec<usize>,
    pub(crate) start_of: Vec<usize>,
    pub(crate) cell_len: Vec<usize>,
    pub(crate) cells: usize,
}

impl OrderedPartition {
    /// Single cell holding every vertex.
    pub fn unit(n: usize) -> Self {
        let mut cell_len = vec![0; n];
        if n > 0 {
            cell_len[0] = n;
        }
        Self {
            lab: (0..n).collect(),
            pos: (0..n).collect(),
            start_of: vec![0; n],
            cell_len,
            cells: usize::from(n > 0),
        }
    }

    /// Builds a partition from explicit cells, which must cover `0..n`
    /// exactly once.
    pub fn from_cells(n: usize, cells: &[Vec<usize>]) -> Result<Self, GraphError> {
        let mut seen = vec![false; n];
        let mut lab = Vec::with_capacity(n);
        let mut start_of = vec![0; n];
        let mut cell_len = vec![0; n];
        let mut count = 0;
        for cell in cells.iter().filter(|c| !c.is_empty()) {
            let start = lab.len();
            for &v in cell {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GraphError::DuplicateVertex(v));
                }
                start_of[lab.len()] = start;
                lab.push(v);
            }
            cell_len[start] = cell.len();
            count += 1;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        let mut pos = vec![0; n];
        for (p, &v) in lab.iter().enumerate() {
            pos[v] = p;
        }
        Ok(Self {
            lab,
            pos,
            start_of,
            cell_len,
            cells: count,
        })
    }

    pub fn len(&self) -> usize {
        self.lab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lab.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// Cells in order; vertices inside a cell are sorted.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        self.cell_starts()
            .map(|s| {
                let mut c = self.lab[s..s + self.cell_len[s]].to_vec();
                c.sort_unstable();
                c
            })
            .collect()
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cell_starts().map(|s| self.cell_len[s]).collect()
    }

    /// Index of the cell holding `v`.
    pub fn cell_index_of(&self, v: usize) -> usize {
        let start = self.start_of[self.pos[v]];
        self.cell_starts().take_while(|&s| s < start).count()
    }

    pub(crate) fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.lab.len();
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= n {
                return None;
            }
            let cur = s;
            s += self.cell_len[s];
            Some(cur)
        })
    }

    /// True iff `self` is at least as fine as `coarser` (as set partitions).
    pub fn refines(&self, coarser: &OrderedPartition) -> bool {
        self.len() == coarser.len()
            && self.cell_starts().all(|s| {
                let c = coarser.start_of[coarser.pos[self.lab[s]]];
                self.lab[s..s + self.cell_len[s]]
                    .iter()
                    .all(|&v| coarser.start_of[coarser.pos[v]] == c)
            })
    }

    /// Direct check of the equitable condition.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let cells = self.cells();
        cells.iter().all(|a| {
            cells.iter().all(|b| {
                let count = |x: usize| b.iter().filter(|&&y| g.has_edge(x, y)).count();
                let first = count(a[0]);
                a.iter().all(|&x| count(x) == first)
            })
        })
    }

    /// Splits `v` off the front of its cell. Returns the start of the new
    /// singleton cell. `v` must lie in a non-singleton cell.
    pub(crate) fn individualize(&mut self, v: usize) -> usize {
        let p = self.pos[v];
        let s = self.start_of[p];
        let len = self.cell_len[s];
        debug_assert!(len > 1);
        let other = self.lab[s];
        self.lab.swap(s, p);
        self.pos[other] = p;
        self.pos[v] = s;
        self.cell_len[s] = 1;
        self.cell_len[s + 1] = len - 1;
        for q in s + 1..s + len {
            self.start_of[q] = s + 1;
        }
        self.cells += 1;
        s
    }

    pub(crate) fn copy_from(&mut self, other: &OrderedPartition) {
        self.lab.clone_from(&other.lab);
        self.pos.clone_from(&other.pos);
        self.start_of.clone_from(&other.start_of);
        self.cell_len.clone_from(&other.cell_len);
        self.cells = other.cells;
    }
}

#[inline]
pub(crate) fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(5) ^ x).wrapping_mul(0x517c_c1b7_2722_0a95)
}

/// Scratch space for refinement, reusable across graphs.
#[derive(Default, Debug)]
pub(crate) struct Refiner {
    queue: VecDeque<usize>,
    in_queue: Vec<bool>,
    mask: Vec<u64>,
    keyed: Vec<(usize, usize)>,
    starts: Vec<usize>,
}

impl Refiner {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Refines `p` to the coarsest equitable partition finer than it, using
    /// the cells starting at `splitters` as the initial work queue. Returns a
    /// hash of the split sequence, which depends only on cell positions,
    /// sizes and neighbour counts and is therefore a labelling invariant.
    ///
    /// The result is equitable provided every cell not in `splitters`
    /// already has constant neighbour counts from every cell.
    pub(crate) fn refine(&mut self, g: &Graph, p: &mut OrderedPartition, splitters: &[usize]) -> u64 {
        let n = p.len();
        let words = g.words();
        self.in_queue.clear();
        self.in_queue.resize(n, false);
        self.mask.clear();
        self.mask.resize(words, 0);
        self.queue.clear();
        for &s in splitters {
            if !self.in_queue[s] {
                self.in_queue[s] = true;
                self.queue.push_back(s);
            }
        }
        let mut trace = 0x2545_f491_4f6c_dd1d_u64;
        while let Some(ws) = self.queue.pop_front() {
            if p.is_discrete() {
                break;
            }
            self.in_queue[ws] = false;
            let wlen = p.cell_len[ws];
            let single = (wlen == 1).then(|| p.lab[ws]);
            if single.is_none() {
                self.mask.iter_mut().for_each(|w| *w = 0);
                for &w in &p.lab[ws..ws + wlen] {
                    self.mask[w / WORD_BITS] |= 1 << (w % WORD_BITS);
                }
            }
            trace = mix(trace, ws as u64);
            let mut s = 0;
            while s < n {
                let len = p.cell_len[s];
                if len > 1 {
                    self.split_cell(g, p, s, len, single, &mut trace);
                }
                s += len;
            }
        }
        mix(trace, p.cells as u64)
    }

    fn split_cell(
        &mut self,
        g: &Graph,
        p: &mut OrderedPartition,
        s: usize,
        len: usize,
        single: Option<usize>,
        trace: &mut u64,
    ) {
        self.keyed.clear();
        let mut uniform = true;
        let mut first_count = usize::MAX;
        for &x in &p.lab[s..s + len] {
            let c = match single {
                Some(w) => g.has_edge(x, w) as usize,
                None => g
                    .row(x)
                    .iter()
                    .zip(&self.mask)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum(),
            };
            if first_count == usize::MAX {
                first_count = c;
            } else if c != first_count {
                uniform = false;
            }
            self.keyed.push((c, x));
        }
        if uniform {
            return;
        }
        self.keyed.sort_unstable();
        let was_queued = self.in_queue[s];
        // lay the sorted cell back out and record sub-cell boundaries
        let mut starts = std::mem::take(&mut self.starts);
        starts.clear();
        let mut prev = usize::MAX;
        for (k, &(c, x)) in self.keyed.iter().enumerate() {
            let q = s + k;
            p.lab[q] = x;
            p.pos[x] = q;
            if c != prev {
                starts.push(q);
                prev = c;
                *trace = mix(mix(*trace, q as u64), c as u64);
            }
        }
        starts.push(s + len);
        let mut largest = 0;
        for k in 0..starts.len() - 1 {
            let (a, b) = (starts[k], starts[k + 1]);
            p.cell_len[a] = b - a;
            for q in a..b {
                p.start_of[q] = a;
            }
            if b - a > starts[largest + 1] - starts[largest] {
                largest = k;
            }
        }
        p.cells += starts.len() - 2;
        for (k, &a) in starts[..starts.len() - 1].iter().enumerate() {
            let skip = if was_queued { k == 0 } else { k == largest };
            if !skip && !self.in_queue[a] {
                self.in_queue[a] = true;
                self.queue.push_back(a);
            }
        }
        self.starts = starts;
    }
}

/// Coarsest equitable partition finer than `p`.
pub fn refine(g: &Graph, p: &OrderedPartition) -> OrderedPartition {
    assert_eq!(g.vertex_count(), p.len(), "partition must cover the graph's vertices");
    let mut out = p.clone();
    let starts: Vec<usize> = out.cell_starts().collect();
    Refiner::new().refine(g, &mut out, &starts);
    out
}
