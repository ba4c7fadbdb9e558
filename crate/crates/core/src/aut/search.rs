//! Individualization-refinement search tree.
//!
//! Every node is an equitable ordered partition. A child individualizes
//! one vertex of the target cell (the first non-singleton cell of minimum
//! size) and refines. Leaves are discrete partitions, read as labellings.
//!
//! Leaves are ranked by the pair (sequence of node invariants along the
//! path, relabelled adjacency matrix); the greatest one gives the canonical
//! form. A leaf whose rank equals the first leaf's, or the current best
//! leaf's, yields an automorphism. Children that are equivalent under the
//! automorphisms found so far fixing the current path are skipped; after an
//! automorphism against the first leaf the search returns to the level
//! where the current path left the first path.

use std::cmp::Ordering;

use super::partition::{OrderedPartition, Refiner};
use crate::graph::{Graph, WORD_BITS};
use crate::perm::UnionFind;

#[derive(Clone, Debug)]
struct Leaf {
    lab: Vec<usize>,
    cert: Vec<u64>,
}

/// Raw outcome of one search.
#[derive(Clone, Debug)]
pub(crate) struct SearchOutcome {
    pub generators: Vec<Vec<usize>>,
    /// Best leaf: position `i` holds the vertex receiving canonical label `i`.
    pub canon_lab: Vec<usize>,
    /// Index of `v_{k+1}`'s orbit in the stabiliser of the first-path prefix.
    pub stabilizer_indices: Vec<usize>,
    pub nodes: u64,
}

enum Step {
    Continue,
    /// Resume with the next child of the node at this level.
    Return(usize),
}

/// Search state with buffers reusable across graphs.
#[derive(Default)]
pub(crate) struct Searcher {
    refiner: Refiner,
    levels: Vec<OrderedPartition>,
    path: Vec<usize>,
    cur_inv: Vec<u64>,
    first: Option<Leaf>,
    first_inv: Vec<u64>,
    first_path: Vec<usize>,
    first_targets: Vec<Vec<usize>>,
    best: Option<Leaf>,
    best_inv: Vec<u64>,
    generators: Vec<Vec<usize>>,
    nodes: u64,
    cert_words: usize,
}

impl Searcher {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Equitable refinement of the unit partition, as used at the root.
    pub(crate) fn root_partition(&mut self, g: &Graph) -> (OrderedPartition, u64) {
        let mut p = OrderedPartition::unit(g.vertex_count());
        let inv = if g.vertex_count() == 0 {
            0
        } else {
            self.refiner.refine(g, &mut p, &[0])
        };
        (p, inv)
    }

    /// Runs the full search starting from an already refined root.
    pub(crate) fn run_from(&mut self, g: &Graph, root: OrderedPartition, root_inv: u64) -> SearchOutcome {
        let n = g.vertex_count();
        self.cert_words = n.div_ceil(WORD_BITS);
        self.path.clear();
        self.cur_inv.clear();
        self.cur_inv.push(root_inv);
        self.first = None;
        self.first_inv.clear();
        self.first_path.clear();
        self.first_targets.clear();
        self.best = None;
        self.best_inv.clear();
        self.generators.clear();
        self.nodes = 0;
        if self.levels.is_empty() {
            self.levels.push(root);
        } else {
            self.levels[0] = root;
        }
        self.visit(g, 0, true);

        let best = self.best.take().expect("search reaches at least one leaf");
        let stabilizer_indices = self.stabilizer_indices(n);
        SearchOutcome {
            generators: std::mem::take(&mut self.generators),
            canon_lab: best.lab,
            stabilizer_indices,
            nodes: self.nodes,
        }
    }

    pub(crate) fn run(&mut self, g: &Graph) -> SearchOutcome {
        let (root, inv) = self.root_partition(g);
        self.run_from(g, root, inv)
    }

    fn visit(&mut self, g: &Graph, lvl: usize, eq_first: bool) -> Step {
        self.nodes += 1;
        if self.levels[lvl].is_discrete() {
            return self.leaf(g, lvl, eq_first);
        }
        let target = self.target_cell(lvl);
        let building_first = self.first.is_none();
        if building_first {
            self.first_targets.push(target.clone());
        }
        // built on the second child; most nodes return after their first
        let mut uf: Option<UnionFind> = None;
        let mut seen_gens = 0;
        let mut explored: Vec<usize> = Vec::new();
        for &w in &target {
            if !explored.is_empty() {
                let uf = uf.get_or_insert_with(|| UnionFind::new(g.vertex_count()));
                while seen_gens < self.generators.len() {
                    let gen = &self.generators[seen_gens];
                    if self.path.iter().all(|&v| gen[v] == v) {
                        uf.add_permutation(gen);
                    }
                    seen_gens += 1;
                }
                let rw = uf.find(w);
                if explored.iter().any(|&x| uf.find(x) == rw) {
                    continue;
                }
            }
            explored.push(w);

            if self.levels.len() <= lvl + 1 {
                self.levels.push(self.levels[lvl].clone());
            } else {
                let (lo, hi) = self.levels.split_at_mut(lvl + 1);
                hi[0].copy_from(&lo[lvl]);
            }
            let part = &mut self.levels[lvl + 1];
            let s = part.individualize(w);
            let inv = self.refiner.refine(g, part, &[s]);
            self.path.push(w);
            self.cur_inv.truncate(lvl + 1);
            self.cur_inv.push(inv);

            let child_eq_first = self.first.is_none() || (eq_first && self.first_inv.get(lvl + 1) == Some(&inv));
            let worse = self.first.is_some() && self.prefix_cmp_best(lvl + 1) == Ordering::Less;
            let step = if !child_eq_first && worse {
                Step::Continue
            } else {
                self.visit(g, lvl + 1, child_eq_first)
            };
            self.path.pop();
            if let Step::Return(to) = step {
                if to < lvl {
                    return step;
                }
            }
        }
        Step::Continue
    }

    fn target_cell(&self, lvl: usize) -> Vec<usize> {
        let p = &self.levels[lvl];
        let mut best: Option<(usize, usize)> = None;
        for s in p.cell_starts() {
            let len = p.cell_len[s];
            if len > 1 && best.is_none_or(|(_, l)| len < l) {
                best = Some((s, len));
            }
        }
        let (s, len) = best.expect("non-discrete partition has a non-singleton cell");
        let mut cell = p.lab[s..s + len].to_vec();
        cell.sort_unstable();
        cell
    }

    /// Compares the current invariant prefix `0..=lvl` with the best leaf's.
    fn prefix_cmp_best(&self, lvl: usize) -> Ordering {
        let k = (lvl + 1).min(self.best_inv.len());
        self.cur_inv[..k].cmp(&self.best_inv[..k])
    }

    fn certificate(&self, g: &Graph, lab: &[usize], pos: &[usize]) -> Vec<u64> {
        let words = self.cert_words;
        let mut cert = vec![0u64; lab.len() * words];
        for (i, &v) in lab.iter().enumerate() {
            let row = &mut cert[i * words..(i + 1) * words];
            for u in g.neighbors(v) {
                let j = pos[u];
                row[j / WORD_BITS] |= 1 << (WORD_BITS - 1 - j % WORD_BITS);
            }
        }
        cert
    }

    fn leaf(&mut self, g: &Graph, lvl: usize, eq_first: bool) -> Step {
        let part = &self.levels[lvl];
        let cert = self.certificate(g, &part.lab, &part.pos);
        let lab = part.lab.clone();

        let Some(first) = &self.first else {
            self.first_inv = self.cur_inv.clone();
            self.best_inv = self.cur_inv.clone();
            self.first_path = self.path.clone();
            let leaf = Leaf { lab, cert };
            self.best = Some(leaf.clone());
            self.first = Some(leaf);
            return Step::Continue;
        };

        if eq_first && self.cur_inv == self.first_inv && cert == first.cert {
            let gen = map_between(&first.lab, &lab);
            self.generators.push(gen);
            let diverge = self
                .path
                .iter()
                .zip(&self.first_path)
                .position(|(a, b)| a != b)
                .expect("a second leaf leaves the first path somewhere");
            return Step::Return(diverge);
        }

        let best = self.best.as_ref().expect("best is set with first");
        match self.cur_inv.cmp(&self.best_inv).then_with(|| cert.cmp(&best.cert)) {
            Ordering::Greater => {
                self.best_inv = self.cur_inv.clone();
                self.best = Some(Leaf { lab, cert });
            }
            Ordering::Equal => {
                let gen = map_between(&best.lab, &lab);
                self.generators.push(gen);
            }
            Ordering::Less => {}
        }
        Step::Continue
    }

    /// `[Aut_(v1..vk) : Aut_(v1..vk+1)]` for each first-path level `k`.
    fn stabilizer_indices(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.first_path.len());
        for (k, &v) in self.first_path.iter().enumerate() {
            let prefix = &self.first_path[..k];
            let mut uf = UnionFind::new(n);
            for gen in &self.generators {
                if prefix.iter().all(|&x| gen[x] == x) {
                    uf.add_permutation(gen);
                }
            }
            let r = uf.find(v);
            out.push(self.first_targets[k].iter().filter(|&&w| uf.find(w) == r).count());
        }
        out
    }
}

/// Permutation sending `from[i]` to `to[i]`.
fn map_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut map = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        map[a] = b;
    }
    map
}
