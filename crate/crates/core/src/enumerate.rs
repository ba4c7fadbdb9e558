//! Exhaustive generation of non-isomorphic graphs by canonical augmentation,
//! and minimum-vertex searches over automorphism-group predicates.
//!
//! Graphs on `k + 1` vertices are produced from the representatives on `k`
//! vertices by adding a vertex joined to a neighbour set `S`. Only one `S`
//! per orbit of the parent's automorphism group is tried, and a child is
//! kept iff the new vertex lies in the automorphism orbit of the vertex that
//! receives the highest canonical label. That vertex always lies in the
//! last cell of the root equitable partition, which gives a cheap reject
//! before the full search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::aut::{automorphism_group, order_u64, SearchOutcome, Searcher};
use crate::error::{AutError, EnumerateError};
use crate::graph::Graph;
use crate::graph6;
use crate::perm::{PermGroup, Permutation, UnionFind};

/// Default largest vertex count for enumeration.
pub const DEFAULT_MAX_N: usize = 10;

/// Parents processed between checkpoint writes.
const BATCH: usize = 2048;

/// One isomorphism class representative with its automorphism data.
#[derive(Clone, Debug)]
pub struct EnumeratedGraph {
    pub graph: Graph,
    /// Order of the automorphism group.
    pub aut_order: u64,
    generators: Vec<Vec<usize>>,
    canon_lab: Vec<usize>,
}

impl EnumeratedGraph {
    fn new(graph: Graph, out: SearchOutcome) -> Self {
        let aut_order = order_u64(&out.stabilizer_indices).expect("groups on at most 64 vertices in scope fit u64");
        Self {
            graph,
            aut_order,
            generators: out.generators,
            canon_lab: out.canon_lab,
        }
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .map(|g| Permutation::from_images_unchecked(g.clone()))
            .collect()
    }

    pub fn group(&self) -> Result<PermGroup, AutError> {
        Ok(PermGroup::generate(self.graph.vertex_count(), &self.generators())?)
    }

    /// graph6 of the canonically relabelled graph.
    pub fn canonical_form(&self) -> String {
        let mut labeling = vec![0; self.canon_lab.len()];
        for (label, &v) in self.canon_lab.iter().enumerate() {
            labeling[v] = label;
        }
        graph6::encode_string(&self.graph.relabel(&labeling))
    }
}

/// Knobs shared by enumeration and searches.
#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Refuse `n` above this.
    pub max_n: usize,
    /// Only generate graphs with at most this many edges.
    pub max_edges: Option<usize>,
    /// Worker threads; 1 runs inline.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            max_edges: None,
            jobs: 1,
        }
    }
}

/// Level-by-level generator of isomorphism class representatives.
pub struct Enumerator {
    n: usize,
    opts: EnumOptions,
    pool: Option<rayon::ThreadPool>,
}

impl Enumerator {
    pub fn new(n: usize, opts: EnumOptions) -> Result<Self, EnumerateError> {
        if n > opts.max_n || n > 64 {
            return Err(EnumerateError::CapExceeded {
                n,
                cap: opts.max_n.min(64),
            });
        }
        let pool = if opts.jobs > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.jobs)
                    .build()
                    .map_err(|e| EnumerateError::Checkpoint(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Self { n, opts, pool })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// All representatives on `k` vertices (within the edge bound), for
    /// `k = 0..=n` in turn; `levels[k]` holds the `k`-vertex graphs.
    pub fn levels(&self, upto: usize) -> Vec<Vec<EnumeratedGraph>> {
        let mut searcher = Searcher::new();
        let mut levels = Vec::with_capacity(upto + 1);
        let empty = Graph::empty(0);
        let out = searcher.run(&empty);
        levels.push(vec![EnumeratedGraph::new(empty, out)]);
        for _ in 1..=upto {
            let parents = levels.last().expect("level 0 exists");
            let next = self.children_of(parents, 0..parents.len());
            levels.push(next);
        }
        levels
    }

    /// Representatives on `n - 1` vertices, the parents of the last level.
    pub fn parents(&self) -> Vec<EnumeratedGraph> {
        if self.n == 0 {
            return Vec::new();
        }
        self.levels(self.n - 1).pop().expect("at least one level")
    }

    /// Children of `parents[range]`, grouped in parent order.
    pub fn children_of(&self, parents: &[EnumeratedGraph], range: Range<usize>) -> Vec<EnumeratedGraph> {
        let max_edges = self.opts.max_edges;
        let slice = &parents[range];
        match &self.pool {
            None => {
                let mut searcher = Searcher::new();
                let mut out = Vec::new();
                for p in slice {
                    extend_parent(p, &mut searcher, max_edges, &mut |c| out.push(c));
                }
                out
            }
            Some(pool) => pool.install(|| {
                slice
                    .par_iter()
                    .map_init(Searcher::new, |searcher, p| {
                        let mut out = Vec::new();
                        extend_parent(p, searcher, max_edges, &mut |c| out.push(c));
                        out
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            }),
        }
    }

    /// Calls `visit` on every representative with `n` vertices, in a
    /// deterministic order.
    pub fn for_each(&self, mut visit: impl FnMut(&EnumeratedGraph)) {
        if self.n == 0 {
            let g = Graph::empty(0);
            let out = Searcher::new().run(&g);
            visit(&EnumeratedGraph::new(g, out));
            return;
        }
        let parents = self.parents();
        for start in (0..parents.len()).step_by(BATCH) {
            let end = (start + BATCH).min(parents.len());
            for c in self.children_of(&parents, start..end) {
                visit(&c);
            }
        }
    }
}

/// Pairwise non-isomorphic graphs on `n` vertices, one per class.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    let e = Enumerator::new(n, EnumOptions::default())?;
    let mut out = Vec::new();
    e.for_each(|g| out.push(g.graph.clone()));
    Ok(out)
}

fn map_subset(s: usize, perm: &[usize]) -> usize {
    let mut t = 0;
    let mut bits = s;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        t |= 1 << perm[i];
    }
    t
}

/// Smallest member of every orbit of neighbour sets under the parent's
/// automorphism group.
fn subset_orbit_reps(k: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let total = 1usize << k;
    if gens.is_empty() {
        return (0..total).collect();
    }
    let mut uf = UnionFind::new(total);
    for g in gens {
        for s in 0..total {
            uf.union(s, map_subset(s, g));
        }
    }
    (0..total).filter(|&s| uf.find(s) == s).collect()
}

fn extend_parent(
    parent: &EnumeratedGraph,
    searcher: &mut Searcher,
    max_edges: Option<usize>,
    emit: &mut dyn FnMut(EnumeratedGraph),
) {
    let pg = &parent.graph;
    let k = pg.vertex_count();
    let nk = k + 1;
    debug_assert!(nk <= 64);
    let parent_edges = pg.edge_count();
    let parent_rows: Vec<u64> = (0..k).map(|i| pg.row(i)[0]).collect();
    let parent_deg: Vec<u32> = parent_rows.iter().map(|r| r.count_ones()).collect();

    for s in subset_orbit_reps(k, &parent.generators) {
        let s_bits = s as u64;
        let d = s_bits.count_ones();
        if max_edges.is_some_and(|me| parent_edges + d as usize > me) {
            continue;
        }
        // the new vertex must have maximum degree
        let too_low = parent_deg
            .iter()
            .enumerate()
            .any(|(i, &pd)| pd + ((s_bits >> i) & 1) as u32 > d);
        if too_low {
            continue;
        }
        let mut rows = Vec::with_capacity(nk);
        rows.extend(
            parent_rows
                .iter()
                .enumerate()
                .map(|(i, &r)| r | (((s_bits >> i) & 1) << k)),
        );
        rows.push(s_bits);
        let child = Graph::from_rows_unchecked(nk, rows);

        let (root, inv) = searcher.root_partition(&child);
        let last_start = root.start_of[nk - 1];
        if root.start_of[root.pos[k]] != last_start {
            continue;
        }
        let out = searcher.run_from(&child, root, inv);
        let designated = out.canon_lab[nk - 1];
        if designated != k && !same_orbit(nk, &out.generators, k, designated) {
            continue;
        }
        emit(EnumeratedGraph::new(child, out));
    }
}

fn same_orbit(n: usize, gens: &[Vec<usize>], a: usize, b: usize) -> bool {
    let mut uf = UnionFind::new(n);
    for g in gens {
        uf.add_permutation(g);
    }
    uf.find(a) == uf.find(b)
}

/// A condition on the full automorphism group.
pub trait AutPredicate: Sync {
    fn name(&self) -> String;
    /// The only group order for which the predicate can hold, if any.
    fn required_order(&self) -> Option<u64> {
        None
    }
    fn test(&self, group: &PermGroup) -> bool;
}

/// Automorphism group cyclic of the given order.
#[derive(Clone, Copy, Debug)]
pub struct CyclicOfOrder(pub u64);

impl AutPredicate for CyclicOfOrder {
    fn name(&self) -> String {
        format!("cyclic-{}", self.0)
    }
    fn required_order(&self) -> Option<u64> {
        Some(self.0)
    }
    fn test(&self, group: &PermGroup) -> bool {
        group.is_cyclic_of_order(self.0 as usize)
    }
}

/// Automorphism group of the given order, any structure.
#[derive(Clone, Copy, Debug)]
pub struct OfOrder(pub u64);

impl AutPredicate for OfOrder {
    fn name(&self) -> String {
        format!("order-{}", self.0)
    }
    fn required_order(&self) -> Option<u64> {
        Some(self.0)
    }
    fn test(&self, group: &PermGroup) -> bool {
        group.order() as u64 == self.0
    }
}

/// Trivial automorphism group.
#[derive(Clone, Copy, Debug)]
pub struct Trivial;

impl AutPredicate for Trivial {
    fn name(&self) -> String {
        "trivial".into()
    }
    fn required_order(&self) -> Option<u64> {
        Some(1)
    }
    fn test(&self, group: &PermGroup) -> bool {
        group.order() == 1
    }
}

fn satisfies(pred: &dyn AutPredicate, g: &EnumeratedGraph) -> Result<bool, EnumerateError> {
    if pred.required_order().is_some_and(|o| o != g.aut_order) {
        return Ok(false);
    }
    Ok(pred.test(&g.group()?))
}

/// Outcome of the search on one vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub predicate_name: String,
    /// Isomorphism classes examined.
    pub total_graphs: u64,
    /// Canonical graph6 forms of the classes satisfying the predicate, sorted.
    pub hits: Vec<String>,
    /// Hit classes after identifying each graph with its complement.
    pub hits_up_to_complement: usize,
    pub elapsed: Duration,
}

impl SearchReport {
    /// Deterministic `key=value` line (no timing).
    pub fn to_line(&self) -> String {
        format!(
            "n={} predicate={} total={} hits={} up_to_complement={}",
            self.n,
            self.predicate_name,
            self.total_graphs,
            self.hits.len(),
            self.hits_up_to_complement
        )
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Parsed form of a [`SearchReport::to_line`] line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub n: usize,
    pub predicate_name: String,
    pub total_graphs: u64,
    pub hits: usize,
    pub hits_up_to_complement: usize,
}

impl FromStr for ReportLine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: BTreeMap<&str, &str> = s.split_whitespace().filter_map(|kv| kv.split_once('=')).collect();
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| format!("missing {k}"));
        let num = |k: &str| -> Result<u64, String> { get(k)?.parse().map_err(|_| format!("bad {k}")) };
        Ok(Self {
            n: num("n")? as usize,
            predicate_name: get("predicate")?.to_string(),
            total_graphs: num("total")?,
            hits: num("hits")? as usize,
            hits_up_to_complement: num("up_to_complement")? as usize,
        })
    }
}

/// Options for [`search_min_vertices`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub enumeration: EnumOptions,
    /// Generate only graphs with at most half the possible edges and account
    /// for complements. Valid because `Aut(G) = Aut(complement G)`.
    pub use_complements: bool,
    /// Save and resume progress on the largest `n` here.
    pub checkpoint: Option<PathBuf>,
    /// Stop the largest-`n` pass after this many parents (for resumable runs).
    pub stop_after_parents: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            enumeration: EnumOptions::default(),
            use_complements: true,
            checkpoint: None,
            stop_after_parents: None,
        }
    }
}

/// Saved progress for the final level of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: usize,
    pub predicate: String,
    /// Parents fully processed.
    pub cursor: usize,
    pub parents: usize,
    pub total: u64,
    /// Canonical graph6 strings found so far.
    pub hits: BTreeSet<String>,
}

impl Checkpoint {
    pub fn is_complete(&self) -> bool {
        self.cursor == self.parents
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# cycgraph search checkpoint\nn={}\npredicate={}\ncursor={}\nparents={}\ntotal={}\n",
            self.n, self.predicate, self.cursor, self.parents, self.total
        );
        for h in &self.hits {
            s.push_str(h);
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, EnumerateError> {
        let bad = |m: &str| EnumerateError::Checkpoint(m.to_string());
        let mut kv = BTreeMap::new();
        let mut hits = BTreeSet::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            match line.split_once('=') {
                Some((k, v)) if !k.is_empty() && k.bytes().all(|b| b.is_ascii_lowercase()) => {
                    kv.insert(k.to_string(), v.to_string());
                }
                _ => {
                    graph6::decode_str(line).map_err(|e| bad(&format!("bad hit {line:?}: {e}")))?;
                    hits.insert(line.to_string());
                }
            }
        }
        let num = |k: &str| -> Result<u64, EnumerateError> {
            kv.get(k)
                .ok_or_else(|| bad(&format!("missing {k}")))?
                .parse()
                .map_err(|_| bad(&format!("bad {k}")))
        };
        let cp = Self {
            n: num("n")? as usize,
            predicate: kv.get("predicate").cloned().ok_or_else(|| bad("missing predicate"))?,
            cursor: num("cursor")? as usize,
            parents: num("parents")? as usize,
            total: num("total")?,
            hits,
        };
        if cp.cursor > cp.parents {
            return Err(bad("cursor beyond parent count"));
        }
        Ok(cp)
    }

    pub fn load(path: &Path) -> Result<Option<Self>, EnumerateError> {
        match fs::read_to_string(path) {
            Ok(t) => Self::parse(&t).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(EnumerateError::Checkpoint(e.to_string())),
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), EnumerateError> {
        let tmp = path.with_extension("tmp");
        let io = |e: std::io::Error| EnumerateError::Checkpoint(e.to_string());
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(self.to_text().as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}

/// Running tally for one vertex count.
struct Tally {
    n: usize,
    total: u64,
    hits: BTreeSet<String>,
}

impl Tally {
    fn new(n: usize) -> Self {
        Self {
            n,
            total: 0,
            hits: BTreeSet::new(),
        }
    }

    /// Accounts for `g` and, when complements are implied, for its
    /// complement. Graphs above half the edges are skipped: they are the
    /// complements of graphs counted elsewhere.
    fn add(&mut self, g: &EnumeratedGraph, pred: &dyn AutPredicate, complements: bool) -> Result<(), EnumerateError> {
        let pairs = self.n * self.n.saturating_sub(1) / 2;
        let twice_e = 2 * g.graph.edge_count();
        let with_complement = complements && twice_e < pairs;
        if complements && twice_e > pairs {
            return Ok(());
        }
        self.total += 1 + u64::from(with_complement);
        if satisfies(pred, g)? {
            self.hits.insert(g.canonical_form());
            if with_complement {
                let c = automorphism_group(&g.graph.complement())?;
                self.hits.insert(c.canonical_form_string());
            }
        }
        Ok(())
    }

    fn into_report(self, pred: &dyn AutPredicate, elapsed: Duration) -> Result<SearchReport, EnumerateError> {
        let hits: Vec<String> = self.hits.into_iter().collect();
        let hits_up_to_complement = classes_up_to_complement(&hits)?;
        Ok(SearchReport {
            n: self.n,
            predicate_name: pred.name(),
            total_graphs: self.total,
            hits,
            hits_up_to_complement,
            elapsed,
        })
    }
}

/// Number of classes among canonical forms when `G ~ complement(G)`.
pub fn classes_up_to_complement(canonical: &[String]) -> Result<usize, EnumerateError> {
    let mut classes = BTreeSet::new();
    for h in canonical {
        let g = graph6::decode_str(h).map_err(|e| EnumerateError::Checkpoint(e.to_string()))?;
        let c = automorphism_group(&g.complement())?.canonical_form_string();
        classes.insert(if *h <= c { h.clone() } else { c });
    }
    Ok(classes.len())
}

/// For `n = 1..=n_max`, examines every isomorphism class on `n` vertices
/// and records those whose automorphism group satisfies `pred`. The first
/// report with hits gives the minimum vertex count.
pub fn search_min_vertices(
    pred: &dyn AutPredicate,
    n_max: usize,
    opts: &SearchOptions,
) -> Result<Vec<SearchReport>, EnumerateError> {
    let mut enum_opts = opts.enumeration.clone();
    if opts.use_complements {
        let half = n_max * n_max.saturating_sub(1) / 4;
        enum_opts.max_edges = Some(enum_opts.max_edges.map_or(half, |e| e.min(half)));
    }
    let enumerator = Enumerator::new(n_max, enum_opts)?;
    if n_max == 0 {
        return Ok(Vec::new());
    }

    let mut reports = Vec::with_capacity(n_max);
    let mut level = {
        let g = Graph::empty(0);
        let out = Searcher::new().run(&g);
        vec![EnumeratedGraph::new(g, out)]
    };
    for n in 1..n_max {
        let start = Instant::now();
        level = enumerator.children_of(&level, 0..level.len());
        let mut tally = Tally::new(n);
        for g in &level {
            tally.add(g, pred, opts.use_complements)?;
        }
        reports.push(tally.into_report(pred, start.elapsed())?);
    }

    let start = Instant::now();
    let parents = level;
    let mut tally = Tally::new(n_max);
    let mut cursor = 0;
    if let Some(path) = &opts.checkpoint {
        if let Some(cp) = Checkpoint::load(path)? {
            if cp.n != n_max || cp.predicate != pred.name() || cp.parents != parents.len() {
                return Err(EnumerateError::Checkpoint(format!(
                    "{} belongs to a different search (n={}, predicate={}, parents={})",
                    path.display(),
                    cp.n,
                    cp.predicate,
                    cp.parents
                )));
            }
            cursor = cp.cursor;
            tally.total = cp.total;
            tally.hits = cp.hits;
        }
    }
    let stop = opts
        .stop_after_parents
        .map_or(parents.len(), |s| (cursor + s).min(parents.len()));
    while cursor < stop {
        let end = (cursor + BATCH).min(stop);
        for c in enumerator.children_of(&parents, cursor..end) {
            tally.add(&c, pred, opts.use_complements)?;
        }
        cursor = end;
        if let Some(path) = &opts.checkpoint {
            Checkpoint {
                n: n_max,
                predicate: pred.name(),
                cursor,
                parents: parents.len(),
                total: tally.total,
                hits: tally.hits.clone(),
            }
            .save(path)?;
        }
    }
    if cursor < parents.len() {
        return Err(EnumerateError::Checkpoint(format!(
            "stopped at parent {cursor} of {}",
            parents.len()
        )));
    }
    reports.push(tally.into_report(pred, start.elapsed())?);
    Ok(reports)
}

/// Number of isomorphism classes on `n` vertices for each automorphism
/// group order.
pub fn count_by_aut_order(n: usize) -> Result<BTreeMap<u64, u64>, EnumerateError> {
    let e = Enumerator::new(n, EnumOptions::default())?;
    let mut table = BTreeMap::new();
    e.for_each(|g| *table.entry(g.aut_order).or_insert(0) += 1);
    Ok(table)
}
