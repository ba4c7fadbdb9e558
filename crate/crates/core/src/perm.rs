//! Permutations of `0..n` and small, fully enumerated permutation groups.
//!
//! Composition is right-to-left: `p.compose(&q)` maps `i` to `p(q(i))`.
//! Cycle notation is 1-based on input and output.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::PermError;

/// Closure stops with [`PermError::CapExceeded`] beyond this many elements.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    /// Wraps an image vector, checking that it is a bijection.
    pub fn from_images(map: Vec<usize>) -> Result<Self, PermError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijection(n));
            }
        }
        Ok(Self { map })
    }

    pub(crate) fn from_images_unchecked(map: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(map.clone()).is_ok());
        Self { map }
    }

    /// Builds a permutation of degree `n` from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x >= n {
                    return Err(PermError::EntryOutOfRange { entry: x + 1, degree: n });
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(PermError::RepeatedEntry { entry: x + 1 });
                }
            }
            for (k, &x) in cycle.iter().enumerate() {
                map[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { map })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same degree");
            }
            base = base.compose(&base).expect("same degree");
            e >>= 1;
        }
        acc
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.map[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.map[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles().iter().fold(1u128, |acc, c| {
            let len = c.len() as u128;
            let l = acc / gcd(acc, len);
            l.checked_mul(len).expect("permutation order exceeds u128")
        })
    }

    /// Parses 1-based cycle notation such as `(1,2,3,4)(5,6)`. The empty
    /// string and `()` both denote the identity.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Permutation, PermError> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Malformed(format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| PermError::Malformed("unclosed cycle".into()))?;
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let entry: usize = tok
                    .parse()
                    .map_err(|_| PermError::Malformed(format!("bad entry {tok:?}")))?;
                if entry == 0 || entry > n {
                    return Err(PermError::EntryOutOfRange { entry, degree: n });
                }
                cycle.push(entry - 1);
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    /// 1-based cycle notation with fixed points omitted; identity is `()`.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for c in cycles {
            out.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            out.push_str(&parts.join(","));
            out.push(')');
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self.format_cycles())
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A permutation group with its full element list.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
}

impl PermGroup {
    /// Closure of `generators` with the default size cap.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self, PermError> {
        Self::generate_with_cap(degree, generators, DEFAULT_GROUP_CAP)
    }

    /// Breadth-first closure: starting from the identity, multiply every
    /// element found so far by each generator.
    pub fn generate_with_cap(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self, PermError> {
        for g in generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Permutation::identity(degree);
        let mut members = HashSet::from([id.clone()]);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for g in generators {
                let next = g.compose(&elements[idx])?;
                if members.contains(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(PermError::CapExceeded { cap });
                }
                members.insert(next.clone());
                elements.push(next);
                queue.push_back(elements.len() - 1);
            }
        }
        Ok(Self {
            degree,
            generators: generators.to_vec(),
            elements,
            members,
        })
    }

    /// Wraps an already closed element set. Every non-identity element is
    /// kept as a generator.
    pub(crate) fn from_closed_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let members: HashSet<_> = elements.iter().cloned().collect();
        let generators = elements.iter().filter(|p| !p.is_identity()).cloned().collect();
        Self {
            degree,
            generators,
            elements,
            members,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, &[]).expect("trivial group fits any cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    /// Element-for-element equality.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.members == other.members
    }

    /// Orbits on `0..degree`, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// Some element of order `m` when the group has exactly `m` elements.
    pub fn cyclic_witness(&self, m: usize) -> Option<&Permutation> {
        if self.order() != m {
            return None;
        }
        self.elements.iter().find(|p| p.order() == m as u128)
    }

    pub fn is_cyclic_of_order(&self, m: usize) -> bool {
        self.cyclic_witness(m).is_some()
    }

    pub fn is_cyclic(&self) -> bool {
        self.is_cyclic_of_order(self.order())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Union-find over points, used for orbit computations.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes of `a` and `b`, keeping the smaller root. Returns
    /// true if they were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn add_permutation(&mut self, p: &[usize]) {
        for (i, &x) in p.iter().enumerate() {
            self.union(i, x);
        }
    }
}

/// Orbits of the group generated by `generators` on `0..n`.
pub fn orbits_of(n: usize, generators: &[Permutation]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for g in generators {
        uf.add_permutation(g.images());
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(v);
    }
    classes
}
