use std::collections::{BTreeMap, BTreeSet};

use cycgraph::enumerate::{
    count_by_aut_order, search_min_vertices, Checkpoint, CyclicOfOrder, EnumOptions, Enumerator, OfOrder,
    SearchOptions, Trivial,
};
use cycgraph::{automorphism_group, enumerate_graphs, graph6, EnumerateError, Graph};

/// Integer partitions of `n` as part lists.
fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for k in (1..=max.min(n)).rev() {
        prefix.push(k);
        partitions(n - k, k, prefix, out);
        prefix.pop();
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Burnside: number of unlabelled graphs on `n` vertices by edge count,
/// averaging over cycle types of S_n the pair-orbit polynomial
/// `prod (1 + x^len)`.
fn burnside_by_edges(n: usize) -> Vec<u128> {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut total = vec![0u128; pairs + 1];
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    for lambda in parts {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &k in &lambda {
            *mult.entry(k).or_default() += 1;
        }
        let centralizer: u128 = mult
            .iter()
            .map(|(&k, &m)| (k as u128).pow(m as u32) * factorial(m))
            .product();
        let class = factorial(n) / centralizer;

        // pair orbits: within a k-cycle and between two cycles
        let mut lens = Vec::new();
        for &k in &lambda {
            for _ in 0..(k - 1) / 2 {
                lens.push(k);
            }
            if k % 2 == 0 {
                lens.push(k / 2);
            }
        }
        for i in 0..lambda.len() {
            for j in i + 1..lambda.len() {
                let (a, b) = (lambda[i], lambda[j]);
                let g = gcd(a, b);
                for _ in 0..g {
                    lens.push(a * b / g);
                }
            }
        }
        let mut poly = vec![0u128; pairs + 1];
        poly[0] = 1;
        for len in lens {
            for e in (len..=pairs).rev() {
                poly[e] += poly[e - len];
            }
        }
        for (t, p) in total.iter_mut().zip(poly) {
            *t += class * p;
        }
    }
    total.iter().map(|t| t / factorial(n)).collect()
}

fn edge_histogram(n: usize, max_edges: Option<usize>) -> Vec<u128> {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut hist = vec![0u128; pairs + 1];
    let e = Enumerator::new(
        n,
        EnumOptions {
            max_edges,
            ..EnumOptions::default()
        },
    )
    .unwrap();
    e.for_each(|g| hist[g.graph.edge_count()] += 1);
    hist
}

#[test]
fn burnside_oracle_itself() {
    let totals: Vec<u128> = (0..=8).map(|n| burnside_by_edges(n).iter().sum()).collect();
    assert_eq!(totals, [1, 1, 2, 4, 11, 34, 156, 1044, 12346]);
}

#[test]
fn class_counts_match_burnside_by_edge_count() {
    for n in 0..=8 {
        assert_eq!(edge_histogram(n, None), burnside_by_edges(n), "n={n}");
    }
}

#[test]
fn edge_bound_keeps_exactly_the_light_classes() {
    for n in 4..=8 {
        let pairs = n * (n - 1) / 2;
        let bound = pairs / 2;
        let expected: Vec<u128> = burnside_by_edges(n)
            .into_iter()
            .enumerate()
            .map(|(e, c)| if e <= bound { c } else { 0 })
            .collect();
        assert_eq!(edge_histogram(n, Some(bound)), expected, "n={n}");
    }
}

#[test]
fn nine_vertices_with_threads() {
    let e = Enumerator::new(
        9,
        EnumOptions {
            jobs: 4,
            ..EnumOptions::default()
        },
    )
    .unwrap();
    let mut hist = vec![0u128; 37];
    e.for_each(|g| hist[g.graph.edge_count()] += 1);
    assert_eq!(hist, burnside_by_edges(9));
}

/// Canonical form by trying every relabelling; independent of the search.
fn brute_canonical(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let code: Vec<u64> = (0..n)
            .map(|i| (0..n).fold(0u64, |acc, j| acc << 1 | u64::from(g.has_edge(perm[i], perm[j]))))
            .collect();
        if best.as_ref().is_none_or(|b| code > *b) {
            best = Some(code);
        }
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    best.unwrap_or_default()
}

fn labelled_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn bucket_oracle_up_to_six_vertices() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        let buckets: BTreeSet<Vec<u64>> = (0..1u64 << pairs)
            .map(|m| brute_canonical(&labelled_graph(n, m)))
            .collect();
        let reps = enumerate_graphs(n).unwrap();
        let rep_keys: BTreeSet<Vec<u64>> = reps.iter().map(brute_canonical).collect();
        assert_eq!(rep_keys.len(), reps.len(), "duplicate class at n={n}");
        assert_eq!(rep_keys, buckets, "n={n}");
    }
}

#[test]
fn bucket_oracle_seven_vertices() {
    let n = 7;
    let buckets: BTreeSet<Vec<u8>> = (0..1u64 << 21)
        .map(|m| automorphism_group(&labelled_graph(n, m)).unwrap().canonical_form)
        .collect();
    let reps: BTreeSet<Vec<u8>> = enumerate_graphs(n)
        .unwrap()
        .iter()
        .map(|g| automorphism_group(g).unwrap().canonical_form)
        .collect();
    assert_eq!(reps.len(), 1044);
    assert_eq!(reps, buckets);
}

#[test]
fn orbit_counting_identity() {
    // sum over classes of n!/|Aut(G)| counts labelled graphs
    for n in 1..=8 {
        let table = count_by_aut_order(n).unwrap();
        let labelled: u128 = table.iter().map(|(&o, &c)| factorial(n) / o as u128 * c as u128).sum();
        assert_eq!(labelled, 1u128 << (n * (n - 1) / 2), "n={n}");
    }
}

#[test]
fn classes_are_closed_under_complement() {
    for n in 1..=7 {
        let forms: BTreeSet<Vec<u8>> = enumerate_graphs(n)
            .unwrap()
            .iter()
            .map(|g| automorphism_group(g).unwrap().canonical_form)
            .collect();
        for f in &forms {
            let g = graph6::decode(f).unwrap();
            let c = automorphism_group(&g.complement()).unwrap().canonical_form;
            assert!(forms.contains(&c));
        }
    }
}

#[test]
fn complement_shortcut_agrees_with_full_enumeration() {
    for n_max in [6, 7, 8] {
        let full = SearchOptions {
            use_complements: false,
            ..SearchOptions::default()
        };
        for pred in [&CyclicOfOrder(2) as &dyn cycgraph::enumerate::AutPredicate, &OfOrder(4), &Trivial] {
            let a = search_min_vertices(pred, n_max, &SearchOptions::default()).unwrap();
            let b = search_min_vertices(pred, n_max, &full).unwrap();
            let strip = |r: &Vec<cycgraph::SearchReport>| {
                r.iter().map(|x| (x.to_line(), x.hits.clone())).collect::<Vec<_>>()
            };
            assert_eq!(strip(&a), strip(&b), "n_max={n_max} {}", pred.name());
        }
    }
}

#[test]
fn asymmetric_graph_counts() {
    let reports = search_min_vertices(&Trivial, 7, &SearchOptions::default()).unwrap();
    let hits: Vec<usize> = reports.iter().map(|r| r.hits.len()).collect();
    assert_eq!(hits, [1, 0, 0, 0, 0, 8, 152]);
}

#[test]
fn checkpointed_run_matches_straight_run() {
    let dir = std::env::temp_dir().join(format!("cycgraph-cp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("n7.cp");
    let _ = std::fs::remove_file(&path);
    let pred = CyclicOfOrder(2);
    let straight = search_min_vertices(&pred, 7, &SearchOptions::default()).unwrap();

    let opts = |stop| SearchOptions {
        checkpoint: Some(path.clone()),
        stop_after_parents: stop,
        ..SearchOptions::default()
    };
    // interrupt after every single parent; each call resumes where the last stopped
    let mut resumed = None;
    for _ in 0..1000 {
        match search_min_vertices(&pred, 7, &opts(Some(1))) {
            Ok(r) => {
                resumed = Some(r);
                break;
            }
            Err(EnumerateError::Checkpoint(_)) => {
                let cp = Checkpoint::load(&path).unwrap().unwrap();
                assert!(!cp.is_complete());
            }
            Err(e) => panic!("{e}"),
        }
    }
    let resumed = resumed.expect("finishes");
    let last = |r: &Vec<cycgraph::SearchReport>| {
        let x = r.last().unwrap().clone();
        (x.total_graphs, x.hits, x.hits_up_to_complement)
    };
    assert_eq!(last(&resumed), last(&straight));
    assert_eq!(resumed.last().unwrap().total_graphs, 1044);

    // a finished checkpoint just reports again
    let again = search_min_vertices(&pred, 7, &opts(None)).unwrap();
    assert_eq!(last(&again), last(&straight));

    // a checkpoint for another search is refused
    assert!(search_min_vertices(&OfOrder(2), 7, &opts(None)).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cap_exceeded() {
    assert!(matches!(
        search_min_vertices(&Trivial, 11, &SearchOptions::default()),
        Err(EnumerateError::CapExceeded { n: 11, .. })
    ));
}
