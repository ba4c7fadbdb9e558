use cycgraph::graph::{Eccentricity, GraphBuilder};
use cycgraph::{graph6, Graph, GraphError};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut b = GraphBuilder::new(n);
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        b.add_edge(i, j).unwrap();
                    }
                    k += 1;
                }
            }
            b.build()
        })
    })
}

/// All-pairs distances by Floyd-Warshall.
fn distance_matrix(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
        for j in g.neighbors(i) {
            row[j] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eccentricity_matches_distance_matrix(g in arb_graph(50)) {
        let d = distance_matrix(&g);
        for (v, row) in d.iter().enumerate() {
            let expected = if row.iter().any(Option::is_none) {
                Eccentricity::Infinite
            } else {
                Eccentricity::Finite(row.iter().map(|x| x.unwrap()).max().unwrap())
            };
            prop_assert_eq!(g.eccentricity(v).unwrap(), expected);
        }
    }

    #[test]
    fn degree_sum_and_invariants(g in arb_graph(70)) {
        prop_assert!(g.check_invariants());
        prop_assert_eq!(g.degree_sequence().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(70)) {
        let c = g.complement();
        let n = g.vertex_count();
        prop_assert_eq!(c.edge_count(), n * n.saturating_sub(1) / 2 - g.edge_count());
        prop_assert!(c.check_invariants());
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn induced_on_everything_is_identity(g in arb_graph(40)) {
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        prop_assert_eq!(g.induced_subgraph(&all).unwrap().0, g);
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(70)) {
        let s = graph6::encode(&g);
        prop_assert!(s.iter().all(|&b| (63..=126).contains(&b)));
        prop_assert_eq!(graph6::decode(&s).unwrap(), g);
    }
}

#[test]
fn graph6_by_hand() {
    assert_eq!(graph6::encode_string(&Graph::complete(3)), "Bw");
    assert_eq!(graph6::encode_string(&Graph::empty(1)), "@");
    assert!(graph6::decode_str("B!").is_err());
    assert!(graph6::decode_str("Bww").is_err());
}

#[test]
fn builder_rules() {
    let mut b = GraphBuilder::new(2);
    b.add_edge(0, 1).unwrap().add_edge(1, 0).unwrap();
    assert_eq!(b.build().edge_count(), 1);
    let mut b = GraphBuilder::new(2);
    assert_eq!(b.add_edge(0, 0).unwrap_err(), GraphError::SelfLoop(0));
    assert!(matches!(b.add_edge(0, 2), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })));
}

#[test]
fn disjoint_union_and_eccentricity_edge_cases() {
    let k2 = Graph::complete(2);
    let u = k2.disjoint_union(&k2);
    assert_eq!((u.vertex_count(), u.edge_count()), (4, 2));
    assert_eq!(u.eccentricity(0).unwrap(), Eccentricity::Infinite);
    assert_eq!(Graph::complete(3).eccentricity(1).unwrap(), Eccentricity::Finite(1));
    assert_eq!(k2.disjoint_union(&Graph::empty(0)), k2);
    assert!(Graph::complete(3).eccentricity(3).is_err());
    assert_eq!(Graph::complete(4).complement(), Graph::empty(4));
    let (e, map) = Graph::cycle(5).induced_subgraph(&[]).unwrap();
    assert_eq!((e.vertex_count(), map.len()), (0, 0));
}
