//! Clique-complex construction against brute-force oracles.

mod common;

use harpo_core::{graph_join, CliqueComplex, QubitGraph, WeightedGraph};

#[test]
fn wedge_graph_is_triangle_free() {
    let qg = QubitGraph::new(1).unwrap();
    let k = CliqueComplex::build(qg.graph(), 2).unwrap();
    assert_eq!(k.counts(), vec![7, 8, 0]);
    // brute force: no 3-clique exists
    assert_eq!(common::clique_count_oracle(qg.graph(), 3), 0);
    assert_eq!(common::clique_count_oracle(qg.graph(), 2), 8);
}

#[test]
fn join_complex_counts_match_oracle() {
    let qg = QubitGraph::new(2).unwrap();
    let k = CliqueComplex::build(qg.graph(), 4).unwrap();
    for size in 1..=5 {
        assert_eq!(
            k.len(size - 1),
            common::clique_count_oracle(qg.graph(), size),
            "clique count mismatch at size {size}"
        );
    }
    // every 3-simplex of the join picks one edge from each factor
    for s in k.simplices(3) {
        let in_first = s.vertices().iter().filter(|&&v| v < 7).count();
        assert_eq!(in_first, 2, "simplex {:?} is not factor-balanced", s.vertices());
    }
}

#[test]
fn join_associativity_at_complex_level() {
    let path = WeightedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
    let edge = WeightedGraph::unweighted(2, &[(0, 1)]).unwrap();
    let point = WeightedGraph::unweighted(1, &[]).unwrap();

    let left = graph_join(&graph_join(&path, &edge), &point);
    let right = graph_join(&path, &graph_join(&edge, &point));
    let kl = CliqueComplex::build(&left, 4).unwrap();
    let kr = CliqueComplex::build(&right, 4).unwrap();
    assert_eq!(kl.counts(), kr.counts());
}

#[test]
fn qubit_graph_homology_dimensions() {
    // β_1(Cl(G_1)) = 2 and β_3(Cl(G_2)) = 4 by the rank-nullity oracle
    let q1 = QubitGraph::new(1).unwrap();
    let k1 = CliqueComplex::build(q1.graph(), 2).unwrap();
    assert_eq!(common::betti_oracle(&k1, 1), 2);

    let q2 = QubitGraph::new(2).unwrap();
    let k2 = CliqueComplex::build(q2.graph(), 4).unwrap();
    assert_eq!(common::betti_oracle(&k2, 3), 4);
}

#[test]
fn deterministic_enumeration() {
    let qg = QubitGraph::new(2).unwrap();
    let a = CliqueComplex::build(qg.graph(), 3).unwrap();
    let b = CliqueComplex::build(qg.graph(), 3).unwrap();
    for p in 0..=3 {
        let va: Vec<_> = a.simplices(p).iter().map(|s| s.vertices().to_vec()).collect();
        let vb: Vec<_> = b.simplices(p).iter().map(|s| s.vertices().to_vec()).collect();
        assert_eq!(va, vb);
        // lexicographic order
        let mut sorted = va.clone();
        sorted.sort();
        assert_eq!(va, sorted);
    }
}
