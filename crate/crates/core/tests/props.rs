//! Property tests over randomly generated weighted graphs and chains.

use harpo_core::scalar::{rat, Rat};
use harpo_core::*;
use num_traits::One;
use proptest::prelude::*;

const WEIGHT_POOL: [(i64, i64); 5] = [(1, 1), (1, 2), (2, 1), (1, 10), (3, 1)];

prop_compose! {
    fn small_weighted_graph()(
        n in 3usize..7,
        edge_bits in proptest::collection::vec(any::<bool>(), 21),
        weight_picks in proptest::collection::vec(0usize..WEIGHT_POOL.len(), 7),
    ) -> WeightedGraph {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if edge_bits[bit % edge_bits.len()] {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        let weights: Vec<Rat> = (0..n)
            .map(|i| {
                let (p, q) = WEIGHT_POOL[weight_picks[i % weight_picks.len()]];
                rat(p, q)
            })
            .collect();
        WeightedGraph::new(n, weights, &edges).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boundary_squares_to_zero(g in small_weighted_graph(), coeffs in proptest::collection::vec(-3i64..=3, 8)) {
        let k = CliqueComplex::build(&g, 3).unwrap();
        for p in 1..=2usize {
            if k.len(p + 1) == 0 {
                continue;
            }
            let entries: Vec<(usize, Rat)> = coeffs
                .iter()
                .enumerate()
                .filter(|(i, c)| *i < k.len(p + 1) && **c != 0)
                .map(|(i, c)| (i, rat(*c, 1)))
                .collect();
            if entries.is_empty() {
                continue;
            }
            let x = Chain::from_rat_entries(p + 1, entries);
            let dx = apply_boundary(&k, &x).unwrap();
            let ddx = apply_boundary(&k, &dx).unwrap();
            prop_assert!(ddx.is_zero());
        }
    }

    #[test]
    fn laplacian_symmetric_and_psd(g in small_weighted_graph()) {
        let k = CliqueComplex::build(&g, 2).unwrap();
        for p in 0..=2usize {
            if k.len(p) == 0 {
                continue;
            }
            let lap = laplacian(&k, p).unwrap();
            prop_assert!(lap.full.is_symmetric());
            prop_assert!(lap.up.add(&lap.down).sub(&lap.full).is_zero());
            prop_assert!(harpo_core::qsat::psd_spot_check(&lap.full, 3));
        }
    }

    #[test]
    fn basis_round_trip(g in small_weighted_graph(), coeffs in proptest::collection::vec(-5i64..=5, 6)) {
        let k = CliqueComplex::build(&g, 2).unwrap();
        if k.len(1) == 0 {
            return Ok(());
        }
        let entries: Vec<(usize, Rat)> = coeffs
            .iter()
            .enumerate()
            .filter(|(i, c)| *i < k.len(1) && **c != 0)
            .map(|(i, c)| (i, rat(*c, 7)))
            .collect();
        let chain = Chain::from_rat_entries(1, entries);
        let weighted = chain.to_weighted_basis(&k);
        let back = Chain::from_weighted_basis(&k, 1, weighted);
        prop_assert!(chain.sub(&back).is_zero());
    }

    #[test]
    fn join_is_associative_on_counts(
        a in small_weighted_graph(),
        b in small_weighted_graph(),
        c in small_weighted_graph(),
    ) {
        let left = graph_join(&graph_join(&a, &b), &c);
        let right = graph_join(&a, &graph_join(&b, &c));
        let kl = CliqueComplex::build_with_cap(&left, 3, 200_000);
        let kr = CliqueComplex::build_with_cap(&right, 3, 200_000);
        match (kl, kr) {
            (Ok(kl), Ok(kr)) => prop_assert_eq!(kl.counts(), kr.counts()),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "cap behavior diverged between associations"),
        }
    }

    #[test]
    fn subset_states_are_unit_norm(
        seed in 0u64..500,
    ) {
        // random sub-walks of the two bit cycles as a two-block descriptor
        let qg = QubitGraph::new(2).unwrap();
        let k = CliqueComplex::build(qg.graph(), 3).unwrap();
        let take_left = 1 + (seed % 4) as usize;
        let take_right = 1 + ((seed / 4) % 4) as usize;
        let block1 = vec![
            qg.cycle_edges(0, false)[..take_left].to_vec(),
            qg.cycle_edges(1, false)[..take_right].to_vec(),
        ];
        let block2 = vec![
            qg.cycle_edges(0, true)[..take_right].to_vec(),
            qg.cycle_edges(1, true)[..take_left].to_vec(),
        ];
        let d = SubsetStateDescriptor::new(2, vec![block1, block2]).unwrap();
        let chain = expand_subset_state(&k, &d).unwrap();
        prop_assert!(chain.norm_sq().eq_rat(&Rat::one()));
    }

    #[test]
    fn lowering_delta_never_flips_one_to_zero(num in 1i64..10) {
        let qg = QubitGraph::new(1).unwrap();
        let k = CliqueComplex::build(qg.graph(), 2).unwrap();
        let d = harpo_core::s_map_descriptor(&qg, &[true]).unwrap();
        let hi = rat(num, 10);
        let lo = rat(num, 20);
        let dec_hi = decide_harmonics(&k, 1, &d, &hi, DecisionMethod::Exact, Backend::Exact, None).unwrap();
        let dec_lo = decide_harmonics(&k, 1, &d, &lo, DecisionMethod::Exact, Backend::Exact, None).unwrap();
        prop_assert!(dec_lo.outcome >= dec_hi.outcome);
    }
}
