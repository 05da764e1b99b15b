mod common;

use proptest::prelude::*;

use common::*;
use rllab_core::budget::Budget;
use rllab_core::catalog::{connected_graphs, connected_graphs_up_to};
use rllab_core::forcing::zero_forcing_number;
use rllab_core::graph::Graph;
use rllab_core::structure::{
    from_elimination_order, has_x_minor, is_two_parallel_paths, linkage_chords, treewidth_exact,
};

#[test]
fn rigid_linkages_are_chordless_without_x_minors() {
    let mut b = Budget::unlimited();
    let mut count = 0;
    for g in connected_graphs_up_to(7) {
        for (p, lab) in rigid_triples(&g, &mut b) {
            assert!(linkage_chords(&g, &p).unwrap().chords.is_empty(), "{:?}", p.paths());
            assert!(!has_x_minor(&g, &p, &lab).unwrap(), "{:?} {:?}", p.paths(), g.edges());
            count += 1;
        }
    }
    assert!(count > 100_000);
}

#[test]
fn order_two_rigidity_matches_z_and_parallel_paths() {
    let mut b = Budget::unlimited();
    for g in connected_graphs_up_to(7) {
        if g.is_path() {
            continue;
        }
        let spanning_two = rigid_triples(&g, &mut b)
            .iter()
            .any(|(p, _)| p.order() == 2 && p.is_spanning(&g));
        let z2 = zero_forcing_number(&g, &mut b).unwrap().value == 2;
        let tpp = is_two_parallel_paths(&g, &mut b).unwrap();
        assert_eq!(spanning_two, z2, "{:?}", g.edges());
        assert_eq!(z2, tpp, "{:?}", g.edges());
    }
}

#[test]
fn treewidth_matches_brute_force() {
    for g in connected_graphs_up_to(6) {
        let tw = treewidth_exact(&g).unwrap();
        tw.decomposition.validate(&g).unwrap();
        assert_eq!(tw.decomposition.width(), tw.width);
        assert_eq!(tw.width, treewidth_naive(&g), "{:?}", g.edges());
    }
    for g in connected_graphs(7) {
        treewidth_exact(&g).unwrap().decomposition.validate(&g).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn any_elimination_order_gives_a_valid_decomposition(
        n in 1usize..=10,
        edges in proptest::collection::vec((1usize..=10, 1usize..=10), 0..30),
        order in Just((1..=10).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let mut e: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v && u <= n && v <= n)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        e.sort();
        e.dedup();
        let g = Graph::from_edges(n, &e).unwrap();
        let order: Vec<usize> = order.into_iter().filter(|&v| v <= n).collect();
        let d = from_elimination_order(&g, &order);
        prop_assert!(d.validate(&g).is_ok(), "{:?}", d.validate(&g));
        prop_assert!(d.width() >= treewidth_exact(&g).unwrap().width);
    }
}
