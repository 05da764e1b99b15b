mod common;

use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use rllab_core::budget::Budget;
use rllab_core::catalog::connected_graphs_up_to;
use rllab_core::families::{cartesian_product, FamilySpec};
use rllab_core::forcing::zero_forcing_number;
use rllab_core::graph::{Graph, VertexSet};
use rllab_core::linkage::{
    is_rigid, is_unique_linkage, rigid_linkage_number, rigid_shortest_linkage_number, Labeling,
    Linkage,
};

fn without_vertices(g: &Graph, x: VertexSet) -> Graph {
    let e: Vec<_> = g.edges().into_iter().filter(|&(u, v)| !x.contains(u) && !x.contains(v)).collect();
    Graph::from_edges(g.order(), &e).unwrap()
}

#[test]
fn rigid_implies_unique() {
    let mut b = Budget::unlimited();
    for g in connected_graphs_up_to(6) {
        for (p, _) in rigid_triples(&g, &mut b) {
            assert!(is_unique_linkage(&g, &p, &mut b).unwrap(), "{:?} in {:?}", p.paths(), g.edges());
        }
    }
}

#[test]
fn truncated_rigid_linkages_stay_rigid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut b = Budget::unlimited();
    let graphs = connected_graphs_up_to(6);
    let mut checked = 0;
    for g in &graphs {
        let rigid = rigid_triples(g, &mut b);
        for (p, lab) in rigid.choose_multiple(&mut rng, 4) {
            let paths = p.oriented(lab).unwrap();
            let mut kept = Vec::new();
            for q in &paths {
                if rng.random_bool(0.7) {
                    let v = q.vertices();
                    let i = rng.random_range(0..v.len());
                    let j = rng.random_range(i..v.len());
                    kept.push(v[i..=j].to_vec());
                }
            }
            if kept.is_empty() {
                continue;
            }
            let alpha: VertexSet = kept.iter().map(|q| q[0]).collect();
            let beta: VertexSet = kept.iter().map(|q| *q.last().unwrap()).collect();
            let kept_set: VertexSet = kept.iter().flatten().collect();
            let h = without_vertices(g, p.vertex_set() - kept_set);
            let sub = Linkage::new(&h, kept.clone()).unwrap();
            let lab2 = Labeling::new(alpha, beta).unwrap();
            assert!(is_rigid(&h, &sub, &lab2, &mut b).unwrap(), "{kept:?} from {:?} in {:?}", p.paths(), g.edges());
            checked += 1;
        }
    }
    assert!(checked > 300);
}

#[test]
fn rigidity_survives_edge_deletion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut b = Budget::unlimited();
    for g in connected_graphs_up_to(6) {
        let rigid = rigid_triples(&g, &mut b);
        for (p, lab) in rigid.choose_multiple(&mut rng, 3) {
            let path_edges = p.edges();
            let e: Vec<_> = g
                .edges()
                .into_iter()
                .filter(|e| path_edges.contains(e) || rng.random_bool(0.5))
                .collect();
            let h = Graph::from_edges(g.order(), &e).unwrap();
            assert!(is_rigid(&h, p, lab, &mut b).unwrap());
        }
    }
}

#[test]
fn rsl_dominates_rl_and_spanning_rsl_needs_z() {
    let mut b = Budget::unlimited();
    for g in connected_graphs_up_to(6) {
        let z = zero_forcing_number(&g, &mut b).unwrap().value;
        for t in 1..=g.order() {
            let rl = rigid_linkage_number(&g, t, &mut b).unwrap().value;
            let rsl = rigid_shortest_linkage_number(&g, t, &mut b).unwrap().value;
            assert!(rsl >= rl, "t = {t}, {:?}", g.edges());
            if rsl == g.order() {
                assert!(t >= z, "t = {t}, Z = {z}, {:?}", g.edges());
            }
        }
    }
}

#[test]
fn complete_bipartite_closed_form() {
    let mut b = Budget::unlimited();
    for m in 1..=3 {
        for n in m.max(2)..=7 - m {
            let g = FamilySpec::CompleteBipartite(m, n).build().unwrap();
            let one = rigid_shortest_linkage_number(&g, 1, &mut b).unwrap().value;
            assert_eq!(one, if m >= 2 { 2 } else { 3 });
            for t in 2..=m + n - 2 {
                assert_eq!(rigid_shortest_linkage_number(&g, t, &mut b).unwrap().value, t + 2);
            }
        }
    }
}

#[test]
fn witnesses_certify_their_values() {
    let mut b = Budget::unlimited();
    for g in connected_graphs_up_to(5) {
        for t in 1..=g.order() {
            let r = rigid_linkage_number(&g, t, &mut b).unwrap();
            if let Some(w) = r.witness {
                let p = Linkage::new(&g, w.paths.clone()).unwrap();
                assert_eq!(p.size(), r.value);
                assert_eq!(p.order(), t);
                assert!(is_rigid(&g, &p, &w.labeling(), &mut b).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_bound(gi in 0usize..21, hi in 0usize..6, t in 1usize..=4) {
        let small: Vec<Graph> = connected_graphs_up_to(4).into_iter().filter(|g| g.order() >= 2).collect();
        let g = &small[gi % small.len()];
        let h = &small[hi % small.len()];
        prop_assume!(t <= h.order());
        prop_assume!(g.order() * h.order() <= 12);
        let gh = cartesian_product(g, h).unwrap();
        let mut b = Budget::unlimited();
        let base = rigid_shortest_linkage_number(g, 1, &mut b).unwrap().value;
        let prod = rigid_shortest_linkage_number(&gh, t, &mut b).unwrap().value;
        prop_assert!(prod >= t * base, "RSL_GH({t}) = {prod} < {t} * {base}");
    }
}
