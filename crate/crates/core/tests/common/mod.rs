//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use rllab_core::budget::Budget;
use rllab_core::forcing::{rl_apply, rl_moves, ForcingState};
use rllab_core::graph::{subsets_of_size, Graph, VertexSet};
use rllab_core::linkage::{enumerate_linkages, EnumerateOptions, Labeling, Linkage};
use rllab_core::spectral::SymMatrix;

/// Oriented paths, each read from its initial end, sorted.
pub type Chains = Vec<Vec<usize>>;

/// Determinant by Gaussian elimination over the rationals with partial
/// pivoting on the first nonzero entry.
pub fn gauss_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}

pub fn rational(a: &SymMatrix, i: usize, j: usize) -> BigRational {
    a.exact(i, j).expect("exact matrix").clone()
}

/// Rows outside `del_rows`, columns outside `del_cols`.
pub fn submatrix(a: &SymMatrix, del_rows: VertexSet, del_cols: VertexSet) -> Vec<Vec<BigRational>> {
    let rows: Vec<usize> = (1..=a.order()).filter(|&i| !del_rows.contains(i)).collect();
    let cols: Vec<usize> = (1..=a.order()).filter(|&j| !del_cols.contains(j)).collect();
    rows.iter().map(|&i| cols.iter().map(|&j| rational(a, i, j)).collect()).collect()
}

pub fn gauss_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let sub = &f * &m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

pub fn abs(x: &BigRational) -> BigRational {
    x.abs()
}

/// Every labeling `(α, β)` with `1 ≤ |α| = |β| ≤ max_t`.
pub fn labelings(n: usize, max_t: usize) -> Vec<Labeling> {
    let mut out = Vec::new();
    for t in 1..=max_t.min(n) {
        let sets: Vec<VertexSet> = subsets_of_size(VertexSet::full(n), t).collect();
        for &a in &sets {
            for &b in &sets {
                out.push(Labeling::new(a, b).unwrap());
            }
        }
    }
    out
}

pub fn oriented_chains(p: &Linkage, lab: &Labeling) -> Chains {
    let mut c: Chains = p
        .oriented(lab)
        .expect("labeling fits")
        .iter()
        .map(|q| q.vertices().to_vec())
        .collect();
    c.sort();
    c
}

/// Every (linkage, labeling) with the linkage the unique (α,β)-linkage.
pub fn rigid_triples(g: &Graph, budget: &mut Budget) -> Vec<(Linkage, Labeling)> {
    let opts = EnumerateOptions {
        max_count: Some(2),
        max_total_vertices: None,
    };
    let mut out = Vec::new();
    for lab in labelings(g.order(), g.order()) {
        let found = enumerate_linkages(g, &lab, opts, budget).unwrap();
        if found.len() == 1 {
            out.push((found[0].clone(), lab));
        }
    }
    out
}

pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (1..=n).flat_map(move |k| subsets_of_size(VertexSet::full(n), k))
}

fn chains_from(initial: VertexSet, forces: &[(usize, usize)]) -> Chains {
    let mut c: Chains = initial
        .iter()
        .map(|b| {
            let mut chain = vec![b];
            while let Some(&(_, w)) = forces.iter().find(|f| f.0 == *chain.last().unwrap()) {
                chain.push(w);
            }
            chain
        })
        .collect();
    c.sort();
    c
}

/// Chain sets of every RL-process (complete or not) from every nonempty
/// initial set, found by walking all force sequences.
pub fn rl_chain_sets(g: &Graph) -> BTreeSet<Chains> {
    let mut out = BTreeSet::new();
    for b0 in nonempty_subsets(g.order()) {
        let mut seen: HashSet<(VertexSet, VertexSet, Vec<(usize, usize)>)> = HashSet::new();
        let mut stack = vec![(ForcingState::new(g, b0).unwrap(), Vec::new())];
        while let Some((s, forces)) = stack.pop() {
            let mut key = forces.clone();
            key.sort();
            if !seen.insert((s.blue(), s.active(), key)) {
                continue;
            }
            out.insert(chains_from(b0, &forces));
            for mv in rl_moves(g, &s) {
                let next = rl_apply(g, &s, mv).unwrap();
                let mut f = forces.clone();
                f.push((mv.from, mv.to));
                stack.push((next, f));
            }
        }
    }
    out
}

/// Chain sets of every standard zero forcing process that colors all of `g`.
pub fn z_chain_sets(g: &Graph) -> BTreeSet<Chains> {
    let n = g.order();
    let all = VertexSet::full(n);
    let mut out = BTreeSet::new();
    for b0 in nonempty_subsets(n) {
        let mut seen = HashSet::new();
        let mut stack = vec![(b0, Vec::<(usize, usize)>::new())];
        while let Some((blue, forces)) = stack.pop() {
            let mut key = forces.clone();
            key.sort();
            if !seen.insert(key) {
                continue;
            }
            if blue == all {
                out.insert(chains_from(b0, &forces));
                continue;
            }
            for u in blue {
                let white = g.neighbors(u) - blue;
                if white.len() == 1 {
                    let w = white.min().unwrap();
                    let mut f = forces.clone();
                    f.push((u, w));
                    let mut b = blue;
                    b.insert(w);
                    stack.push((b, f));
                }
            }
        }
    }
    out
}

/// Smallest set from which repeated Z-forces color everything.
pub fn z_number_naive(g: &Graph) -> usize {
    let n = g.order();
    let all = VertexSet::full(n);
    (0..=n)
        .find(|&k| {
            subsets_of_size(all, k).any(|b0| {
                let mut blue = b0;
                loop {
                    let grow = blue
                        .iter()
                        .filter_map(|u| {
                            let w = g.neighbors(u) - blue;
                            (w.len() == 1).then(|| w.min().unwrap())
                        })
                        .collect::<Vec<_>>();
                    if grow.is_empty() {
                        break;
                    }
                    for w in grow {
                        blue.insert(w);
                    }
                }
                blue == all
            })
        })
        .unwrap()
}

/// Exact treewidth by brute force over elimination orders, for tiny graphs.
pub fn treewidth_naive(g: &Graph) -> usize {
    fn go(adj: &mut Vec<VertexSet>, left: VertexSet, best: &mut usize, cur: usize) {
        if cur >= *best {
            return;
        }
        if left.is_empty() {
            *best = cur;
            return;
        }
        for v in left {
            let nb = adj[v - 1] & left;
            let saved = adj.clone();
            for u in nb {
                adj[u - 1] = adj[u - 1] | nb;
                adj[u - 1].remove(u);
            }
            let mut rest = left;
            rest.remove(v);
            go(adj, rest, best, cur.max(nb.len()));
            *adj = saved;
        }
    }
    let mut adj: Vec<VertexSet> = g.vertices().iter().map(|v| g.neighbors(v)).collect();
    let mut best = g.order();
    go(&mut adj, g.vertices(), &mut best, 0);
    best.min(g.order().saturating_sub(1))
}
