//! Generalized linear subgraphs and the determinant expansion over them.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::exact::{self, Rational};
use super::matrix::SymMatrix;
use super::SpectralError;
use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{Graph, Path, VertexSet};
use crate::linkage::search::{search, Flow, Request};

/// A spanning subgraph `P ∪ C`: paths joining `α_i` to `β_σ(i)` plus a
/// cover of the remaining vertices by isolated vertices, edges and cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearSubgraph {
    /// `paths[i]` runs from `α_i` to `β_σ(i)`.
    pub paths: Vec<Path>,
    pub isolated: VertexSet,
    pub edges: Vec<(usize, usize)>,
    /// Each cycle starts at its smallest vertex.
    pub cycles: Vec<Vec<usize>>,
}

impl LinearSubgraph {
    /// `|E(H)|`, counting each edge component once.
    pub fn edge_count(&self) -> usize {
        self.paths.iter().map(|p| p.len() - 1).sum::<usize>()
            + self.edges.len()
            + self.cycles.iter().map(Vec::len).sum::<usize>()
    }

    /// `c(H)`; the paths contribute no cycles.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        let mut s = self.isolated;
        for p in &self.paths {
            s |= p.vertex_set();
        }
        for &(u, v) in &self.edges {
            s = s.with(u).with(v);
        }
        for c in &self.cycles {
            s |= c.iter().collect();
        }
        s
    }
}

/// `w(C)`: diagonal entries on isolated vertices, squared entries on edge
/// components and plain entries along cycles.
pub fn weight_cycle_part(a: &SymMatrix, h: &LinearSubgraph) -> Rational {
    let e = |i: usize, j: usize| a.exact(i, j).expect("exact matrix").clone();
    let mut w = Rational::one();
    for i in h.isolated {
        w *= e(i, i);
    }
    for &(i, j) in &h.edges {
        let x = e(i, j);
        w *= &x * &x;
    }
    for c in &h.cycles {
        for k in 0..c.len() {
            w *= e(c[k], c[(k + 1) % c.len()]);
        }
    }
    w
}

/// `w(P)`: the product of entries along the path edges.
pub fn weight_paths(a: &SymMatrix, paths: &[Path]) -> Rational {
    let mut w = Rational::one();
    for p in paths {
        for (u, v) in p.edges() {
            w *= a.exact(u, v).expect("exact matrix").clone();
        }
    }
    w
}

/// Covers of `rest` by isolated vertices, edges and cycles of `g`.
fn cover<F>(
    g: &Graph,
    rest: VertexSet,
    h: &mut LinearSubgraph,
    budget: &mut Budget,
    emit: &mut F,
) -> Result<(), BudgetExceeded>
where
    F: FnMut(&LinearSubgraph),
{
    budget.tick()?;
    let Some(v) = rest.min() else {
        emit(h);
        return Ok(());
    };
    let after = rest.without(v);

    h.isolated.insert(v);
    cover(g, after, h, budget, emit)?;
    h.isolated.remove(v);

    for u in g.neighbors(v) & after {
        h.edges.push((v, u));
        cover(g, after.without(u), h, budget, emit)?;
        h.edges.pop();
    }

    // cycles through v with v smallest; path[1] < last fixes the direction
    let mut path = vec![v];
    grow_cycles(g, v, after, &mut path, h, budget, emit)
}

fn grow_cycles<F>(
    g: &Graph,
    v: usize,
    avail: VertexSet,
    path: &mut Vec<usize>,
    h: &mut LinearSubgraph,
    budget: &mut Budget,
    emit: &mut F,
) -> Result<(), BudgetExceeded>
where
    F: FnMut(&LinearSubgraph),
{
    let last = *path.last().expect("path starts at v");
    for u in g.neighbors(last) & avail {
        path.push(u);
        let left = avail.without(u);
        if path.len() >= 3 && g.has_edge(u, v) && path[1] < u {
            h.cycles.push(path.clone());
            cover(g, left, h, budget, emit)?;
            h.cycles.pop();
        }
        grow_cycles(g, v, left, path, h, budget, emit)?;
        path.pop();
    }
    Ok(())
}

/// Streams every (α,β_σ)-linear subgraph: `alpha` and `beta` list the
/// terminals in increasing order and path `i` joins `alpha[i]` to
/// `beta[sigma[i]]`, avoiding all other terminals.
pub fn enumerate_linear_subgraphs<F>(
    g: &Graph,
    alpha: &[usize],
    beta: &[usize],
    sigma: &[usize],
    budget: &mut Budget,
    mut emit: F,
) -> Result<(), SpectralError>
where
    F: FnMut(&LinearSubgraph),
{
    if alpha.len() != beta.len() || sigma.len() != alpha.len() {
        return Err(SpectralError::Shape("alpha, beta and sigma differ in length".into()));
    }
    let pairs: Vec<(usize, usize)> = alpha
        .iter()
        .zip(sigma)
        .map(|(&a, &s)| (a, beta[s]))
        .collect();
    let Some(req) = Request::for_pairs(&pairs) else {
        return Ok(());
    };
    let mut linkages: Vec<Vec<Path>> = Vec::new();
    search(g, &req, usize::MAX, budget, |paths, _| {
        let mut ordered: Vec<Path> = Vec::with_capacity(paths.len());
        for &(a, _) in &pairs {
            let p = paths.iter().find(|p| p[0] == a).expect("every source is routed");
            ordered.push(Path::from_vec_unchecked(p.clone()));
        }
        linkages.push(ordered);
        Flow::Continue
    })?;
    for paths in linkages {
        let used = paths.iter().fold(VertexSet::EMPTY, |acc, p| acc | p.vertex_set());
        let mut h = LinearSubgraph {
            paths,
            isolated: VertexSet::EMPTY,
            edges: Vec::new(),
            cycles: Vec::new(),
        };
        cover(g, g.vertices() - used, &mut h, budget, &mut emit)?;
    }
    Ok(())
}

/// Permutations of `0..t` in lexicographic order, each with its sign.
pub(crate) fn permutations(t: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..t).collect();
    loop {
        let inversions = (0..t)
            .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        out.push((p.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        let Some(i) = (1..t).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..t).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn signed_pow(base: i64, exp: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(base).pow(exp as u32))
}

/// `det A(α,β)` (rows α and columns β deleted) evaluated through the
/// expansion over (α,β_σ)-linear subgraphs.
pub fn cycledet(
    a: &SymMatrix,
    g: &Graph,
    alpha: VertexSet,
    beta: VertexSet,
    budget: &mut Budget,
) -> Result<Rational, SpectralError> {
    check_exact_on(a, g)?;
    if alpha.len() != beta.len() {
        return Err(SpectralError::Shape("|alpha| != |beta|".into()));
    }
    let av = alpha.to_vec();
    let bv = beta.to_vec();
    let mut total = Rational::zero();
    for (sigma, sign) in permutations(av.len()) {
        let mut part = Rational::zero();
        enumerate_linear_subgraphs(g, &av, &bv, &sigma, budget, |h| {
            let term = signed_pow(-1, h.edge_count())
                * signed_pow(-2, h.cycle_count())
                * weight_paths(a, &h.paths)
                * weight_cycle_part(a, h);
            part += term;
        })?;
        if sign < 0 {
            total -= part;
        } else {
            total += part;
        }
    }
    let parity: usize = av.iter().chain(&bv).sum();
    if parity % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// `det A(α,β)` by fraction-free elimination.
pub fn minor_det(a: &SymMatrix, alpha: VertexSet, beta: VertexSet) -> Result<Rational, SpectralError> {
    if !a.is_exact() {
        return Err(SpectralError::NotExact);
    }
    let all = VertexSet::full(a.order());
    let rows = (all - alpha).to_vec();
    let cols = (all - beta).to_vec();
    if rows.len() != cols.len() {
        return Err(SpectralError::Shape("|alpha| != |beta|".into()));
    }
    Ok(exact::determinant(&a.exact_rows(&rows, &cols)))
}

pub(crate) fn check_exact_on(a: &SymMatrix, g: &Graph) -> Result<(), SpectralError> {
    if !a.is_exact() {
        return Err(SpectralError::NotExact);
    }
    if !a.supported_on(g) {
        return Err(SpectralError::Pattern);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{adjacency, sample_matrix};

    fn k(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn count(g: &Graph, a: &[usize], b: &[usize], s: &[usize]) -> usize {
        let mut c = 0;
        enumerate_linear_subgraphs(g, a, b, s, &mut Budget::default(), |_| c += 1).unwrap();
        c
    }

    /// Spanning subgraphs of `g` whose components are vertices, edges or
    /// cycles, found by filtering every edge subset.
    fn brute_force_count(g: &Graph) -> usize {
        let edges = g.edges();
        let mut total = 0;
        for mask in 0u32..(1 << edges.len()) {
            let chosen: Vec<_> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            let h = Graph::from_edges(g.order(), &chosen).unwrap();
            let ok = crate::graph::components(&h, VertexSet::EMPTY).into_iter().all(|c| {
                let m = h.edges_within(c);
                let deg_ok = c.iter().all(|v| h.degree(v) <= 2);
                c.len() == 1 || (c.len() == 2 && m == 1) || (c.len() >= 3 && m == c.len() && deg_ok)
            });
            if ok {
                total += 1;
            }
        }
        total
    }

    #[test]
    fn counts_agree_with_brute_force() {
        for n in 1..=5 {
            assert_eq!(count(&k(n), &[], &[], &[]), brute_force_count(&k(n)), "K_{n}");
        }
        let p2 = Graph::from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(count(&p2, &[1], &[2], &[0]), 1);
    }

    #[test]
    fn two_by_two_and_triangle() {
        let g = Graph::from_edges(2, &[(1, 2)]).unwrap();
        let a = sample_matrix(&g, 3);
        let e = |i, j| a.exact(i, j).unwrap().clone();
        let expect = e(1, 1) * e(2, 2) - e(1, 2) * e(1, 2);
        let got = cycledet(&a, &g, VertexSet::EMPTY, VertexSet::EMPTY, &mut Budget::default()).unwrap();
        assert_eq!(got, expect);
        let k3 = adjacency(&k(3));
        let d = cycledet(&k3, &k(3), VertexSet::EMPTY, VertexSet::EMPTY, &mut Budget::default()).unwrap();
        assert_eq!(d, Rational::from_integer(2.into()));
    }

    #[test]
    fn expansion_matches_elimination_on_k4() {
        let g = k(4);
        let all = g.vertices();
        for seed in 0..5 {
            let a = sample_matrix(&g, seed);
            for t in 0..=2 {
                for alpha in crate::graph::subsets_of_size(all, t) {
                    for beta in crate::graph::subsets_of_size(all, t) {
                        let lhs = cycledet(&a, &g, alpha, beta, &mut Budget::default()).unwrap();
                        assert_eq!(lhs, minor_det(&a, alpha, beta).unwrap(), "{alpha} {beta}");
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], (vec![0, 1, 2], 1));
        assert_eq!(p[1], (vec![0, 2, 1], -1));
        assert_eq!(p.iter().map(|x| x.1).sum::<i32>(), 0);
        assert_eq!(permutations(0), vec![(vec![], 1)]);
    }

    #[test]
    fn weights() {
        let g = k(3);
        let a = sample_matrix(&g, 11);
        let e = |i, j| a.exact(i, j).unwrap().clone();
        let h = LinearSubgraph {
            paths: vec![],
            isolated: VertexSet::EMPTY,
            edges: vec![],
            cycles: vec![vec![1, 2, 3]],
        };
        assert_eq!(weight_cycle_part(&a, &h), e(1, 2) * e(2, 3) * e(3, 1));
        let h = LinearSubgraph { isolated: VertexSet::singleton(3), edges: vec![(1, 2)], cycles: vec![], paths: vec![] };
        assert_eq!(weight_cycle_part(&a, &h), e(3, 3) * e(1, 2) * e(1, 2));
        assert_eq!(h.edge_count(), 1);
    }
}
