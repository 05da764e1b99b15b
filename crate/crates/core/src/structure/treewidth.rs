use serde::{Deserialize, Serialize};

use super::StructureError;
use crate::graph::{component_of, Graph, VertexSet};

/// Default largest order accepted by [`treewidth_exact`].
pub const TREEWIDTH_LIMIT: usize = 10;

/// A tree on bag indices `1..=bags.len()` (bag `i` is `bags[i - 1]`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub tree: Vec<(usize, usize)>,
    pub bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks that the bags cover every vertex and edge of `g`, that the
    /// tree is a tree, and that the bags holding any vertex span a subtree.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let m = self.bags.len();
        if m == 0 {
            return if g.order() == 0 {
                Ok(())
            } else {
                Err("no bags".into())
            };
        }
        let tree = Graph::from_edges(m, &self.tree).map_err(|e| format!("bad tree: {e}"))?;
        if tree.edge_count() != m - 1 || !tree.is_connected() {
            return Err("bag graph is not a tree".into());
        }
        let covered = self.bags.iter().fold(VertexSet::EMPTY, |acc, &b| acc | b);
        if covered != g.vertices() {
            return Err(format!("bags cover {covered}, not every vertex"));
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
                return Err(format!("edge {u}-{v} lies in no bag"));
            }
        }
        for v in g.vertices() {
            let holding: VertexSet = (1..=m).filter(|&i| self.bags[i - 1].contains(v)).collect();
            let seed = holding.min().expect("vertex is covered");
            if component_of(&tree, holding, seed) != holding {
                return Err(format!("bags containing {v} are not connected"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Treewidth {
    pub width: usize,
    pub elimination_order: Vec<usize>,
    pub decomposition: TreeDecomposition,
}

/// Vertices outside `s ∪ {v}` reachable from `v` through `s`.
fn q_set(g: &Graph, s: VertexSet, v: usize) -> VertexSet {
    let inside = component_of(g, s.with(v), v);
    g.neighborhood(inside) - s - VertexSet::singleton(v)
}

/// Exact treewidth for graphs of order at most [`TREEWIDTH_LIMIT`].
pub fn treewidth_exact(g: &Graph) -> Result<Treewidth, StructureError> {
    treewidth_exact_with_limit(g, TREEWIDTH_LIMIT)
}

/// Exact treewidth by dynamic programming over the set of vertices
/// eliminated first.
pub fn treewidth_exact_with_limit(g: &Graph, limit: usize) -> Result<Treewidth, StructureError> {
    let n = g.order();
    if n > limit || n > 24 {
        return Err(StructureError::TooLarge { n, limit });
    }
    // bit v-1 of a mask is vertex v
    let size = 1usize << n;
    let mut tw = vec![usize::MAX; size];
    let mut choice = vec![0usize; size];
    tw[0] = 0;
    for mask in 1..size {
        for v in VertexSet::from_bits(mask as u128) {
            let rest = mask & !(1 << (v - 1));
            let cand = tw[rest].max(q_set(g, VertexSet::from_bits(rest as u128), v).len());
            if cand < tw[mask] {
                tw[mask] = cand;
                choice[mask] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = size - 1;
    while mask != 0 {
        let v = choice[mask];
        order.push(v);
        mask &= !(1 << (v - 1));
    }
    order.reverse();
    let decomposition = from_elimination_order(g, &order);
    let width = if n == 0 { 0 } else { tw[size - 1] };
    debug_assert!(n == 0 || decomposition.width() == width);
    Ok(Treewidth {
        width,
        elimination_order: order,
        decomposition,
    })
}

/// The decomposition whose bag for `v` is `v` plus its later neighbors in the
/// fill-in graph of the elimination order.
pub fn from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.order();
    let mut position = vec![0; n + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj: Vec<VertexSet> = std::iter::once(VertexSet::EMPTY)
        .chain((1..=n).map(|v| g.neighbors(v)))
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut later_of = Vec::with_capacity(n);
    for (i, &v) in order.iter().enumerate() {
        let later: VertexSet = adj[v].iter().filter(|&w| position[w] > i).collect();
        for w in later {
            adj[w] |= later.without(w);
        }
        bags.push(later.with(v));
        later_of.push(later);
    }
    let mut tree = Vec::new();
    let mut roots = Vec::new();
    for (i, later) in later_of.iter().enumerate() {
        match later.iter().min_by_key(|&w| position[w]) {
            Some(w) => tree.push((i + 1, position[w] + 1)),
            None => roots.push(i + 1),
        }
    }
    for pair in roots.windows(2) {
        tree.push((pair[0], pair[1]));
    }
    TreeDecomposition { tree, bags }
}
