//! Simple undirected graphs on vertices `1..=n` with bitset adjacency.

mod io;
mod vertex_set;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use io::{parse_graph, GraphFile};
pub use vertex_set::{subsets_of_size, VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("adjacency is not symmetric at {0}-{1}")]
    Asymmetric(usize, usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A simple undirected graph. Vertex `v` is stored at `adj[v - 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph from an edge list. Loops, out-of-range endpoints and
    /// repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adj[u - 1].insert(v);
            g.adj[v - 1].insert(u);
        }
        Ok(g)
    }

    /// Builds a graph from per-vertex neighbor sets (`adj[0]` belongs to vertex 1).
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = VertexSet::full(n);
        for (i, &nb) in adj.iter().enumerate() {
            let v = i + 1;
            if let Some(bad) = (nb - all).min() {
                return Err(GraphError::VertexOutOfRange { vertex: bad, n });
            }
            if nb.contains(v) {
                return Err(GraphError::Loop(v));
            }
            for u in nb {
                if !adj[u - 1].contains(v) {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u - 1].contains(v)
    }

    /// Union of the neighborhoods of `x` (may include members of `x`).
    #[inline]
    pub fn neighborhood(&self, x: VertexSet) -> VertexSet {
        x.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc | self.adj[v - 1])
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in self.adj[u - 1].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Number of edges with both ends in `x`.
    pub fn edges_within(&self, x: VertexSet) -> usize {
        x.iter().map(|v| (self.adj[v - 1] & x).len()).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || components(self, VertexSet::EMPTY).len() == 1
    }

    /// Whether the graph is a single path (including `P_1`).
    pub fn is_path(&self) -> bool {
        self.n >= 1
            && self.is_connected()
            && self.edge_count() == self.n - 1
            && self.adj.iter().all(|s| s.len() <= 2)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// The connected component of `g[allowed]` containing `seed`.
pub fn component_of(g: &Graph, allowed: VertexSet, seed: usize) -> VertexSet {
    let mut comp = VertexSet::singleton(seed);
    let mut frontier = comp;
    while !frontier.is_empty() {
        let next = g.neighborhood(frontier) & allowed & !comp;
        comp |= next;
        frontier = next;
    }
    comp
}

/// Connected components of `g - removed`, sorted by smallest vertex.
pub fn components(g: &Graph, removed: VertexSet) -> Vec<VertexSet> {
    let mut rest = g.vertices() - removed;
    let allowed = rest;
    let mut out = Vec::new();
    while let Some(seed) = rest.min() {
        let comp = component_of(g, allowed, seed);
        rest -= comp;
        out.push(comp);
    }
    out
}

/// Vertices outside `x` with at least one neighbor in `x`.
pub fn boundary(g: &Graph, x: VertexSet) -> VertexSet {
    g.neighborhood(x) - x
}

/// An induced subgraph together with the label maps between host and subgraph.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `new_label[v]` is the subgraph label of host vertex `v` (index 0 unused).
    pub new_label: Vec<Option<usize>>,
    /// `old_label[i - 1]` is the host vertex of subgraph vertex `i`.
    pub old_label: Vec<usize>,
}

impl InducedSubgraph {
    /// Maps a host vertex set into subgraph labels, dropping vertices not kept.
    pub fn map_set(&self, x: VertexSet) -> VertexSet {
        x.iter().filter_map(|v| self.new_label[v]).collect()
    }

    /// Maps a subgraph vertex set back into host labels.
    pub fn unmap_set(&self, x: VertexSet) -> VertexSet {
        x.iter().map(|i| self.old_label[i - 1]).collect()
    }
}

/// The subgraph induced on `keep`, relabeled `1..=|keep|` preserving order.
pub fn induced_subgraph(g: &Graph, keep: VertexSet) -> InducedSubgraph {
    let keep = keep & g.vertices();
    let old_label = keep.to_vec();
    let mut new_label = vec![None; g.n + 1];
    for (i, &v) in old_label.iter().enumerate() {
        new_label[v] = Some(i + 1);
    }
    let adj = old_label
        .iter()
        .map(|&v| {
            (g.neighbors(v) & keep)
                .iter()
                .map(|u| new_label[u].expect("kept"))
                .collect()
        })
        .collect();
    InducedSubgraph {
        graph: Graph {
            n: old_label.len(),
            adj,
        },
        new_label,
        old_label,
    }
}

/// A path `(v_0, ..., v_l)`; a single vertex is a path with no edges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    /// Checks that `vertices` is a nonempty sequence of distinct, consecutively
    /// adjacent vertices of `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::InvalidPath("empty vertex sequence".into()));
        }
        let mut seen = VertexSet::EMPTY;
        for &v in &vertices {
            if v == 0 || v > g.order() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: g.order(),
                });
            }
            if seen.contains(v) {
                return Err(GraphError::InvalidPath(format!("vertex {v} repeats")));
            }
            seen.insert(v);
        }
        if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(GraphError::InvalidPath(format!(
                "{} and {} are not adjacent",
                w[0], w[1]
            )));
        }
        Ok(Path(vertices))
    }

    /// Wraps a vertex sequence without checking it against a graph.
    pub(crate) fn from_vec_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty());
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("nonempty path")
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// Position of `v` along the path.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }
}

impl std::fmt::Debug for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Whether the vertices of `p` induce exactly the path `p` in `g`.
pub fn is_induced_path(g: &Graph, p: &Path) -> bool {
    let vs = p.vertices();
    if vs.iter().any(|&v| v == 0 || v > g.order()) {
        return false;
    }
    let set = p.vertex_set();
    set.len() == vs.len()
        && vs.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && g.edges_within(set) == vs.len() - 1
}

/// Breadth-first distances from `source` inside `g[allowed]`; `None` if unreachable.
pub fn bfs_distances(g: &Graph, allowed: VertexSet, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order() + 1];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued vertices have distances");
        for w in g.neighbors(u) & allowed {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}
