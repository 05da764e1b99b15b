//! Linkages, their patterns and endpoint labelings, together with the
//! rigidity tests and the extremal numbers RL(t) and RSL(t).

mod certify;
mod numbers;
pub(crate) mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::graph::{Graph, GraphError, Path, VertexSet};

pub use certify::{
    enumerate_linkages, is_rigid, is_rigid_any_labeling, is_rigid_shortest, is_unique_linkage,
    is_vital, shortest_linkage_size, EnumerateOptions,
};
pub use numbers::{rigid_linkage_number, rigid_shortest_linkage_number, Certificate, Extremal, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkageError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("paths share vertex {0}")]
    NotDisjoint(usize),
    #[error("|alpha| = {alpha} but |beta| = {beta}")]
    LabelingSize { alpha: usize, beta: usize },
    #[error("not an (alpha,beta)-linkage: {0}")]
    NotAlphaBetaLinkage(String),
    #[error("order {t} is outside 1..={n}")]
    OrderOutOfRange { t: usize, n: usize },
}

/// Vertex-disjoint paths in canonical form: every path starts at its smaller
/// endpoint and the paths are sorted by first vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Linkage {
    paths: Vec<Path>,
}

impl Linkage {
    /// Validates each path in `g` and checks disjointness.
    pub fn new(g: &Graph, paths: Vec<Vec<usize>>) -> Result<Self, LinkageError> {
        let mut checked = Vec::with_capacity(paths.len());
        let mut used = VertexSet::EMPTY;
        for p in paths {
            let p = Path::new(g, p)?;
            if let Some(v) = (used & p.vertex_set()).min() {
                return Err(LinkageError::NotDisjoint(v));
            }
            used |= p.vertex_set();
            checked.push(p);
        }
        Ok(Linkage::from_paths(checked))
    }

    pub(crate) fn from_paths(paths: Vec<Path>) -> Self {
        let mut paths: Vec<Path> = paths
            .into_iter()
            .map(|p| if p.first() > p.last() { p.reversed() } else { p })
            .collect();
        paths.sort_by_key(|p| p.first());
        Linkage { paths }
    }

    pub(crate) fn from_raw(paths: &[Vec<usize>]) -> Self {
        Linkage::from_paths(
            paths
                .iter()
                .map(|p| Path::from_vec_unchecked(p.clone()))
                .collect(),
        )
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Number of paths.
    pub fn order(&self) -> usize {
        self.paths.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.paths
            .iter()
            .fold(VertexSet::EMPTY, |acc, p| acc | p.vertex_set())
    }

    /// `|V(P)|`.
    pub fn size(&self) -> usize {
        self.paths.iter().map(Path::len).sum()
    }

    pub fn is_spanning(&self, g: &Graph) -> bool {
        self.vertex_set() == g.vertices()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self
            .paths
            .iter()
            .flat_map(|p| p.edges().map(|(u, v)| (u.min(v), u.max(v))))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn pattern(&self) -> Pattern {
        Pattern {
            pairs: self.paths.iter().map(|p| (p.first(), p.last())).collect(),
        }
    }

    /// Whether every path is a path of `g` and the paths are disjoint.
    pub fn is_linkage_in(&self, g: &Graph) -> bool {
        let mut used = VertexSet::EMPTY;
        for p in &self.paths {
            if Path::new(g, p.vertices().to_vec()).is_err() || used.intersects(p.vertex_set()) {
                return false;
            }
            used |= p.vertex_set();
        }
        true
    }

    /// The paths oriented from α to β, or `None` when the labeling does not
    /// fit this linkage.
    pub fn oriented(&self, lab: &Labeling) -> Option<Vec<Path>> {
        if lab.alpha.len() != self.order() || lab.beta.len() != self.order() {
            return None;
        }
        let mut out = Vec::with_capacity(self.order());
        for p in &self.paths {
            let (a, b) = (p.first(), p.last());
            if lab.alpha.contains(a) && lab.beta.contains(b) {
                out.push(p.clone());
            } else if lab.alpha.contains(b) && lab.beta.contains(a) {
                out.push(p.reversed());
            } else {
                return None;
            }
        }
        Some(out)
    }

    pub fn is_alpha_beta_linkage(&self, lab: &Labeling) -> bool {
        self.oriented(lab).is_some()
    }

    /// The `2^(t-1)` labelings up to swapping α and β (the first path keeps
    /// its smaller endpoint in α). One-vertex paths have a single choice.
    pub fn labelings(&self) -> Vec<Labeling> {
        let flippable: Vec<usize> = (1..self.order())
            .filter(|&i| self.paths[i].len() > 1)
            .collect();
        let mut out = Vec::with_capacity(1 << flippable.len());
        for mask in 0u64..(1u64 << flippable.len()) {
            let mut alpha = VertexSet::EMPTY;
            let mut beta = VertexSet::EMPTY;
            for (i, p) in self.paths.iter().enumerate() {
                let flip = flippable
                    .iter()
                    .position(|&j| j == i)
                    .is_some_and(|bit| mask >> bit & 1 == 1);
                let (a, b) = if flip {
                    (p.last(), p.first())
                } else {
                    (p.first(), p.last())
                };
                alpha.insert(a);
                beta.insert(b);
            }
            out.push(Labeling { alpha, beta });
        }
        out
    }
}

impl fmt::Debug for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.paths.iter().map(|p| p.vertices()))
            .finish()
    }
}

/// Endpoint pairs of a linkage, one per path, each with the smaller vertex first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub pairs: Vec<(usize, usize)>,
}

/// The sets α and β of an (α,β)-linkage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    pub alpha: VertexSet,
    pub beta: VertexSet,
}

impl Labeling {
    pub fn new(alpha: VertexSet, beta: VertexSet) -> Result<Self, LinkageError> {
        if alpha.len() != beta.len() {
            return Err(LinkageError::LabelingSize {
                alpha: alpha.len(),
                beta: beta.len(),
            });
        }
        Ok(Labeling { alpha, beta })
    }

    pub fn swapped(self) -> Self {
        Labeling {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    pub(crate) fn check_in(&self, g: &Graph) -> Result<(), LinkageError> {
        let all = self.alpha | self.beta;
        if !all.fits(g.order()) {
            let vertex = all.max().unwrap_or(0);
            return Err(GraphError::VertexOutOfRange {
                vertex,
                n: g.order(),
            }
            .into());
        }
        if self.alpha.len() != self.beta.len() {
            return Err(LinkageError::LabelingSize {
                alpha: self.alpha.len(),
                beta: self.beta.len(),
            });
        }
        Ok(())
    }
}
