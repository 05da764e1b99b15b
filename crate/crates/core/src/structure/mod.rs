//! Structural consequences of rigidity: treewidth, two parallel paths,
//! chords and crossing rung pairs.

mod treewidth;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::forcing::ForcingError;
use crate::graph::{subsets_of_size, Graph, VertexSet};
use crate::linkage::{
    enumerate_linkages, is_rigid_any_labeling, EnumerateOptions, Labeling, Linkage, LinkageError,
};

pub use treewidth::{
    from_elimination_order, treewidth_exact, treewidth_exact_with_limit, TreeDecomposition,
    Treewidth, TREEWIDTH_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("graph order {n} exceeds the treewidth limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("the graph is a path")]
    IsAPath,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Linkage(#[from] LinkageError),
    #[error(transparent)]
    Forcing(#[from] ForcingError),
}

/// Treewidth of `g` against the order of a spanning rigid linkage `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwBound {
    pub treewidth: usize,
    pub order: usize,
    pub holds: bool,
}

/// Compares `tw(g)` with the order of `p`, which must be spanning and rigid.
pub fn check_tw_bound(g: &Graph, p: &Linkage, budget: &mut Budget) -> Result<TwBound, StructureError> {
    if !p.is_linkage_in(g) || !p.is_spanning(g) {
        return Err(StructureError::Precondition("linkage is not spanning".into()));
    }
    if is_rigid_any_labeling(g, p, budget)?.is_none() {
        return Err(StructureError::Precondition("linkage is not rigid".into()));
    }
    let tw = treewidth_exact(g)?.width;
    Ok(TwBound {
        treewidth: tw,
        order: p.order(),
        holds: tw <= p.order(),
    })
}

/// Whether `g` is covered by two disjoint induced paths that can be drawn
/// side by side with no two edges between them crossing. Paths are rejected.
pub fn is_two_parallel_paths(g: &Graph, budget: &mut Budget) -> Result<bool, StructureError> {
    if g.is_path() {
        return Err(StructureError::IsAPath);
    }
    if g.order() < 2 {
        return Ok(false);
    }
    let pairs: Vec<VertexSet> = subsets_of_size(g.vertices(), 2).collect();
    for &alpha in &pairs {
        for &beta in &pairs {
            let lab = Labeling::new(alpha, beta)?;
            for p in enumerate_linkages(g, &lab, EnumerateOptions::default(), budget)? {
                if p.is_spanning(g) && linkage_chords(g, &p)?.chords.is_empty() && !has_x_minor(g, &p, &lab)? {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Edges of `g` outside the linkage, split into chords (both ends on one
/// path) and rungs (everything else).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonLinkageEdges {
    pub chords: Vec<(usize, usize)>,
    pub rungs: Vec<(usize, usize)>,
}

pub fn linkage_chords(g: &Graph, p: &Linkage) -> Result<NonLinkageEdges, StructureError> {
    if !p.is_linkage_in(g) {
        return Err(StructureError::Precondition("not a linkage of the graph".into()));
    }
    let path_edges = p.edges();
    let path_of = |v: usize| p.paths().iter().position(|q| q.vertex_set().contains(v));
    let mut out = NonLinkageEdges::default();
    for e in g.edges() {
        if path_edges.binary_search(&e).is_ok() {
            continue;
        }
        match (path_of(e.0), path_of(e.1)) {
            (Some(a), Some(b)) if a == b => out.chords.push(e),
            _ => out.rungs.push(e),
        }
    }
    Ok(out)
}

/// Whether some two paths `p_k`, `p_l` carry crossing rungs: rungs `x1 y1`
/// and `x2 y2` with `x1` before `x2` on `p_k` and `y1` after `y2` on `p_l`,
/// both paths read from their α end. Contracting the paths around the two
/// rungs then leaves a 4-cycle in which the α ends are not adjacent.
pub fn has_x_minor(g: &Graph, p: &Linkage, lab: &Labeling) -> Result<bool, StructureError> {
    if !p.is_linkage_in(g) {
        return Err(StructureError::Precondition("not a linkage of the graph".into()));
    }
    if !linkage_chords(g, p)?.chords.is_empty() {
        return Err(StructureError::Precondition("linkage has a chord".into()));
    }
    let paths = p
        .oriented(lab)
        .ok_or_else(|| StructureError::Precondition("labeling does not fit the linkage".into()))?;
    for k in 0..paths.len() {
        for l in k + 1..paths.len() {
            let (pk, pl) = (&paths[k], &paths[l]);
            if pk.len() < 2 || pl.len() < 2 {
                continue;
            }
            let rungs: Vec<(usize, usize)> = pk
                .vertices()
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| {
                    (g.neighbors(x) & pl.vertex_set())
                        .iter()
                        .map(move |y| (i, pl.position(y).expect("y lies on p_l")))
                })
                .collect();
            for &(x1, y1) in &rungs {
                if rungs.iter().any(|&(x2, y2)| x1 < x2 && y1 > y2) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
