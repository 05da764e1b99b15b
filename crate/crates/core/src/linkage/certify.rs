use super::search::{search, Flow, Request};
use super::{Labeling, Linkage, LinkageError};
use crate::budget::Budget;
use crate::graph::Graph;

/// Limits for [`enumerate_linkages`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub max_count: Option<usize>,
    pub max_total_vertices: Option<usize>,
}

/// All (α,β)-linkages of `g`, sorted in canonical order.
pub fn enumerate_linkages(
    g: &Graph,
    lab: &Labeling,
    opts: EnumerateOptions,
    budget: &mut Budget,
) -> Result<Vec<Linkage>, LinkageError> {
    lab.check_in(g)?;
    let mut out = Vec::new();
    let cap = opts.max_count.unwrap_or(usize::MAX);
    if cap == 0 {
        return Ok(out);
    }
    let req = Request::for_labeling(lab.alpha, lab.beta);
    let bound = opts.max_total_vertices.unwrap_or(usize::MAX);
    search(g, &req, bound, budget, |paths, _| {
        out.push(Linkage::from_raw(paths));
        if out.len() >= cap {
            Flow::Stop
        } else {
            Flow::Continue
        }
    })?;
    out.sort();
    Ok(out)
}

fn require_alpha_beta(g: &Graph, p: &Linkage, lab: &Labeling) -> Result<(), LinkageError> {
    lab.check_in(g)?;
    if !p.is_linkage_in(g) {
        return Err(LinkageError::NotAlphaBetaLinkage(
            "paths are not disjoint paths of the graph".into(),
        ));
    }
    if !p.is_alpha_beta_linkage(lab) {
        return Err(LinkageError::NotAlphaBetaLinkage(format!(
            "endpoints do not match alpha={} beta={}",
            lab.alpha, lab.beta
        )));
    }
    Ok(())
}

fn require_linkage(g: &Graph, p: &Linkage) -> Result<(), LinkageError> {
    if p.order() == 0 || !p.is_linkage_in(g) {
        return Err(LinkageError::NotAlphaBetaLinkage(
            "paths are not disjoint paths of the graph".into(),
        ));
    }
    Ok(())
}

/// Counts (α,β)-linkages, stopping once `limit` are seen.
pub(crate) fn count_linkages(
    g: &Graph,
    lab: &Labeling,
    limit: usize,
    budget: &mut Budget,
) -> Result<usize, LinkageError> {
    let mut count = 0;
    search(
        g,
        &Request::for_labeling(lab.alpha, lab.beta),
        usize::MAX,
        budget,
        |_, _| {
            count += 1;
            if count >= limit {
                Flow::Stop
            } else {
                Flow::Continue
            }
        },
    )?;
    Ok(count)
}

/// Whether `p` is the only (α,β)-linkage of `g`.
pub fn is_rigid(
    g: &Graph,
    p: &Linkage,
    lab: &Labeling,
    budget: &mut Budget,
) -> Result<bool, LinkageError> {
    require_alpha_beta(g, p, lab)?;
    Ok(count_linkages(g, lab, 2, budget)? == 1)
}

/// A labeling under which `p` is rigid, if one exists.
pub fn is_rigid_any_labeling(
    g: &Graph,
    p: &Linkage,
    budget: &mut Budget,
) -> Result<Option<Labeling>, LinkageError> {
    require_linkage(g, p)?;
    for lab in p.labelings() {
        if count_linkages(g, &lab, 2, budget)? == 1 {
            return Ok(Some(lab));
        }
    }
    Ok(None)
}

/// Whether no other linkage of `g` has the pattern of `p`.
pub fn is_unique_linkage(g: &Graph, p: &Linkage, budget: &mut Budget) -> Result<bool, LinkageError> {
    require_linkage(g, p)?;
    let pairs = p.pattern().pairs;
    let req = Request::for_pairs(&pairs).expect("pattern of a linkage has disjoint pairs");
    let mut count = 0;
    search(g, &req, usize::MAX, budget, |_, _| {
        count += 1;
        if count >= 2 {
            Flow::Stop
        } else {
            Flow::Continue
        }
    })?;
    Ok(count == 1)
}

/// Unique and spanning.
pub fn is_vital(g: &Graph, p: &Linkage, budget: &mut Budget) -> Result<bool, LinkageError> {
    require_linkage(g, p)?;
    Ok(p.is_spanning(g) && is_unique_linkage(g, p, budget)?)
}

/// Minimum size of an (α,β)-linkage, the number of linkages of that size
/// (capped at 2), and the first one found.
pub(crate) fn shortest_summary(
    g: &Graph,
    lab: &Labeling,
    give_up_at: Option<usize>,
    budget: &mut Budget,
) -> Result<Option<(usize, usize, Linkage)>, LinkageError> {
    let mut best: Option<(usize, usize, Linkage)> = None;
    let mut abandoned = false;
    search(
        g,
        &Request::for_labeling(lab.alpha, lab.beta),
        usize::MAX,
        budget,
        |paths, size| {
            if give_up_at.is_some_and(|cut| size <= cut) {
                abandoned = true;
                return Flow::Stop;
            }
            match &mut best {
                Some((s, count, _)) if *s == size => {
                    *count += 1;
                    Flow::Tighten(size - 1)
                }
                _ => {
                    best = Some((size, 1, Linkage::from_raw(paths)));
                    Flow::Tighten(size)
                }
            }
        },
    )?;
    if abandoned {
        return Ok(None);
    }
    Ok(best)
}

/// Fewest vertices in an (α,β)-linkage, `None` when there is no linkage.
pub fn shortest_linkage_size(
    g: &Graph,
    lab: &Labeling,
    budget: &mut Budget,
) -> Result<Option<usize>, LinkageError> {
    lab.check_in(g)?;
    Ok(shortest_summary(g, lab, None, budget)?.map(|(s, _, _)| s))
}

/// Whether `p` is the unique (α,β)-linkage on the fewest vertices.
pub fn is_rigid_shortest(
    g: &Graph,
    p: &Linkage,
    lab: &Labeling,
    budget: &mut Budget,
) -> Result<bool, LinkageError> {
    require_alpha_beta(g, p, lab)?;
    Ok(match shortest_summary(g, lab, None, budget)? {
        Some((s, count, _)) => s == p.size() && count == 1,
        None => false,
    })
}
