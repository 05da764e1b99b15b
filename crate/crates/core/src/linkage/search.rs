//! Backtracking router for vertex-disjoint path systems.
//!
//! A request fixes the terminals: singleton vertices, an ordered list of
//! sources, and either a pool of interchangeable targets or one fixed target
//! per source. Every emitted system routes each source to a target through
//! non-terminal vertices, with all paths pairwise disjoint. Emitted paths are
//! oriented source first; singletons come first in the emitted slice.

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
    /// Only report systems on at most this many vertices from now on.
    Tighten(usize),
}

#[derive(Debug, Clone)]
pub(crate) enum Targets {
    /// Any source may end at any unused member.
    Pool(VertexSet),
    /// Source `i` must end at `fixed[i]`.
    Fixed(Vec<usize>),
}

#[derive(Debug, Clone)]
pub(crate) struct Request {
    pub singles: VertexSet,
    pub sources: Vec<usize>,
    pub targets: Targets,
}

impl Request {
    /// All (α,β)-linkages: `α ∩ β` are singleton paths, the rest of α is
    /// matched to the rest of β.
    pub fn for_labeling(alpha: VertexSet, beta: VertexSet) -> Request {
        let singles = alpha & beta;
        Request {
            singles,
            sources: (alpha - singles).to_vec(),
            targets: Targets::Pool(beta - singles),
        }
    }

    /// All linkages whose i-th path joins `pairs[i].0` to `pairs[i].1`.
    /// Returns `None` when two pairs share a vertex, since no linkage can
    /// then realize the pattern.
    pub fn for_pairs(pairs: &[(usize, usize)]) -> Option<Request> {
        let mut seen = VertexSet::EMPTY;
        let mut singles = VertexSet::EMPTY;
        let mut sources = Vec::new();
        let mut fixed = Vec::new();
        for &(a, b) in pairs {
            if seen.contains(a) || seen.contains(b) {
                return None;
            }
            seen.insert(a);
            seen.insert(b);
            if a == b {
                singles.insert(a);
            } else {
                sources.push(a);
                fixed.push(b);
            }
        }
        Some(Request {
            singles,
            sources,
            targets: Targets::Fixed(fixed),
        })
    }

    fn terminals(&self) -> VertexSet {
        let mut t = self.singles | self.sources.iter().collect();
        match &self.targets {
            Targets::Pool(p) => t |= *p,
            Targets::Fixed(f) => t |= f.iter().collect(),
        }
        t
    }
}

/// Runs the search, calling `visit(paths, vertex_count)` for every system on
/// at most `bound` vertices (the bound may be tightened by the visitor).
pub(crate) fn search<F>(
    g: &Graph,
    request: &Request,
    bound: usize,
    budget: &mut Budget,
    visit: F,
) -> Result<(), BudgetExceeded>
where
    F: FnMut(&[Vec<usize>], usize) -> Flow,
{
    let terminals = request.terminals();
    let pool = match &request.targets {
        Targets::Pool(p) => *p,
        Targets::Fixed(_) => VertexSet::EMPTY,
    };
    if let Targets::Pool(p) = &request.targets {
        if p.len() != request.sources.len() {
            return Ok(());
        }
    }
    let mut s = Search {
        g,
        budget,
        sources: &request.sources,
        fixed: match &request.targets {
            Targets::Fixed(f) => Some(f.as_slice()),
            Targets::Pool(_) => None,
        },
        pool,
        free: g.vertices() - terminals,
        paths: request.singles.iter().map(|v| vec![v]).collect(),
        size: request.singles.len(),
        bound,
        visit,
        stop: false,
    };
    s.start(0)
}

struct Search<'a, F> {
    g: &'a Graph,
    budget: &'a mut Budget,
    sources: &'a [usize],
    fixed: Option<&'a [usize]>,
    /// Unused targets (pool mode only).
    pool: VertexSet,
    /// Unused non-terminal vertices.
    free: VertexSet,
    paths: Vec<Vec<usize>>,
    size: usize,
    bound: usize,
    visit: F,
    stop: bool,
}

impl<F> Search<'_, F>
where
    F: FnMut(&[Vec<usize>], usize) -> Flow,
{
    fn targets_for(&self, i: usize) -> VertexSet {
        match self.fixed {
            Some(f) => VertexSet::singleton(f[i]),
            None => self.pool,
        }
    }

    /// Fewest further vertices (target included) a path now at `x` needs.
    fn distance_to_target(&self, i: usize, x: usize) -> Option<usize> {
        let targets = self.targets_for(i);
        let mut reached = VertexSet::singleton(x);
        let mut frontier = reached;
        let mut steps = 1;
        loop {
            let nb = self.g.neighborhood(frontier);
            if nb.intersects(targets) {
                return Some(steps);
            }
            frontier = nb & self.free & !reached;
            if frontier.is_empty() {
                return None;
            }
            reached |= frontier;
            steps += 1;
        }
    }

    fn start(&mut self, i: usize) -> Result<(), BudgetExceeded> {
        if self.stop {
            return Ok(());
        }
        if i == self.sources.len() {
            if self.size <= self.bound {
                match (self.visit)(&self.paths, self.size) {
                    Flow::Continue => {}
                    Flow::Stop => self.stop = true,
                    Flow::Tighten(b) => self.bound = b,
                }
            }
            return Ok(());
        }
        // every remaining source needs itself plus a shortest route
        let mut rest = 0;
        let mut own = 0;
        for j in i..self.sources.len() {
            let Some(d) = self.distance_to_target(j, self.sources[j]) else {
                return Ok(());
            };
            if j == i {
                own = d + 1;
            }
            rest += d + 1;
        }
        if self.size + rest > self.bound {
            return Ok(());
        }
        let src = self.sources[i];
        let mut cur = vec![src];
        self.extend(i, src, &mut cur, rest - own)
    }

    fn extend(
        &mut self,
        i: usize,
        x: usize,
        cur: &mut Vec<usize>,
        rest_after: usize,
    ) -> Result<(), BudgetExceeded> {
        self.budget.tick()?;
        let targets = self.targets_for(i);
        for y in self.g.neighbors(x) {
            if self.stop {
                break;
            }
            if targets.contains(y) {
                cur.push(y);
                let added = cur.len();
                if self.size + added + rest_after <= self.bound {
                    self.pool.remove(y);
                    self.size += added;
                    self.paths.push(cur.clone());
                    let r = self.start(i + 1);
                    self.paths.pop();
                    self.size -= added;
                    if self.fixed.is_none() {
                        self.pool.insert(y);
                    }
                    r?;
                }
                cur.pop();
            } else if self.free.contains(y) {
                self.free.remove(y);
                cur.push(y);
                if let Some(d) = self.distance_to_target(i, y) {
                    if self.size + cur.len() + d + rest_after <= self.bound {
                        let r = self.extend(i, y, cur, rest_after);
                        if r.is_err() {
                            cur.pop();
                            self.free.insert(y);
                            return r;
                        }
                    }
                }
                cur.pop();
                self.free.insert(y);
            }
        }
        Ok(())
    }
}
