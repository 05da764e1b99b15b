//! Zero forcing and rigid-linkage forcing as explicit state machines.

mod explore;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{boundary, components, subsets_of_size, Graph, Path, VertexSet};
use crate::linkage::{Labeling, Linkage, LinkageError};

pub use explore::{rl_explore, rl_forcing_number, Goal};

/// Largest order [`zero_forcing_number`] accepts.
pub const ZERO_FORCING_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForcingError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Linkage(#[from] LinkageError),
    #[error("illegal move {from}->{to}")]
    IllegalMove { from: usize, to: usize },
    #[error("guided process stalled with blue set {blue}: the linkage is not rigid for this labeling")]
    NotRigid { blue: VertexSet },
    #[error("graph order {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("initial set is not contained in the vertex set")]
    OutOfRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Force {
    pub from: usize,
    pub to: usize,
}

/// A legal RL-force `from -> to` into the white component `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RlMove {
    pub component: VertexSet,
    pub from: usize,
    pub to: usize,
}

/// Blue and active sets plus the forces that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingState {
    initial: VertexSet,
    blue: VertexSet,
    active: VertexSet,
    forces: Vec<Force>,
    /// Active vertex to the initial vertex its chain started from.
    chain_start: BTreeMap<usize, usize>,
}

impl ForcingState {
    pub fn new(g: &Graph, b0: VertexSet) -> Result<Self, ForcingError> {
        if !b0.fits(g.order()) {
            return Err(ForcingError::OutOfRange);
        }
        Ok(ForcingState {
            initial: b0,
            blue: b0,
            active: b0,
            forces: Vec::new(),
            chain_start: b0.iter().map(|v| (v, v)).collect(),
        })
    }

    pub fn initial(&self) -> VertexSet {
        self.initial
    }

    pub fn blue(&self) -> VertexSet {
        self.blue
    }

    pub fn active(&self) -> VertexSet {
        self.active
    }

    pub fn forces(&self) -> &[Force] {
        &self.forces
    }

    pub fn chain_start(&self) -> &BTreeMap<usize, usize> {
        &self.chain_start
    }

    pub(crate) fn key(&self) -> (VertexSet, VertexSet) {
        (self.blue, self.active)
    }

    /// Applies `from -> to` with no legality check.
    fn push_force(&mut self, from: usize, to: usize) {
        self.blue.insert(to);
        self.active.remove(from);
        self.active.insert(to);
        let start = self.chain_start.remove(&from).expect("forcing vertex is active");
        self.chain_start.insert(to, start);
        self.forces.push(Force { from, to });
    }

    /// The state before the last force, `None` for an initial state.
    pub fn undo(&self) -> Option<ForcingState> {
        let mut s = self.clone();
        let Force { from, to } = s.forces.pop()?;
        s.blue.remove(to);
        s.active.remove(to);
        s.active.insert(from);
        let start = s.chain_start.remove(&to).expect("forced vertex is active");
        s.chain_start.insert(from, start);
        Some(s)
    }
}

/// Repeatedly applies the zero forcing rule, always choosing the smallest
/// forcing vertex. Returns the derived set and the forces used.
pub fn z_closure(g: &Graph, b0: VertexSet) -> (VertexSet, Vec<Force>) {
    let mut blue = b0;
    let mut forces = Vec::new();
    'outer: loop {
        for u in blue {
            let white = g.neighbors(u) - blue;
            if white.len() == 1 {
                let w = white.min().expect("one white neighbor");
                blue.insert(w);
                forces.push(Force { from: u, to: w });
                continue 'outer;
            }
        }
        return (blue, forces);
    }
}

/// The derived set only, without recording forces.
pub(crate) fn z_derived(g: &Graph, b0: VertexSet) -> VertexSet {
    let mut blue = b0;
    loop {
        let mut grew = false;
        for u in blue {
            let white = g.neighbors(u) - blue;
            if white.len() == 1 {
                blue |= white;
                grew = true;
            }
        }
        if !grew {
            return blue;
        }
    }
}

/// `Z(G)` with a smallest zero forcing set (first in colex order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingNumber {
    pub value: usize,
    pub witness: VertexSet,
}

pub fn zero_forcing_number(g: &Graph, budget: &mut Budget) -> Result<ForcingNumber, ForcingError> {
    let n = g.order();
    if n > ZERO_FORCING_LIMIT {
        return Err(ForcingError::TooLarge {
            n,
            limit: ZERO_FORCING_LIMIT,
        });
    }
    let all = g.vertices();
    for k in 0..=n {
        for b in subsets_of_size(all, k) {
            budget.tick()?;
            if z_derived(g, b) == all {
                return Ok(ForcingNumber {
                    value: k,
                    witness: b,
                });
            }
        }
    }
    unreachable!("the full vertex set forces itself")
}

/// Every legal RL-force, ordered by component minimum, then `from`.
pub fn rl_moves(g: &Graph, s: &ForcingState) -> Vec<RlMove> {
    let inactive = s.blue - s.active;
    let mut moves = Vec::new();
    for k in components(g, s.blue) {
        if boundary(g, k).intersects(inactive) {
            continue;
        }
        for u in s.active {
            let inside = g.neighbors(u) & k;
            if inside.len() == 1 {
                moves.push(RlMove {
                    component: k,
                    from: u,
                    to: inside.min().expect("one neighbor"),
                });
            }
        }
    }
    moves
}

/// The state after `mv`; `s` is left untouched.
pub fn rl_apply(g: &Graph, s: &ForcingState, mv: RlMove) -> Result<ForcingState, ForcingError> {
    if !rl_moves(g, s).contains(&mv) {
        return Err(ForcingError::IllegalMove {
            from: mv.from,
            to: mv.to,
        });
    }
    let mut next = s.clone();
    next.push_force(mv.from, mv.to);
    Ok(next)
}

/// Finds the legal move `from -> to`, whatever its component.
pub fn find_move(g: &Graph, s: &ForcingState, from: usize, to: usize) -> Option<RlMove> {
    rl_moves(g, s)
        .into_iter()
        .find(|m| m.from == from && m.to == to)
}

/// Chains of a forcing process as a linkage from the initial set to the active set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSet {
    pub chains: Linkage,
    pub start: VertexSet,
    pub end: VertexSet,
}

impl ChainSet {
    pub fn labeling(&self) -> Labeling {
        Labeling {
            alpha: self.start,
            beta: self.end,
        }
    }
}

pub fn extract_chain_set(s: &ForcingState) -> ChainSet {
    let next: BTreeMap<usize, usize> = s.forces.iter().map(|f| (f.from, f.to)).collect();
    let paths = s
        .initial
        .iter()
        .map(|b| {
            let mut chain = vec![b];
            let mut cur = b;
            while let Some(&w) = next.get(&cur) {
                chain.push(w);
                cur = w;
            }
            Path::from_vec_unchecked(chain)
        })
        .collect();
    ChainSet {
        chains: Linkage::from_paths(paths),
        start: s.initial,
        end: s.active,
    }
}

/// Builds an RL-process starting from α whose chains are exactly `p`. Each
/// step forces along a path of `p` from a vertex whose only effective white
/// neighbor is the next vertex of its path, where the effective white
/// vertices are those in components of `G - blue` meeting β.
pub fn realize_rigid_linkage(
    g: &Graph,
    p: &Linkage,
    lab: &Labeling,
) -> Result<ForcingState, ForcingError> {
    if !p.is_linkage_in(g) {
        return Err(LinkageError::NotAlphaBetaLinkage("paths are not in the graph".into()).into());
    }
    let oriented = p.oriented(lab).ok_or_else(|| {
        LinkageError::NotAlphaBetaLinkage(format!(
            "endpoints do not match alpha={} beta={}",
            lab.alpha, lab.beta
        ))
    })?;
    let mut succ = BTreeMap::new();
    for path in &oriented {
        for w in path.vertices().windows(2) {
            succ.insert(w[0], w[1]);
        }
    }
    let mut s = ForcingState::new(g, lab.alpha)?;
    while s.forces.len() < succ.len() {
        let effective = components(g, s.blue)
            .into_iter()
            .filter(|k| k.intersects(lab.beta))
            .fold(VertexSet::EMPTY, |acc, k| acc | k);
        let step = s.active.iter().find_map(|u| {
            let &w = succ.get(&u)?;
            let eff = g.neighbors(u) & effective;
            if eff != VertexSet::singleton(w) {
                return None;
            }
            find_move(g, &s, u, w)
        });
        match step {
            Some(mv) => s.push_force(mv.from, mv.to),
            None => return Err(ForcingError::NotRigid { blue: s.blue }),
        }
    }
    Ok(s)
}
