use std::collections::HashSet;

use super::{rl_moves, ForcingError, ForcingNumber, ForcingState};
use crate::budget::Budget;
use crate::graph::{subsets_of_size, Graph, VertexSet};

/// Which states [`rl_explore`] reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    /// States with no legal move.
    Maximal,
    /// States whose active set equals the given set.
    Active(VertexSet),
}

/// Explores every RL-process from `b0`, visiting each (blue, active) pair
/// once. Reported states carry the first force history that reached them, in
/// depth-first discovery order.
pub fn rl_explore(
    g: &Graph,
    b0: VertexSet,
    goal: Goal,
    budget: &mut Budget,
) -> Result<Vec<ForcingState>, ForcingError> {
    let start = ForcingState::new(g, b0)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![start];
    seen.insert(stack[0].key());
    while let Some(s) = stack.pop() {
        budget.tick()?;
        if let Goal::Active(target) = goal {
            if s.active() == target {
                // every later state has a vertex of `target` inactive
                out.push(s);
                continue;
            }
        }
        let moves = rl_moves(g, &s);
        if moves.is_empty() && goal == Goal::Maximal {
            out.push(s);
            continue;
        }
        for mv in moves.into_iter().rev() {
            let mut next = s.clone();
            next.push_force(mv.from, mv.to);
            if seen.insert(next.key()) {
                stack.push(next);
            }
        }
    }
    Ok(out)
}

fn colors_everything(
    g: &Graph,
    s: &ForcingState,
    failed: &mut HashSet<(VertexSet, VertexSet)>,
    budget: &mut Budget,
) -> Result<bool, ForcingError> {
    if s.blue() == g.vertices() {
        return Ok(true);
    }
    if failed.contains(&s.key()) {
        return Ok(false);
    }
    budget.tick()?;
    for mv in rl_moves(g, s) {
        let mut next = s.clone();
        next.push_force(mv.from, mv.to);
        if colors_everything(g, &next, failed, budget)? {
            return Ok(true);
        }
    }
    failed.insert(s.key());
    Ok(false)
}

/// `Z_RL(G)`: the smallest initial set from which some RL-process turns
/// every vertex blue.
pub fn rl_forcing_number(g: &Graph, budget: &mut Budget) -> Result<ForcingNumber, ForcingError> {
    let all = g.vertices();
    for k in 0..=g.order() {
        for b in subsets_of_size(all, k) {
            let mut failed = HashSet::new();
            let s = ForcingState::new(g, b)?;
            if colors_everything(g, &s, &mut failed, budget)? {
                return Ok(ForcingNumber {
                    value: k,
                    witness: b,
                });
            }
        }
    }
    unreachable!("the full vertex set is already blue")
}

#[cfg(test)]
mod tests {
    use super::super::tests::mary;
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn mary_has_two_different_final_sets() {
        let g = mary();
        let ends = rl_explore(&g, set(&[1, 2, 3, 4]), Goal::Maximal, &mut Budget::default()).unwrap();
        let blues: Vec<VertexSet> = ends.iter().map(|s| s.blue()).collect();
        assert!(blues.contains(&set(&[1, 2, 3, 4, 6, 7, 8, 10, 11, 12])));
        assert!(blues.contains(&set(&[1, 2, 3, 4, 5, 7, 8, 9, 11, 12])));
        assert_eq!(rl_forcing_number(&g, &mut Budget::default()).unwrap().value, 4);
    }

    #[test]
    fn paw_final_sets_differ_in_size() {
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let ends = rl_explore(&g, set(&[2, 3]), Goal::Maximal, &mut Budget::default()).unwrap();
        let sizes: HashSet<usize> = ends.iter().map(|s| s.blue().len()).collect();
        assert!(sizes.contains(&3) && sizes.contains(&4));
    }

    #[test]
    fn goal_and_trivial_exploration() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let ends = rl_explore(&g, g.vertices(), Goal::Maximal, &mut Budget::default()).unwrap();
        assert_eq!(ends.len(), 1);
        assert!(ends[0].forces().is_empty());
        let hits = rl_explore(&g, set(&[1]), Goal::Active(set(&[3])), &mut Budget::default()).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].forces().len(), 2);
        assert_eq!(rl_forcing_number(&g, &mut Budget::default()).unwrap().value, 1);
    }
}
