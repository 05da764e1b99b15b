use serde::{Deserialize, Serialize};

use super::certify::shortest_summary;
use super::search::{search, Flow, Request};
use super::{Labeling, Linkage, LinkageError};
use crate::budget::Budget;
use crate::graph::{components, subsets_of_size, Graph, VertexSet};

/// An extremal linkage together with the labeling that makes it rigid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub alpha: VertexSet,
    pub beta: VertexSet,
    pub paths: Vec<Vec<usize>>,
}

impl Witness {
    fn new(lab: Labeling, linkage: &Linkage) -> Self {
        Witness {
            alpha: lab.alpha,
            beta: lab.beta,
            paths: linkage.paths().iter().map(|p| p.vertices().to_vec()).collect(),
        }
    }

    pub fn labeling(&self) -> Labeling {
        Labeling {
            alpha: self.alpha,
            beta: self.beta,
        }
    }
}

/// Value of RL(t) or RSL(t). `value` is 0 and `witness` is `None` when no
/// linkage of the requested kind and order exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremal {
    pub value: usize,
    pub witness: Option<Witness>,
}

impl Extremal {
    pub fn exists(&self) -> bool {
        self.witness.is_some()
    }
}

/// JSON certificate for an extremal query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub query: String,
    pub value: usize,
    pub witness: Option<Witness>,
    pub exhaustive: bool,
}

impl Certificate {
    pub fn new(query: impl Into<String>, result: &Extremal) -> Self {
        Certificate {
            query: query.into(),
            value: result.value,
            witness: result.witness.clone(),
            exhaustive: true,
        }
    }
}

/// Largest size any (α,β)-linkage could have: the terminals plus every
/// component of `g - (α ∪ β)` that touches both sides.
fn size_upper_bound(g: &Graph, lab: &Labeling) -> usize {
    let terminals = lab.alpha | lab.beta;
    let a = lab.alpha - lab.beta;
    let b = lab.beta - lab.alpha;
    let mut ub = terminals.len();
    for k in components(g, terminals) {
        let nb = g.neighborhood(k);
        if nb.intersects(a) && nb.intersects(b) {
            ub += k.len();
        }
    }
    ub
}

/// Visits the candidate labelings of order `t` once per unordered pair.
fn for_each_pair<F>(g: &Graph, t: usize, budget: &mut Budget, mut f: F) -> Result<(), LinkageError>
where
    F: FnMut(Labeling, &mut Budget) -> Result<bool, LinkageError>,
{
    let n = g.order();
    if t == 0 || t > n {
        return Err(LinkageError::OrderOutOfRange { t, n });
    }
    let all = g.vertices();
    for (rank, alpha) in subsets_of_size(all, t).enumerate() {
        for beta in subsets_of_size(all, t).skip(rank) {
            budget.tick()?;
            if !f(Labeling { alpha, beta }, budget)? {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// RL(t): the most vertices in an order-`t` rigid linkage.
pub fn rigid_linkage_number(g: &Graph, t: usize, budget: &mut Budget) -> Result<Extremal, LinkageError> {
    let n = g.order();
    let mut best = Extremal {
        value: 0,
        witness: None,
    };
    for_each_pair(g, t, budget, |lab, budget| {
        if best.exists() && size_upper_bound(g, &lab) <= best.value {
            return Ok(true);
        }
        let floor = best.exists().then_some(best.value);
        let mut first: Option<Linkage> = None;
        let mut count = 0;
        search(
            g,
            &Request::for_labeling(lab.alpha, lab.beta),
            usize::MAX,
            budget,
            |paths, size| {
                if floor.is_some_and(|f| size <= f) {
                    // whatever happens this pair cannot improve the maximum
                    count = 2;
                    return Flow::Stop;
                }
                count += 1;
                if count == 1 {
                    first = Some(Linkage::from_raw(paths));
                    Flow::Continue
                } else {
                    Flow::Stop
                }
            },
        )?;
        if count == 1 {
            let p = first.expect("one linkage was recorded");
            best = Extremal {
                value: p.size(),
                witness: Some(Witness::new(lab, &p)),
            };
        }
        Ok(best.value < n)
    })?;
    Ok(best)
}

/// RSL(t): the most vertices in an order-`t` rigid shortest linkage.
pub fn rigid_shortest_linkage_number(
    g: &Graph,
    t: usize,
    budget: &mut Budget,
) -> Result<Extremal, LinkageError> {
    let n = g.order();
    let mut best = Extremal {
        value: 0,
        witness: None,
    };
    for_each_pair(g, t, budget, |lab, budget| {
        if best.exists() && size_upper_bound(g, &lab) <= best.value {
            return Ok(true);
        }
        let floor = best.exists().then_some(best.value);
        if let Some((size, 1, p)) = shortest_summary(g, &lab, floor, budget)? {
            best = Extremal {
                value: size,
                witness: Some(Witness::new(lab, &p)),
            };
        }
        Ok(best.value < n)
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn paths_are_rigid_end_to_end() {
        for n in 1..=7 {
            let r = rigid_linkage_number(&path(n), 1, &mut Budget::default()).unwrap();
            assert_eq!(r.value, n);
            let w = r.witness.unwrap();
            assert_eq!(w.paths, vec![(1..=n).collect::<Vec<_>>()]);
        }
    }

    #[test]
    fn complete_graph_values() {
        for n in 2..=6 {
            let g = complete(n);
            for t in 1..n {
                let rsl = rigid_shortest_linkage_number(&g, t, &mut Budget::default()).unwrap();
                assert_eq!(rsl.value, t + 1, "K_{n} t={t}");
            }
            let rl = rigid_linkage_number(&g, 1, &mut Budget::default()).unwrap();
            assert_eq!(rl.value, if n == 2 { 2 } else { 1 });
        }
    }

    #[test]
    fn order_is_validated() {
        let g = path(3);
        assert!(matches!(
            rigid_linkage_number(&g, 4, &mut Budget::default()),
            Err(LinkageError::OrderOutOfRange { t: 4, n: 3 })
        ));
        assert!(rigid_shortest_linkage_number(&g, 0, &mut Budget::default()).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let r = rigid_linkage_number(&path(3), 1, &mut Budget::default()).unwrap();
        let c = Certificate::new("rl(1)", &r);
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["value"], 3);
        assert_eq!(v["witness"]["paths"], serde_json::json!([[1, 2, 3]]));
        assert_eq!(v["exhaustive"], true);
    }
}
