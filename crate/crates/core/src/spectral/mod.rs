//! Matrices described by a graph: sampling, exact minors, the linear
//! subgraph expansion, spectra and the multiplicity bounds.

mod bounds;
mod exact;
pub mod fixtures;
mod linear;
mod matrix;

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::linkage::LinkageError;

pub use bounds::{
    rigid_minor_identity, tight_rl_spectrum_check, tk_relation_check, verify_multiplicity_bound,
    verify_nullity_bound, verify_q_bounds, LambdaSlack, MinorIdentity, MultiplicityReport,
    NullityReport, QBoundReport, TightReport, TkReport,
};
pub use exact::{determinant, parse_rational, rank, Rational};
pub use linear::{
    cycledet, enumerate_linear_subgraphs, minor_det, weight_cycle_part, weight_paths,
    LinearSubgraph,
};
pub use matrix::{adjacency, sample_matrix, MatrixEntry, MatrixFile, SymMatrix};

/// Default clustering tolerance for eigenvalues.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("bad matrix entry '{0}'")]
    BadEntry(String),
    #[error("operation needs an exact rational matrix")]
    NotExact,
    #[error("matrix has a nonzero entry off the edges of the graph")]
    Pattern,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("eigenvalue gap {gap:e} between {left} and {right} is too close to the tolerance to cluster")]
    ClusteringAmbiguous { gap: f64, left: f64, right: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Linkage(#[from] LinkageError),
}

/// A distinct eigenvalue and its multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
}

/// Clustered spectrum with the multiplicity partition and its conjugate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// All eigenvalues in increasing order.
    pub raw: Vec<f64>,
    /// Distinct eigenvalues in increasing order.
    pub distinct: Vec<Eigenvalue>,
    /// `m_1 ≥ m_2 ≥ ...`.
    pub multiplicities: Vec<usize>,
    /// `q_i`: the number of eigenvalues of multiplicity at least `i`.
    pub conjugate: Vec<usize>,
    /// `max(1, spectral radius)`, the unit for the tolerances.
    pub scale: f64,
}

impl SpectrumReport {
    /// Number of distinct eigenvalues.
    pub fn q(&self) -> usize {
        self.distinct.len()
    }

    /// `q_1 + ... + q_t` (entries past the end count as 0).
    pub fn q_sum(&self, t: usize) -> usize {
        self.conjugate.iter().take(t).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities.first().copied().unwrap_or(0)
    }

    /// Eigenvalues within `window` of `lambda`.
    pub fn count_near(&self, lambda: f64, window: f64) -> usize {
        self.raw.iter().filter(|&&x| (x - lambda).abs() < window).count()
    }
}

/// The conjugate of a partition given in any order.
pub fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let top = parts.iter().copied().max().unwrap_or(0);
    (1..=top).map(|i| parts.iter().filter(|&&m| m >= i).count()).collect()
}

/// Eigenvalues of `a` grouped by single linkage: consecutive eigenvalues
/// closer than `tol * scale` share a cluster, and a gap in
/// `[tol * scale, 10 * tol * scale)` is reported as ambiguous.
pub fn spectrum(a: &SymMatrix, tol: f64) -> Result<SpectrumReport, SpectralError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let mut raw: Vec<f64> = if a.order() == 0 {
        Vec::new()
    } else {
        SymmetricEigen::new(a.to_dmatrix()).eigenvalues.iter().copied().collect()
    };
    raw.sort_by(f64::total_cmp);
    let scale = raw.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for &x in &raw {
        match clusters.last_mut() {
            Some(c) => {
                let prev = *c.last().expect("clusters are nonempty");
                let gap = x - prev;
                if gap < tol * scale {
                    c.push(x);
                } else if gap < 10.0 * tol * scale {
                    return Err(SpectralError::ClusteringAmbiguous {
                        gap,
                        left: prev,
                        right: x,
                    });
                } else {
                    clusters.push(vec![x]);
                }
            }
            None => clusters.push(vec![x]),
        }
    }
    let distinct: Vec<Eigenvalue> = clusters
        .iter()
        .map(|c| Eigenvalue {
            value: c.iter().sum::<f64>() / c.len() as f64,
            multiplicity: c.len(),
        })
        .collect();
    let mut multiplicities: Vec<usize> = distinct.iter().map(|e| e.multiplicity).collect();
    multiplicities.sort_unstable_by(|a, b| b.cmp(a));
    let conjugate = conjugate_partition(&multiplicities);
    Ok(SpectrumReport {
        raw,
        distinct,
        multiplicities,
        conjugate,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn complete_graph_spectrum() {
        for n in 2..=7 {
            let s = spectrum(&adjacency(&complete(n)), DEFAULT_TOL).unwrap();
            assert_eq!(s.distinct.len(), 2);
            assert!((s.distinct[0].value + 1.0).abs() < 1e-9);
            assert_eq!(s.distinct[0].multiplicity, n - 1);
            assert!((s.distinct[1].value - (n as f64 - 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_matrix_and_conjugates() {
        let s = spectrum(&SymMatrix::zeros_exact(4), DEFAULT_TOL).unwrap();
        assert_eq!(s.q(), 1);
        assert_eq!(s.multiplicities, vec![4]);
        assert_eq!(s.conjugate, vec![1, 1, 1, 1]);
        assert_eq!(conjugate_partition(&[7, 5, 2, 1]), vec![4, 3, 2, 2, 2, 1, 1]);
        assert_eq!(conjugate_partition(&conjugate_partition(&[4, 3, 2, 2, 2, 1, 1])), vec![4, 3, 2, 2, 2, 1, 1]);
        assert_eq!(spectrum(&SymMatrix::zeros_exact(0), DEFAULT_TOL).unwrap().q(), 0);
    }

    #[test]
    fn ambiguous_gap_is_an_error() {
        let m = SymMatrix::from_rows_float(vec![vec![0.0, 0.0], vec![0.0, 5e-9]]).unwrap();
        assert!(matches!(spectrum(&m, 1e-9), Err(SpectralError::ClusteringAmbiguous { .. })));
        assert_eq!(spectrum(&m, 1e-10).unwrap().q(), 2);
        assert_eq!(spectrum(&m, 1e-8).unwrap().q(), 1);
    }
}
