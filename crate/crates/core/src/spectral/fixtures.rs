//! Hand-built matrices with known spectra.

use super::SymMatrix;
use crate::families::{whirl::*, FamilySpec};
use crate::graph::Graph;

fn weighted(n: usize, diag: &[(usize, f64)], edges: &[(usize, usize, f64)]) -> SymMatrix {
    let mut m = SymMatrix::zeros_float(n);
    for &(i, d) in diag {
        m.set_f64(i, i, d);
    }
    for &(i, j, w) in edges {
        m.set_f64(i, j, w);
    }
    m
}

fn from_graph(g: &Graph, diag: &[(usize, f64)]) -> SymMatrix {
    let e: Vec<_> = g.edges().into_iter().map(|(u, v)| (u, v, 1.0)).collect();
    weighted(g.order(), diag, &e)
}

/// A matrix for the tree W with multiplicity list `4, 3, 2, 2, 2, 1, 1`,
/// so that its conjugate is `7, 5, 2, 1`.
pub fn w_tree_matrix() -> SymMatrix {
    let s = f64::sqrt;
    weighted(
        15,
        &[
            (V1, -0.5), (V2, -0.5),
            (I11, -2.0), (I12, -0.5), (J11, -2.0), (J12, -0.5),
            (I21, -2.0), (I22, -0.5), (J21, -2.0), (J22, -0.5),
            (I31, -2.0), (I32, -1.0),
        ],
        &[
            (V0, V1, 1.0), (V0, V2, 1.0), (V0, V3, s(8.0)),
            (V1, I11, 1.0), (I11, I12, 1.0), (V1, J11, 1.0), (J11, J12, 1.0),
            (V2, I21, 1.0), (I21, I22, 1.0), (V2, J21, 1.0), (J21, J22, 1.0),
            (V3, I31, s(5.0 / 8.0)), (I31, I32, s(2.0)), (V3, J31, s(1.0 / 8.0)),
        ],
    )
}

/// `[[0, B], [Bᵀ, 0]]` with `B = I - (2/n) J`, supported on `K_{n,n}` for
/// `n ≥ 3`, with eigenvalues `±1` each of multiplicity `n`.
pub fn knn_two_eigenvalue(n: usize) -> SymMatrix {
    let mut m = SymMatrix::zeros_float(2 * n);
    for i in 1..=n {
        for j in 1..=n {
            let b = if i == j { 1.0 } else { 0.0 } - 2.0 / n as f64;
            m.set_f64(i, n + j, b);
        }
    }
    m
}

/// Signed adjacency of `Q_n` squaring to `n I`, so its eigenvalues are
/// `±sqrt(n)` each of multiplicity `2^(n-1)`.
pub fn hypercube_matrix(n: usize) -> SymMatrix {
    let size = 1usize << n;
    let mut m = SymMatrix::zeros_float(size);
    for b in 0..size {
        for bit in 0..n {
            let c = b ^ (1 << bit);
            if b < c {
                // higher coordinates see a sign flip on the upper half of each block
                let higher = b >> (bit + 1);
                let sign = if higher.count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                m.set_f64(b + 1, c + 1, sign);
            }
        }
    }
    m
}

/// Adjacency of `C_n` with the edge `{1, n}` negated.
pub fn cycle_signed(n: usize) -> SymMatrix {
    let g = FamilySpec::Cycle(n).build().expect("n >= 3");
    let mut m = from_graph(&g, &[]);
    m.set_f64(1, n, -1.0);
    m
}

/// Adjacency of `T_k` with `sqrt(2)` on the diagonal at the center.
pub fn tk_e_matrix(k: usize) -> SymMatrix {
    let g = FamilySpec::Tk(k).build().expect("k >= 1");
    from_graph(&g, &[(1, 2f64.sqrt())])
}
