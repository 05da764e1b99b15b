use nalgebra::DMatrix;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::exact::{self, parse_rational, Rational};
use super::SpectralError;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq)]
enum Entries {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// A dense symmetric matrix indexed by vertices `1..=n`, stored either as
/// exact rationals or as floats.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    entries: Entries,
}

impl SymMatrix {
    pub fn zeros_exact(n: usize) -> Self {
        SymMatrix {
            n,
            entries: Entries::Exact(vec![Rational::zero(); n * n]),
        }
    }

    pub fn zeros_float(n: usize) -> Self {
        SymMatrix {
            n,
            entries: Entries::Float(vec![0.0; n * n]),
        }
    }

    pub fn identity_exact(n: usize) -> Self {
        let mut m = SymMatrix::zeros_exact(n);
        for i in 1..=n {
            m.set_exact(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows_exact(rows: Vec<Vec<Rational>>) -> Result<Self, SpectralError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SpectralError::NotSquare);
        }
        let flat: Vec<Rational> = rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in i + 1..n {
                if flat[i * n + j] != flat[j * n + i] {
                    return Err(SpectralError::NotSymmetric(i + 1, j + 1));
                }
            }
        }
        Ok(SymMatrix {
            n,
            entries: Entries::Exact(flat),
        })
    }

    pub fn from_rows_float(rows: Vec<Vec<f64>>) -> Result<Self, SpectralError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SpectralError::NotSquare);
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in i + 1..n {
                if flat[i * n + j].to_bits() != flat[j * n + i].to_bits() {
                    return Err(SpectralError::NotSymmetric(i + 1, j + 1));
                }
            }
        }
        Ok(SymMatrix {
            n,
            entries: Entries::Float(flat),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, Entries::Exact(_))
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index ({i},{j}) out of range");
        (i - 1) * self.n + (j - 1)
    }

    /// Sets `a_ij` and `a_ji`. Panics on a float matrix.
    pub fn set_exact(&mut self, i: usize, j: usize, v: Rational) {
        let (a, b) = (self.idx(i, j), self.idx(j, i));
        match &mut self.entries {
            Entries::Exact(e) => {
                e[a] = v.clone();
                e[b] = v;
            }
            Entries::Float(_) => panic!("set_exact on a float matrix"),
        }
    }

    /// Sets `a_ij` and `a_ji`; exact matrices are converted to floats.
    pub fn set_f64(&mut self, i: usize, j: usize, v: f64) {
        if self.is_exact() {
            *self = self.to_float();
        }
        let (a, b) = (self.idx(i, j), self.idx(j, i));
        if let Entries::Float(e) = &mut self.entries {
            e[a] = v;
            e[b] = v;
        }
    }

    pub fn exact(&self, i: usize, j: usize) -> Option<&Rational> {
        match &self.entries {
            Entries::Exact(e) => Some(&e[self.idx(i, j)]),
            Entries::Float(_) => None,
        }
    }

    pub fn get_f64(&self, i: usize, j: usize) -> f64 {
        match &self.entries {
            Entries::Exact(e) => exact::to_f64(&e[self.idx(i, j)]),
            Entries::Float(e) => e[self.idx(i, j)],
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        match &self.entries {
            Entries::Exact(e) => e[self.idx(i, j)].is_zero(),
            Entries::Float(e) => e[self.idx(i, j)] == 0.0,
        }
    }

    pub fn to_float(&self) -> SymMatrix {
        let e = match &self.entries {
            Entries::Exact(e) => e.iter().map(exact::to_f64).collect(),
            Entries::Float(e) => e.clone(),
        };
        SymMatrix {
            n: self.n,
            entries: Entries::Float(e),
        }
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get_f64(i + 1, j + 1))
    }

    /// Rows of an exact matrix. Panics on a float matrix.
    pub(crate) fn exact_rows(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|&i| {
                cols.iter()
                    .map(|&j| self.exact(i, j).expect("exact matrix").clone())
                    .collect()
            })
            .collect()
    }

    /// Whether the off-diagonal support is exactly the edge set of `g`.
    pub fn conforms_to(&self, g: &Graph) -> bool {
        self.n == g.order()
            && (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.is_zero_at(i, j) != g.has_edge(i, j)))
    }

    /// Whether every off-diagonal nonzero sits on an edge of `g`.
    pub fn supported_on(&self, g: &Graph) -> bool {
        self.n == g.order()
            && (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.is_zero_at(i, j) || g.has_edge(i, j)))
    }

    /// The principal submatrix on `keep`, relabeled `1..=|keep|` in increasing order.
    pub fn principal(&self, keep: VertexSet) -> SymMatrix {
        let idx = keep.to_vec();
        let m = idx.len();
        let entries = match &self.entries {
            Entries::Exact(e) => Entries::Exact(
                idx.iter()
                    .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| e[self.idx(i, j)].clone())
                    .collect(),
            ),
            Entries::Float(e) => Entries::Float(
                idx.iter()
                    .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| e[self.idx(i, j)])
                    .collect(),
            ),
        };
        SymMatrix { n: m, entries }
    }

    /// `A - λI` for a rational shift.
    pub fn shifted_exact(&self, lambda: &Rational) -> SymMatrix {
        let mut m = self.clone();
        for i in 1..=self.n {
            match &mut m.entries {
                Entries::Exact(e) => {
                    let k = (i - 1) * self.n + (i - 1);
                    e[k] = &e[k] - lambda;
                }
                Entries::Float(e) => {
                    let k = (i - 1) * self.n + (i - 1);
                    e[k] -= exact::to_f64(lambda);
                }
            }
        }
        m
    }

    /// `A - λI` in floating point.
    pub fn shifted_f64(&self, lambda: f64) -> SymMatrix {
        let mut m = self.to_float();
        if let Entries::Float(e) = &mut m.entries {
            for i in 0..self.n {
                e[i * self.n + i] -= lambda;
            }
        }
        m
    }

    /// `n - rank`. Exact matrices use exact rank; float matrices count
    /// singular values below `tol * max(1, largest singular value)`.
    pub fn nullity(&self, tol: f64) -> usize {
        if self.n == 0 {
            return 0;
        }
        match &self.entries {
            Entries::Exact(_) => {
                let all: Vec<usize> = (1..=self.n).collect();
                self.n - exact::rank(&self.exact_rows(&all, &all))
            }
            Entries::Float(_) => {
                let sv = self.to_dmatrix().singular_values();
                let scale = sv.iter().cloned().fold(1.0f64, f64::max);
                sv.iter().filter(|&&s| s < tol * scale).count()
            }
        }
    }

    pub fn to_file(&self) -> MatrixFile {
        let entries = (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .map(|j| match self.exact(i, j) {
                        Some(x) => MatrixEntry::Text(x.to_string()),
                        None => MatrixEntry::Number(self.get_f64(i, j)),
                    })
                    .collect()
            })
            .collect();
        MatrixFile { n: self.n, entries }
    }
}

/// One entry of a matrix file: a rational string or a JSON number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    Text(String),
    Number(f64),
}

/// Matrix file: `{ "n": 2, "entries": [["1/2", "1"], ["1", "0"]] }`.
/// Strings are exact; any JSON number that is not an integer makes the
/// whole matrix floating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<MatrixEntry>>,
}

impl TryFrom<MatrixFile> for SymMatrix {
    type Error = SpectralError;

    fn try_from(f: MatrixFile) -> Result<Self, SpectralError> {
        if f.entries.len() != f.n {
            return Err(SpectralError::NotSquare);
        }
        let floaty = f.entries.iter().flatten().any(|e| {
            matches!(e, MatrixEntry::Number(x) if x.fract() != 0.0 || !x.is_finite())
        });
        if floaty {
            let rows = f
                .entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| match e {
                            MatrixEntry::Number(x) => Ok(*x),
                            MatrixEntry::Text(s) => parse_rational(s)
                                .map(|q| exact::to_f64(&q))
                                .ok_or_else(|| SpectralError::BadEntry(s.clone())),
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            SymMatrix::from_rows_float(rows)
        } else {
            let rows = f
                .entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| match e {
                            MatrixEntry::Number(x) => Ok(Rational::from_integer((*x as i64).into())),
                            MatrixEntry::Text(s) => {
                                parse_rational(s).ok_or_else(|| SpectralError::BadEntry(s.clone()))
                            }
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            SymMatrix::from_rows_exact(rows)
        }
    }
}

/// The 0/1 adjacency matrix of `g`.
pub fn adjacency(g: &Graph) -> SymMatrix {
    let mut m = SymMatrix::zeros_exact(g.order());
    for (u, v) in g.edges() {
        m.set_exact(u, v, Rational::one());
    }
    m
}

/// A reproducible exact matrix in S(g). Edge entries are `±k/8` with
/// `4 ≤ k ≤ 16` and diagonal entries are `k/8` with `-8 ≤ k ≤ 8`.
pub fn sample_matrix(g: &Graph, seed: u64) -> SymMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let mut m = SymMatrix::zeros_exact(n);
    let eighth = |k: i64| Rational::new(k.into(), 8.into());
    for i in 1..=n {
        m.set_exact(i, i, eighth(rng.random_range(-8..=8)));
    }
    for (u, v) in g.edges() {
        let k: i64 = rng.random_range(4..=16);
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        m.set_exact(u, v, eighth(sign * k));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_matrices_conform() {
        let g = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)]).unwrap();
        for seed in 0..100 {
            let a = sample_matrix(&g, seed);
            assert!(a.conforms_to(&g));
            assert_eq!(a, sample_matrix(&g, seed));
        }
        assert_ne!(sample_matrix(&g, 1), sample_matrix(&g, 2));
        let empty = Graph::empty(3).unwrap();
        let d = sample_matrix(&empty, 7);
        assert!(d.conforms_to(&empty));
        assert!(adjacency(&g).conforms_to(&g));
    }

    #[test]
    fn nullity_exact_and_float() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let a = adjacency(&g);
        assert_eq!(a.nullity(1e-9), 0);
        let shifted = a.shifted_exact(&Rational::from_integer((-1).into()));
        assert_eq!(shifted.nullity(1e-9), 2);
        assert_eq!(a.to_float().shifted_f64(-1.0).nullity(1e-9), 2);
        assert_eq!(a.principal(VertexSet::from_bits(0b011)).order(), 2);
    }

    #[test]
    fn matrix_file_round_trip() {
        let text = r#"{"n":2,"entries":[["1/2",1],[1,"-0.25"]]}"#;
        let f: MatrixFile = serde_json::from_str(text).unwrap();
        let m = SymMatrix::try_from(f).unwrap();
        assert!(m.is_exact());
        assert_eq!(m.exact(2, 2).unwrap(), &Rational::new((-1).into(), 4.into()));
        let back = SymMatrix::try_from(m.to_file()).unwrap();
        assert_eq!(back, m);
        let fl: MatrixFile = serde_json::from_str(r#"{"n":1,"entries":[[1.5]]}"#).unwrap();
        assert!(!SymMatrix::try_from(fl).unwrap().is_exact());
        let asym: MatrixFile = serde_json::from_str(r#"{"n":2,"entries":[["0","1"],["2","0"]]}"#).unwrap();
        assert!(SymMatrix::try_from(asym).is_err());
    }
}
