//! Named graph families and the table of known values for them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family '{0}'")]
    Unknown(String),
    #[error("family '{name}' expects {expected}, got '{got}'")]
    Params {
        name: &'static str,
        expected: &'static str,
        got: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named family member, written `name` or `name:p1,p2`. Products are
/// written `product:G*H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    Paw,
    /// The 12-vertex graph with an inner 4-cycle, a middle ring and pendants.
    Mary,
    /// The 10-vertex graph with `Z = 3`, `RSL(1) = 4`, `RSL(2) = 9`.
    Seth,
    /// The 15-vertex tree W.
    Whirl,
    Hk(usize),
    Tk(usize),
    BarioliFallat,
    Xx,
    X,
    Product(Box<FamilySpec>, Box<FamilySpec>),
}

/// Vertex labels of the tree W.
pub mod whirl {
    pub const V0: usize = 1;
    pub const V1: usize = 2;
    pub const V2: usize = 3;
    pub const V3: usize = 4;
    pub const I11: usize = 5;
    pub const I12: usize = 6;
    pub const J11: usize = 7;
    pub const J12: usize = 8;
    pub const I21: usize = 9;
    pub const I22: usize = 10;
    pub const J21: usize = 11;
    pub const J22: usize = 12;
    pub const I31: usize = 13;
    pub const I32: usize = 14;
    pub const J31: usize = 15;
}

/// One catalog line for `families list`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyInfo {
    pub syntax: &'static str,
    pub description: &'static str,
}

pub fn catalog() -> Vec<FamilyInfo> {
    let row = |syntax, description| FamilyInfo {
        syntax,
        description,
    };
    vec![
        row("path:n", "path 1-2-...-n"),
        row("cycle:n", "cycle 1-2-...-n-1, n >= 3"),
        row("complete:n", "complete graph K_n"),
        row("complete-bipartite:m,n", "K_{m,n}, parts 1..m and m+1..m+n"),
        row("hypercube:n", "Q_n, bitstring b is vertex b+1"),
        row("paw", "triangle 2-3-4 with pendant 1 at 2"),
        row("mary", "inner 4-cycle 1-4, middle ring 5-8, pendants 9-12 (Z = 4)"),
        row("seth", "10 vertices, paths 1-5 and 6-9 plus vertex 10 (Z = 3)"),
        row("whirl", "the 15-vertex tree W with legs of length 2 and 1"),
        row("hk:k", "k claws sharing one pendant vertex (hub 1), 3k+1 vertices"),
        row("tk:k", "three copies of H_k joined at a center (vertex 1), 9k+4 vertices"),
        row("barioli-fallat", "K_{1,3} with two leaves appended to every leaf"),
        row("xx", "paths 1-2-3, 4-5-6 with rungs 1-5, 5-3, 4-2, 2-6"),
        row("x", "paths 1-2, 3-4 with rungs 1-4, 2-3"),
        row("product:G*H", "Cartesian product, (u,v) is (u-1)|V(H)|+v"),
    ]
}

fn ints(name: &'static str, expected: &'static str, s: &str, arity: usize) -> Result<Vec<usize>, FamilyError> {
    let err = || FamilyError::Params {
        name,
        expected,
        got: s.to_string(),
    };
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| err())?;
    if v.len() != arity {
        return Err(err());
    }
    Ok(v)
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let s = s.trim();
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n.trim().to_ascii_lowercase(), Some(p)),
            None => (s.to_ascii_lowercase(), None),
        };
        let one = |label: &'static str, what: &'static str| -> Result<usize, FamilyError> {
            let p = params.ok_or_else(|| FamilyError::Params {
                name: label,
                expected: what,
                got: String::new(),
            })?;
            Ok(ints(label, what, p, 1)?[0])
        };
        let none = |label: &'static str, spec: FamilySpec| -> Result<FamilySpec, FamilyError> {
            match params {
                None => Ok(spec),
                Some(p) => Err(FamilyError::Params {
                    name: label,
                    expected: "no parameters",
                    got: p.to_string(),
                }),
            }
        };
        let spec = match name.as_str() {
            "path" => FamilySpec::Path(one("path", "one integer n >= 1")?),
            "cycle" => FamilySpec::Cycle(one("cycle", "one integer n >= 3")?),
            "complete" => FamilySpec::Complete(one("complete", "one integer n >= 1")?),
            "complete-bipartite" | "complete_bipartite" => {
                let what = "two integers m,n >= 1";
                let p = params.unwrap_or("");
                let v = ints("complete-bipartite", what, p, 2)?;
                FamilySpec::CompleteBipartite(v[0], v[1])
            }
            "hypercube" => FamilySpec::Hypercube(one("hypercube", "one integer n >= 1")?),
            "paw" => none("paw", FamilySpec::Paw)?,
            "mary" | "fig1" => none("mary", FamilySpec::Mary)?,
            "seth" | "fig5" => none("seth", FamilySpec::Seth)?,
            "whirl" | "w" => none("whirl", FamilySpec::Whirl)?,
            "hk" | "h" => FamilySpec::Hk(one("hk", "one integer k >= 1")?),
            "tk" | "t" => FamilySpec::Tk(one("tk", "one integer k >= 1")?),
            "barioli-fallat" | "barioli_fallat" | "bf" => none("barioli-fallat", FamilySpec::BarioliFallat)?,
            "xx" => none("xx", FamilySpec::Xx)?,
            "x" => none("x", FamilySpec::X)?,
            "product" => {
                let p = params.unwrap_or("");
                let (a, b) = p.split_once('*').ok_or_else(|| FamilyError::Params {
                    name: "product",
                    expected: "two families joined by '*'",
                    got: p.to_string(),
                })?;
                FamilySpec::Product(Box::new(a.parse()?), Box::new(b.parse()?))
            }
            _ => return Err(FamilyError::Unknown(s.to_string())),
        };
        spec.check()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(m, n) => write!(f, "complete-bipartite:{m},{n}"),
            FamilySpec::Hypercube(n) => write!(f, "hypercube:{n}"),
            FamilySpec::Paw => write!(f, "paw"),
            FamilySpec::Mary => write!(f, "mary"),
            FamilySpec::Seth => write!(f, "seth"),
            FamilySpec::Whirl => write!(f, "whirl"),
            FamilySpec::Hk(k) => write!(f, "hk:{k}"),
            FamilySpec::Tk(k) => write!(f, "tk:{k}"),
            FamilySpec::BarioliFallat => write!(f, "barioli-fallat"),
            FamilySpec::Xx => write!(f, "xx"),
            FamilySpec::X => write!(f, "x"),
            FamilySpec::Product(a, b) => write!(f, "product:{a}*{b}"),
        }
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FamilySpec {
    /// Number of vertices, without building the graph.
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Path(n) | FamilySpec::Cycle(n) | FamilySpec::Complete(n) => *n,
            FamilySpec::CompleteBipartite(m, n) => m + n,
            FamilySpec::Hypercube(n) => 1usize.checked_shl(*n as u32).unwrap_or(usize::MAX),
            FamilySpec::Paw => 4,
            FamilySpec::Mary => 12,
            FamilySpec::Seth => 10,
            FamilySpec::Whirl => 15,
            FamilySpec::Hk(k) => 3 * k + 1,
            FamilySpec::Tk(k) => 9 * k + 4,
            FamilySpec::BarioliFallat => 10,
            FamilySpec::Xx => 6,
            FamilySpec::X => 4,
            FamilySpec::Product(a, b) => a.order().saturating_mul(b.order()),
        }
    }

    fn check(&self) -> Result<(), FamilyError> {
        let bad = |name: &'static str, expected: &'static str| FamilyError::Params {
            name,
            expected,
            got: self.to_string(),
        };
        match self {
            FamilySpec::Path(0) => return Err(bad("path", "n >= 1")),
            FamilySpec::Cycle(n) if *n < 3 => return Err(bad("cycle", "n >= 3")),
            FamilySpec::Complete(0) => return Err(bad("complete", "n >= 1")),
            FamilySpec::CompleteBipartite(m, n) if *m == 0 || *n == 0 => {
                return Err(bad("complete-bipartite", "m, n >= 1"))
            }
            FamilySpec::Hypercube(0) => return Err(bad("hypercube", "n >= 1")),
            FamilySpec::Hk(0) => return Err(bad("hk", "k >= 1")),
            FamilySpec::Tk(0) => return Err(bad("tk", "k >= 1")),
            _ => {}
        }
        if self.order() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.order()).into());
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        self.check()?;
        let g = match self {
            FamilySpec::Path(n) => {
                let e: Vec<_> = (1..*n).map(|i| (i, i + 1)).collect();
                Graph::from_edges(*n, &e)?
            }
            FamilySpec::Cycle(n) => {
                let e: Vec<_> = (1..=*n).map(|i| (i, i % n + 1)).collect();
                Graph::from_edges(*n, &e)?
            }
            FamilySpec::Complete(n) => {
                let e: Vec<_> = (1..=*n).flat_map(|i| (i + 1..=*n).map(move |j| (i, j))).collect();
                Graph::from_edges(*n, &e)?
            }
            FamilySpec::CompleteBipartite(m, n) => {
                let e: Vec<_> = (1..=*m).flat_map(|i| (m + 1..=m + n).map(move |j| (i, j))).collect();
                Graph::from_edges(m + n, &e)?
            }
            FamilySpec::Hypercube(d) => {
                let n = 1usize << d;
                let mut e = Vec::new();
                for b in 0..n {
                    for bit in 0..*d {
                        let c = b ^ (1 << bit);
                        if b < c {
                            e.push((b + 1, c + 1));
                        }
                    }
                }
                Graph::from_edges(n, &e)?
            }
            FamilySpec::Paw => Graph::from_edges(4, &[(1, 2), (2, 3), (2, 4), (3, 4)])?,
            FamilySpec::Mary => Graph::from_edges(
                12,
                &[
                    (1, 2), (2, 3), (3, 4), (4, 1),
                    (5, 1), (1, 6), (6, 2), (2, 7), (7, 3), (3, 8), (8, 4), (4, 5),
                    (5, 9), (6, 10), (7, 11), (8, 12),
                ],
            )?,
            FamilySpec::Seth => Graph::from_edges(
                10,
                &[
                    (1, 2), (2, 3), (3, 4), (4, 5), (6, 7), (7, 8), (8, 9),
                    (1, 6), (1, 10), (5, 9), (9, 3), (3, 7), (6, 10), (10, 2),
                ],
            )?,
            FamilySpec::Whirl => {
                use whirl::*;
                Graph::from_edges(
                    15,
                    &[
                        (V0, V1), (V0, V2), (V0, V3),
                        (V1, I11), (I11, I12), (V1, J11), (J11, J12),
                        (V2, I21), (I21, I22), (V2, J21), (J21, J22),
                        (V3, I31), (I31, I32), (V3, J31),
                    ],
                )?
            }
            FamilySpec::Hk(k) => Graph::from_edges(3 * k + 1, &hk_edges(*k, 0))?,
            FamilySpec::Tk(k) => Graph::from_edges(9 * k + 4, &tk_edges(*k))?,
            FamilySpec::BarioliFallat => Graph::from_edges(
                10,
                &[(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8), (4, 9), (4, 10)],
            )?,
            FamilySpec::Xx => Graph::from_edges(
                6,
                &[(1, 2), (2, 3), (4, 5), (5, 6), (1, 5), (5, 3), (4, 2), (2, 6)],
            )?,
            FamilySpec::X => Graph::from_edges(4, &[(1, 2), (3, 4), (1, 4), (2, 3)])?,
            FamilySpec::Product(a, b) => cartesian_product(&a.build()?, &b.build()?)?,
        };
        Ok(g)
    }
}

/// `H_k` with hub 1, claw centers `2..=k+1` and leaves `k+2..=3k+1`
/// (center `1+i` owns `k+2i` and `k+2i+1`), all shifted by `offset`.
fn hk_edges(k: usize, offset: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 1..=k {
        let b = 1 + i;
        e.push((1 + offset, b + offset));
        e.push((b + offset, k + 2 * i + offset));
        e.push((b + offset, k + 2 * i + 1 + offset));
    }
    e
}

/// `T_k`: center 1, level-1 vertices 2, 3, 4, level-2 vertices `5..=3k+4`
/// branch by branch, then two leaves per level-2 vertex in the same order.
fn tk_edges(k: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for branch in 0..3 {
        let hub = 2 + branch;
        e.push((1, hub));
        for i in 0..k {
            let mid = 5 + branch * k + i;
            e.push((hub, mid));
            let leaf = 3 * k + 5 + 2 * (branch * k + i);
            e.push((mid, leaf));
            e.push((mid, leaf + 1));
        }
    }
    e
}

/// `g □ h` with `(u, v)` numbered `(u - 1)·|V(h)| + v`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let m = h.order();
    let n = g.order() * m;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let id = |u: usize, v: usize| (u - 1) * m + v;
    let mut e = Vec::new();
    for u in g.vertices() {
        for (a, b) in h.edges() {
            e.push((id(u, a), id(u, b)));
        }
    }
    for (a, b) in g.edges() {
        for v in h.vertices() {
            e.push((id(a, v), id(b, v)));
        }
    }
    Graph::from_edges(n, &e)
}

/// Where a fixture value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    /// Stated in the literature for this graph.
    Literature,
    /// Immediate from the definitions.
    Elementary,
    /// Established by an independent computation in the test suite.
    Computed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Z,
    Rl(usize),
    Rsl(usize),
    /// Distinct adjacency eigenvalues, as `(value, multiplicity)`.
    AdjacencySpectrum,
    /// Unordered multiplicity list of the E-matrix of `T_k`.
    EMatrixMultiplicities,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expected {
    Int(usize),
    List(Vec<usize>),
    Spectrum(Vec<(f64, usize)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureRecord {
    pub family: FamilySpec,
    pub quantity: Quantity,
    pub expected: Expected,
    pub origin: Origin,
    pub citation: String,
}

fn record(family: FamilySpec, quantity: Quantity, expected: Expected, origin: Origin, citation: &str) -> FixtureRecord {
    FixtureRecord {
        family,
        quantity,
        expected,
        origin,
        citation: citation.to_string(),
    }
}

/// Every known value the library is checked against.
pub fn fixture_corpus() -> Vec<FixtureRecord> {
    use Expected::*;
    use FamilySpec as F;
    use Origin::*;
    use Quantity::*;
    let mut out = vec![
        record(F::Mary, Z, Int(4), Literature, "mary: {4,9,10,11} forces, Z = 4"),
        record(F::Paw, Z, Int(2), Elementary, "paw: {2,3} forces, no single vertex does"),
        record(F::Seth, Z, Int(3), Literature, "seth: Z = 3"),
        record(F::Seth, Rsl(1), Int(4), Literature, "seth: (1,2,3,4) is the longest unique shortest path"),
        record(F::Seth, Rsl(2), Int(9), Literature, "seth: {(1,2,3,4,5),(6,7,8,9)} from {1,6} to {5,9}"),
        record(F::Seth, Rsl(3), Int(10), Literature, "seth: a spanning rigid shortest linkage has order Z = 3"),
        record(F::Path(5), Z, Int(1), Elementary, "paths are forced from an end"),
        record(F::Path(5), Rl(1), Int(5), Elementary, "a path is its own rigid linkage"),
    ];
    for (t, v) in [(1, 7), (2, 12), (3, 14), (4, 15)] {
        out.push(record(F::Whirl, Rl(t), Int(v), Literature, "whirl: RL = 7, 12, 14, 15"));
    }
    for n in 2..=7 {
        for t in 1..n {
            out.push(record(F::Complete(n), Rsl(t), Int(t + 1), Literature, "complete graphs: RSL(t) = t + 1"));
        }
        out.push(record(
            F::Complete(n),
            AdjacencySpectrum,
            Spectrum(vec![(-1.0, n - 1), ((n - 1) as f64, 1)]),
            Literature,
            "complete graphs: spectrum {-1^(n-1), n-1}",
        ));
    }
    for n in 3..=9 {
        out.push(record(F::Cycle(n), Rsl(1), Int(n.div_ceil(2)), Literature, "cycles: RSL(1) = ceil(n/2)"));
        out.push(record(F::Cycle(n), Rsl(2), Int(n), Literature, "cycles: RSL(2) = n"));
    }
    for m in 1..=4 {
        for n in m.max(2)..=8 - m {
            let c = "complete bipartite: RSL = 2 or 3 at t = 1, t + 2 above";
            out.push(record(F::CompleteBipartite(m, n), Rsl(1), Int(if m >= 2 { 2 } else { 3 }), Literature, c));
            for t in 2..=m + n - 2 {
                out.push(record(F::CompleteBipartite(m, n), Rsl(t), Int(t + 2), Literature, c));
            }
        }
    }
    for t in 1..=4 {
        out.push(record(F::Hypercube(3), Rsl(t), Int(2 * t), Literature, "hypercubes: RSL(t) = 2t"));
    }
    for k in 2..=5 {
        let r2 = 2f64.sqrt();
        let rk = ((k + 2) as f64).sqrt();
        out.push(record(
            F::Hk(k),
            AdjacencySpectrum,
            Spectrum(vec![(-rk, 1), (-r2, k - 1), (0.0, k + 1), (r2, k - 1), (rk, 1)]),
            Literature,
            "H_k: spectrum {0^(k+1), ±sqrt2^(k-1), ±sqrt(k+2)}",
        ));
    }
    for k in 2..=3 {
        out.push(record(
            F::Tk(k),
            EMatrixMultiplicities,
            List(vec![3 * k + 2, 3 * k - 2, 3 * k - 3, 2, 2, 1, 1, 1]),
            Literature,
            "T_k: E-matrix multiplicity list 3k+2, 3k-2, 3k-3, 2, 2, 1, 1, 1",
        ));
    }
    out
}

/// Result of recomputing one fixture record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replay {
    pub got: Expected,
    pub pass: bool,
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Linkage(#[from] crate::linkage::LinkageError),
    #[error(transparent)]
    Forcing(#[from] crate::forcing::ForcingError),
    #[error(transparent)]
    Spectral(#[from] crate::spectral::SpectralError),
}

/// Spectrum entries agree when values differ by less than `tol` times the
/// spectral scale and multiplicities match.
pub fn replay(record: &FixtureRecord, tol: f64, budget: &mut Budget) -> Result<Replay, ReplayError> {
    use crate::spectral::{adjacency, fixtures, spectrum};
    let g = record.family.build()?;
    let got = match record.quantity {
        Quantity::Z => Expected::Int(crate::forcing::zero_forcing_number(&g, budget)?.value),
        Quantity::Rl(t) => Expected::Int(crate::linkage::rigid_linkage_number(&g, t, budget)?.value),
        Quantity::Rsl(t) => Expected::Int(crate::linkage::rigid_shortest_linkage_number(&g, t, budget)?.value),
        Quantity::AdjacencySpectrum => {
            let s = spectrum(&adjacency(&g), tol)?;
            Expected::Spectrum(s.distinct.iter().map(|e| (e.value, e.multiplicity)).collect())
        }
        Quantity::EMatrixMultiplicities => {
            let FamilySpec::Tk(k) = record.family else {
                return Err(FamilyError::Params {
                    name: "tk",
                    expected: "a T_k family for E-matrix records",
                    got: record.family.to_string(),
                }
                .into());
            };
            Expected::List(spectrum(&fixtures::tk_e_matrix(k), tol)?.multiplicities)
        }
    };
    let pass = match (&record.expected, &got) {
        (Expected::Spectrum(want), Expected::Spectrum(have)) => {
            let scale = have.iter().fold(1.0f64, |m, e| m.max(e.0.abs()));
            want.len() == have.len()
                && want.iter().zip(have).all(|(w, h)| w.1 == h.1 && (w.0 - h.0).abs() < tol * scale)
        }
        (want, have) => want == have,
    };
    Ok(Replay { got, pass })
}
