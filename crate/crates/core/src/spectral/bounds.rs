use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exact::Rational;
use super::linear::{check_exact_on, minor_det, weight_paths};
use super::{fixtures, spectrum, SpectralError, SymMatrix};
use crate::budget::Budget;
use crate::graph::Graph;
use crate::linkage::{
    is_rigid, is_rigid_any_labeling, rigid_linkage_number, rigid_shortest_linkage_number, Labeling,
    Linkage,
};

fn require_rigid(g: &Graph, p: &Linkage, lab: &Labeling, budget: &mut Budget) -> Result<(), SpectralError> {
    if !is_rigid(g, p, lab, budget)? {
        return Err(SpectralError::Precondition(format!(
            "linkage is not ({},{})-rigid",
            lab.alpha, lab.beta
        )));
    }
    Ok(())
}

fn require_support(a: &SymMatrix, g: &Graph) -> Result<(), SpectralError> {
    if !a.supported_on(g) {
        return Err(SpectralError::Pattern);
    }
    Ok(())
}

/// Both sides of `det A(α,β) = ± w(P) det A(V(P))` for a rigid linkage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorIdentity {
    pub lhs: String,
    pub rhs: String,
    /// `+1` or `-1` when the sides agree up to that sign, `0` when both vanish
    /// or they differ in absolute value.
    pub sign: i8,
    pub holds: bool,
}

pub fn rigid_minor_identity(
    a: &SymMatrix,
    g: &Graph,
    p: &Linkage,
    lab: &Labeling,
    budget: &mut Budget,
) -> Result<MinorIdentity, SpectralError> {
    check_exact_on(a, g)?;
    require_rigid(g, p, lab, budget)?;
    let lhs = minor_det(a, lab.alpha, lab.beta)?;
    let oriented = p.oriented(lab).expect("rigid linkages fit their labeling");
    let rest = g.vertices() - p.vertex_set();
    let sub = a.principal(rest);
    let all: Vec<usize> = (1..=sub.order()).collect();
    let rhs: Rational = weight_paths(a, &oriented) * super::exact::determinant(&sub.exact_rows(&all, &all));
    let holds = lhs.abs() == rhs.abs();
    let sign = if !holds || rhs.is_zero() {
        0
    } else if lhs == rhs {
        1
    } else {
        -1
    };
    Ok(MinorIdentity {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        sign,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullityReport {
    pub t: usize,
    pub nullity: usize,
    pub sub_nullity: usize,
    /// `null(A(V(P))) - (null(A) - t)`.
    pub slack: i64,
    pub holds: bool,
}

/// Checks `null(A(V(P))) ≥ null(A) - t` for an (α,β)-rigid `p`.
pub fn verify_nullity_bound(
    a: &SymMatrix,
    g: &Graph,
    p: &Linkage,
    lab: &Labeling,
    tol: f64,
    budget: &mut Budget,
) -> Result<NullityReport, SpectralError> {
    require_support(a, g)?;
    require_rigid(g, p, lab, budget)?;
    let t = p.order();
    let nullity = a.nullity(tol);
    let sub_nullity = a.principal(g.vertices() - p.vertex_set()).nullity(tol);
    let slack = sub_nullity as i64 - (nullity as i64 - t as i64);
    Ok(NullityReport {
        t,
        nullity,
        sub_nullity,
        slack,
        holds: slack >= 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaSlack {
    pub lambda: f64,
    pub multiplicity: usize,
    pub sub_multiplicity: usize,
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub t: usize,
    pub per_lambda: Vec<LambdaSlack>,
    pub holds: bool,
}

/// Checks `mult_{A(V(P))}(λ) ≥ mult_A(λ) - t` for every λ with `mult_A(λ) > t`.
pub fn verify_multiplicity_bound(
    a: &SymMatrix,
    g: &Graph,
    p: &Linkage,
    lab: &Labeling,
    tol: f64,
    budget: &mut Budget,
) -> Result<MultiplicityReport, SpectralError> {
    require_support(a, g)?;
    require_rigid(g, p, lab, budget)?;
    let t = p.order();
    let full = spectrum(a, tol)?;
    let sub = spectrum(&a.principal(g.vertices() - p.vertex_set()), tol)?;
    let window = 5.0 * tol * full.scale;
    let per_lambda: Vec<LambdaSlack> = full
        .distinct
        .iter()
        .filter(|e| e.multiplicity > t)
        .map(|e| {
            let sub_multiplicity = sub.count_near(e.value, window);
            LambdaSlack {
                lambda: e.value,
                multiplicity: e.multiplicity,
                sub_multiplicity,
                slack: sub_multiplicity as i64 - (e.multiplicity - t) as i64,
            }
        })
        .collect();
    let holds = per_lambda.iter().all(|l| l.slack >= 0);
    Ok(MultiplicityReport {
        t,
        per_lambda,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QBoundReport {
    pub t: usize,
    pub use_rsl: bool,
    pub q_list: Vec<usize>,
    pub q_sum: usize,
    /// RL(t) or RSL(t); 0 when no such linkage exists.
    pub linkage_value: usize,
    pub holds: bool,
    pub tight: bool,
    pub q: usize,
    /// `⌈linkage_value / t⌉`.
    pub q_lower_bound: usize,
    pub q_holds: bool,
}

/// Compares `q_1 + ... + q_t` of `a` with RL(t), or RSL(t) when `use_rsl`.
pub fn verify_q_bounds(
    g: &Graph,
    a: &SymMatrix,
    t: usize,
    use_rsl: bool,
    tol: f64,
    budget: &mut Budget,
) -> Result<QBoundReport, SpectralError> {
    require_support(a, g)?;
    let value = if use_rsl {
        rigid_shortest_linkage_number(g, t, budget)?.value
    } else {
        rigid_linkage_number(g, t, budget)?.value
    };
    let s = spectrum(a, tol)?;
    let q_sum = s.q_sum(t);
    let q_lower_bound = value.div_ceil(t);
    Ok(QBoundReport {
        t,
        use_rsl,
        q_list: s.conjugate.clone(),
        q_sum,
        linkage_value: value,
        holds: q_sum >= value,
        tight: q_sum == value,
        q: s.q(),
        q_lower_bound,
        q_holds: s.q() >= q_lower_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightReport {
    pub t: usize,
    pub expected: Vec<f64>,
    pub actual: Vec<f64>,
    pub max_error: f64,
    pub holds: bool,
}

/// When `|V(P)| = RL(t) = q_1 + ... + q_t`, the spectrum of `A(V(P))` must be
/// exactly `{λ^(m_λ - t) : m_λ > t}`.
pub fn tight_rl_spectrum_check(
    g: &Graph,
    a: &SymMatrix,
    p: &Linkage,
    t: usize,
    tol: f64,
    budget: &mut Budget,
) -> Result<TightReport, SpectralError> {
    require_support(a, g)?;
    if p.order() != t {
        return Err(SpectralError::Precondition(format!(
            "linkage has order {} but t = {t}",
            p.order()
        )));
    }
    if is_rigid_any_labeling(g, p, budget)?.is_none() {
        return Err(SpectralError::Precondition("linkage is not rigid".into()));
    }
    let rl = rigid_linkage_number(g, t, budget)?.value;
    let s = spectrum(a, tol)?;
    if s.q_sum(t) != rl {
        return Err(SpectralError::Precondition(format!(
            "q_1+...+q_t = {} differs from RL(t) = {rl}",
            s.q_sum(t)
        )));
    }
    if p.size() != rl {
        return Err(SpectralError::Precondition(format!(
            "linkage has {} vertices, RL(t) = {rl}",
            p.size()
        )));
    }
    let mut expected: Vec<f64> = s
        .distinct
        .iter()
        .filter(|e| e.multiplicity > t)
        .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity - t))
        .collect();
    expected.sort_by(f64::total_cmp);
    let actual = spectrum(&a.principal(g.vertices() - p.vertex_set()), tol)?.raw;
    let max_error = if expected.len() == actual.len() {
        expected
            .iter()
            .zip(&actual)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(TightReport {
        t,
        holds: max_error < 10.0 * tol * s.scale,
        expected,
        actual,
        max_error,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TkReport {
    pub k: usize,
    pub multiplicities: Vec<usize>,
    pub expected: Vec<usize>,
    pub list_ok: bool,
    /// Eigenvalues ordered by multiplicity, as `λ_1, ..., λ_8`.
    pub lambdas: Vec<f64>,
    pub relation_residual: Option<f64>,
    pub relation_ok: Option<bool>,
    pub trace_residual: f64,
}

/// Checks the multiplicity list of the E-matrix of `T_k` and, for `k ≥ 3`,
/// `λ_1 + 3λ_2 + 3λ_3 = 2λ_4 + 2λ_5 + λ_6 + λ_7 + λ_8`.
pub fn tk_relation_check(k: usize, tol: f64) -> Result<TkReport, SpectralError> {
    if k < 2 {
        return Err(SpectralError::Precondition("k must be at least 2".into()));
    }
    let e = fixtures::tk_e_matrix(k);
    let s = spectrum(&e, tol)?;
    let expected = vec![3 * k + 2, 3 * k - 2, 3 * k - 3, 2, 2, 1, 1, 1];
    let mut by_mult = s.distinct.clone();
    by_mult.sort_by(|a, b| b.multiplicity.cmp(&a.multiplicity).then(a.value.total_cmp(&b.value)));
    let lambdas: Vec<f64> = by_mult.iter().map(|e| e.value).collect();
    let list_ok = s.multiplicities == expected;
    let trace: f64 = (1..=e.order()).map(|i| e.get_f64(i, i)).sum();
    let trace_residual = (trace - s.raw.iter().sum::<f64>()).abs();
    let (relation_residual, relation_ok) = if k >= 3 && list_ok {
        let l = &lambdas;
        let r = (l[0] + 3.0 * l[1] + 3.0 * l[2] - 2.0 * l[3] - 2.0 * l[4] - l[5] - l[6] - l[7]).abs();
        (Some(r), Some(r < tol))
    } else {
        (None, None)
    };
    Ok(TkReport {
        k,
        multiplicities: s.multiplicities,
        expected,
        list_ok,
        lambdas,
        relation_residual,
        relation_ok,
        trace_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::spectral::{adjacency, sample_matrix, DEFAULT_TOL};

    #[test]
    fn whirl_is_tight_for_every_order() {
        let g = FamilySpec::Whirl.build().unwrap();
        let a = fixtures::w_tree_matrix();
        let mut b = Budget::default();
        for (t, want) in [(1, 7), (2, 12), (3, 14), (4, 15)] {
            let r = verify_q_bounds(&g, &a, t, false, DEFAULT_TOL, &mut b).unwrap();
            assert_eq!(r.linkage_value, want);
            assert!(r.holds && r.tight, "t = {t}");
            let w = rigid_linkage_number(&g, t, &mut b).unwrap().witness.unwrap();
            let p = Linkage::from_raw(&w.paths);
            let tight = tight_rl_spectrum_check(&g, &a, &p, t, DEFAULT_TOL, &mut b).unwrap();
            assert!(tight.holds, "t = {t}: {tight:?}");
        }
    }

    #[test]
    fn minor_identity_on_the_paw() {
        let g = FamilySpec::Paw.build().unwrap();
        let set = crate::graph::VertexSet::from_iter;
        let p = Linkage::new(&g, vec![vec![1, 2]]).unwrap();
        let lab = Labeling::new(set([1]), set([2])).unwrap();
        let mut b = Budget::default();
        for seed in 0..5 {
            let a = sample_matrix(&g, seed);
            let id = rigid_minor_identity(&a, &g, &p, &lab, &mut b).unwrap();
            assert!(id.holds, "{id:?}");
        }
        let a = sample_matrix(&g, 0);
        let q = Linkage::new(&g, vec![vec![3, 4]]).unwrap();
        let lab34 = Labeling::new(set([3]), set([4])).unwrap();
        assert!(matches!(
            rigid_minor_identity(&a, &g, &q, &lab34, &mut b),
            Err(SpectralError::Precondition(_))
        ));
    }

    #[test]
    fn nullity_and_multiplicity_on_complete_graphs() {
        let g = FamilySpec::Complete(5).build().unwrap();
        let a = adjacency(&g).shifted_exact(&Rational::from_integer((-1).into()));
        let one = crate::graph::VertexSet::from_iter([1]);
        let p = Linkage::new(&g, vec![vec![1]]).unwrap();
        let lab = Labeling::new(one, one).unwrap();
        let mut b = Budget::default();
        let r = verify_nullity_bound(&a, &g, &p, &lab, DEFAULT_TOL, &mut b).unwrap();
        assert_eq!((r.nullity, r.sub_nullity, r.slack), (4, 3, 0));
        assert!(r.holds);
        let m = verify_multiplicity_bound(&adjacency(&g), &g, &p, &lab, DEFAULT_TOL, &mut b).unwrap();
        assert!(m.holds);
        assert_eq!(m.per_lambda.len(), 1);
        let edge = Linkage::new(&g, vec![vec![1, 2]]).unwrap();
        let lab2 = Labeling::new(one, crate::graph::VertexSet::from_iter([2])).unwrap();
        assert!(matches!(
            verify_nullity_bound(&a, &g, &edge, &lab2, DEFAULT_TOL, &mut b),
            Err(SpectralError::Precondition(_))
        ));
    }

    #[test]
    fn tk_relation() {
        let r = tk_relation_check(2, DEFAULT_TOL).unwrap();
        assert!(r.list_ok && r.relation_ok.is_none());
        let r = tk_relation_check(3, DEFAULT_TOL).unwrap();
        assert!(r.list_ok);
        assert_eq!(r.relation_ok, Some(true), "{r:?}");
    }
}
