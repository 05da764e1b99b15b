use std::path::Path;
use std::time::Instant;

use rllab_core::catalog::connected_graphs_up_to;
use rllab_core::families::{fixture_corpus, replay, FamilySpec, FixtureRecord};
use rllab_core::forcing::{rl_forcing_number, zero_forcing_number};
use rllab_core::graph::Graph;
use rllab_core::linkage::{rigid_linkage_number, rigid_shortest_linkage_number, Linkage};
use rllab_core::spectral::{adjacency, sample_matrix, spectrum};
use rllab_core::structure::check_tw_bound;
use serde_json::{json, Value};

use crate::commands::matrix_seeds;
use crate::{read, Context, Failure, Outcome};

/// Largest order in the property sweep.
const SWEEP_MAX_ORDER: usize = 5;

fn normalize(name: &str) -> String {
    name.trim().to_lowercase().replace('_', "")
}

fn family_name(spec: &str) -> &str {
    spec.split(':').next().unwrap_or(spec)
}

/// A record matches when the filter names its family exactly (`cycle:5`) or
/// names the whole family (`cycle`, `T_k`).
fn matches(filter: &str, record: &FixtureRecord) -> bool {
    let want = normalize(filter);
    let have = record.family.to_string();
    if have == want || family_name(&have) == want {
        return true;
    }
    want.parse::<FamilySpec>()
        .map(|f| f == record.family)
        .unwrap_or(false)
}

pub fn verify_all(
    filter: Option<&str>,
    corpus: Option<&Path>,
    skip_properties: bool,
    ctx: &mut Context,
) -> Result<Outcome, Failure> {
    let records: Vec<FixtureRecord> = match corpus {
        Some(path) => serde_json::from_str(&read(path)?)?,
        None => fixture_corpus(),
    };
    let selected: Vec<&FixtureRecord> = records
        .iter()
        .filter(|r| filter.is_none_or(|f| matches(f, r)))
        .collect();
    if selected.is_empty() {
        return Err(Failure::Input(format!(
            "no corpus record matches family filter '{}'",
            filter.unwrap_or_default()
        )));
    }
    let mut failed = 0;
    let mut summary = Vec::new();
    for r in &selected {
        let start = Instant::now();
        let outcome = replay(r, ctx.tol, &mut ctx.budget);
        let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut entry = json!({
            "family": r.family,
            "quantity": r.quantity,
            "citation": r.citation,
            "origin": r.origin,
            "expected": r.expected,
            "runtime_ms": runtime_ms,
        });
        match outcome {
            Ok(rep) => {
                entry["got"] = json!(rep.got);
                entry["pass"] = json!(rep.pass);
                if !rep.pass {
                    failed += 1;
                }
            }
            Err(e) => {
                entry["got"] = Value::Null;
                entry["pass"] = json!(false);
                entry["error"] = json!(e.to_string());
                failed += 1;
            }
        }
        summary.push(entry);
    }
    let failing: Vec<&Value> = summary.iter().filter(|e| e["pass"] == json!(false)).collect();
    let failing_citations: Vec<Value> = failing.iter().map(|e| e["citation"].clone()).collect();

    let properties = if skip_properties || filter.is_some() {
        None
    } else {
        Some(property_sweep(ctx)?)
    };
    let property_violations = properties
        .as_ref()
        .map_or(0, |p: &Vec<Value>| p.iter().map(|s| s["violations"].as_u64().unwrap_or(0)).sum());

    Ok(Outcome {
        violated: failed > 0 || property_violations > 0,
        result: json!({
            "records": selected.len(),
            "failed": failed,
            "failing_citations": failing_citations,
            "summary": summary,
            "properties": properties,
            "property_violations": property_violations,
        }),
    })
}

struct Suite {
    name: &'static str,
    checked: usize,
    violations: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            checked: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "checked": self.checked,
            "violations": self.violations.len(),
            "details": self.violations,
        })
    }
}

fn edges(g: &Graph) -> String {
    format!("{:?}", g.edges())
}

/// Checks on every connected graph up to [`SWEEP_MAX_ORDER`] vertices.
fn property_sweep(ctx: &mut Context) -> Result<Vec<Value>, Failure> {
    let graphs = connected_graphs_up_to(SWEEP_MAX_ORDER);
    let seeds = matrix_seeds(ctx.seed, graphs.len());
    let mut z = Suite::new("z-rl-equals-z");
    let mut order = Suite::new("rl-at-most-rsl");
    let mut spanning = Suite::new("spanning-rsl-order-at-least-z");
    let mut q = Suite::new("q-sums-dominate-rsl");
    let mut tw = Suite::new("treewidth-at-most-spanning-order");
    for (g, &seed) in graphs.iter().zip(&seeds) {
        let n = g.order();
        let zf = zero_forcing_number(g, &mut ctx.budget)?;
        let zrl = rl_forcing_number(g, &mut ctx.budget)?;
        z.check(zf.value == zrl.value, || format!("{}: Z = {}, Z_RL = {}", edges(g), zf.value, zrl.value));
        let spectra = [spectrum(&adjacency(g), ctx.tol)?, spectrum(&sample_matrix(g, seed), ctx.tol)?];
        for t in 1..=n {
            let rl = rigid_linkage_number(g, t, &mut ctx.budget)?;
            let rsl = rigid_shortest_linkage_number(g, t, &mut ctx.budget)?;
            order.check(rl.value <= rsl.value, || {
                format!("{}: t = {t}, RL = {}, RSL = {}", edges(g), rl.value, rsl.value)
            });
            if rsl.value == n {
                spanning.check(t >= zf.value, || format!("{}: RSL({t}) = n but Z = {}", edges(g), zf.value));
            }
            for s in &spectra {
                q.check(s.q_sum(t) >= rsl.value, || {
                    format!("{}: t = {t}, q-sum {} < RSL {}", edges(g), s.q_sum(t), rsl.value)
                });
            }
            if let Some(w) = rl.witness.filter(|_| rl.value == n) {
                let p = Linkage::new(g, w.paths)?;
                let b = check_tw_bound(g, &p, &mut ctx.budget)?;
                tw.check(b.holds, || format!("{}: tw = {} > t = {}", edges(g), b.treewidth, b.order));
            }
        }
    }
    Ok([z, order, spanning, q, tw].iter().map(Suite::to_json).collect())
}
