use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rllab_core::families::{catalog, FamilySpec};
use rllab_core::forcing::{
    extract_chain_set, rl_apply, rl_explore, rl_forcing_number, rl_moves, z_closure, zero_forcing_number,
    ForcingState, Goal,
};
use rllab_core::graph::{Graph, GraphFile, VertexSet};
use rllab_core::linkage::{
    is_rigid, is_rigid_shortest, is_unique_linkage, is_vital, rigid_linkage_number,
    rigid_shortest_linkage_number, Certificate, Labeling, Linkage,
};
use rllab_core::spectral::{
    adjacency, cycledet, fixtures, minor_det, sample_matrix, spectrum, tk_relation_check, verify_multiplicity_bound,
    verify_nullity_bound, verify_q_bounds, MatrixFile, SpectralError, SymMatrix,
};
use rllab_core::structure::{has_x_minor, is_two_parallel_paths, treewidth_exact};
use serde_json::{json, Value};

use crate::config::{Command, FamiliesAction, Property, Rule, RunConfig};
use crate::{read, required, verify, Context, Failure, Outcome};

pub fn dispatch(config: &RunConfig, ctx: &mut Context) -> Result<Outcome, Failure> {
    match &config.command {
        Command::Force { rule, initial, goal } => force(ctx, *rule, initial, goal),
        Command::Certify {
            property,
            paths,
            alpha,
            beta,
        } => certify(ctx, *property, paths.as_deref(), alpha, beta),
        Command::RlNumber { t } => {
            let g = required(&ctx.graph)?;
            let e = rigid_linkage_number(g, *t, &mut ctx.budget)?;
            Ok(Outcome::ok(json!(Certificate::new(format!("RL({t})"), &e))))
        }
        Command::RslNumber { t } => {
            let g = required(&ctx.graph)?;
            let e = rigid_shortest_linkage_number(g, *t, &mut ctx.budget)?;
            Ok(Outcome::ok(json!(Certificate::new(format!("RSL({t})"), &e))))
        }
        Command::ZNumber { rule } => {
            let g = required(&ctx.graph)?;
            let (query, number) = match rule {
                Rule::Z => ("Z", zero_forcing_number(g, &mut ctx.budget)?),
                Rule::Rl => ("Z_RL", rl_forcing_number(g, &mut ctx.budget)?),
            };
            Ok(Outcome::ok(json!({
                "query": query,
                "value": number.value,
                "witness": number.witness,
            })))
        }
        Command::DetExpand { alpha, beta, matrix } => det_expand(ctx, alpha, beta, matrix.as_deref()),
        Command::Spectra { matrix } => spectra(config, ctx, matrix.as_deref()),
        Command::VerifyBounds { t, rsl, seeds } => verify_bounds(ctx, *t, *rsl, *seeds),
        Command::Treewidth => {
            let g = required(&ctx.graph)?;
            let tw = treewidth_exact(g)?;
            let check = tw.decomposition.validate(g);
            Ok(Outcome {
                violated: check.is_err(),
                result: json!({
                    "treewidth": tw,
                    "decomposition_valid": check.is_ok(),
                    "problem": check.err(),
                }),
            })
        }
        Command::Families { action } => families(action),
        Command::VerifyAll {
            corpus,
            skip_properties,
        } => verify::verify_all(config.family.as_deref(), corpus.as_deref(), *skip_properties, ctx),
        Command::Rerun { .. } => Err(Failure::Input("rerun is handled before dispatch".into())),
    }
}

/// Seeds for `count` matrices, all drawn from one generator seeded with `seed`.
pub fn matrix_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.next_u64()).collect()
}

fn vertex_set(g: &Graph, name: &str, vs: &[usize]) -> Result<VertexSet, Failure> {
    if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > g.order()) {
        return Err(Failure::Input(format!("--{name}: vertex {v} is not in 1..={}", g.order())));
    }
    Ok(vs.iter().copied().collect())
}

fn parse_paths(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .map(|p| {
            p.split('-')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|e| Failure::Input(format!("--paths: '{v}': {e}")))
                })
                .collect()
        })
        .collect()
}

fn state_json(s: &ForcingState) -> Value {
    let chains = extract_chain_set(s);
    json!({
        "blue": s.blue(),
        "active": s.active(),
        "forces": s.forces(),
        "chains": chains,
    })
}

fn force(ctx: &mut Context, rule: Rule, initial: &[usize], goal: &str) -> Result<Outcome, Failure> {
    let g = required(&ctx.graph)?;
    let b0 = vertex_set(g, "initial", initial)?;
    let all = g.vertices();
    match rule {
        Rule::Z => {
            let (blue, forces) = z_closure(g, b0);
            let mut step_blue = b0;
            let mut active = b0;
            let steps: Vec<Value> = forces
                .iter()
                .map(|f| {
                    step_blue.insert(f.to);
                    active = active.without(f.from).with(f.to);
                    json!({"from": f.from, "to": f.to, "blue": step_blue, "active": active})
                })
                .collect();
            let chains: Vec<Vec<usize>> = b0
                .iter()
                .map(|b| {
                    let mut chain = vec![b];
                    while let Some(f) = forces.iter().find(|f| f.from == *chain.last().unwrap()) {
                        chain.push(f.to);
                    }
                    chain
                })
                .collect();
            Ok(Outcome::ok(json!({
                "rule": "z",
                "initial": b0,
                "steps": steps,
                "blue": blue,
                "forcing_set": blue == all,
                "chains": {"paths": chains, "start": b0, "end": active},
            })))
        }
        Rule::Rl => {
            let goal = parse_goal(g, goal)?;
            let mut s = ForcingState::new(g, b0)?;
            let mut steps = Vec::new();
            while let Some(mv) = rl_moves(g, &s).first().copied() {
                ctx.budget.tick().map_err(|e| Failure::Budget(e.to_string()))?;
                s = rl_apply(g, &s, mv)?;
                steps.push(json!({"from": mv.from, "to": mv.to, "blue": s.blue(), "active": s.active()}));
            }
            let terminal = |s: &ForcingState| {
                let mut v = state_json(s);
                v["stalled"] = json!(s.blue() != all);
                v
            };
            let explored = match goal {
                Some(goal) => Some(
                    rl_explore(g, b0, goal, &mut ctx.budget)?
                        .iter()
                        .map(terminal)
                        .collect::<Vec<_>>(),
                ),
                None => None,
            };
            let stalled_exists = explored
                .as_ref()
                .map(|states| states.iter().any(|s| s["stalled"] == json!(true)));
            Ok(Outcome::ok(json!({
                "rule": "rl",
                "initial": b0,
                "steps": steps,
                "blue": s.blue(),
                "active": s.active(),
                "forcing_set": s.blue() == all,
                "chains": extract_chain_set(&s),
                "states": explored,
                "stalled_state_exists": stalled_exists,
            })))
        }
    }
}

fn parse_goal(g: &Graph, goal: &str) -> Result<Option<Goal>, Failure> {
    match goal {
        "none" => Ok(None),
        "maximal" => Ok(Some(Goal::Maximal)),
        other => {
            let Some(list) = other.strip_prefix("active:") else {
                return Err(Failure::Input(format!(
                    "--goal: expected maximal, none or active:LIST, got '{other}'"
                )));
            };
            let vs: Vec<usize> = list
                .split(',')
                .map(|v| v.trim().parse().map_err(|e| Failure::Input(format!("--goal: '{v}': {e}"))))
                .collect::<Result<_, _>>()?;
            Ok(Some(Goal::Active(vertex_set(g, "goal", &vs)?)))
        }
    }
}

fn labeling(g: &Graph, alpha: &[usize], beta: &[usize]) -> Result<Labeling, Failure> {
    Ok(Labeling::new(vertex_set(g, "alpha", alpha)?, vertex_set(g, "beta", beta)?)?)
}

fn certify(
    ctx: &mut Context,
    property: Property,
    paths: Option<&str>,
    alpha: &[usize],
    beta: &[usize],
) -> Result<Outcome, Failure> {
    let g = required(&ctx.graph)?;
    if property == Property::TwoParallelPaths {
        let holds = is_two_parallel_paths(g, &mut ctx.budget)?;
        return Ok(Outcome::ok(json!({"property": property, "holds": holds})));
    }
    let text = paths.ok_or_else(|| Failure::Input(format!("--paths is required for {property:?}")))?;
    let p = Linkage::new(g, parse_paths(text)?)?;
    let holds = match property {
        Property::Unique => is_unique_linkage(g, &p, &mut ctx.budget)?,
        Property::Vital => is_vital(g, &p, &mut ctx.budget)?,
        Property::Rigid => is_rigid(g, &p, &labeling(g, alpha, beta)?, &mut ctx.budget)?,
        Property::RigidShortest => is_rigid_shortest(g, &p, &labeling(g, alpha, beta)?, &mut ctx.budget)?,
        Property::XMinor => has_x_minor(g, &p, &labeling(g, alpha, beta)?)?,
        Property::TwoParallelPaths => unreachable!(),
    };
    Ok(Outcome::ok(json!({"property": property, "linkage": p, "holds": holds})))
}

fn load_matrix(path: &std::path::Path) -> Result<SymMatrix, Failure> {
    let file: MatrixFile = serde_json::from_str(&read(path)?)?;
    Ok(SymMatrix::try_from(file)?)
}

fn det_expand(
    ctx: &mut Context,
    alpha: &[usize],
    beta: &[usize],
    matrix: Option<&std::path::Path>,
) -> Result<Outcome, Failure> {
    let g = required(&ctx.graph)?;
    let a_set = vertex_set(g, "alpha", alpha)?;
    let b_set = vertex_set(g, "beta", beta)?;
    let (a, matrix_seed) = match matrix {
        Some(path) => (load_matrix(path)?, None),
        None => {
            let s = matrix_seeds(ctx.seed, 1)[0];
            (sample_matrix(g, s), Some(s))
        }
    };
    let expansion = cycledet(&a, g, a_set, b_set, &mut ctx.budget)?;
    let elimination = minor_det(&a, a_set, b_set)?;
    let agree = expansion == elimination;
    Ok(Outcome {
        violated: !agree,
        result: json!({
            "alpha": a_set,
            "beta": b_set,
            "matrix_seed": matrix_seed,
            "matrix": a.to_file(),
            "expansion": expansion.to_string(),
            "elimination": elimination.to_string(),
            "agree": agree,
        }),
    })
}

fn spectra(config: &RunConfig, ctx: &mut Context, matrix: Option<&std::path::Path>) -> Result<Outcome, Failure> {
    let tk = config
        .family
        .as_deref()
        .filter(|_| config.graph.is_none())
        .map(str::parse::<FamilySpec>)
        .transpose()?
        .and_then(|f| match f {
            FamilySpec::Tk(k) => Some(k),
            _ => None,
        });
    let (source, a) = match (matrix, tk) {
        (Some(path), _) => ("matrix-file", load_matrix(path)?),
        (None, Some(k)) => ("tk-e-matrix", fixtures::tk_e_matrix(k)),
        (None, None) => ("adjacency", adjacency(required(&ctx.graph)?)),
    };
    let report = spectrum(&a, ctx.tol)?;
    let mut result = json!({"matrix": source, "spectrum": report});
    let mut violated = false;
    if let (None, Some(k)) = (matrix, tk) {
        let tk_report = tk_relation_check(k, ctx.tol)?;
        violated = !tk_report.list_ok || tk_report.relation_ok == Some(false);
        result["tk"] = json!(tk_report);
    }
    Ok(Outcome { result, violated })
}

fn verify_bounds(ctx: &mut Context, t: usize, use_rsl: bool, seeds: usize) -> Result<Outcome, Failure> {
    let g = required(&ctx.graph)?;
    let extremal = if use_rsl {
        rigid_shortest_linkage_number(g, t, &mut ctx.budget)?
    } else {
        rigid_linkage_number(g, t, &mut ctx.budget)?
    };
    // the nullity and multiplicity bounds need a rigid linkage, which an RSL witness need not be
    let rigid = if use_rsl {
        rigid_linkage_number(g, t, &mut ctx.budget)?
    } else {
        extremal.clone()
    };
    let witness = rigid
        .witness
        .as_ref()
        .map(|w| Linkage::new(g, w.paths.clone()).map(|p| (p, w.labeling())))
        .transpose()?;
    let mut checks = Vec::new();
    let mut failures = 0;
    let mut inconclusive = 0;
    for s in matrix_seeds(ctx.seed, seeds) {
        let a = sample_matrix(g, s);
        let entry = (|| -> Result<Value, SpectralError> {
            let q = verify_q_bounds(g, &a, t, use_rsl, ctx.tol, &mut ctx.budget)?;
            let mut ok = q.holds && q.q_holds;
            let mut entry = json!({"seed": s, "q_bounds": q});
            if let Some((p, lab)) = &witness {
                let n = verify_nullity_bound(&a, g, p, lab, ctx.tol, &mut ctx.budget)?;
                let m = verify_multiplicity_bound(&a, g, p, lab, ctx.tol, &mut ctx.budget)?;
                ok &= n.holds && m.holds;
                entry["nullity"] = json!(n);
                entry["multiplicity"] = json!(m);
            }
            entry["pass"] = json!(ok);
            Ok(entry)
        })();
        match entry {
            Ok(e) => {
                if e["pass"] == json!(false) {
                    failures += 1;
                }
                checks.push(e);
            }
            Err(e @ SpectralError::ClusteringAmbiguous { .. }) => {
                inconclusive += 1;
                checks.push(json!({"seed": s, "inconclusive": e.to_string()}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome {
        violated: failures > 0,
        result: json!({
            "t": t,
            "use_rsl": use_rsl,
            "linkage_number": Certificate::new(format!("{}({t})", if use_rsl { "RSL" } else { "RL" }), &extremal),
            "matrices": seeds,
            "failures": failures,
            "inconclusive": inconclusive,
            "all_pass": failures == 0 && inconclusive == 0,
            "checks": checks,
        }),
    })
}

fn families(action: &FamiliesAction) -> Result<Outcome, Failure> {
    match action {
        FamiliesAction::List => Ok(Outcome::ok(json!(catalog()))),
        FamiliesAction::Show { spec } => {
            let f: FamilySpec = spec.parse()?;
            let g = f.build()?;
            Ok(Outcome::ok(json!({
                "family": f,
                "order": g.order(),
                "graph": GraphFile::from(&g),
            })))
        }
    }
}
