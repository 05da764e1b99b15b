//! Command-line driver for `rllab-core`. `run` maps a [`RunConfig`] to an exit
//! code and a JSON report of the form `{config, status, result | error}`.

mod commands;
mod config;
mod failure;
mod verify;

use std::fs;
use std::path::Path;

use rllab_core::budget::Budget;
use rllab_core::families::FamilySpec;
use rllab_core::graph::{parse_graph, Graph};
use serde_json::{json, Value};

pub use config::{Command, FamiliesAction, Property, Rule, RunConfig};
pub use failure::Failure;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

/// A finished command: its JSON result and whether a bound it checked failed.
pub(crate) struct Outcome {
    pub result: Value,
    pub violated: bool,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome {
            result,
            violated: false,
        }
    }
}

/// Shared inputs of a command after validation.
pub(crate) struct Context {
    pub graph: Option<Graph>,
    pub budget: Budget,
    pub tol: f64,
    pub seed: u64,
}

pub(crate) fn required(graph: &Option<Graph>) -> Result<&Graph, Failure> {
    graph
        .as_ref()
        .ok_or_else(|| Failure::Input("this command needs --graph or --family".into()))
}

fn load_graph(config: &RunConfig) -> Result<Option<Graph>, Failure> {
    let graph_source = config.graph.is_some() || (config.family.is_some() && config.command.needs_graph());
    if !graph_source {
        return Ok(None);
    }
    match (&config.graph, &config.family) {
        (Some(_), Some(_)) => Err(Failure::Input("give exactly one of --graph and --family".into())),
        (Some(path), None) => Ok(Some(parse_graph(&read(path)?)?)),
        (None, Some(spec)) => Ok(Some(spec.parse::<FamilySpec>()?.build()?)),
        (None, None) => unreachable!(),
    }
}

pub(crate) fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn budget_limit(config: &RunConfig) -> Result<u64, Failure> {
    match config.budget {
        Some(0) => Err(Failure::Input("--budget must be positive".into())),
        Some(b) => Ok(b),
        None => Ok(Budget::from_env().limit()),
    }
}

fn execute(config: &RunConfig) -> Result<Outcome, Failure> {
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        return Err(Failure::Input("--tol must be a positive number".into()));
    }
    let graph = load_graph(config)?;
    if graph.is_none() && config.command.needs_graph() {
        return Err(Failure::Input("this command needs --graph or --family".into()));
    }
    let mut ctx = Context {
        graph,
        budget: Budget::new(budget_limit(config)?),
        tol: config.tol,
        seed: config.seed,
    };
    commands::dispatch(config, &mut ctx)
}

/// Runs `config` and returns the exit code with the report.
pub fn run(config: &RunConfig) -> (u8, Value) {
    if let Command::Rerun { report } = &config.command {
        return match rerun_config(report) {
            Ok(inner) => run(&inner),
            Err(f) => report_for(config, Err(f)),
        };
    }
    report_for(config, execute(config))
}

fn rerun_config(path: &Path) -> Result<RunConfig, Failure> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let embedded = value.get("config").cloned().unwrap_or(value);
    let inner: RunConfig = serde_json::from_value(embedded).map_err(|e| Failure::Input(e.to_string()))?;
    if matches!(inner.command, Command::Rerun { .. }) {
        return Err(Failure::Input("a rerun cannot embed another rerun".into()));
    }
    Ok(inner)
}

fn report_for(config: &RunConfig, outcome: Result<Outcome, Failure>) -> (u8, Value) {
    let budget = budget_limit(config).ok();
    match outcome {
        Ok(o) => {
            let (code, status) = if o.violated {
                (EXIT_VIOLATION, "violation")
            } else {
                (EXIT_OK, "ok")
            };
            let report = json!({
                "config": config,
                "budget_limit": budget,
                "status": status,
                "result": o.result,
            });
            (code, report)
        }
        Err(f) => {
            let report = json!({
                "config": config,
                "budget_limit": budget,
                "status": f.status(),
                "error": f.to_string(),
            });
            (f.exit_code(), report)
        }
    }
}

/// Report for arguments that could not be parsed into a [`RunConfig`].
pub fn usage_error(message: &str) -> Value {
    json!({
        "config": null,
        "status": Failure::Input(String::new()).status(),
        "error": message,
    })
}

#[cfg(test)]
mod tests {
    use clap::Parser;

    use super::*;

    fn config(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("rllab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn status_follows_exit_code() {
        let (code, r) = run(&config(&["z-number", "--family", "path:4"]));
        assert_eq!((code, &r["status"]), (EXIT_OK, &json!("ok")));
        assert_eq!(r["result"]["value"], 1);
        let (code, r) = run(&config(&["z-number", "--family", "path:0"]));
        assert_eq!((code, &r["status"]), (EXIT_INPUT, &json!("input-error")));
        let (code, r) = run(&config(&["rl-number", "--family", "whirl", "--t", "3", "--budget", "2"]));
        assert_eq!((code, &r["status"]), (EXIT_BUDGET, &json!("budget-exhausted")));
        assert!(r.get("result").is_none());
    }

    #[test]
    fn tolerance_must_be_positive() {
        let (code, _) = run(&config(&["spectra", "--family", "paw", "--tol", "0"]));
        assert_eq!(code, EXIT_INPUT);
    }
}
