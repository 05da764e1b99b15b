use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rllab_core::spectral::DEFAULT_TOL;
use serde::{Deserialize, Serialize};

/// Everything needed to reproduce one run. Reports embed it verbatim.
#[derive(Parser, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[command(name = "rllab", version, about = "Rigid linkages, RL-forcing and multiplicity bounds")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Graph file, JSON `{"n":..,"edges":[[i,j],..]}` or an edge list.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Named family such as `paw`, `cycle:6` or `hypercube:3`. For
    /// `verify-all` this filters the corpus instead.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Search-node budget; falls back to RLLAB_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Seed of the generator every random matrix is drawn from.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Run a forcing process and trace it.
    Force {
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(long, value_delimiter = ',', required = true)]
        initial: Vec<usize>,
        /// `maximal` (every terminal state), `active:1,2` (states with that
        /// active set) or `none`. Only used by the RL rule.
        #[arg(long, default_value = "maximal")]
        goal: String,
    },
    /// Decide a property of a linkage or of the graph.
    Certify {
        #[arg(long, value_enum)]
        property: Property,
        /// Paths as `1-2-3;4-5`.
        #[arg(long)]
        paths: Option<String>,
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        beta: Vec<usize>,
    },
    /// RL(t) with a witness.
    RlNumber {
        #[arg(long)]
        t: usize,
    },
    /// RSL(t) with a witness.
    RslNumber {
        #[arg(long)]
        t: usize,
    },
    /// Z(G), or Z_RL(G) with `--rule rl`.
    ZNumber {
        #[arg(long, value_enum, default_value_t = Rule::Z)]
        rule: Rule,
    },
    /// det A(alpha, beta) by the linear-subgraph expansion and by elimination.
    DetExpand {
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<usize>,
        /// Matrix file; a seeded matrix in S(G) is drawn when absent.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Clustered spectrum of a matrix file, of the T_k E-matrix, or of the adjacency matrix.
    Spectra {
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Check the multiplicity bounds on seeded matrices in S(G).
    VerifyBounds {
        #[arg(long)]
        t: usize,
        /// Compare against RSL(t) instead of RL(t).
        #[arg(long)]
        rsl: bool,
        #[arg(long, default_value_t = 20)]
        seeds: usize,
    },
    /// Exact treewidth with a tree decomposition.
    Treewidth,
    /// The family catalog.
    Families {
        #[command(subcommand)]
        action: FamiliesAction,
    },
    /// Replay the fixture corpus and a property sweep over small graphs.
    VerifyAll {
        /// Replace the built-in corpus with records from this JSON file.
        #[arg(long, hide = true)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        skip_properties: bool,
    },
    /// Re-run the configuration embedded in a report.
    Rerun { report: PathBuf },
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum FamiliesAction {
    List,
    Show { spec: String },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Z,
    Rl,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Rigid,
    Unique,
    Vital,
    RigidShortest,
    TwoParallelPaths,
    XMinor,
}

impl Command {
    pub fn needs_graph(&self) -> bool {
        !matches!(
            self,
            Command::Families { .. } | Command::VerifyAll { .. } | Command::Rerun { .. }
        ) && !matches!(self, Command::Spectra { matrix: Some(_) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsed_configs_survive_json() {
        for args in [
            &["rllab", "force", "--rule", "rl", "--family", "paw", "--initial", "2,3"][..],
            &["rllab", "verify-bounds", "--t", "2", "--rsl", "--graph", "g.json", "--seed", "9"],
            &["rllab", "families", "show", "hk:3"],
            &["rllab", "treewidth", "--family", "cycle:5", "--budget", "10"],
        ] {
            let c = RunConfig::try_parse_from(args).unwrap();
            let back: RunConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn graph_free_commands() {
        let c = RunConfig::try_parse_from(["rllab", "spectra", "--matrix", "m.json"]).unwrap();
        assert!(!c.command.needs_graph());
        let c = RunConfig::try_parse_from(["rllab", "spectra"]).unwrap();
        assert!(c.command.needs_graph());
    }
}
