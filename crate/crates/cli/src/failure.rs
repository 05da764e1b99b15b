use rllab_core::families::{FamilyError, ReplayError};
use rllab_core::forcing::ForcingError;
use rllab_core::graph::GraphError;
use rllab_core::linkage::LinkageError;
use rllab_core::spectral::SpectralError;
use rllab_core::structure::StructureError;
use thiserror::Error;

use crate::{EXIT_BUDGET, EXIT_INPUT};

/// Why a command produced no result.
#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Budget(_) => EXIT_BUDGET,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Failure::Input(_) => "input-error",
            Failure::Budget(_) => "budget-exhausted",
        }
    }

    fn classify(budget: bool, message: String) -> Self {
        if budget {
            Failure::Budget(message)
        } else {
            Failure::Input(message)
        }
    }
}

fn linkage_budget(e: &LinkageError) -> bool {
    matches!(e, LinkageError::Budget(_))
}

fn forcing_budget(e: &ForcingError) -> bool {
    match e {
        ForcingError::Budget(_) => true,
        ForcingError::Linkage(l) => linkage_budget(l),
        _ => false,
    }
}

fn spectral_budget(e: &SpectralError) -> bool {
    match e {
        SpectralError::Budget(_) => true,
        SpectralError::Linkage(l) => linkage_budget(l),
        _ => false,
    }
}

fn structure_budget(e: &StructureError) -> bool {
    match e {
        StructureError::Linkage(l) => linkage_budget(l),
        StructureError::Forcing(f) => forcing_budget(f),
        _ => false,
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<LinkageError> for Failure {
    fn from(e: LinkageError) -> Self {
        Failure::classify(linkage_budget(&e), e.to_string())
    }
}

impl From<ForcingError> for Failure {
    fn from(e: ForcingError) -> Self {
        Failure::classify(forcing_budget(&e), e.to_string())
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        Failure::classify(spectral_budget(&e), e.to_string())
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        Failure::classify(structure_budget(&e), e.to_string())
    }
}

impl From<ReplayError> for Failure {
    fn from(e: ReplayError) -> Self {
        let budget = match &e {
            ReplayError::Family(_) => false,
            ReplayError::Linkage(l) => linkage_budget(l),
            ReplayError::Forcing(f) => forcing_budget(f),
            ReplayError::Spectral(s) => spectral_budget(s),
        };
        Failure::classify(budget, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}
