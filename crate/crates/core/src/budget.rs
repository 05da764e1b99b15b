//! Search-node budgets for the exponential searches.

use std::env;

use thiserror::Error;

/// Default number of search nodes a single query may expand.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Environment variable that overrides [`DEFAULT_NODE_BUDGET`].
pub const BUDGET_ENV: &str = "RLLAB_BUDGET";

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("combinatorial budget of {limit} search nodes exhausted")]
pub struct BudgetExceeded {
    pub limit: u64,
}

/// A countdown of search nodes shared by the calls that make up one query.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// [`DEFAULT_NODE_BUDGET`], or the value of `RLLAB_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let limit = env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&l| l > 0)
            .unwrap_or(DEFAULT_NODE_BUDGET);
        Budget::new(limit)
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.used += 1;
        if self.used > self.limit {
            Err(BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}
