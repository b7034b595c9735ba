use crate::error::{Error, Result};

/// Default search-node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Environment variable that overrides [`DEFAULT_NODE_BUDGET`].
pub const BUDGET_ENV: &str = "FRACBROOKS_NODE_BUDGET";

/// Counts search nodes and fails once the limit is passed.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
    what: &'static str,
}

impl Budget {
    pub fn new(limit: u64, what: &'static str) -> Self {
        Budget { limit, used: 0, what }
    }

    /// Budget from the environment override, or the default.
    pub fn from_env(what: &'static str) -> Self {
        Budget::new(default_limit(), what)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::budget(self.what, self.limit))
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

pub fn default_limit() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}
