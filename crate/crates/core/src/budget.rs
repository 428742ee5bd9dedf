use crate::error::{Error, Result};

/// Node-expansion allowance for the backtracking searches.
///
/// The pattern and cycle searches are exact and can in principle visit an
/// exponential number of partial embeddings. Instead of an implicit timeout
/// they charge every expansion against this budget and abort with
/// [`Error::BudgetExhausted`] when it runs dry, so a caller always knows
/// whether an answer is exact or the search was cut short.
#[derive(Debug, Clone, Copy)]
pub struct WorkBudget {
    remaining: u64,
}

/// Generous default: far more than the desk-scale graphs here ever need,
/// small enough to stop a pathological input within seconds.
pub const DEFAULT_WORK_BUDGET: u64 = 50_000_000;

impl WorkBudget {
    pub fn new(limit: u64) -> Self {
        WorkBudget { remaining: limit }
    }

    pub fn unlimited() -> Self {
        WorkBudget {
            remaining: u64::MAX,
        }
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    /// Charge one node expansion.
    pub fn spend(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::BudgetExhausted);
        }
        self.remaining -= 1;
        Ok(())
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget::new(DEFAULT_WORK_BUDGET)
    }
}
