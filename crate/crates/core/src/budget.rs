use crate::error::{Error, Result};

/// Node counter that turns runaway searches into explicit errors.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    what: &'static str,
    limit: u64,
    used: u64,
}

impl SearchBudget {
    pub fn new(what: &'static str, limit: u64) -> Self {
        Self { what, limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Charges one node.
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded { what: self.what, explored: self.used });
        }
        Ok(())
    }
}
