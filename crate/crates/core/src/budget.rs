//! Wall-clock budget for long Gröbner runs.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Deadline carried through engine entry points. Exceeding it aborts the run
/// with `Error::BudgetExceeded`; a partial answer is never returned.
#[derive(Debug, Clone)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(secs: u64) -> Self {
        Budget { deadline: Some(Instant::now() + Duration::from_secs(secs)) }
    }

    pub fn duration(d: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + d) }
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(t) if Instant::now() > t => Err(Error::BudgetExceeded),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}
