//! Constructors and exact detectors for the structures that decide the game
//! in small cases: induced odd cycles, odd coronas (an odd cycle with one
//! pendant leaf per cycle vertex) and the hub family `D`.
//!
//! Every witness a detector returns has already been re-checked against its
//! own definition by an independent verifier on the host graph.

mod corona;
mod cycle;
mod family_d;
mod induced;

use std::cell::Cell;

use thiserror::Error;

pub use corona::{build_corona, find_corona_odd, CoronaMatch};
pub use cycle::{find_induced_odd_cycle, for_each_induced_cycle, is_induced_cycle};
pub use family_d::{
    build_d_member, d_member_count, d_optional_edges, find_induced_d, find_induced_d_up_to, DMatch,
    DWeighting,
};
pub use induced::{are_isomorphic, find_induced_subgraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("cycle length {0} must be odd and at least 3")]
    InvalidCycleLength(usize),
    #[error("optional edge mask {mask:#b} has bits outside the {available} chords available for r = {r}")]
    InvalidOptionalEdges {
        r: usize,
        mask: u32,
        available: usize,
    },
    #[error("pattern needs {0} vertices, more than the supported maximum")]
    TooLarge(usize),
}

/// Node limit for the exponential searches. Running out is reported as
/// [`PatternError::BudgetExceeded`], never as "not found".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const fn new(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    pub const UNLIMITED: Budget = Budget {
        max_nodes: u64::MAX,
    };
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(50_000_000)
    }
}

#[derive(Debug)]
pub(crate) struct Meter {
    used: Cell<u64>,
    limit: u64,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter {
            used: Cell::new(0),
            limit: budget.max_nodes,
        }
    }

    #[inline]
    pub(crate) fn tick(&self) -> Result<(), PatternError> {
        let used = self.used.get() + 1;
        self.used.set(used);
        if used > self.limit {
            Err(PatternError::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}
