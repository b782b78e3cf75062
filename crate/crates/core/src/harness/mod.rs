//! Desk-scale conjecture checks: weighting enumeration, Bob-win campaigns
//! with self-verifying reports, the pair-removal shrinker, the proof-chain
//! verifier and the certification records for the counterexample and the
//! family `D`.
//!
//! Weight search is bounded integer enumeration only. A campaign that finds
//! nothing says nothing about weightings outside its weight set.

mod audit;
mod campaign;
mod certify;
mod chain;
mod shrink;
mod weights;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::patterns::{
    find_corona_odd, find_induced_d, find_induced_odd_cycle, Budget, CoronaMatch, DMatch,
    PatternError,
};
use crate::solver::SolveError;

pub use audit::{
    audit_theorem_chain, ChainAudit, ChainFalsification, LemmaFalsification, MinimalInstance,
};
pub use campaign::{
    find_bob_wins, load_report, Campaign, Filters, GraphSource, LineError, OrderCounts, Report,
    ReportHeader, ReportRow, Sampling, Witnesses, INCOMPLETENESS_NOTE,
};
pub use certify::{
    certify_d_family, certify_fig1, DFamilyCertificate, DMemberVerdict, Fig1Certificate,
    Fig1Config, OrderSweep, MAX_D_CYCLE,
};
pub use chain::{verify_theorem_chain, ChainLink, ChainVerdict, LinkOutcome};
pub use shrink::{
    is_locally_minimal, qualifying_pairs, shrink_instance, verify_reduction_lemma, LemmaFailure,
    LemmaOutcome, Openings, ShrinkOptions, ShrinkOutcome, ShrinkStep,
};
pub use weights::{enumerate_weightings, sparse_weightings, WeightSet, Weightings};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{count} weightings exceed the budget of {budget}")]
    WeightBudget { count: u128, budget: u64 },
    #[error("weight set must be a nonempty list of non-negative integers: {0}")]
    WeightSet(String),
    #[error("cycle bound {0} must be odd and at least 3")]
    CycleBound(usize),
    #[error("cycle bound {0} exceeds the supported size")]
    CycleBoundTooLarge(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("report line {line}: {message}")]
    Report { line: usize, message: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Where an instance came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Generated,
    Ingested,
    Figure,
}

/// Structural and game verdicts of one weighted graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdicts {
    pub alice_wins: bool,
    pub bipartite: bool,
    pub codd_free: bool,
    pub d_free: bool,
}

impl Verdicts {
    pub fn compute(g: &WeightedGraph, budget: Budget) -> Result<Self, HarnessError> {
        let outcome = crate::solver::alice_outcome(g)?;
        let structure = Structure::compute(g, budget)?;
        Ok(structure.verdicts(outcome.alice_wins))
    }
}

/// A weighted graph with its origin and (optionally) recorded verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: WeightedGraph,
    pub provenance: Provenance,
    pub verdicts: Option<Verdicts>,
}

impl Instance {
    pub fn new(graph: WeightedGraph, provenance: Provenance) -> Self {
        Instance {
            graph,
            provenance,
            verdicts: None,
        }
    }

    pub fn with_verdicts(mut self, budget: Budget) -> Result<Self, HarnessError> {
        self.verdicts = Some(Verdicts::compute(&self.graph, budget)?);
        Ok(self)
    }

    /// Whether recorded verdicts (if any) match a fresh computation.
    pub fn check(&self, budget: Budget) -> Result<bool, HarnessError> {
        match self.verdicts {
            None => Ok(true),
            Some(v) => Ok(Verdicts::compute(&self.graph, budget)? == v),
        }
    }
}

/// Weight-independent facts about a graph, computed once per graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Structure {
    pub odd_cycle: Option<Vec<usize>>,
    pub corona: Option<CoronaMatch>,
    pub d_member: Option<DMatch>,
}

impl Structure {
    pub fn compute(g: &WeightedGraph, budget: Budget) -> Result<Self, PatternError> {
        let odd_cycle = find_induced_odd_cycle(g);
        let (corona, d_member) = if odd_cycle.is_some() {
            (find_corona_odd(g, budget)?, find_induced_d(g, budget)?)
        } else {
            (None, None)
        };
        Ok(Structure {
            odd_cycle,
            corona,
            d_member,
        })
    }

    pub fn verdicts(&self, alice_wins: bool) -> Verdicts {
        Verdicts {
            alice_wins,
            bipartite: self.odd_cycle.is_none(),
            codd_free: self.corona.is_none(),
            d_free: self.d_member.is_none(),
        }
    }
}
