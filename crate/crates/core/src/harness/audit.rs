use serde::{Deserialize, Serialize};

use super::campaign::{find_bob_wins, Campaign, Filters, GraphSource};
use super::chain::{verify_theorem_chain, ChainLink};
use super::shrink::{
    is_locally_minimal, shrink_instance, verify_reduction_lemma, LemmaFailure, LemmaOutcome,
    Openings, ShrinkOptions,
};
use super::weights::WeightSet;
use super::HarnessError;
use crate::graph6::to_graph6;
use crate::patterns::CoronaMatch;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaFalsification {
    pub graph6: String,
    pub weights: Vec<u64>,
    pub failures: Vec<LemmaFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainFalsification {
    pub graph6: String,
    pub weights: Vec<u64>,
    pub failures: Vec<(ChainLink, String)>,
}

/// A minimal even-order Bob win and the corona the chain produced for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalInstance {
    pub graph6: String,
    pub weights: Vec<u64>,
    pub corona: Option<CoronaMatch>,
}

/// Outcome of checking the pair-removal lemma and the proof chain on every
/// `{0,1}` Bob win up to some order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainAudit {
    pub max_order: usize,
    pub bob_wins: u64,
    pub lemma_checked: u64,
    pub lemma_pairs: u64,
    pub lemma_inapplicable: u64,
    pub lemma_falsifications: Vec<LemmaFalsification>,
    pub even_bob_wins: u64,
    pub minimal: Vec<MinimalInstance>,
    /// Even Bob wins shrunk by pair removal and rechecked.
    pub shrunk: u64,
    pub chain_falsifications: Vec<ChainFalsification>,
    pub bipartite_even_graphs: u64,
    pub bipartite_even_bob_wins: u64,
}

impl ChainAudit {
    /// Any failed lemma instance, failed chain link or bipartite even Bob win.
    pub fn falsified(&self) -> bool {
        !self.lemma_falsifications.is_empty()
            || !self.chain_falsifications.is_empty()
            || self.bipartite_even_bob_wins > 0
    }
}

/// Runs the `{0,1}` campaign on connected graphs of order `1..=max_order`,
/// checks the lemma on every Bob win and the chain on every minimal
/// even-order one and on the result of shrinking each even-order one.
pub fn audit_theorem_chain(
    max_order: usize,
    workers: Option<usize>,
) -> Result<ChainAudit, HarnessError> {
    let campaign = |filters| {
        find_bob_wins(
            &Campaign::new(
                "theorem-chain",
                GraphSource::Enumerated {
                    min_order: 1,
                    max_order,
                },
                WeightSet::binary(),
            )
            .with_filters(filters)
            .with_workers(workers),
        )
    };
    let all = campaign(Filters::default())?;
    let mut audit = ChainAudit {
        max_order,
        bob_wins: all.rows.len() as u64,
        lemma_checked: 0,
        lemma_pairs: 0,
        lemma_inapplicable: 0,
        lemma_falsifications: Vec::new(),
        even_bob_wins: 0,
        minimal: Vec::new(),
        shrunk: 0,
        chain_falsifications: Vec::new(),
        bipartite_even_graphs: 0,
        bipartite_even_bob_wins: 0,
    };
    for row in &all.rows {
        let g = row.graph().map_err(HarnessError::Precondition)?;
        match verify_reduction_lemma(&g, Openings::Optimal)? {
            LemmaOutcome::Holds { pairs } => {
                audit.lemma_checked += 1;
                audit.lemma_pairs += pairs as u64;
            }
            LemmaOutcome::Inapplicable => audit.lemma_inapplicable += 1,
            LemmaOutcome::Falsified { failures } => {
                audit.lemma_falsifications.push(LemmaFalsification {
                    graph6: row.graph6.clone(),
                    weights: row.weights.clone(),
                    failures,
                })
            }
        }
        if g.order() % 2 != 0 {
            continue;
        }
        audit.even_bob_wins += 1;
        if is_locally_minimal(&g, ShrinkOptions::pairs_only())? {
            let v = verify_theorem_chain(&g)?;
            if v.holds() {
                audit.minimal.push(MinimalInstance {
                    graph6: row.graph6.clone(),
                    weights: row.weights.clone(),
                    corona: v.corona,
                });
            } else {
                audit.chain_falsifications.push(ChainFalsification {
                    graph6: row.graph6.clone(),
                    weights: row.weights.clone(),
                    failures: v.failures(),
                });
            }
        }
        let out = shrink_instance(&g, ShrinkOptions::pairs_only())?;
        audit.shrunk += 1;
        let v = verify_theorem_chain(&out.graph)?;
        if !v.holds() {
            audit.chain_falsifications.push(ChainFalsification {
                graph6: to_graph6(&out.graph),
                weights: out.graph.weights().to_vec(),
                failures: v.failures(),
            });
        }
    }
    let bipartite = campaign(Filters {
        even_only: true,
        bipartite_only: true,
        ..Filters::default()
    })?;
    audit.bipartite_even_graphs = bipartite.header.totals.graphs;
    audit.bipartite_even_bob_wins = bipartite.header.totals.bob_wins;
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_audit_is_clean() {
        let a = audit_theorem_chain(6, Some(1)).unwrap();
        assert!(!a.falsified(), "{a:?}");
        assert!(a.bob_wins > 0);
        assert_eq!(a.shrunk, a.even_bob_wins);
        assert!(a.minimal.iter().all(|m| m.corona.is_some()));
    }
}
