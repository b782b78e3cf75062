//! Exact perfect play.
//!
//! Positions are identified by the set of remaining vertices alone. Both
//! players face the same maximisation, so the value stored for a set `S` is
//! the difference `D(S)` between what the player to move and the opponent
//! collect from `S` onwards under optimal play:
//!
//! ```text
//! D(∅) = 0
//! D(S) = max over legal v of  w(v) − D(S \ {v})
//! ```
//!
//! Alice's total on the whole graph is `(W + D(V)) / 2`, so she wins
//! (collects at least half) exactly when `D(V) >= 0`.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{articulation_points, is_connected, WeightedGraph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("remaining set {0:?} does not induce a connected subgraph")]
    Disconnected(VertexSet),
    #[error("remaining set {0:?} contains vertices outside the graph")]
    NotSubset(VertexSet),
    #[error("the game is over: no vertices remain")]
    Finished,
}

/// Result of solving one position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveResult {
    pub diff_value: i64,
    pub best_move: Option<usize>,
    pub pv: Vec<usize>,
}

/// Value of one candidate move for the player to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoveEval {
    pub vertex: usize,
    /// `w(vertex) − D(S \ {vertex})`.
    pub value_after: i64,
    pub optimal: bool,
}

/// Final totals of a perfectly played game from the full vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Outcome {
    pub alice_total: u64,
    pub bob_total: u64,
    pub diff_value: i64,
    pub alice_wins: bool,
}

/// Legal grabs from `remaining`: the vertices whose removal leaves the rest
/// connected. A single remaining vertex is always a legal grab.
pub fn legal_moves(g: &WeightedGraph, remaining: VertexSet) -> Result<VertexSet, SolveError> {
    validate(g, remaining)?;
    Ok(remaining.difference(articulation_points(g, remaining)))
}

fn validate(g: &WeightedGraph, remaining: VertexSet) -> Result<(), SolveError> {
    if !remaining.is_subset(g.vertices()) {
        return Err(SolveError::NotSubset(remaining));
    }
    if !is_connected(g, remaining) {
        return Err(SolveError::Disconnected(remaining));
    }
    Ok(())
}

/// Memoised solver over one graph. One context per thread; the graph itself
/// is shared.
#[derive(Debug, Clone)]
pub struct Solver {
    graph: Arc<WeightedGraph>,
    weights: Vec<i64>,
    memo: FxHashMap<u32, i64>,
}

impl Solver {
    pub fn new(graph: impl Into<Arc<WeightedGraph>>) -> Self {
        let graph = graph.into();
        let weights = graph.weights().iter().map(|&w| w as i64).collect();
        Solver {
            graph,
            weights,
            memo: FxHashMap::default(),
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<WeightedGraph> {
        Arc::clone(&self.graph)
    }

    /// Number of memoised positions.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Memoised positions and their values, in no particular order.
    pub fn memo_entries(&self) -> impl Iterator<Item = (VertexSet, i64)> + '_ {
        self.memo
            .iter()
            .map(|(&k, &v)| (VertexSet::from_bits(k), v))
    }

    pub fn solve_diff(&mut self, remaining: VertexSet) -> Result<i64, SolveError> {
        validate(&self.graph, remaining)?;
        Ok(self.diff(remaining.bits()))
    }

    fn diff(&mut self, s: u32) -> i64 {
        if s == 0 {
            return 0;
        }
        if let Some(&d) = self.memo.get(&s) {
            return d;
        }
        let set = VertexSet::from_bits(s);
        let moves = set.difference(articulation_points(&self.graph, set));
        let mut best = i64::MIN;
        for v in moves {
            let value = self.weights[v] - self.diff(s & !(1 << v));
            best = best.max(value);
        }
        self.memo.insert(s, best);
        best
    }

    /// One entry per legal move, sorted by vertex id.
    pub fn evaluate_moves(&mut self, remaining: VertexSet) -> Result<Vec<MoveEval>, SolveError> {
        let moves = legal_moves(&self.graph, remaining)?;
        if moves.is_empty() {
            return Err(SolveError::Finished);
        }
        let values: Vec<(usize, i64)> = moves
            .iter()
            .map(|v| (v, self.weights[v] - self.diff(remaining.without(v).bits())))
            .collect();
        let best = values.iter().map(|&(_, x)| x).max().expect("nonempty");
        Ok(values
            .into_iter()
            .map(|(vertex, value_after)| MoveEval {
                vertex,
                value_after,
                optimal: value_after == best,
            })
            .collect())
    }

    /// Lowest-id optimal move, or `None` when nothing remains.
    pub fn best_move(&mut self, remaining: VertexSet) -> Result<Option<usize>, SolveError> {
        if remaining.is_empty() {
            return Ok(None);
        }
        Ok(self
            .evaluate_moves(remaining)?
            .into_iter()
            .find(|e| e.optimal)
            .map(|e| e.vertex))
    }

    /// A full optimal playout from `remaining`, lowest id among optimal moves
    /// at every step.
    pub fn principal_variation_from(
        &mut self,
        remaining: VertexSet,
    ) -> Result<Vec<usize>, SolveError> {
        validate(&self.graph, remaining)?;
        let mut pv = Vec::with_capacity(remaining.len());
        let mut s = remaining;
        while let Some(v) = self.best_move(s)? {
            pv.push(v);
            s.remove(v);
        }
        Ok(pv)
    }

    pub fn solve(&mut self, remaining: VertexSet) -> Result<SolveResult, SolveError> {
        let diff_value = self.solve_diff(remaining)?;
        let pv = self.principal_variation_from(remaining)?;
        Ok(SolveResult {
            diff_value,
            best_move: pv.first().copied(),
            pv,
        })
    }

    /// Totals from the full vertex set with Alice moving first.
    pub fn outcome(&mut self) -> Result<Outcome, SolveError> {
        let d = self.solve_diff(self.graph.vertices())?;
        Ok(outcome_from_diff(self.graph.total_weight(), d))
    }
}

/// Splits `W` given `D = alice − bob`: `2·alice = W + D`.
pub fn outcome_from_diff(total: u64, diff_value: i64) -> Outcome {
    let twice_alice = total as i128 + diff_value as i128;
    debug_assert!(twice_alice >= 0 && twice_alice % 2 == 0);
    let alice_total = (twice_alice / 2) as u64;
    Outcome {
        alice_total,
        bob_total: total - alice_total,
        diff_value,
        alice_wins: diff_value >= 0,
    }
}

pub fn solve_diff(g: &WeightedGraph, remaining: VertexSet) -> Result<i64, SolveError> {
    Solver::new(g.clone()).solve_diff(remaining)
}

/// Alice's and Bob's totals under perfect play on a connected graph.
pub fn alice_outcome(g: &WeightedGraph) -> Result<Outcome, SolveError> {
    Solver::new(g.clone()).outcome()
}

pub fn evaluate_moves(
    g: &WeightedGraph,
    remaining: VertexSet,
) -> Result<Vec<MoveEval>, SolveError> {
    Solver::new(g.clone()).evaluate_moves(remaining)
}

pub fn principal_variation(g: &WeightedGraph) -> Result<Vec<usize>, SolveError> {
    Solver::new(g.clone()).principal_variation_from(g.vertices())
}
