use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::cycle::{induced_cycles, is_induced_cycle};
use super::{Budget, Meter, PatternError};
use crate::graph::WeightedGraph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// An induced copy of `C_r ∘ K_1`: `cycle[i]` carries the pendant leaf
/// `pendants[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoronaMatch {
    pub r: usize,
    pub cycle: Vec<usize>,
    pub pendants: Vec<usize>,
}

impl CoronaMatch {
    /// Checks the witness against `g` directly: odd `r >= 3`, `2r` distinct
    /// vertices, the cycle is induced, and each pendant sees exactly its own
    /// cycle vertex among the matched vertices.
    pub fn verify(&self, g: &WeightedGraph) -> bool {
        let r = self.r;
        if r < 3 || r % 2 == 0 || self.cycle.len() != r || self.pendants.len() != r {
            return false;
        }
        if self.pendants.iter().any(|&y| y >= g.order()) || !is_induced_cycle(g, &self.cycle) {
            return false;
        }
        let all: VertexSet = self.cycle.iter().chain(&self.pendants).copied().collect();
        if all.len() != 2 * r {
            return false;
        }
        self.pendants
            .iter()
            .zip(&self.cycle)
            .all(|(&y, &x)| g.neighbors(y).intersection(all) == VertexSet::singleton(x))
    }

    pub fn vertices(&self) -> VertexSet {
        self.cycle.iter().chain(&self.pendants).copied().collect()
    }
}

/// The corona of `C_r` and a point: cycle `0..r`, pendant `r + i` on `i`.
pub fn build_corona(r: usize) -> Result<WeightedGraph, PatternError> {
    if r < 3 || r % 2 == 0 {
        return Err(PatternError::InvalidCycleLength(r));
    }
    if 2 * r > MAX_VERTICES {
        return Err(PatternError::TooLarge(2 * r));
    }
    let mut edges: Vec<(usize, usize)> = (0..r).map(|i| (i, (i + 1) % r)).collect();
    edges.extend((0..r).map(|i| (i, r + i)));
    Ok(WeightedGraph::from_edges(2 * r, &edges, vec![0; 2 * r]).expect("corona is simple"))
}

/// Finds an induced member of the odd-corona family, trying shorter cycles
/// first. `Ok(None)` means the graph is free of the whole family.
pub fn find_corona_odd(
    g: &WeightedGraph,
    budget: Budget,
) -> Result<Option<CoronaMatch>, PatternError> {
    let meter = Meter::new(budget);
    let n = g.order();
    let mut r = 3;
    while 2 * r <= n {
        let found = induced_cycles(g, r, &meter, &mut |cycle: &[usize]| match assign_pendants(
            g, cycle, &meter,
        ) {
            Ok(Some(pendants)) => ControlFlow::Break(Ok(CoronaMatch {
                r,
                cycle: cycle.to_vec(),
                pendants,
            })),
            Ok(None) => ControlFlow::Continue(()),
            Err(e) => ControlFlow::Break(Err(e)),
        })?;
        if let Some(m) = found.transpose()? {
            assert!(m.verify(g), "corona witness failed verification: {m:?}");
            return Ok(Some(m));
        }
        r += 2;
    }
    Ok(None)
}

fn assign_pendants(
    g: &WeightedGraph,
    cycle: &[usize],
    meter: &Meter,
) -> Result<Option<Vec<usize>>, PatternError> {
    let on_cycle: VertexSet = cycle.iter().copied().collect();
    let candidates: Vec<VertexSet> = cycle
        .iter()
        .map(|&x| {
            let others = on_cycle.without(x);
            g.neighbors(x)
                .difference(on_cycle)
                .iter()
                .filter(|&y| g.neighbors(y).intersection(others).is_empty())
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut chosen = Vec::with_capacity(cycle.len());
    let ok = pick(
        g,
        &candidates,
        VertexSet::EMPTY,
        VertexSet::EMPTY,
        &mut chosen,
        meter,
    )?;
    Ok(ok.then_some(chosen))
}

/// Picks one candidate per slot, distinct and pairwise non-adjacent.
fn pick(
    g: &WeightedGraph,
    candidates: &[VertexSet],
    used: VertexSet,
    blocked: VertexSet,
    chosen: &mut Vec<usize>,
    meter: &Meter,
) -> Result<bool, PatternError> {
    let i = chosen.len();
    if i == candidates.len() {
        return Ok(true);
    }
    for y in candidates[i].difference(used).difference(blocked) {
        meter.tick()?;
        chosen.push(y);
        if pick(
            g,
            candidates,
            used.with(y),
            blocked.union(g.neighbors(y)),
            chosen,
            meter,
        )? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}
