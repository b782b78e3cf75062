use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::graph::{non_cutvertices, WeightedGraph};
use crate::solver::Solver;
use crate::vertex_set::VertexSet;

/// Which Alice openings the pair-removal step considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Openings {
    /// Only value-maximising openings.
    #[default]
    Optimal,
    /// Every legal opening. The pair argument holds for any opening, and
    /// this is the notion of minimality the proof chain relies on.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShrinkOptions {
    pub openings: Openings,
    /// Also try deleting one non-cutvertex at a time. This changes the
    /// parity of the order.
    pub single_deletion: bool,
}

impl Default for ShrinkOptions {
    fn default() -> Self {
        ShrinkOptions {
            openings: Openings::Optimal,
            single_deletion: true,
        }
    }
}

impl ShrinkOptions {
    /// Pair removals after any opening, no single deletions: keeps the order
    /// even and stops exactly at instances minimal in the proof's sense.
    pub fn pairs_only() -> Self {
        ShrinkOptions {
            openings: Openings::All,
            single_deletion: false,
        }
    }
}

/// One accepted reduction, in the vertex ids of the original instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShrinkStep {
    Pair { u: usize, v: usize },
    Single { v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrinkOutcome {
    pub graph: WeightedGraph,
    /// `original_ids[i]` is the id in the input of vertex `i` of `graph`.
    pub original_ids: Vec<usize>,
    pub steps: Vec<ShrinkStep>,
    pub diff_value: i64,
}

/// A qualifying pair whose removal did not leave a Bob win.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaFailure {
    pub u: usize,
    pub v: usize,
    pub diff_after: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum LemmaOutcome {
    /// Every qualifying pair reduced to a Bob win.
    Holds { pairs: usize },
    /// No qualifying pair exists.
    Inapplicable,
    /// Falsification: qualifying pairs that reduced to an Alice win.
    Falsified { failures: Vec<LemmaFailure> },
}

/// Pairs `(u, v)`: `u` a considered Alice opening, `v` an optimal Bob reply
/// to it, `w(u) >= w(v)`. Sorted.
pub fn qualifying_pairs(
    g: &WeightedGraph,
    openings: Openings,
) -> Result<Vec<(usize, usize)>, HarnessError> {
    let mut solver = Solver::new(g.clone());
    let all = g.vertices();
    let mut pairs = Vec::new();
    for first in solver.evaluate_moves(all)? {
        if openings == Openings::Optimal && !first.optimal {
            continue;
        }
        let u = first.vertex;
        let rest = all.without(u);
        if rest.is_empty() {
            continue;
        }
        for reply in solver.evaluate_moves(rest)? {
            if reply.optimal && g.weight(u) >= g.weight(reply.vertex) {
                pairs.push((u, reply.vertex));
            }
        }
    }
    Ok(pairs)
}

fn require_bob_win(g: &WeightedGraph) -> Result<i64, HarnessError> {
    let d = Solver::new(g.clone()).solve_diff(g.vertices())?;
    if d >= 0 {
        return Err(HarnessError::Precondition(format!(
            "instance is an Alice win (difference value {d})"
        )));
    }
    Ok(d)
}

/// Solves the subgraph induced on `keep` from scratch.
fn fresh_diff(g: &WeightedGraph, keep: VertexSet) -> Result<i64, HarnessError> {
    let (sub, _) = g.induced(keep);
    Ok(Solver::new(sub).solve_diff(VertexSet::full(keep.len()))?)
}

/// Checks the pair-removal argument on a Bob-win instance by solving each
/// reduced instance independently.
pub fn verify_reduction_lemma(
    g: &WeightedGraph,
    openings: Openings,
) -> Result<LemmaOutcome, HarnessError> {
    require_bob_win(g)?;
    let pairs = qualifying_pairs(g, openings)?;
    if pairs.is_empty() {
        return Ok(LemmaOutcome::Inapplicable);
    }
    let mut failures = Vec::new();
    for &(u, v) in &pairs {
        let d = fresh_diff(g, g.vertices().without(u).without(v))?;
        if d >= 0 {
            failures.push(LemmaFailure {
                u,
                v,
                diff_after: d,
            });
        }
    }
    Ok(if failures.is_empty() {
        LemmaOutcome::Holds { pairs: pairs.len() }
    } else {
        LemmaOutcome::Falsified { failures }
    })
}

/// Candidate reductions in the order they are tried: pairs first, then
/// single deletions, each ascending.
fn candidates(g: &WeightedGraph, options: ShrinkOptions) -> Result<Vec<ShrinkStep>, HarnessError> {
    let mut steps: Vec<ShrinkStep> = qualifying_pairs(g, options.openings)?
        .into_iter()
        .map(|(u, v)| ShrinkStep::Pair { u, v })
        .collect();
    if options.single_deletion && g.order() > 1 {
        let removable = non_cutvertices(g, g.vertices()).expect("instance is connected");
        steps.extend(removable.iter().map(|v| ShrinkStep::Single { v }));
    }
    Ok(steps)
}

fn removed(step: ShrinkStep) -> VertexSet {
    match step {
        ShrinkStep::Pair { u, v } => VertexSet::singleton(u).with(v),
        ShrinkStep::Single { v } => VertexSet::singleton(v),
    }
}

/// The first reduction that keeps Bob winning, with the reduced value.
fn first_step(
    g: &WeightedGraph,
    options: ShrinkOptions,
) -> Result<Option<(ShrinkStep, i64)>, HarnessError> {
    for step in candidates(g, options)? {
        let keep = g.vertices().difference(removed(step));
        if keep.is_empty() {
            continue;
        }
        let d = fresh_diff(g, keep)?;
        if d < 0 {
            return Ok(Some((step, d)));
        }
    }
    Ok(None)
}

/// Whether no reduction allowed by `options` keeps Bob winning.
pub fn is_locally_minimal(g: &WeightedGraph, options: ShrinkOptions) -> Result<bool, HarnessError> {
    require_bob_win(g)?;
    Ok(first_step(g, options)?.is_none())
}

/// Applies reductions while Bob keeps winning, re-solving every
/// intermediate instance, until none applies.
pub fn shrink_instance(
    g: &WeightedGraph,
    options: ShrinkOptions,
) -> Result<ShrinkOutcome, HarnessError> {
    let mut diff_value = require_bob_win(g)?;
    let mut current = g.clone();
    let mut ids: Vec<usize> = (0..g.order()).collect();
    let mut steps = Vec::new();
    while let Some((step, d)) = first_step(&current, options)? {
        let keep = current.vertices().difference(removed(step));
        steps.push(match step {
            ShrinkStep::Pair { u, v } => ShrinkStep::Pair {
                u: ids[u],
                v: ids[v],
            },
            ShrinkStep::Single { v } => ShrinkStep::Single { v: ids[v] },
        });
        let (next, local) = current.induced(keep);
        ids = local.into_iter().map(|i| ids[i]).collect();
        current = next;
        diff_value = d;
    }
    Ok(ShrinkOutcome {
        graph: current,
        original_ids: ids,
        steps,
        diff_value,
    })
}
