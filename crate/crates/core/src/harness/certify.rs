use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::weights::sparse_weightings;
use super::HarnessError;
use crate::enumerate::connected_graphs;
use crate::graph::WeightedGraph;
use crate::graph6::to_graph6;
use crate::patterns::{
    build_d_member, d_member_count, find_corona_odd, find_induced_d_up_to, Budget, CoronaMatch,
    DMatch, DWeighting,
};
use crate::solver::Solver;
use crate::table::StateTable;

/// Largest cycle length [`certify_d_family`] accepts.
pub const MAX_D_CYCLE: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Fig1Config {
    /// Largest weight tried in the sweep; the instance must respect it too.
    pub weight_bound: u64,
    /// Most nonzero weights per weighting.
    pub max_nonzero: usize,
    /// Largest order swept.
    pub max_order: usize,
    /// Also sweep graphs of the instance's order with fewer edges.
    pub edge_minimality: bool,
}

impl Default for Fig1Config {
    fn default() -> Self {
        Fig1Config {
            weight_bound: 4,
            max_nonzero: 4,
            max_order: 7,
            edge_minimality: true,
        }
    }
}

/// Bounded-weight search over one class of connected `C_odd`-free graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderSweep {
    pub order: usize,
    /// Only graphs with fewer edges than this were swept, when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges_below: Option<usize>,
    pub graphs: u64,
    pub codd_free_graphs: u64,
    pub weightings: u64,
    pub bob_wins: u64,
    /// Smallest Bob win found (graph6, weights), if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<(String, Vec<u64>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Fig1Certificate {
    pub config: Fig1Config,
    pub order: usize,
    pub edges: usize,
    pub connected: bool,
    pub diff_value: Option<i64>,
    pub weights_within_bound: bool,
    pub corona: Option<CoronaMatch>,
    pub sweep: Vec<OrderSweep>,
    pub edge_sweep: Option<OrderSweep>,
    /// Bob wins the instance and its weights respect the configured bound.
    pub clause_bob_wins: bool,
    /// No induced member of `C_odd`.
    pub clause_codd_free: bool,
    /// Connected, order 8.
    pub clause_shape: bool,
    /// No even-order graph in the sweep admits a bounded Bob win.
    pub clause_minimal: bool,
    pub certified: bool,
    pub note: String,
}

impl Fig1Certificate {
    pub fn clauses(&self) -> [(&'static str, bool); 4] {
        [
            ("bob wins within the weight bound", self.clause_bob_wins),
            ("no induced odd corona", self.clause_codd_free),
            ("connected, order 8", self.clause_shape),
            ("no smaller even-order bounded Bob win", self.clause_minimal),
        ]
    }
}

/// Weightings checked, Bob wins, and the first Bob win found.
type GraphTally = (u64, u64, Option<(String, Vec<u64>)>);

fn sweep(
    graphs: Vec<WeightedGraph>,
    order: usize,
    edges_below: Option<usize>,
    config: &Fig1Config,
) -> Result<OrderSweep, HarnessError> {
    let per_graph: Vec<Result<Option<GraphTally>, HarnessError>> = graphs
        .par_iter()
        .map(|g| {
            if find_corona_odd(g, Budget::default())?.is_some() {
                return Ok(None);
            }
            let table = StateTable::new(g)?;
            let (mut count, mut wins, mut example) = (0u64, 0u64, None);
            let mut scratch = Vec::new();
            for w in sparse_weightings(g.order(), config.weight_bound, config.max_nonzero) {
                count += 1;
                let signed: Vec<i64> = w.iter().map(|&x| x as i64).collect();
                if table.diff(&signed, &mut scratch) < 0 {
                    wins += 1;
                    example.get_or_insert_with(|| (to_graph6(g), w));
                }
            }
            Ok(Some((count, wins, example)))
        })
        .collect();
    let mut out = OrderSweep {
        order,
        edges_below,
        graphs: graphs.len() as u64,
        codd_free_graphs: 0,
        weightings: 0,
        bob_wins: 0,
        example: None,
    };
    for r in per_graph {
        if let Some((count, wins, example)) = r? {
            out.codd_free_graphs += 1;
            out.weightings += count;
            out.bob_wins += wins;
            if out.example.is_none() {
                out.example = example;
            }
        }
    }
    Ok(out)
}

/// Certification record for the eight-vertex counterexample.
pub fn certify_fig1(
    instance: &WeightedGraph,
    config: Fig1Config,
) -> Result<Fig1Certificate, HarnessError> {
    let connected = instance.order() > 0 && instance.is_connected();
    let diff_value = if connected {
        Some(Solver::new(instance.clone()).solve_diff(instance.vertices())?)
    } else {
        None
    };
    let nonzero = instance.weights().iter().filter(|&&w| w > 0).count();
    let weights_within_bound = instance.weights().iter().all(|&w| w <= config.weight_bound)
        && nonzero <= config.max_nonzero;
    let corona = find_corona_odd(instance, Budget::default())?;

    let mut sweeps = Vec::new();
    for n in 1..=config.max_order {
        sweeps.push(sweep(connected_graphs(n), n, None, &config)?);
    }
    let edge_sweep = if config.edge_minimality && connected {
        let n = instance.order();
        let m = instance.edge_count();
        let fewer: Vec<_> = connected_graphs(n)
            .into_iter()
            .filter(|g| g.edge_count() < m)
            .collect();
        Some(sweep(fewer, n, Some(m), &config)?)
    } else {
        None
    };

    let clause_bob_wins = diff_value.is_some_and(|d| d < 0) && weights_within_bound;
    let clause_codd_free = corona.is_none();
    let clause_shape = connected && instance.order() == 8;
    let clause_minimal = sweeps
        .iter()
        .chain(&edge_sweep)
        .filter(|s| s.order % 2 == 0)
        .all(|s| s.bob_wins == 0);
    Ok(Fig1Certificate {
        config,
        order: instance.order(),
        edges: instance.edge_count(),
        connected,
        diff_value,
        weights_within_bound,
        corona,
        sweep: sweeps,
        edge_sweep,
        clause_bob_wins,
        clause_codd_free,
        clause_shape,
        clause_minimal,
        certified: clause_bob_wins && clause_codd_free && clause_shape && clause_minimal,
        note: format!(
            "minimality is checked only for integer weights in 0..={} with at most {} nonzero; \
             odd orders are swept and reported but not required to be Bob-win free",
            config.weight_bound, config.max_nonzero
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DMemberVerdict {
    pub r: usize,
    pub optional_edges: u32,
    pub order: usize,
    pub diff_value: i64,
    pub bob_wins: bool,
    pub codd_free: bool,
    /// An induced member with a shorter cycle, if one exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smaller_member: Option<DMatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DFamilyCertificate {
    pub r_max: usize,
    pub members: Vec<DMemberVerdict>,
    pub failures: usize,
    pub certified: bool,
}

/// Solves every member with cycle length at most `r_max` under the
/// canonical weighting.
pub fn certify_d_family(r_max: usize) -> Result<DFamilyCertificate, HarnessError> {
    if r_max < 3 || r_max % 2 == 0 {
        return Err(HarnessError::CycleBound(r_max));
    }
    if r_max > MAX_D_CYCLE {
        return Err(HarnessError::CycleBoundTooLarge(r_max));
    }
    let params: Vec<(usize, u32)> = (3..=r_max)
        .step_by(2)
        .flat_map(|r| (0..d_member_count(r) as u32).map(move |m| (r, m)))
        .collect();
    let members = params
        .par_iter()
        .map(|&(r, mask)| -> Result<DMemberVerdict, HarnessError> {
            let g = build_d_member(r, mask, &DWeighting::default())?;
            let d = Solver::new(g.clone()).solve_diff(g.vertices())?;
            let smaller_member = if r > 3 {
                find_induced_d_up_to(&g, r - 2, Budget::default())?
            } else {
                None
            };
            Ok(DMemberVerdict {
                r,
                optional_edges: mask,
                order: g.order(),
                diff_value: d,
                bob_wins: d < 0,
                codd_free: find_corona_odd(&g, Budget::default())?.is_none(),
                smaller_member,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let failures = members.iter().filter(|m| !m.bob_wins).count();
    Ok(DFamilyCertificate {
        r_max,
        members,
        failures,
        certified: failures == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_family_bounds() {
        assert!(matches!(
            certify_d_family(2),
            Err(HarnessError::CycleBound(2))
        ));
        assert!(matches!(
            certify_d_family(1),
            Err(HarnessError::CycleBound(1))
        ));
        assert!(matches!(
            certify_d_family(13),
            Err(HarnessError::CycleBoundTooLarge(13))
        ));
        let c = certify_d_family(3).unwrap();
        assert_eq!(c.members.len(), 1);
        assert!(c.certified);
    }

    #[test]
    fn zero_bound_fails_bob_clause() {
        let g = build_d_member(5, 0, &DWeighting::default()).unwrap();
        let config = Fig1Config {
            weight_bound: 0,
            max_order: 4,
            edge_minimality: false,
            ..Fig1Config::default()
        };
        let c = certify_fig1(&g, config).unwrap();
        assert!(c.clause_minimal);
        assert!(!c.clause_bob_wins);
        assert!(!c.certified);
    }
}
