//! The eight-vertex counterexample, shipped as an instance file, and the
//! exhaustive search that regenerates it from scratch.

use rayon::prelude::*;

use crate::enumerate::connected_graphs;
use crate::graph::WeightedGraph;
use crate::harness::sparse_weightings;
use crate::instance::parse_instance;
use crate::patterns::{find_corona_odd, Budget};
use crate::table::StateTable;

/// Instance document of the counterexample.
pub const FIG1_JSON: &str = include_str!("../data/fig1.json");

/// The counterexample: a 5-cycle with pendants on three consecutive cycle
/// vertices. The middle one weighs 2, its pendant and its two cycle
/// neighbours weigh 1.
pub fn fig1() -> WeightedGraph {
    parse_instance(FIG1_JSON).expect("bundled instance is valid")
}

/// Searches connected `C_odd`-free graphs of order `n` by increasing edge
/// count for weightings in `0..=max_weight` with at most `max_nonzero`
/// nonzero entries on which Bob wins. Returns every hit at the first edge
/// count that has one, restricted to the least total weight there, in
/// canonical graph order.
pub fn recover_bob_wins(n: usize, max_weight: u64, max_nonzero: usize) -> Vec<WeightedGraph> {
    let mut graphs = connected_graphs(n);
    graphs.sort_by_key(WeightedGraph::edge_count);
    let mut start = 0;
    while start < graphs.len() {
        let m = graphs[start].edge_count();
        let end = graphs[start..]
            .iter()
            .position(|g| g.edge_count() != m)
            .map_or(graphs.len(), |i| start + i);
        let mut hits: Vec<WeightedGraph> = graphs[start..end]
            .par_iter()
            .flat_map_iter(|g| bob_wins_on(g, max_weight, max_nonzero))
            .collect();
        if !hits.is_empty() {
            let least = hits
                .iter()
                .map(WeightedGraph::total_weight)
                .min()
                .expect("nonempty");
            hits.retain(|h| h.total_weight() == least);
            return hits;
        }
        start = end;
    }
    Vec::new()
}

fn bob_wins_on(g: &WeightedGraph, max_weight: u64, max_nonzero: usize) -> Vec<WeightedGraph> {
    if find_corona_odd(g, Budget::default())
        .expect("small graphs fit the budget")
        .is_some()
    {
        return Vec::new();
    }
    let table = StateTable::new(g).expect("enumerated graphs are connected");
    let mut scratch = Vec::new();
    sparse_weightings(g.order(), max_weight, max_nonzero)
        .filter(|w| {
            let signed: Vec<i64> = w.iter().map(|&x| x as i64).collect();
            table.diff(&signed, &mut scratch) < 0
        })
        .map(|w| g.with_weights(w).expect("weight count matches"))
        .collect()
}

/// The recovery search at the counterexample's parameters: order 8, weights
/// up to 4, at most four nonzero.
pub fn recover_fig1() -> Vec<WeightedGraph> {
    recover_bob_wins(8, 4, 4)
}
