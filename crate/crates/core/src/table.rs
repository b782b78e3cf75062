//! Weight-independent precomputation for solving many weightings of one
//! graph: every connected vertex subset with its legal moves, in increasing
//! size, so a solve is a single forward pass.

use crate::graph::{articulation_points, is_connected, WeightedGraph};
use crate::solver::SolveError;
use crate::vertex_set::VertexSet;

/// Largest order the dense subset index is built for.
pub const MAX_TABLE_ORDER: usize = 24;

const EMPTY_CHILD: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct StateTable {
    order: usize,
    states: Vec<u32>,
    move_start: Vec<u32>,
    moves: Vec<(u8, u32)>,
}

impl StateTable {
    /// Panics if the graph has more than [`MAX_TABLE_ORDER`] vertices.
    pub fn new(g: &WeightedGraph) -> Result<Self, SolveError> {
        let n = g.order();
        assert!(
            n <= MAX_TABLE_ORDER,
            "state table limited to {MAX_TABLE_ORDER} vertices"
        );
        if !g.is_connected() {
            return Err(SolveError::Disconnected(g.vertices()));
        }
        let mut subsets: Vec<u32> = (1u32..1 << n)
            .filter(|&s| is_connected(g, VertexSet::from_bits(s)))
            .collect();
        subsets.sort_by_key(|s| (s.count_ones(), *s));
        let mut index = vec![EMPTY_CHILD; 1 << n];
        for (i, &s) in subsets.iter().enumerate() {
            index[s as usize] = i as u32;
        }
        let mut move_start = Vec::with_capacity(subsets.len() + 1);
        let mut moves = Vec::new();
        for &s in &subsets {
            move_start.push(moves.len() as u32);
            let set = VertexSet::from_bits(s);
            for v in set.difference(articulation_points(g, set)) {
                let child = s & !(1 << v);
                let slot = if child == 0 {
                    EMPTY_CHILD
                } else {
                    index[child as usize]
                };
                moves.push((v as u8, slot));
            }
        }
        move_start.push(moves.len() as u32);
        Ok(StateTable {
            order: n,
            states: subsets,
            move_start,
            moves,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of connected subsets (reachable positions).
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `D(V)` for the given weights. `scratch` is reused across calls.
    pub fn diff(&self, weights: &[i64], scratch: &mut Vec<i64>) -> i64 {
        debug_assert_eq!(weights.len(), self.order);
        if self.states.is_empty() {
            return 0;
        }
        scratch.clear();
        scratch.reserve(self.states.len());
        for i in 0..self.states.len() {
            let lo = self.move_start[i] as usize;
            let hi = self.move_start[i + 1] as usize;
            let mut best = i64::MIN;
            for &(v, child) in &self.moves[lo..hi] {
                let rest = if child == EMPTY_CHILD {
                    0
                } else {
                    scratch[child as usize]
                };
                best = best.max(weights[v as usize] - rest);
            }
            scratch.push(best);
        }
        *scratch.last().expect("nonempty")
    }

    /// Connected subsets in solve order. After `diff`, `scratch[i]` holds
    /// `D(states()[i])`.
    pub fn states(&self) -> &[u32] {
        &self.states
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_diff;

    #[test]
    fn matches_memoised_solver_on_small_cases() {
        let g = WeightedGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)],
            vec![3, 0, 5, 1, 4, 2],
        )
        .unwrap();
        let table = StateTable::new(&g).unwrap();
        let w: Vec<i64> = g.weights().iter().map(|&x| x as i64).collect();
        let mut scratch = Vec::new();
        assert_eq!(
            table.diff(&w, &mut scratch),
            solve_diff(&g, g.vertices()).unwrap()
        );
        assert_eq!(table.len(), scratch.len());
    }

    #[test]
    fn single_vertex_and_disconnected() {
        let g = WeightedGraph::from_edges(1, &[], vec![9]).unwrap();
        let t = StateTable::new(&g).unwrap();
        assert_eq!(t.diff(&[9], &mut Vec::new()), 9);
        let h = WeightedGraph::new(2).unwrap();
        assert!(StateTable::new(&h).is_err());
    }
}
