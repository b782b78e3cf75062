use std::sync::Arc;

use grabbing_core::{Solver, WeightedGraph};
use grabbing_service::{EngineRole, Player, Session};
use proptest::prelude::*;

fn graph(
    n: usize,
    parents: &[usize],
    extra: &[(usize, usize)],
    weights: Vec<u64>,
) -> WeightedGraph {
    let mut g = WeightedGraph::new(n).unwrap();
    for v in 1..n {
        g.add_edge(parents[v - 1] % v, v).unwrap();
    }
    for &(a, b) in extra {
        let (u, v) = (a % n, b % n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v).unwrap();
        }
    }
    g.with_weights(weights).unwrap()
}

fn connected_graph() -> impl Strategy<Value = WeightedGraph> {
    (1usize..=9).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<usize>(), n - 1),
            proptest::collection::vec((any::<usize>(), any::<usize>()), 0..8),
            proptest::collection::vec(0u64..20, n),
        )
            .prop_map(move |(p, e, w)| graph(n, &p, &e, w))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Whatever the human does, an engine that starts from a non-negative
    /// margin ends with at least half of the weight.
    #[test]
    fn engine_keeps_its_margin(g in connected_graph(), choices in proptest::collection::vec(any::<usize>(), 9), engine_alice in any::<bool>()) {
        let g = Arc::new(g);
        let role = if engine_alice { EngineRole::Alice } else { EngineRole::Bob };
        let engine = if engine_alice { Player::Alice } else { Player::Bob };
        let mut s = Session::from_graph(g.clone(), role).unwrap();
        let mut margin = None;
        let mut k = 0;
        while let Some(turn) = s.turn() {
            if turn == engine {
                let (alice, bob) = s.totals();
                let banked = if engine_alice { alice as i64 - bob as i64 } else { bob as i64 - alice as i64 };
                let evals = s.engine_move().unwrap();
                margin.get_or_insert(banked + evals.iter().map(|e| e.value_after).max().unwrap());
            } else {
                let legal = s.view().legal_moves;
                s.human_move(legal[choices[k] % legal.len()]).unwrap();
                k += 1;
            }
        }
        let (alice, bob) = s.totals();
        let (mine, theirs) = if engine_alice { (alice, bob) } else { (bob, alice) };
        if margin.is_some_and(|m| m >= 0) {
            prop_assert!(mine >= theirs);
        }
        prop_assert_eq!(alice + bob, g.total_weight());
    }

    /// Folding the history over a fresh session reproduces the view.
    #[test]
    fn replay_reproduces_view(g in connected_graph(), choices in proptest::collection::vec(any::<usize>(), 9), plies in 0usize..9) {
        let g = Arc::new(g);
        let mut s = Session::from_graph(g.clone(), EngineRole::None).unwrap();
        for &c in choices.iter().take(plies) {
            if s.is_finished() {
                break;
            }
            let legal = s.view().legal_moves;
            s.human_move(legal[c % legal.len()]).unwrap();
        }
        let replayed = Session::replay(g.clone(), EngineRole::None, s.history()).unwrap();
        prop_assert_eq!(
            serde_json::to_string(&replayed.view()).unwrap(),
            serde_json::to_string(&s.view()).unwrap()
        );
        let v = s.view();
        let remaining: u64 = v.remaining.iter().map(|&x| g.weight(x)).sum();
        let (alice, bob) = s.totals();
        prop_assert_eq!(alice + bob + remaining, g.total_weight());
    }

    /// Session evaluations agree with a fresh solver.
    #[test]
    fn evals_match_solver(g in connected_graph()) {
        let g = Arc::new(g);
        let mut s = Session::from_graph(g.clone(), EngineRole::None).unwrap();
        let expected = Solver::new(g.clone()).evaluate_moves(g.vertices()).unwrap();
        let got = s.evals().unwrap();
        prop_assert_eq!(got.len(), expected.len());
        for (a, b) in got.iter().zip(&expected) {
            prop_assert_eq!(a.vertex, b.vertex);
            prop_assert_eq!(a.value_after.clone(), b.value_after.to_string());
            prop_assert_eq!(a.optimal, b.optimal);
        }
    }
}
