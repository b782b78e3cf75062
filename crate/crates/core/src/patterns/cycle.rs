use std::ops::ControlFlow;

use super::{Budget, Meter, PatternError};
use crate::graph::{bipartiteness, Bipartiteness, WeightedGraph};
use crate::vertex_set::VertexSet;

/// An induced (chordless) odd cycle, or `None` when the graph is bipartite.
///
/// Starts from the odd cycle closed by breadth-first layering and, while the
/// current cycle has a chord, replaces it by the odd one of the two cycles
/// the chord splits it into.
pub fn find_induced_odd_cycle(g: &WeightedGraph) -> Option<Vec<usize>> {
    let Bipartiteness::OddCycle(mut cycle) = bipartiteness(g) else {
        return None;
    };
    'shrink: loop {
        let len = cycle.len();
        for i in 0..len {
            for j in i + 2..len {
                if i == 0 && j == len - 1 {
                    continue;
                }
                if g.has_edge(cycle[i], cycle[j]) {
                    // arcs i..=j and j..=i (wrapping) share the chord
                    let inner = j - i + 1;
                    cycle = if inner % 2 == 1 {
                        cycle[i..=j].to_vec()
                    } else {
                        cycle[j..].iter().chain(&cycle[..=i]).copied().collect()
                    };
                    continue 'shrink;
                }
            }
        }
        debug_assert!(is_induced_cycle(g, &cycle) && cycle.len() % 2 == 1);
        return Some(cycle);
    }
}

/// Whether `cycle` lists at least three distinct vertices that induce exactly
/// a cycle in the given order.
pub fn is_induced_cycle(g: &WeightedGraph, cycle: &[usize]) -> bool {
    let len = cycle.len();
    if len < 3 || cycle.iter().any(|&v| v >= g.order()) {
        return false;
    }
    let set: VertexSet = cycle.iter().copied().collect();
    if set.len() != len {
        return false;
    }
    (0..len).all(|i| {
        let expected: VertexSet = [cycle[(i + len - 1) % len], cycle[(i + 1) % len]]
            .into_iter()
            .collect();
        g.neighbors(cycle[i]).intersection(set) == expected
    })
}

/// Calls `visit` once per induced cycle of length `len` (each cycle reported
/// in one orientation, starting from its smallest vertex). Stops early when
/// `visit` breaks.
pub fn for_each_induced_cycle<B>(
    g: &WeightedGraph,
    len: usize,
    budget: Budget,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Result<Option<B>, PatternError> {
    let meter = Meter::new(budget);
    induced_cycles(g, len, &meter, &mut visit)
}

pub(super) fn induced_cycles<B>(
    g: &WeightedGraph,
    len: usize,
    meter: &Meter,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Result<Option<B>, PatternError> {
    if len < 3 || len > g.order() {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(len);
    for start in 0..g.order() {
        path.clear();
        path.push(start);
        if let Some(b) = extend(g, len, &mut path, VertexSet::singleton(start), meter, visit)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

fn extend<B>(
    g: &WeightedGraph,
    len: usize,
    path: &mut Vec<usize>,
    on_path: VertexSet,
    meter: &Meter,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Result<Option<B>, PatternError> {
    meter.tick()?;
    let start = path[0];
    let last = *path.last().expect("nonempty path");
    let inner = on_path.without(last).without(start);
    for v in g.neighbors(last).difference(on_path) {
        if v < start || !g.neighbors(v).intersection(inner).is_empty() {
            continue;
        }
        let closes = path.len() >= 2 && g.has_edge(v, start);
        if closes {
            // orientation: second vertex smaller than the last
            if path.len() + 1 == len && path[1] < v {
                path.push(v);
                let flow = visit(path);
                path.pop();
                if let ControlFlow::Break(b) = flow {
                    return Ok(Some(b));
                }
            }
        } else if path.len() + 1 < len {
            path.push(v);
            let found = extend(g, len, path, on_path.with(v), meter, visit)?;
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: usize, chords: &[(usize, usize)]) -> WeightedGraph {
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend_from_slice(chords);
        WeightedGraph::from_edges(n, &edges, vec![0; n]).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(find_induced_odd_cycle(&cycle_graph(4, &[])), None);
        let c5 = find_induced_odd_cycle(&cycle_graph(5, &[])).unwrap();
        assert_eq!(c5.len(), 5);
        let mut tri = find_induced_odd_cycle(&cycle_graph(5, &[(0, 2)])).unwrap();
        tri.sort();
        assert_eq!(tri, vec![0, 1, 2]);
    }

    #[test]
    fn shortcut_keeps_odd_side() {
        // C9 with chords splitting it several times.
        let g = cycle_graph(9, &[(0, 4), (4, 8), (1, 3)]);
        let c = find_induced_odd_cycle(&g).unwrap();
        assert!(is_induced_cycle(&g, &c));
        assert_eq!(c.len() % 2, 1);
    }

    #[test]
    fn enumerates_each_cycle_once() {
        let k4 = WeightedGraph::from_edges(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            vec![0; 4],
        )
        .unwrap();
        let mut count = 0;
        for_each_induced_cycle(&k4, 3, Budget::default(), |c| {
            assert!(is_induced_cycle(&k4, c));
            count += 1;
            ControlFlow::<()>::Continue(())
        })
        .unwrap();
        assert_eq!(count, 4);
        // K4 has no induced 4-cycle.
        let mut four = 0;
        for_each_induced_cycle(&k4, 4, Budget::default(), |_| {
            four += 1;
            ControlFlow::<()>::Continue(())
        })
        .unwrap();
        assert_eq!(four, 0);
        // C6 has exactly one induced 6-cycle.
        let c6 = cycle_graph(6, &[]);
        let mut six = 0;
        for_each_induced_cycle(&c6, 6, Budget::default(), |_| {
            six += 1;
            ControlFlow::<()>::Continue(())
        })
        .unwrap();
        assert_eq!(six, 1);
    }

    #[test]
    fn budget_is_reported() {
        let g = cycle_graph(7, &[]);
        let r = for_each_induced_cycle(&g, 7, Budget::new(2), |_| ControlFlow::<()>::Continue(()));
        assert_eq!(r, Err(PatternError::BudgetExceeded(2)));
    }
}
