use super::{Budget, Meter, PatternError};
use crate::graph::WeightedGraph;
use crate::vertex_set::VertexSet;

/// An injective map `pattern -> host` (indexed by pattern vertex) under which
/// pattern edges and non-edges are both preserved.
pub fn find_induced_subgraph(
    pattern: &WeightedGraph,
    host: &WeightedGraph,
    budget: Budget,
) -> Result<Option<Vec<usize>>, PatternError> {
    let meter = Meter::new(budget);
    if pattern.order() > host.order() {
        return Ok(None);
    }
    let order = placement_order(pattern);
    let mut map = vec![usize::MAX; pattern.order()];
    let found = place(
        pattern,
        host,
        &order,
        0,
        &mut map,
        VertexSet::EMPTY,
        None,
        &meter,
    )?;
    Ok(found.then_some(map))
}

/// Isomorphism test; with `match_weights` the bijection must also carry
/// weights to equal weights.
pub fn are_isomorphic(a: &WeightedGraph, b: &WeightedGraph, match_weights: bool) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<_> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<_> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let meter = Meter::new(Budget::UNLIMITED);
    let order = placement_order(a);
    let mut map = vec![usize::MAX; a.order()];
    let weights = match_weights.then_some(());
    place(a, b, &order, 0, &mut map, VertexSet::EMPTY, weights, &meter).expect("unlimited budget")
}

/// Highest degree first, then vertices adjacent to something already placed.
fn placement_order(g: &WeightedGraph) -> Vec<usize> {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut placed = VertexSet::EMPTY;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| {
                (
                    g.neighbors(v).intersection(placed).len(),
                    g.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex");
        order.push(next);
        placed.insert(next);
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn place(
    pattern: &WeightedGraph,
    host: &WeightedGraph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: VertexSet,
    match_weights: Option<()>,
    meter: &Meter,
) -> Result<bool, PatternError> {
    if depth == order.len() {
        return Ok(true);
    }
    meter.tick()?;
    let p = order[depth];
    let mut candidates = host.vertices().difference(used);
    for &q in &order[..depth] {
        let image = map[q];
        candidates = if pattern.has_edge(p, q) {
            candidates.intersection(host.neighbors(image))
        } else {
            candidates.difference(host.neighbors(image))
        };
    }
    let need = pattern.degree(p);
    for h in candidates {
        if host.degree(h) < need {
            continue;
        }
        if match_weights.is_some() && pattern.weight(p) != host.weight(h) {
            continue;
        }
        map[p] = h;
        if place(
            pattern,
            host,
            order,
            depth + 1,
            map,
            used.with(h),
            match_weights,
            meter,
        )? {
            return Ok(true);
        }
    }
    map[p] = usize::MAX;
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{build_corona, build_d_member, DWeighting};

    fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedGraph::from_edges(n, &edges, vec![0; n]).unwrap()
    }

    #[test]
    fn induced_not_just_subgraph() {
        let tri = WeightedGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], vec![0; 3]).unwrap();
        // P3 is a subgraph of a triangle but not an induced one.
        assert_eq!(
            find_induced_subgraph(&path(3), &tri, Budget::default()),
            Ok(None)
        );
        let map = find_induced_subgraph(&path(3), &path(5), Budget::default())
            .unwrap()
            .unwrap();
        assert!(path(3)
            .edges()
            .iter()
            .all(|&(u, v)| path(5).has_edge(map[u], map[v])));
    }

    #[test]
    fn net_inside_fig1_member() {
        let net = build_corona(3).unwrap();
        let g = build_d_member(5, 0, &DWeighting::default()).unwrap();
        assert_eq!(find_induced_subgraph(&net, &g, Budget::default()), Ok(None));
        let g3 = build_d_member(3, 0, &DWeighting::default()).unwrap();
        assert!(find_induced_subgraph(&net, &g3, Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn isomorphism() {
        let g = build_d_member(5, 0, &DWeighting::default()).unwrap();
        let perm = [3, 7, 1, 0, 6, 2, 5, 4];
        let h = g.permuted(&perm);
        assert!(are_isomorphic(&g, &h, true));
        assert!(!are_isomorphic(
            &g,
            &g.with_weights(vec![1; 8]).unwrap(),
            true
        ));
        assert!(are_isomorphic(
            &g,
            &g.with_weights(vec![1; 8]).unwrap(),
            false
        ));
        assert!(!are_isomorphic(&path(4), &build_corona(3).unwrap(), false));
    }
}
