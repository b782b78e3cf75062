//! Vertex-weighted simple graphs and the connectivity machinery the game
//! needs: connected-set tests, cutvertices of induced subgraphs and
//! bipartiteness witnesses.

use std::collections::VecDeque;

use thiserror::Error;

use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("adjacency lists {0} -> {1} without the reverse entry")]
    Asymmetric(usize, usize),
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("total weight overflows exact integer range")]
    WeightOverflow,
    #[error("vertex set {0:?} does not induce a connected subgraph")]
    Disconnected(VertexSet),
    #[error("vertex set {set:?} is not contained in a graph on {order} vertices")]
    NotSubset { set: VertexSet, order: usize },
}

/// An undirected simple graph on vertices `0..n` with exact non-negative
/// integer weights.
///
/// `scale` records the common denominator applied when the weights were
/// ingested, so `weight(v) / scale` is the weight in the caller's units.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightedGraph {
    adjacency: Vec<VertexSet>,
    weights: Vec<u64>,
    scale: u64,
}

impl WeightedGraph {
    /// Edgeless graph with all weights zero.
    pub fn new(order: usize) -> Result<Self, GraphError> {
        if order > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(order));
        }
        Ok(WeightedGraph {
            adjacency: vec![VertexSet::EMPTY; order],
            weights: vec![0; order],
            scale: 1,
        })
    }

    pub fn from_edges(
        order: usize,
        edges: &[(usize, usize)],
        weights: Vec<u64>,
    ) -> Result<Self, GraphError> {
        let mut g = WeightedGraph::new(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        g.set_weights(weights)?;
        Ok(g)
    }

    /// Builds a graph from adjacency masks. The masks must be symmetric and
    /// loop-free.
    pub fn from_adjacency(adjacency: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adjacency.len();
        let mut g = WeightedGraph::new(n)?;
        for (u, &nbrs) in adjacency.iter().enumerate() {
            if !nbrs.is_subset(VertexSet::full(n)) {
                return Err(GraphError::NotSubset {
                    set: nbrs,
                    order: n,
                });
            }
            if nbrs.contains(u) {
                return Err(GraphError::SelfLoop(u));
            }
            for v in nbrs {
                if !adjacency[v].contains(u) {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        g.adjacency = adjacency;
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adjacency[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    /// Removes the edge if present; returns whether it was.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.order() || v >= self.order() || !self.adjacency[u].contains(v) {
            return false;
        }
        self.adjacency[u].remove(v);
        self.adjacency[v].remove(u);
        true
    }

    pub fn set_weights(&mut self, weights: Vec<u64>) -> Result<(), GraphError> {
        if weights.len() != self.order() {
            return Err(GraphError::WeightCount {
                expected: self.order(),
                found: weights.len(),
            });
        }
        let total = weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or(GraphError::WeightOverflow)?;
        if total > i64::MAX as u64 {
            return Err(GraphError::WeightOverflow);
        }
        self.weights = weights;
        Ok(())
    }

    /// Same graph, different weights (scale reset to 1).
    pub fn with_weights(&self, weights: Vec<u64>) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.set_weights(weights)?;
        g.scale = 1;
        Ok(g)
    }

    pub fn set_scale(&mut self, scale: u64) {
        assert!(scale > 0, "scale must be positive");
        self.scale = scale;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adjacency
    }

    #[inline]
    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn weight_of(&self, s: VertexSet) -> u64 {
        s.iter().map(|v| self.weights[v]).sum()
    }

    #[inline]
    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Vertices with nonzero weight.
    pub fn support(&self) -> VertexSet {
        (0..self.order()).filter(|&v| self.weights[v] > 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self, self.vertices())
    }

    /// The subgraph induced on `keep`, relabelled to `0..keep.len()` in
    /// increasing id order, together with the original id of each new vertex.
    pub fn induced(&self, keep: VertexSet) -> (WeightedGraph, Vec<usize>) {
        let ids = keep.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = ids
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .intersection(keep)
                    .iter()
                    .map(|u| index[u])
                    .collect()
            })
            .collect();
        let g = WeightedGraph {
            adjacency,
            weights: ids.iter().map(|&v| self.weights[v]).collect(),
            scale: self.scale,
        };
        (g, ids)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> WeightedGraph {
        let n = self.order();
        assert_eq!(perm.len(), n);
        let mut adjacency = vec![VertexSet::EMPTY; n];
        let mut weights = vec![0; n];
        for v in 0..n {
            adjacency[perm[v]] = self.adjacency[v].iter().map(|u| perm[u]).collect();
            weights[perm[v]] = self.weights[v];
        }
        WeightedGraph {
            adjacency,
            weights,
            scale: self.scale,
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order() {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }
}

/// Whether `s` induces a connected subgraph. The empty set and singletons
/// count as connected.
pub fn is_connected(g: &WeightedGraph, s: VertexSet) -> bool {
    let Some(start) = s.first() else {
        return true;
    };
    reach(g, s, start) == s
}

/// Vertices of `s` reachable from `start` inside the subgraph induced on `s`.
pub fn reach(g: &WeightedGraph, s: VertexSet, start: usize) -> VertexSet {
    let adj = g.adjacency();
    let mask = s.bits();
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let next = adj[v].bits() & mask & !seen;
        seen |= next;
        frontier |= next;
    }
    VertexSet::from_bits(seen)
}

/// Cutvertices of the subgraph induced on `s`, by depth-first lowpoint.
/// `s` is assumed connected; for disconnected input only the component of
/// the lowest vertex is examined.
pub fn articulation_points(g: &WeightedGraph, s: VertexSet) -> VertexSet {
    let Some(root) = s.first() else {
        return VertexSet::EMPTY;
    };
    if s.len() <= 2 {
        return VertexSet::EMPTY;
    }
    let adj = g.adjacency();
    let mask = s.bits();
    const UNSEEN: u8 = u8::MAX;
    let mut disc = [UNSEEN; MAX_VERTICES];
    let mut low = [0u8; MAX_VERTICES];
    let mut parent = [usize::MAX; MAX_VERTICES];
    let mut cut = VertexSet::EMPTY;
    let mut root_children = 0;
    let mut time = 1u8;
    disc[root] = 0;
    let mut stack: Vec<(usize, u32)> = Vec::with_capacity(s.len());
    stack.push((root, adj[root].bits() & mask));
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.1 != 0 {
            let u = top.1.trailing_zeros() as usize;
            top.1 &= top.1 - 1;
            if disc[u] == UNSEEN {
                disc[u] = time;
                low[u] = time;
                time += 1;
                parent[u] = v;
                if v == root {
                    root_children += 1;
                }
                stack.push((u, adj[u].bits() & mask));
            } else if u != parent[v] {
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != root && low[v] >= disc[p] {
                    cut.insert(p);
                }
            }
        }
    }
    if root_children > 1 {
        cut.insert(root);
    }
    cut
}

/// Vertices `v` of `s` such that `s \ {v}` still induces a connected
/// subgraph. These are exactly the legal grabs when `s` is the remainder.
pub fn non_cutvertices(g: &WeightedGraph, s: VertexSet) -> Result<VertexSet, GraphError> {
    if !s.is_subset(g.vertices()) {
        return Err(GraphError::NotSubset {
            set: s,
            order: g.order(),
        });
    }
    if !is_connected(g, s) {
        return Err(GraphError::Disconnected(s));
    }
    Ok(s.difference(articulation_points(g, s)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// A proper 2-colouring, one entry (0 or 1) per vertex.
    Bipartite { colouring: Vec<u8> },
    /// Vertices of an odd cycle in cyclic order; consecutive entries (and the
    /// last and first) are adjacent.
    OddCycle(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

/// Breadth-first layering per component. On failure returns the odd cycle
/// closed by an edge inside one layer.
pub fn bipartiteness(g: &WeightedGraph) -> Bipartiteness {
    let n = g.order();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for source in 0..n {
        if depth[source] != usize::MAX {
            continue;
        }
        depth[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v) {
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                } else if depth[u] == depth[v] {
                    return Bipartiteness::OddCycle(close_cycle(&parent, v, u));
                }
            }
        }
    }
    Bipartiteness::Bipartite {
        colouring: depth.iter().map(|d| (d % 2) as u8).collect(),
    }
}

/// Joins the tree paths from two same-depth endpoints of an edge.
fn close_cycle(parent: &[usize], mut a: usize, mut b: usize) -> Vec<usize> {
    let mut left = vec![a];
    let mut right = vec![b];
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

pub fn is_bipartite(g: &WeightedGraph) -> bool {
    bipartiteness(g).is_bipartite()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedGraph::from_edges(n, &edges, vec![0; n]).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        WeightedGraph::from_edges(n, &edges, vec![0; n]).unwrap()
    }

    fn complete(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        WeightedGraph::from_edges(n, &edges, vec![0; n]).unwrap()
    }

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            WeightedGraph::new(33).unwrap_err(),
            GraphError::TooManyVertices(33)
        );
        let err = WeightedGraph::from_edges(2, &[(0, 1), (1, 0)], vec![0, 0]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge(0, 1));
        let err = WeightedGraph::from_edges(2, &[(1, 1)], vec![0, 0]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop(1));
        let err = WeightedGraph::from_edges(2, &[(0, 2)], vec![0, 0]).unwrap_err();
        assert!(matches!(
            err,
            GraphError::VertexOutOfRange { vertex: 2, .. }
        ));
        let err = WeightedGraph::from_edges(2, &[], vec![0]).unwrap_err();
        assert!(matches!(
            err,
            GraphError::WeightCount {
                expected: 2,
                found: 1
            }
        ));
        let err = WeightedGraph::from_edges(2, &[], vec![u64::MAX, 1]).unwrap_err();
        assert_eq!(err, GraphError::WeightOverflow);
    }

    #[test]
    fn connectivity_examples() {
        let p4 = path(4);
        assert!(is_connected(&p4, p4.vertices()));
        assert!(!is_connected(&p4, set(&[0, 2])));
        assert!(is_connected(&p4, VertexSet::EMPTY));
        assert!(is_connected(&p4, set(&[3])));
    }

    #[test]
    fn non_cutvertex_examples() {
        let p4 = path(4);
        assert_eq!(non_cutvertices(&p4, p4.vertices()).unwrap(), set(&[0, 3]));
        let k4 = complete(4);
        assert_eq!(non_cutvertices(&k4, k4.vertices()).unwrap(), k4.vertices());
        let star = WeightedGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], vec![0; 4]).unwrap();
        assert_eq!(
            non_cutvertices(&star, star.vertices()).unwrap(),
            set(&[1, 2, 3])
        );
        assert_eq!(non_cutvertices(&p4, set(&[2])).unwrap(), set(&[2]));
        assert_eq!(
            non_cutvertices(&p4, set(&[0, 2])).unwrap_err(),
            GraphError::Disconnected(set(&[0, 2]))
        );
    }

    #[test]
    fn cutvertices_of_induced_subgraph() {
        // C5 restricted to a path 1-2-3-4.
        let c5 = cycle(5);
        assert_eq!(
            non_cutvertices(&c5, set(&[1, 2, 3, 4])).unwrap(),
            set(&[1, 4])
        );
        // Two triangles sharing vertex 2.
        let bowtie = WeightedGraph::from_edges(
            5,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)],
            vec![0; 5],
        )
        .unwrap();
        assert_eq!(articulation_points(&bowtie, bowtie.vertices()), set(&[2]));
    }

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&cycle(4)));
        assert!(is_bipartite(&WeightedGraph::new(1).unwrap()));
        match bipartiteness(&cycle(5)) {
            Bipartiteness::OddCycle(c) => {
                assert_eq!(c.len(), 5);
                let c5 = cycle(5);
                for i in 0..c.len() {
                    assert!(c5.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
        // disconnected: a C4 plus a separate triangle
        let g = WeightedGraph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (4, 6)],
            vec![0; 7],
        )
        .unwrap();
        assert!(!is_bipartite(&g));
    }

    #[test]
    fn colouring_is_proper() {
        let g = cycle(6);
        let Bipartiteness::Bipartite { colouring } = bipartiteness(&g) else {
            panic!("C6 is bipartite");
        };
        for (u, v) in g.edges() {
            assert_ne!(colouring[u], colouring[v]);
        }
    }

    #[test]
    fn induced_relabels() {
        let mut g = path(4);
        g.set_weights(vec![1, 2, 3, 4]).unwrap();
        let (h, ids) = g.induced(set(&[1, 2, 3]));
        assert_eq!(ids, vec![1, 2, 3]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(h.weights(), &[2, 3, 4]);
    }
}
