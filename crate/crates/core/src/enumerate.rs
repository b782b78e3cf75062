//! Isomorph-free generation of small graphs and trees.
//!
//! Graphs of order `n` are produced by adding one vertex to every graph of
//! order `n - 1` in all possible ways and keeping one representative per
//! canonical form. The canonical form comes from a plain
//! individualisation-refinement search, exact but without automorphism
//! pruning, which is comfortably fast up to [`MAX_ENUM_ORDER`].

use std::collections::BTreeMap;

use crate::graph::WeightedGraph;
use crate::vertex_set::VertexSet;

/// Largest order whose upper triangle fits the 64-bit canonical code.
pub const MAX_ENUM_ORDER: usize = 11;

/// Canonical code of the unweighted graph: equal for two graphs iff they are
/// isomorphic. Weights are ignored.
pub fn canonical_code(g: &WeightedGraph) -> u64 {
    canonize(&bits(g)).0
}

/// A relabelling `perm` (vertex `v` becomes `perm[v]`) taking `g` to its
/// canonical form.
pub fn canonical_labeling(g: &WeightedGraph) -> Vec<usize> {
    canonize(&bits(g)).1.into_iter().map(usize::from).collect()
}

/// `g` relabelled into canonical form, weights carried along.
pub fn canonical_form(g: &WeightedGraph) -> WeightedGraph {
    g.permuted(&canonical_labeling(g))
}

/// All graphs of order `n` up to isomorphism, in canonical form, sorted by
/// canonical code.
pub fn graphs(n: usize) -> Vec<WeightedGraph> {
    generate(n, false)
}

/// All connected graphs of order `n` up to isomorphism. Every connected
/// graph of order `n >= 2` has a vertex whose deletion leaves it
/// connected, so extending connected graphs by a vertex with at least one
/// neighbour reaches all of them.
pub fn connected_graphs(n: usize) -> Vec<WeightedGraph> {
    generate(n, true)
}

/// All trees of order `n` up to isomorphism (`n >= 1`).
pub fn trees(n: usize) -> Vec<WeightedGraph> {
    assert!(
        (1..=MAX_ENUM_ORDER).contains(&n),
        "tree order {n} out of range"
    );
    let mut level: Vec<Vec<u32>> = vec![vec![0]];
    for k in 2..=n {
        level = extend_level(&level, |parent, push| {
            for attach in 0..k - 1 {
                let mut adj = parent.to_vec();
                adj[attach] |= 1 << (k - 1);
                adj.push(1 << attach);
                push(adj);
            }
        });
    }
    level.iter().map(|adj| to_graph(adj)).collect()
}

fn generate(n: usize, connected: bool) -> Vec<WeightedGraph> {
    assert!(
        n <= MAX_ENUM_ORDER,
        "enumeration limited to {MAX_ENUM_ORDER} vertices"
    );
    if n == 0 {
        return vec![WeightedGraph::new(0).expect("empty graph")];
    }
    let mut level: Vec<Vec<u32>> = vec![vec![0]];
    for k in 2..=n {
        level = extend_level(&level, |parent, push| {
            for sub in u32::from(connected)..1u32 << (k - 1) {
                let mut adj = parent.to_vec();
                for (j, row) in adj.iter_mut().enumerate() {
                    if sub >> j & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                adj.push(sub);
                push(adj);
            }
        });
    }
    level.iter().map(|adj| to_graph(adj)).collect()
}

/// Canonical forms of all children, one per isomorphism class, in code
/// order.
fn extend_level(
    level: &[Vec<u32>],
    children: impl Fn(&[u32], &mut dyn FnMut(Vec<u32>)),
) -> Vec<Vec<u32>> {
    let mut found = BTreeMap::new();
    for parent in level {
        children(parent, &mut |adj| {
            let (code, perm) = canonize(&adj);
            found.entry(code).or_insert_with(|| relabel(&adj, &perm));
        });
    }
    found.into_values().collect()
}

fn bits(g: &WeightedGraph) -> Vec<u32> {
    assert!(
        g.order() <= MAX_ENUM_ORDER,
        "canonical codes limited to {MAX_ENUM_ORDER} vertices"
    );
    g.adjacency().iter().map(|s| s.bits()).collect()
}

fn to_graph(adj: &[u32]) -> WeightedGraph {
    WeightedGraph::from_adjacency(adj.iter().map(|&b| VertexSet::from_bits(b)).collect())
        .expect("generated graphs are simple")
}

fn relabel(adj: &[u32], perm: &[u8]) -> Vec<u32> {
    let mut out = vec![0u32; adj.len()];
    for (v, &row) in adj.iter().enumerate() {
        let mut mapped = 0;
        let mut rest = row;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            mapped |= 1 << perm[u];
        }
        out[perm[v] as usize] = mapped;
    }
    out
}

/// Best (largest) leaf code over the search tree, with its labelling.
fn canonize(adj: &[u32]) -> (u64, Vec<u8>) {
    let n = adj.len();
    let mut best = (0u64, Vec::new());
    let mut found = false;
    let start = vec![(0..n as u8).collect::<Vec<u8>>()];
    if n == 0 {
        return (0, Vec::new());
    }
    search(adj, start, &mut best, &mut found);
    best
}

fn search(adj: &[u32], cells: Vec<Vec<u8>>, best: &mut (u64, Vec<u8>), found: &mut bool) {
    let cells = refine(adj, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let mut label = vec![0u8; adj.len()];
        for (i, c) in cells.iter().enumerate() {
            label[c[0] as usize] = i as u8;
        }
        let code = leaf_code(adj, &cells);
        if !*found || code > best.0 {
            *best = (code, label);
            *found = true;
        }
        return;
    };
    for &v in &cells[target] {
        let mut split = Vec::with_capacity(cells.len() + 1);
        split.extend_from_slice(&cells[..target]);
        split.push(vec![v]);
        split.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        split.extend_from_slice(&cells[target + 1..]);
        search(adj, split, best, found);
    }
}

/// Splits cells by neighbour counts into every cell until stable. Cells are
/// split in signature order, so the result depends only on the isomorphism
/// type of the coloured graph.
fn refine(adj: &[u32], mut cells: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    loop {
        let masks: Vec<u32> = cells
            .iter()
            .map(|c| c.iter().fold(0, |m, &v| m | 1 << v))
            .collect();
        let mut next = Vec::with_capacity(adj.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, u8)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks
                        .iter()
                        .map(|&m| (adj[v as usize] & m).count_ones() as u8)
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut group = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[0].0 != w[1].0 {
                    next.push(std::mem::take(&mut group));
                }
                group.push(w[1].1);
            }
            next.push(group);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn leaf_code(adj: &[u32], cells: &[Vec<u8>]) -> u64 {
    let order: Vec<usize> = cells.iter().map(|c| c[0] as usize).collect();
    let mut code = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            code = code << 1 | u64::from(adj[order[i]] >> order[j] & 1);
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        let expected = [1, 2, 4, 11, 34, 156, 1044];
        for (i, &count) in expected.iter().enumerate() {
            assert_eq!(graphs(i + 1).len(), count, "n = {}", i + 1);
        }
    }

    #[test]
    fn connected_counts() {
        let expected = [1, 1, 2, 6, 21, 112, 853];
        for (i, &count) in expected.iter().enumerate() {
            let gs = connected_graphs(i + 1);
            assert_eq!(gs.len(), count, "n = {}", i + 1);
            assert!(gs.iter().all(WeightedGraph::is_connected));
        }
    }

    #[test]
    fn tree_counts() {
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &count) in expected.iter().enumerate() {
            let ts = trees(i + 1);
            assert_eq!(ts.len(), count, "n = {}", i + 1);
            assert!(ts.iter().all(|t| t.is_connected() && t.edge_count() == i));
        }
    }

    #[test]
    fn code_is_label_invariant() {
        let g = WeightedGraph::from_edges(
            7,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 4),
            ],
            vec![0; 7],
        )
        .unwrap();
        let code = canonical_code(&g);
        let perms = [
            [6, 5, 4, 3, 2, 1, 0],
            [3, 0, 6, 1, 5, 2, 4],
            [1, 2, 3, 4, 5, 6, 0],
        ];
        for p in perms {
            assert_eq!(canonical_code(&g.permuted(&p)), code);
        }
        let other = WeightedGraph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6)],
            vec![0; 7],
        )
        .unwrap();
        assert_ne!(canonical_code(&other), code);
    }

    #[test]
    fn canonical_form_is_fixed() {
        for g in connected_graphs(5) {
            assert_eq!(canonical_form(&g).adjacency(), g.adjacency());
        }
    }

    #[test]
    fn symmetric_graphs() {
        let k6 = graphs(6)
            .into_iter()
            .max_by_key(|g| g.edge_count())
            .unwrap();
        assert_eq!(k6.edge_count(), 15);
        assert_eq!(graphs(0).len(), 1);
    }
}
