//! Independent reference implementations used as test oracles. Nothing
//! here shares code with the library beyond the graph container.

#![allow(dead_code)]

use grabbing_core::{build_d_member, d_member_count, DWeighting, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn adjacency(g: &WeightedGraph) -> Vec<u32> {
    g.adjacency().iter().map(|s| s.bits()).collect()
}

/// Connectivity by repeated neighbourhood expansion.
pub fn connected(adj: &[u32], s: u32) -> bool {
    if s == 0 {
        return true;
    }
    let mut seen = s & s.wrapping_neg();
    loop {
        let mut grown = seen;
        for (v, &row) in adj.iter().enumerate() {
            if seen >> v & 1 == 1 {
                grown |= row & s;
            }
        }
        if grown == seen {
            return seen == s;
        }
        seen = grown;
    }
}

/// Removable vertices by definition: deleting them keeps `s` connected.
pub fn brute_non_cutvertices(adj: &[u32], s: u32) -> u32 {
    if s.count_ones() == 1 {
        return s;
    }
    (0..adj.len())
        .filter(|&v| s >> v & 1 == 1 && connected(adj, s & !(1 << v)))
        .fold(0, |m, v| m | 1 << v)
}

/// Mover's best score difference by walking the whole game tree, no
/// memoisation.
pub fn tree_diff(adj: &[u32], w: &[i64], s: u32) -> i64 {
    if s == 0 {
        return 0;
    }
    let moves = brute_non_cutvertices(adj, s);
    (0..adj.len())
        .filter(|&v| moves >> v & 1 == 1)
        .map(|v| w[v] - tree_diff(adj, w, s & !(1 << v)))
        .max()
        .expect("a connected nonempty set has a removable vertex")
}

pub fn full(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Whether some vertex subset induces an odd cycle with one pendant leaf on
/// each cycle vertex, checked directly on every subset.
pub fn brute_has_corona(adj: &[u32]) -> bool {
    let n = adj.len();
    (0u32..1 << n).any(|s| {
        let k = s.count_ones() as usize;
        if k < 6 || k % 4 != 2 {
            return false;
        }
        let r = k / 2;
        let deg = |v: usize| (adj[v] & s).count_ones();
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let cycle: u32 = members
            .iter()
            .filter(|&&v| deg(v) == 3)
            .fold(0, |m, &v| m | 1 << v);
        let leaves: u32 = members
            .iter()
            .filter(|&&v| deg(v) == 1)
            .fold(0, |m, &v| m | 1 << v);
        cycle.count_ones() as usize == r
            && leaves.count_ones() as usize == r
            && members
                .iter()
                .filter(|&&v| cycle >> v & 1 == 1)
                .all(|&v| (adj[v] & cycle).count_ones() == 2)
            && members
                .iter()
                .filter(|&&v| leaves >> v & 1 == 1)
                .all(|&v| adj[v] & cycle != 0)
            && connected(adj, cycle)
    })
}

/// Induced isomorphism between `pattern` and the subgraph of `host` on
/// `s`, by trying bijections with plain backtracking.
pub fn brute_induced_iso(pattern: &[u32], host: &[u32], s: u32) -> bool {
    let targets: Vec<usize> = (0..host.len()).filter(|&v| s >> v & 1 == 1).collect();
    if targets.len() != pattern.len() {
        return false;
    }
    fn go(
        p: &[u32],
        h: &[u32],
        t: &[usize],
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == p.len() {
            return true;
        }
        for k in 0..t.len() {
            if used[k] {
                continue;
            }
            let img = t[k];
            if (0..i).all(|j| (p[i] >> j & 1 == 1) == (h[img] >> map[j] & 1 == 1)) {
                used[k] = true;
                map.push(img);
                if go(p, h, t, i + 1, map, used) {
                    return true;
                }
                map.pop();
                used[k] = false;
            }
        }
        false
    }
    go(
        pattern,
        host,
        &targets,
        0,
        &mut Vec::new(),
        &mut vec![false; targets.len()],
    )
}

/// Every member of the family with at most `max_order` vertices.
pub fn d_members_up_to(max_order: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut r = 3;
    while r + 3 <= max_order {
        for mask in 0..d_member_count(r) as u32 {
            out.push(adjacency(
                &build_d_member(r, mask, &DWeighting::default()).unwrap(),
            ));
        }
        r += 2;
    }
    out
}

fn degree_sequence(adj: &[u32], s: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (0..adj.len())
        .filter(|&v| s >> v & 1 == 1)
        .map(|v| (adj[v] & s).count_ones())
        .collect();
    d.sort_unstable();
    d
}

/// Subset search for an induced family member; subsets whose sorted degree
/// sequence differs from the member's are skipped before backtracking.
pub fn brute_has_d(adj: &[u32], members: &[Vec<u32>]) -> bool {
    let n = adj.len();
    members.iter().any(|m| {
        let want = degree_sequence(m, full(m.len()));
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == m.len())
            .any(|s| degree_sequence(adj, s) == want && brute_induced_iso(m, adj, s))
    })
}

pub fn path(n: usize, weights: Vec<u64>) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    WeightedGraph::from_edges(n, &edges, weights).unwrap()
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize, max: u64) -> Vec<u64> {
    (0..n).map(|_| rng.random_range(0..=max)).collect()
}
