//! The hub family `D`.
//!
//! A member is fixed by an odd cycle length `r >= 3` and a set of optional
//! chords. Layout of `build_d_member(r, mask, ..)`:
//!
//! ```text
//!   cycle      0 (hub), 1, 2, ..., r-1      (0-1 and 0-(r-1) are cycle edges)
//!   pendants   r on the hub, r+1 on 1, r+2 on r-1
//!   optional   hub chords {0, j} for j in 2..=r-2; bit j-2 of the mask
//! ```
//!
//! The canonical weighting puts weight on exactly four vertices: the hub,
//! its pendant, and the hub's two cycle neighbours. The smallest member
//! that contains no induced odd corona is `(r = 5, no chords)`, the
//! eight-vertex counterexample.

use serde::{Deserialize, Serialize};

use super::{Budget, Meter, PatternError};
use crate::graph::WeightedGraph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Weights of the four designated vertices; every other vertex gets zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DWeighting {
    pub hub: u64,
    pub hub_pendant: u64,
    pub left_flank: u64,
    pub right_flank: u64,
}

impl Default for DWeighting {
    fn default() -> Self {
        DWeighting {
            hub: 2,
            hub_pendant: 1,
            left_flank: 1,
            right_flank: 1,
        }
    }
}

/// An induced member of `D` inside a host graph.
///
/// `core_vertices[i]` is the host vertex playing member vertex `i` in the
/// layout of [`build_d_member`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DMatch {
    pub r: usize,
    pub optional_edges: u32,
    pub core_vertices: Vec<usize>,
}

impl DMatch {
    /// Re-checks that the matched vertices induce exactly the member
    /// `(r, optional_edges)` under the recorded correspondence.
    pub fn verify(&self, host: &WeightedGraph) -> bool {
        let Ok(pattern) = build_d_member(self.r, self.optional_edges, &DWeighting::default())
        else {
            return false;
        };
        let k = pattern.order();
        if self.core_vertices.len() != k || self.core_vertices.iter().any(|&v| v >= host.order()) {
            return false;
        }
        let image: VertexSet = self.core_vertices.iter().copied().collect();
        if image.len() != k {
            return false;
        }
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                pattern.has_edge(i, j)
                    == host.has_edge(self.core_vertices[i], self.core_vertices[j])
            })
        })
    }

    pub fn vertices(&self) -> VertexSet {
        self.core_vertices.iter().copied().collect()
    }

    pub fn hub(&self) -> usize {
        self.core_vertices[0]
    }
}

/// Optional chords available for cycle length `r`, in mask bit order.
pub fn d_optional_edges(r: usize) -> Vec<(usize, usize)> {
    (2..r.saturating_sub(1)).map(|j| (0, j)).collect()
}

/// Number of members (chord subsets) for cycle length `r`.
pub fn d_member_count(r: usize) -> u64 {
    1u64 << d_optional_edges(r).len()
}

pub fn build_d_member(
    r: usize,
    optional_edges: u32,
    weighting: &DWeighting,
) -> Result<WeightedGraph, PatternError> {
    if r < 3 || r % 2 == 0 {
        return Err(PatternError::InvalidCycleLength(r));
    }
    let n = r + 3;
    if n > MAX_VERTICES {
        return Err(PatternError::TooLarge(n));
    }
    let chords = d_optional_edges(r);
    if chords.len() < 32 && optional_edges >> chords.len() != 0 {
        return Err(PatternError::InvalidOptionalEdges {
            r,
            mask: optional_edges,
            available: chords.len(),
        });
    }
    let mut edges: Vec<(usize, usize)> = (0..r).map(|i| (i, (i + 1) % r)).collect();
    edges.extend([(0, r), (1, r + 1), (r - 1, r + 2)]);
    edges.extend(
        chords
            .iter()
            .enumerate()
            .filter(|&(bit, _)| optional_edges >> bit & 1 == 1)
            .map(|(_, &e)| e),
    );
    let mut weights = vec![0; n];
    weights[0] = weighting.hub;
    weights[r] = weighting.hub_pendant;
    weights[1] = weighting.left_flank;
    weights[r - 1] = weighting.right_flank;
    Ok(WeightedGraph::from_edges(n, &edges, weights).expect("D members are simple graphs"))
}

/// Finds an induced member of `D` with the shortest possible cycle.
pub fn find_induced_d(g: &WeightedGraph, budget: Budget) -> Result<Option<DMatch>, PatternError> {
    find_induced_d_up_to(g, usize::MAX, budget)
}

/// As [`find_induced_d`], restricted to members with cycle length at most
/// `max_r`.
pub fn find_induced_d_up_to(
    g: &WeightedGraph,
    max_r: usize,
    budget: Budget,
) -> Result<Option<DMatch>, PatternError> {
    let meter = Meter::new(budget);
    let mut r = 3;
    while r <= max_r && r + 3 <= g.order() {
        if let Some(m) = search_cycle_length(g, r, &meter)? {
            assert!(m.verify(g), "D witness failed verification: {m:?}");
            return Ok(Some(m));
        }
        r += 2;
    }
    Ok(None)
}

/// Hub `h`, flanks `a` and `b` adjacent to `h`, and a chordless path from
/// `a` to `b` of `r - 1` vertices avoiding `h`. Interior path vertices may
/// or may not see `h` (those are the optional chords). Then three pendants.
fn search_cycle_length(
    g: &WeightedGraph,
    r: usize,
    meter: &Meter,
) -> Result<Option<DMatch>, PatternError> {
    let n = g.order();
    let mut path = Vec::with_capacity(r - 1);
    for hub in 0..n {
        let hub_nbrs = g.neighbors(hub);
        if hub_nbrs.len() < 3 {
            continue;
        }
        for a in hub_nbrs {
            for b in hub_nbrs.iter().filter(|&b| b > a) {
                meter.tick()?;
                path.clear();
                path.push(a);
                let found = walk(g, r, hub, b, &mut path, VertexSet::singleton(a), meter)?;
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
    }
    Ok(None)
}

fn walk(
    g: &WeightedGraph,
    r: usize,
    hub: usize,
    end: usize,
    path: &mut Vec<usize>,
    on_path: VertexSet,
    meter: &Meter,
) -> Result<Option<DMatch>, PatternError> {
    meter.tick()?;
    let last = *path.last().expect("nonempty");
    let earlier = on_path.without(last);
    if path.len() == r - 2 {
        // only the far flank may come next
        if g.has_edge(last, end) && g.neighbors(end).intersection(earlier).is_empty() {
            path.push(end);
            let found = attach_pendants(g, r, hub, path, meter)?;
            path.pop();
            return Ok(found);
        }
        return Ok(None);
    }
    for v in g.neighbors(last).difference(on_path) {
        if v == hub || v == end || !g.neighbors(v).intersection(earlier).is_empty() {
            continue;
        }
        path.push(v);
        let found = walk(g, r, hub, end, path, on_path.with(v), meter)?;
        path.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn attach_pendants(
    g: &WeightedGraph,
    r: usize,
    hub: usize,
    path: &[usize],
    meter: &Meter,
) -> Result<Option<DMatch>, PatternError> {
    let cycle: VertexSet = path.iter().copied().collect::<VertexSet>().with(hub);
    let a = path[0];
    let b = path[path.len() - 1];
    let private = |x: usize| -> VertexSet {
        g.neighbors(x)
            .difference(cycle)
            .iter()
            .filter(|&y| g.neighbors(y).intersection(cycle) == VertexSet::singleton(x))
            .collect()
    };
    let (ph_cands, pa_cands, pb_cands) = (private(hub), private(a), private(b));
    for ph in ph_cands {
        for pa in pa_cands.without(ph).difference(g.neighbors(ph)) {
            let Some(pb) = pb_cands
                .without(ph)
                .without(pa)
                .difference(g.neighbors(ph))
                .difference(g.neighbors(pa))
                .iter()
                .next()
            else {
                continue;
            };
            meter.tick()?;
            let mut core = Vec::with_capacity(r + 3);
            core.push(hub);
            core.extend_from_slice(path);
            core.extend([ph, pa, pb]);
            let mut mask = 0u32;
            for (bit, &(_, j)) in d_optional_edges(r).iter().enumerate() {
                if g.has_edge(hub, core[j]) {
                    mask |= 1 << bit;
                }
            }
            return Ok(Some(DMatch {
                r,
                optional_edges: mask,
                core_vertices: core,
            }));
        }
    }
    Ok(None)
}
