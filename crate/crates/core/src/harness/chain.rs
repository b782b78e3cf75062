use serde::{Deserialize, Serialize};

use super::shrink::{is_locally_minimal, ShrinkOptions};
use super::HarnessError;
use crate::graph::{articulation_points, reach, WeightedGraph};
use crate::patterns::{find_induced_odd_cycle, is_induced_cycle, CoronaMatch};
use crate::solver::Solver;

/// The four steps from a minimal `{0,1}` Bob win to an induced odd corona.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ChainLink {
    /// Every non-cutvertex has weight 0 and is a leaf.
    NonCutvertexLeaves,
    /// The graph is not bipartite.
    NonBipartite,
    /// Some induced odd cycle consists of cutvertices only.
    CutvertexCycle,
    /// Pendants chosen off each cycle vertex form a verified corona.
    Corona,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum LinkOutcome {
    Holds,
    Fails {
        detail: String,
    },
    /// Not checked because an earlier link failed.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainVerdict {
    pub links: Vec<(ChainLink, LinkOutcome)>,
    pub odd_cycle: Option<Vec<usize>>,
    pub corona: Option<CoronaMatch>,
}

impl ChainVerdict {
    pub fn holds(&self) -> bool {
        self.links.iter().all(|(_, o)| *o == LinkOutcome::Holds)
    }

    /// Links that failed: each one is a falsification event.
    pub fn failures(&self) -> Vec<(ChainLink, String)> {
        self.links
            .iter()
            .filter_map(|(l, o)| match o {
                LinkOutcome::Fails { detail } => Some((*l, detail.clone())),
                _ => None,
            })
            .collect()
    }
}

/// Checks each link of the argument on a minimal even-order `{0,1}` Bob
/// win. Minimality is with respect to removing an opening and an optimal
/// reply of no greater weight, after any opening.
pub fn verify_theorem_chain(g: &WeightedGraph) -> Result<ChainVerdict, HarnessError> {
    if g.order() % 2 != 0 {
        return Err(HarnessError::Precondition(format!(
            "order {} is odd",
            g.order()
        )));
    }
    if g.weights().iter().any(|&w| w > 1) {
        return Err(HarnessError::Precondition(
            "weights must lie in {0,1}".into(),
        ));
    }
    let d = Solver::new(g.clone()).solve_diff(g.vertices())?;
    if d >= 0 {
        return Err(HarnessError::Precondition(
            "instance is an Alice win".into(),
        ));
    }
    if !is_locally_minimal(g, ShrinkOptions::pairs_only())? {
        return Err(HarnessError::Precondition("instance is not minimal".into()));
    }

    let all = g.vertices();
    let cut = articulation_points(g, all);
    let mut links = Vec::with_capacity(4);

    let bad: Vec<usize> = all
        .difference(cut)
        .iter()
        .filter(|&u| g.weight(u) != 0 || g.degree(u) != 1)
        .collect();
    links.push((
        ChainLink::NonCutvertexLeaves,
        if bad.is_empty() {
            LinkOutcome::Holds
        } else {
            LinkOutcome::Fails {
                detail: format!("non-cutvertices {bad:?} are weighted or not leaves"),
            }
        },
    ));

    let odd_cycle = find_induced_odd_cycle(g);
    let Some(cycle) = odd_cycle.clone() else {
        links.push((
            ChainLink::NonBipartite,
            LinkOutcome::Fails {
                detail: "minimal Bob win on a bipartite graph".into(),
            },
        ));
        links.push((ChainLink::CutvertexCycle, LinkOutcome::Skipped));
        links.push((ChainLink::Corona, LinkOutcome::Skipped));
        return Ok(ChainVerdict {
            links,
            odd_cycle: None,
            corona: None,
        });
    };
    links.push((ChainLink::NonBipartite, LinkOutcome::Holds));

    let not_cut: Vec<usize> = cycle
        .iter()
        .copied()
        .filter(|&x| !cut.contains(x))
        .collect();
    let cycle_ok = is_induced_cycle(g, &cycle) && cycle.len() % 2 == 1 && not_cut.is_empty();
    links.push((
        ChainLink::CutvertexCycle,
        if cycle_ok {
            LinkOutcome::Holds
        } else {
            LinkOutcome::Fails {
                detail: format!("cycle {cycle:?} has non-cutvertices {not_cut:?}"),
            }
        },
    ));
    if !cycle_ok {
        links.push((ChainLink::Corona, LinkOutcome::Skipped));
        return Ok(ChainVerdict {
            links,
            odd_cycle,
            corona: None,
        });
    }

    let r = cycle.len();
    let mut pendants = Vec::with_capacity(r);
    for i in 0..r {
        let (x, next) = (cycle[i], cycle[(i + 1) % r]);
        let side = reach(g, all.without(x), next);
        match g.neighbors(x).difference(side).first() {
            Some(y) => pendants.push(y),
            None => break,
        }
    }
    let corona = (pendants.len() == r).then(|| CoronaMatch {
        r,
        cycle: cycle.clone(),
        pendants,
    });
    let corona_ok = corona.as_ref().is_some_and(|m| m.verify(g));
    links.push((
        ChainLink::Corona,
        if corona_ok {
            LinkOutcome::Holds
        } else {
            LinkOutcome::Fails {
                detail: format!("pendant construction on {cycle:?} gave {corona:?}"),
            }
        },
    ));
    Ok(ChainVerdict {
        links,
        odd_cycle,
        corona,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::build_corona;

    #[test]
    fn preconditions() {
        let p3 = WeightedGraph::from_edges(3, &[(0, 1), (1, 2)], vec![0, 1, 0]).unwrap();
        assert!(matches!(
            verify_theorem_chain(&p3),
            Err(HarnessError::Precondition(_))
        ));
        let k2 = WeightedGraph::from_edges(2, &[(0, 1)], vec![1, 0]).unwrap();
        assert!(matches!(
            verify_theorem_chain(&k2),
            Err(HarnessError::Precondition(_))
        ));
        let heavy = WeightedGraph::from_edges(2, &[(0, 1)], vec![2, 0]).unwrap();
        assert!(matches!(
            verify_theorem_chain(&heavy),
            Err(HarnessError::Precondition(_))
        ));
    }

    #[test]
    fn net_with_binary_weights() {
        // The net, weights 1 on the triangle: if Bob wins and the instance is
        // minimal, every link must hold.
        let net = build_corona(3)
            .unwrap()
            .with_weights(vec![1, 1, 1, 0, 0, 0])
            .unwrap();
        let d = Solver::new(net.clone()).solve_diff(net.vertices()).unwrap();
        if d < 0 && is_locally_minimal(&net, ShrinkOptions::pairs_only()).unwrap() {
            let v = verify_theorem_chain(&net).unwrap();
            assert!(v.holds(), "{v:?}");
        }
    }
}
