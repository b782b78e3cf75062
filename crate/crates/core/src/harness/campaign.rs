use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHasher;
use serde::{Deserialize, Serialize};

use super::weights::{enumerate_weightings, WeightSet};
use super::{HarnessError, Structure, Verdicts};
use crate::enumerate::connected_graphs;
use crate::graph::WeightedGraph;
use crate::graph6::{parse_graph6, to_graph6};
use crate::patterns::{is_induced_cycle, Budget, CoronaMatch, DMatch};
use crate::solver::{legal_moves, Solver};
use crate::table::{StateTable, MAX_TABLE_ORDER};
use crate::vertex_set::VertexSet;

/// Stated in every report header.
pub const INCOMPLETENESS_NOTE: &str =
    "weights searched by bounded integer enumeration over the listed \
set only; real-valued and larger integer weightings are not covered";

/// Where a campaign's graphs come from.
#[derive(Debug, Clone)]
pub enum GraphSource {
    /// Built-in isomorph-free connected graphs of every order in the range.
    Enumerated { min_order: usize, max_order: usize },
    /// One graph6 line per graph. `name` is echoed in the report header.
    Graph6 { name: String, text: String },
}

impl GraphSource {
    fn describe(&self) -> String {
        match self {
            GraphSource::Enumerated {
                min_order,
                max_order,
            } => format!("enumerated connected graphs, orders {min_order}..={max_order}"),
            GraphSource::Graph6 { name, .. } => format!("graph6 stream {name}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Filters {
    pub even_only: bool,
    pub bipartite_only: bool,
    pub codd_free_only: bool,
    pub d_free_only: bool,
}

impl Filters {
    fn admits(&self, n: usize, s: &Structure) -> bool {
        (!self.even_only || n % 2 == 0)
            && (!self.bipartite_only || s.odd_cycle.is_none())
            && (!self.codd_free_only || s.corona.is_none())
            && (!self.d_free_only || s.d_member.is_none())
    }
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub id: String,
    pub source: GraphSource,
    pub weights: WeightSet,
    pub filters: Filters,
    /// Per-graph cap on the number of weightings.
    pub weight_budget: u64,
    pub pattern_budget: Budget,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    /// Random weightings per graph instead of full enumeration.
    pub sampling: Option<Sampling>,
}

/// Seeded random weightings. Each graph draws from its own stream, derived
/// from the seed and its graph6 text, so results do not depend on worker
/// count or input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Sampling {
    pub per_graph: usize,
    pub seed: u64,
}

impl Sampling {
    fn weightings(&self, graph6: &str, n: usize, set: &WeightSet) -> Vec<Vec<u64>> {
        let mut h = FxHasher::default();
        graph6.hash(&mut h);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ h.finish());
        let mut out: Vec<Vec<u64>> = (0..self.per_graph)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        *set.values()
                            .choose(&mut rng)
                            .expect("weight set is nonempty")
                    })
                    .collect()
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl Campaign {
    pub fn new(id: impl Into<String>, source: GraphSource, weights: WeightSet) -> Self {
        Campaign {
            id: id.into(),
            source,
            weights,
            filters: Filters::default(),
            weight_budget: 1 << 20,
            pattern_budget: Budget::default(),
            workers: None,
            sampling: None,
        }
    }

    pub fn with_filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }

    pub fn with_workers(mut self, workers: Option<usize>) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_sampling(mut self, sampling: Option<Sampling>) -> Self {
        self.sampling = sampling;
        self
    }
}

/// A graph6 line that was skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderCounts {
    pub graphs: u64,
    pub instances: u64,
    pub bob_wins: u64,
    pub bipartite_bob_wins: u64,
    pub codd_free_bob_wins: u64,
    pub d_free_bob_wins: u64,
}

impl OrderCounts {
    fn add(&mut self, other: &OrderCounts) {
        self.graphs += other.graphs;
        self.instances += other.instances;
        self.bob_wins += other.bob_wins;
        self.bipartite_bob_wins += other.bipartite_bob_wins;
        self.codd_free_bob_wins += other.codd_free_bob_wins;
        self.d_free_bob_wins += other.d_free_bob_wins;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportHeader {
    pub campaign: String,
    pub source: String,
    pub weights: WeightSet,
    pub filters: Filters,
    pub weight_search: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
    pub graphs_read: u64,
    pub graphs_filtered_out: u64,
    pub line_errors: Vec<LineError>,
    pub by_order: BTreeMap<usize, OrderCounts>,
    pub totals: OrderCounts,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Witnesses {
    /// Optimal playout, lowest id first among ties.
    pub pv: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_cycle: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corona: Option<CoronaMatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_member: Option<DMatch>,
}

/// One Bob-win instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportRow {
    pub graph6: String,
    pub weights: Vec<u64>,
    pub diff_value: i64,
    pub verdicts: Verdicts,
    pub witnesses: Witnesses,
}

impl ReportRow {
    pub fn graph(&self) -> Result<WeightedGraph, String> {
        let g = parse_graph6(&self.graph6).map_err(|e| e.to_string())?;
        g.with_weights(self.weights.clone())
            .map_err(|e| e.to_string())
    }

    fn sort_key(&self) -> (usize, &str, &[u64]) {
        (self.weights.len(), &self.graph6, &self.weights)
    }

    /// Re-solves and re-checks every recorded field.
    pub fn verify(&self, budget: Budget) -> Result<(), String> {
        let g = self.graph()?;
        let mut solver = Solver::new(g.clone());
        let d = solver.solve_diff(g.vertices()).map_err(|e| e.to_string())?;
        if d != self.diff_value {
            return Err(format!(
                "recorded difference {} but solved {d}",
                self.diff_value
            ));
        }
        if d >= 0 {
            return Err("not a Bob win".into());
        }
        let structure = Structure::compute(&g, budget).map_err(|e| e.to_string())?;
        if structure.verdicts(false) != self.verdicts {
            return Err("verdicts do not match recomputation".into());
        }
        let w = &self.witnesses;
        let mut remaining = g.vertices();
        let mut signed = 0i64;
        for (ply, &v) in w.pv.iter().enumerate() {
            let legal = legal_moves(&g, remaining).map_err(|e| e.to_string())?;
            if !legal.contains(v) {
                return Err(format!("pv move {v} at ply {ply} is illegal"));
            }
            let gain = g.weight(v) as i64;
            signed += if ply % 2 == 0 { gain } else { -gain };
            remaining.remove(v);
        }
        if !remaining.is_empty() || signed != d {
            return Err("pv does not replay to the recorded value".into());
        }
        if let Some(c) = &w.odd_cycle {
            if c.len() % 2 == 0 || !is_induced_cycle(&g, c) {
                return Err("odd cycle witness is not an induced odd cycle".into());
            }
        }
        if w.odd_cycle.is_some() == self.verdicts.bipartite {
            return Err("odd cycle witness contradicts bipartite verdict".into());
        }
        match &w.corona {
            Some(m) if !m.verify(&g) || self.verdicts.codd_free => {
                return Err("corona witness rejected".into())
            }
            None if !self.verdicts.codd_free => return Err("missing corona witness".into()),
            _ => {}
        }
        match &w.d_member {
            Some(m) if !m.verify(&g) || self.verdicts.d_free => {
                return Err("D witness rejected".into())
            }
            None if !self.verdicts.d_free => return Err("missing D witness".into()),
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub header: ReportHeader,
    pub rows: Vec<ReportRow>,
    /// Wall-clock time; shown in summaries, never persisted.
    pub elapsed: Duration,
}

impl Report {
    /// Header line then one line per row.
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&self.header).expect("header serialises");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("row serialises"));
            out.push('\n');
        }
        out
    }

    /// Bob wins on even-order bipartite graphs.
    pub fn bipartite_even_bob_wins(&self) -> u64 {
        self.even_sum(|c| c.bipartite_bob_wins)
    }

    pub fn codd_free_even_bob_wins(&self) -> u64 {
        self.even_sum(|c| c.codd_free_bob_wins)
    }

    pub fn d_free_even_bob_wins(&self) -> u64 {
        self.even_sum(|c| c.d_free_bob_wins)
    }

    fn even_sum(&self, f: impl Fn(&OrderCounts) -> u64) -> u64 {
        self.header
            .by_order
            .iter()
            .filter(|(n, _)| *n % 2 == 0)
            .map(|(_, c)| f(c))
            .sum()
    }

    /// Plain-text table for terminals.
    pub fn summary(&self) -> String {
        let h = &self.header;
        let mut s = format!(
            "campaign {}: {}\nweights {{{}}}; {}\n",
            h.campaign, h.source, h.weights, h.weight_search
        );
        s.push_str(&format!(
            "{:>5} {:>8} {:>10} {:>8} {:>10} {:>10} {:>8}\n",
            "n", "graphs", "instances", "bobWins", "bipartite", "coddFree", "dFree"
        ));
        let line = |label: String, c: &OrderCounts| {
            format!(
                "{:>5} {:>8} {:>10} {:>8} {:>10} {:>10} {:>8}\n",
                label,
                c.graphs,
                c.instances,
                c.bob_wins,
                c.bipartite_bob_wins,
                c.codd_free_bob_wins,
                c.d_free_bob_wins
            )
        };
        for (n, c) in &h.by_order {
            s.push_str(&line(n.to_string(), c));
        }
        s.push_str(&line("all".into(), &h.totals));
        s.push_str(&format!(
            "graphs read {}, filtered out {}, skipped lines {}; {:.2?}\n",
            h.graphs_read,
            h.graphs_filtered_out,
            h.line_errors.len(),
            self.elapsed
        ));
        s
    }
}

enum Item {
    Graph(WeightedGraph),
    Skip(LineError),
}

fn collect_graphs(source: &GraphSource) -> Vec<Item> {
    match source {
        GraphSource::Enumerated {
            min_order,
            max_order,
        } => (*min_order.max(&1)..=*max_order)
            .flat_map(connected_graphs)
            .map(Item::Graph)
            .collect(),
        GraphSource::Graph6 { text, .. } => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                let line = i + 1;
                match parse_graph6(l.trim()) {
                    Err(e) => Item::Skip(LineError {
                        line,
                        message: e.to_string(),
                    }),
                    Ok(g) if g.order() > MAX_TABLE_ORDER => Item::Skip(LineError {
                        line,
                        message: format!(
                            "order {} exceeds the campaign limit {MAX_TABLE_ORDER}",
                            g.order()
                        ),
                    }),
                    Ok(g) if g.order() == 0 || !g.is_connected() => Item::Skip(LineError {
                        line,
                        message: "graph is empty or disconnected".into(),
                    }),
                    Ok(g) => Item::Graph(g),
                }
            })
            .collect(),
    }
}

enum Outcome {
    Skipped(LineError),
    Filtered,
    Solved {
        n: usize,
        counts: OrderCounts,
        rows: Vec<ReportRow>,
    },
}

fn run_graph(c: &Campaign, index: usize, g: &WeightedGraph) -> Result<Outcome, HarnessError> {
    let n = g.order();
    let structure = match Structure::compute(g, c.pattern_budget) {
        Ok(s) => s,
        Err(e) => {
            return Ok(Outcome::Skipped(LineError {
                line: index + 1,
                message: e.to_string(),
            }))
        }
    };
    if !c.filters.admits(n, &structure) {
        return Ok(Outcome::Filtered);
    }
    let graph6 = to_graph6(g);
    let weightings: Box<dyn Iterator<Item = Vec<u64>>> = match &c.sampling {
        Some(s) => Box::new(s.weightings(&graph6, n, &c.weights).into_iter()),
        None => Box::new(enumerate_weightings(n, &c.weights, c.weight_budget)?),
    };
    let table = StateTable::new(g)?;
    let verdicts = structure.verdicts(false);
    let mut counts = OrderCounts {
        graphs: 1,
        ..OrderCounts::default()
    };
    let mut rows = Vec::new();
    let mut scratch = Vec::new();
    let mut signed = vec![0i64; n];
    for w in weightings {
        for (s, &x) in signed.iter_mut().zip(&w) {
            *s = x as i64;
        }
        counts.instances += 1;
        let d = table.diff(&signed, &mut scratch);
        if d >= 0 {
            continue;
        }
        let weighted = g
            .with_weights(w.clone())
            .map_err(|e| HarnessError::Precondition(e.to_string()))?;
        let mut solver = Solver::new(weighted);
        let check = solver.solve_diff(VertexSet::full(n))?;
        assert_eq!(
            check, d,
            "state table and memoised solver disagree on {graph6} {w:?}"
        );
        counts.bob_wins += 1;
        counts.bipartite_bob_wins += u64::from(verdicts.bipartite);
        counts.codd_free_bob_wins += u64::from(verdicts.codd_free);
        counts.d_free_bob_wins += u64::from(verdicts.d_free);
        rows.push(ReportRow {
            graph6: graph6.clone(),
            weights: w,
            diff_value: d,
            verdicts,
            witnesses: Witnesses {
                pv: solver.principal_variation_from(VertexSet::full(n))?,
                odd_cycle: structure.odd_cycle.clone(),
                corona: structure.corona.clone(),
                d_member: structure.d_member.clone(),
            },
        });
    }
    Ok(Outcome::Solved { n, counts, rows })
}

/// Solves every weighting of every admitted graph and collects the Bob
/// wins. Rows come out sorted by order, graph6 and weights, so the report
/// does not depend on the worker count or input order.
pub fn find_bob_wins(c: &Campaign) -> Result<Report, HarnessError> {
    let start = Instant::now();
    let items = collect_graphs(&c.source);
    let run = || -> Vec<Result<Outcome, HarnessError>> {
        items
            .par_iter()
            .enumerate()
            .map(|(i, item)| match item {
                Item::Skip(e) => Ok(Outcome::Skipped(e.clone())),
                Item::Graph(g) => run_graph(c, i, g),
            })
            .collect()
    };
    let outcomes = match c.workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| HarnessError::Precondition(e.to_string()))?
            .install(run),
        None => run(),
    };

    let mut line_errors = Vec::new();
    let mut by_order: BTreeMap<usize, OrderCounts> = BTreeMap::new();
    let mut totals = OrderCounts::default();
    let mut rows = Vec::new();
    let mut filtered = 0;
    for outcome in outcomes {
        match outcome? {
            Outcome::Skipped(e) => line_errors.push(e),
            Outcome::Filtered => filtered += 1,
            Outcome::Solved { n, counts, rows: r } => {
                by_order.entry(n).or_default().add(&counts);
                totals.add(&counts);
                rows.extend(r);
            }
        }
    }
    rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    line_errors.sort_by_key(|e| e.line);
    let header = ReportHeader {
        campaign: c.id.clone(),
        source: c.source.describe(),
        weights: c.weights.clone(),
        filters: c.filters,
        weight_search: match c.sampling {
            Some(s) => format!(
                "{INCOMPLETENESS_NOTE}; {} seeded random weightings per graph (seed {}), not exhaustive",
                s.per_graph, s.seed
            ),
            None => INCOMPLETENESS_NOTE.into(),
        },
        sampling: c.sampling,
        graphs_read: items.len() as u64,
        graphs_filtered_out: filtered,
        line_errors,
        by_order,
        totals,
    };
    Ok(Report {
        header,
        rows,
        elapsed: start.elapsed(),
    })
}

/// Parses a JSON-lines report and re-verifies every row.
pub fn load_report(text: &str, budget: Budget) -> Result<Report, HarnessError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or(HarnessError::Report {
        line: 1,
        message: "empty report".into(),
    })?;
    let header: ReportHeader = serde_json::from_str(first).map_err(|e| HarnessError::Report {
        line: 1,
        message: e.to_string(),
    })?;
    let mut rows = Vec::new();
    for (i, line) in lines {
        let fail = |message: String| HarnessError::Report {
            line: i + 1,
            message,
        };
        let row: ReportRow = serde_json::from_str(line).map_err(|e| fail(e.to_string()))?;
        row.verify(budget).map_err(fail)?;
        rows.push(row);
    }
    if rows.len() as u64 != header.totals.bob_wins {
        return Err(HarnessError::Report {
            line: 1,
            message: format!(
                "header counts {} Bob wins, report lists {}",
                header.totals.bob_wins,
                rows.len()
            ),
        });
    }
    Ok(Report {
        header,
        rows,
        elapsed: Duration::ZERO,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerated_campaign() {
        let c = Campaign::new(
            "t",
            GraphSource::Enumerated {
                min_order: 1,
                max_order: 4,
            },
            WeightSet::binary(),
        );
        let r = find_bob_wins(&c).unwrap();
        // P3 with the middle weighted is the only order-3 Bob win pattern.
        assert!(r.header.by_order[&3].bob_wins > 0);
        assert_eq!(r.bipartite_even_bob_wins(), 0);
        let text = r.to_jsonl();
        let back = load_report(&text, Budget::default()).unwrap();
        assert_eq!(back.rows, r.rows);
        assert_eq!(back.header, r.header);
    }

    #[test]
    fn bad_lines_are_counted() {
        let text = "Ch\nnot graph6!\n\nCC\nC~\n".to_string();
        let c = Campaign::new(
            "t",
            GraphSource::Graph6 {
                name: "inline".into(),
                text,
            },
            WeightSet::binary(),
        );
        let r = find_bob_wins(&c).unwrap();
        let lines: Vec<usize> = r.header.line_errors.iter().map(|e| e.line).collect();
        // "CC" is a disconnected graph on four vertices
        assert_eq!(lines, vec![2, 4]);
        assert_eq!(r.header.graphs_read, 4);
        assert_eq!(r.header.totals.graphs, 2);
    }

    #[test]
    fn tampered_report_is_rejected() {
        let c = Campaign::new(
            "t",
            GraphSource::Enumerated {
                min_order: 3,
                max_order: 3,
            },
            WeightSet::binary(),
        );
        let r = find_bob_wins(&c).unwrap();
        let text = r
            .to_jsonl()
            .replacen("\"diffValue\":-1", "\"diffValue\":-3", 1);
        assert!(matches!(
            load_report(&text, Budget::default()),
            Err(HarnessError::Report { line: 2, .. })
        ));
    }

    #[test]
    fn worker_count_does_not_change_report() {
        let mk = |k| {
            Campaign::new(
                "t",
                GraphSource::Enumerated {
                    min_order: 2,
                    max_order: 5,
                },
                WeightSet::binary(),
            )
            .with_workers(Some(k))
        };
        assert_eq!(
            find_bob_wins(&mk(1)).unwrap().to_jsonl(),
            find_bob_wins(&mk(4)).unwrap().to_jsonl()
        );
    }

    #[test]
    fn sampling_is_seeded_and_a_subset() {
        let mk = |seed, k| {
            Campaign::new(
                "t",
                GraphSource::Enumerated {
                    min_order: 3,
                    max_order: 6,
                },
                WeightSet::up_to(3),
            )
            .with_workers(Some(k))
            .with_sampling(Some(Sampling {
                per_graph: 20,
                seed,
            }))
        };
        let a = find_bob_wins(&mk(7, 1)).unwrap();
        assert_eq!(a.to_jsonl(), find_bob_wins(&mk(7, 3)).unwrap().to_jsonl());
        assert_ne!(a.to_jsonl(), find_bob_wins(&mk(8, 1)).unwrap().to_jsonl());
        assert!(a.header.totals.instances <= 20 * a.header.totals.graphs);
        let full = find_bob_wins(&Campaign::new(
            "t",
            GraphSource::Enumerated {
                min_order: 3,
                max_order: 6,
            },
            WeightSet::up_to(3),
        ))
        .unwrap();
        assert!(a.rows.iter().all(|r| full.rows.contains(r)));
        let back = load_report(&a.to_jsonl(), Budget::default()).unwrap();
        assert_eq!(back.header, a.header);
    }
}
