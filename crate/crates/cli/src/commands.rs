use std::error::Error;
use std::fs;
use std::net::SocketAddr;
use std::path::Path;
use std::time::Duration;

use grabbing_core::harness::{
    audit_theorem_chain, certify_d_family, certify_fig1, find_bob_wins, Campaign, Fig1Config,
    Filters, GraphSource, Sampling, WeightSet,
};
use grabbing_core::{
    bipartiteness, build_corona, build_d_member, d_optional_edges, find_corona_odd, find_induced_d,
    fixtures, format_scaled, parse_instance, Bipartiteness, Budget, DWeighting, InstanceDocument,
    Solver, WeightedGraph,
};
use serde_json::json;

use crate::{BudgetArg, Command, GenPattern, SearchArgs, Status, VerifyTarget};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Solve { instance, json } => solve(&load(&instance)?, json),
        Command::Detect {
            instance,
            budget,
            json,
        } => detect(&load(&instance)?, budget, json),
        Command::Search(args) => search(args),
        Command::Verify { target } => verify(target),
        Command::Gen { pattern } => generate(pattern),
        Command::Serve {
            port,
            host,
            idle_secs,
        } => serve(SocketAddr::new(host, port), Duration::from_secs(idle_secs)),
    }
}

fn load(path: &Path) -> Result<WeightedGraph> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn print_json(value: &impl serde::Serialize) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("values serialise")
    );
}

fn solve(g: &WeightedGraph, as_json: bool) -> Result<Status> {
    let mut solver = Solver::new(g.clone());
    let outcome = solver.outcome()?;
    let pv = solver.principal_variation_from(g.vertices())?;
    let evals = solver.evaluate_moves(g.vertices())?;
    let scaled = |x: i128| format_scaled(x, g.scale());
    let verdict = if outcome.alice_wins {
        "Alice wins"
    } else {
        "Bob wins"
    };
    if as_json {
        print_json(&json!({
            "verdict": verdict,
            "alice": scaled(outcome.alice_total as i128),
            "bob": scaled(outcome.bob_total as i128),
            "diffValue": scaled(outcome.diff_value as i128),
            "pv": pv,
            "evals": evals.iter().map(|e| json!({
                "vertex": e.vertex,
                "valueAfter": scaled(e.value_after as i128),
                "optimal": e.optimal,
            })).collect::<Vec<_>>(),
        }));
        return Ok(Status::Ok);
    }
    outln!(
        "order {}, size {}, total weight {}",
        g.order(),
        g.edge_count(),
        scaled(g.total_weight() as i128)
    );
    outln!("Alice {}", scaled(outcome.alice_total as i128));
    outln!("Bob {}", scaled(outcome.bob_total as i128));
    outln!("{verdict}");
    outln!("PV {pv:?}");
    outln!("opening values (Alice's final margin after each grab):");
    for e in &evals {
        outln!(
            "  {:>3}  {:>8}{}",
            e.vertex,
            scaled(e.value_after as i128),
            if e.optimal { "  optimal" } else { "" }
        );
    }
    Ok(Status::Ok)
}

fn detect(g: &WeightedGraph, budget: BudgetArg, as_json: bool) -> Result<Status> {
    let budget = Budget::new(budget.nodes);
    let parts = bipartiteness(g);
    let corona = find_corona_odd(g, budget)?;
    let d = find_induced_d(g, budget)?;
    if as_json {
        let (bipartite, colouring, odd_cycle) = match &parts {
            Bipartiteness::Bipartite { colouring } => (true, Some(colouring), None),
            Bipartiteness::OddCycle(c) => (false, None, Some(c)),
        };
        print_json(&json!({
            "bipartite": bipartite,
            "colouring": colouring,
            "oddCycle": odd_cycle,
            "coddFree": corona.is_none(),
            "corona": corona,
            "dFree": d.is_none(),
            "dMember": d,
        }));
        return Ok(Status::Ok);
    }
    match &parts {
        Bipartiteness::Bipartite { colouring } => outln!("bipartite: yes, colouring {colouring:?}"),
        Bipartiteness::OddCycle(c) => outln!("bipartite: no, odd cycle {c:?}"),
    }
    match &corona {
        Some(m) => outln!(
            "odd corona: r = {}, cycle {:?}, pendants {:?}",
            m.r,
            m.cycle,
            m.pendants
        ),
        None => outln!("odd corona: none"),
    }
    match &d {
        Some(m) => outln!(
            "family D: r = {}, optional edges {:?}, vertices {:?}",
            m.r,
            chords(m.r, m.optional_edges),
            m.core_vertices
        ),
        None => outln!("family D: none"),
    }
    Ok(Status::Ok)
}

fn chords(r: usize, mask: u32) -> Vec<(usize, usize)> {
    d_optional_edges(r)
        .into_iter()
        .enumerate()
        .filter(|(j, _)| mask >> j & 1 == 1)
        .map(|(_, e)| e)
        .collect()
}

/// `N` is `1..=N`; `A..B` and `A..=B` are both inclusive.
fn parse_orders(text: &str) -> Result<(usize, usize)> {
    let bad = || format!("invalid --n {text:?}: expected N or A..B");
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim_start_matches('=')
                .trim()
                .parse()
                .map_err(|_| bad())?,
        ),
        None => (1, text.trim().parse().map_err(|_| bad())?),
    };
    if lo == 0 || lo > hi || hi > grabbing_core::enumerate::MAX_ENUM_ORDER {
        return Err(format!(
            "invalid --n {text:?}: orders must satisfy 1 <= A <= B <= {}",
            grabbing_core::enumerate::MAX_ENUM_ORDER
        )
        .into());
    }
    Ok((lo, hi))
}

fn parse_filters(names: &[String]) -> Result<Filters> {
    let mut f = Filters::default();
    for name in names {
        match name.trim() {
            "even" => f.even_only = true,
            "bipartite" => f.bipartite_only = true,
            "codd-free" => f.codd_free_only = true,
            "d-free" => f.d_free_only = true,
            "" => {}
            other => {
                return Err(format!(
                    "unknown filter {other:?}: expected even, bipartite, codd-free or d-free"
                )
                .into())
            }
        }
    }
    Ok(f)
}

fn search(args: SearchArgs) -> Result<Status> {
    let weights: WeightSet = args
        .weights
        .parse()
        .map_err(|e| format!("invalid --weights: {e}"))?;
    let filters = parse_filters(&args.filter)?;
    let source = match (&args.n, &args.graphs) {
        (Some(n), None) => {
            let (min_order, max_order) = parse_orders(n)?;
            GraphSource::Enumerated {
                min_order,
                max_order,
            }
        }
        (None, Some(path)) => GraphSource::Graph6 {
            name: path.display().to_string(),
            text: fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?,
        },
        _ => unreachable!("clap enforces exactly one graph source"),
    };
    if args.sample == Some(0) {
        return Err("--sample must be at least 1".into());
    }
    let mut campaign = Campaign::new(args.id, source, weights)
        .with_filters(filters)
        .with_sampling(args.sample.map(|per_graph| Sampling {
            per_graph,
            seed: args.seed,
        }));
    campaign.weight_budget = args.weight_budget;
    campaign.pattern_budget = Budget::new(args.budget.nodes);
    let report = find_bob_wins(&campaign)?;

    let jsonl = report.to_jsonl();
    match &args.out {
        Some(path) => {
            fs::write(path, &jsonl).map_err(|e| format!("{}: {e}", path.display()))?;
            out!("{}", report.summary());
            outln!("report written to {}", path.display());
        }
        None => {
            out!("{jsonl}");
            eprint!("{}", report.summary());
        }
    }
    let bipartite = report.bipartite_even_bob_wins();
    let d_free = report.d_free_even_bob_wins();
    eprintln!(
        "even-order Bob wins: {} odd-corona-free, {} D-free, {} bipartite",
        report.codd_free_even_bob_wins(),
        d_free,
        bipartite
    );
    if bipartite > 0 || d_free > 0 {
        eprintln!(
            "FALSIFICATION: {bipartite} even-order bipartite and {d_free} even-order D-free Bob wins; \
             witnesses are in the report"
        );
        return Ok(Status::Failed);
    }
    Ok(Status::Ok)
}

fn verdict_status(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn verify(target: VerifyTarget) -> Result<Status> {
    match target {
        VerifyTarget::Fig1 {
            instance,
            weight_bound,
            max_nonzero,
            max_order,
            no_edge_sweep,
            json,
        } => {
            let g = match instance {
                Some(path) => load(&path)?,
                None => fixtures::fig1(),
            };
            let config = Fig1Config {
                weight_bound,
                max_nonzero,
                max_order,
                edge_minimality: !no_edge_sweep,
            };
            let cert = certify_fig1(&g, config)?;
            if json {
                print_json(&cert);
            } else {
                outln!(
                    "instance: {} vertices, {} edges, D = {}",
                    cert.order,
                    cert.edges,
                    cert.diff_value
                        .map_or("n/a".into(), |d| format_scaled(d as i128, g.scale()))
                );
                for (name, ok) in cert.clauses() {
                    outln!("  [{}] {name}", if ok { "ok" } else { "FAIL" });
                }
                for s in cert.sweep.iter().chain(&cert.edge_sweep) {
                    let scope = s
                        .edges_below
                        .map_or(String::new(), |m| format!(", fewer than {m} edges"));
                    outln!(
                        "  order {}{scope}: {} graphs, {} odd-corona-free, {} weightings, {} Bob wins",
                        s.order, s.graphs, s.codd_free_graphs, s.weightings, s.bob_wins
                    );
                }
                outln!("  note: {}", cert.note);
                outln!(
                    "{}",
                    if cert.certified {
                        "certified"
                    } else {
                        "NOT certified"
                    }
                );
            }
            Ok(verdict_status(cert.certified))
        }
        VerifyTarget::DFamily { r_max, json } => {
            let cert = certify_d_family(r_max)?;
            if json {
                print_json(&cert);
            } else {
                let labels: Vec<String> = cert
                    .members
                    .iter()
                    .map(|m| format!("{:?}", chords(m.r, m.optional_edges)))
                    .collect();
                let width = labels.iter().map(String::len).max().unwrap_or(0);
                for (m, label) in cert.members.iter().zip(&labels) {
                    outln!(
                        "r = {:>2} chords {label:<width$} order {:>2}  D = {:>3}  {}  {}{}",
                        m.r,
                        m.order,
                        m.diff_value,
                        if m.bob_wins {
                            "Bob wins  "
                        } else {
                            "ALICE WINS"
                        },
                        if m.codd_free {
                            "odd-corona-free"
                        } else {
                            "has odd corona "
                        },
                        m.smaller_member
                            .as_ref()
                            .map_or(String::new(), |s| format!("  contains r = {} member", s.r))
                    );
                }
                outln!(
                    "{} members, {} not Bob wins",
                    cert.members.len(),
                    cert.failures
                );
            }
            Ok(verdict_status(cert.certified))
        }
        VerifyTarget::TheoremChain { max_n, json } => {
            if !(1..=grabbing_core::enumerate::MAX_ENUM_ORDER).contains(&max_n) {
                return Err(format!(
                    "--max-n must lie in 1..={}",
                    grabbing_core::enumerate::MAX_ENUM_ORDER
                )
                .into());
            }
            let audit = audit_theorem_chain(max_n, None)?;
            if json {
                print_json(&audit);
            } else {
                outln!(
                    "{{0,1}}-weighted Bob wins at n <= {max_n}: {}",
                    audit.bob_wins
                );
                outln!(
                    "pair-removal lemma: {} checked ({} qualifying pairs), {} without a qualifying pair, {} falsified",
                    audit.lemma_checked,
                    audit.lemma_pairs,
                    audit.lemma_inapplicable,
                    audit.lemma_falsifications.len()
                );
                outln!(
                    "proof chain: {} even-order Bob wins, {} minimal, {} shrunk and rechecked, {} link failures",
                    audit.even_bob_wins,
                    audit.minimal.len(),
                    audit.shrunk,
                    audit.chain_falsifications.len()
                );
                for m in &audit.minimal {
                    outln!(
                        "  minimal {} {:?} corona {:?}",
                        m.graph6,
                        m.weights,
                        m.corona
                    );
                }
                outln!(
                    "bipartite even-order graphs: {}, Bob wins {}",
                    audit.bipartite_even_graphs,
                    audit.bipartite_even_bob_wins
                );
                for f in &audit.lemma_falsifications {
                    outln!(
                        "FALSIFICATION (lemma) {} {:?} {:?}",
                        f.graph6,
                        f.weights,
                        f.failures
                    );
                }
                for f in &audit.chain_falsifications {
                    outln!(
                        "FALSIFICATION (chain) {} {:?} {:?}",
                        f.graph6,
                        f.weights,
                        f.failures
                    );
                }
            }
            Ok(verdict_status(!audit.falsified()))
        }
    }
}

fn generate(pattern: GenPattern) -> Result<Status> {
    let (g, name) = match pattern {
        GenPattern::Corona { r } => (build_corona(r)?, format!("corona/r={r}")),
        GenPattern::DMember { r, mask } => (
            build_d_member(r, mask, &DWeighting::default())?,
            format!("d-member/r={r}/edges={:?}", chords(r, mask)),
        ),
    };
    outln!("{}", InstanceDocument::from_graph(&g, Some(name)).to_json());
    Ok(Status::Ok)
}

fn serve(addr: SocketAddr, idle: Duration) -> Result<Status> {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?;
    runtime.block_on(grabbing_service::serve(addr, idle))?;
    Ok(Status::Ok)
}
