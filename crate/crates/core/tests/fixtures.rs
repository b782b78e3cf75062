use std::fs;

use grabbing_core::fixtures::{fig1, recover_bob_wins, recover_fig1};
use grabbing_core::harness::{
    certify_fig1, find_bob_wins, load_report, Campaign, Fig1Config, Filters, GraphSource, WeightSet,
};
use grabbing_core::patterns::are_isomorphic;
use grabbing_core::{
    alice_outcome, build_d_member, find_corona_odd, Budget, DWeighting, InstanceDocument,
    WeightedGraph,
};

#[test]
fn counterexample_totals() {
    let g = fig1();
    assert_eq!(g.order(), 8);
    assert_eq!(g.edge_count(), 8);
    let o = alice_outcome(&g).unwrap();
    assert_eq!((o.alice_total, o.bob_total, o.diff_value), (2, 3, -1));
    assert!(!o.alice_wins);
    assert!(find_corona_odd(&g, Budget::default()).unwrap().is_none());
}

#[test]
fn counterexample_is_the_smallest_family_member() {
    let member = build_d_member(5, 0, &DWeighting::default()).unwrap();
    assert!(are_isomorphic(&member, &fig1(), true));
}

#[test]
fn recovery_finds_exactly_the_counterexample() {
    let found = recover_fig1();
    assert_eq!(found.len(), 1);
    assert!(are_isomorphic(&found[0], &fig1(), true));
}

#[test]
fn recovery_at_six_vertices_finds_nothing() {
    assert!(recover_bob_wins(6, 4, 4).is_empty());
}

#[test]
fn tampered_instance_is_not_certified() {
    let config = Fig1Config {
        max_order: 5,
        edge_minimality: false,
        ..Fig1Config::default()
    };
    let mut g = fig1();
    g.add_edge(5, 6).unwrap();
    let c = certify_fig1(&g, config).unwrap();
    assert!(!c.certified);

    let heavy = fig1().with_weights(vec![2, 1, 0, 0, 1, 1, 0, 9]).unwrap();
    let c = certify_fig1(&heavy, config).unwrap();
    assert!(!c.clause_bob_wins);
}

#[test]
fn zero_weight_bound_fails() {
    let config = Fig1Config {
        weight_bound: 0,
        max_order: 4,
        edge_minimality: false,
        ..Fig1Config::default()
    };
    let c = certify_fig1(&fig1(), config).unwrap();
    assert!(!c.weights_within_bound);
    assert!(!c.certified);
}

#[test]
fn instance_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.json");
    fs::write(
        &path,
        InstanceDocument::from_graph(&fig1(), Some("fig1".into())).to_json(),
    )
    .unwrap();
    let back = grabbing_core::parse_instance(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back, fig1());
}

#[test]
fn report_file_round_trip() {
    let campaign = Campaign::new(
        "fixture",
        GraphSource::Enumerated {
            min_order: 3,
            max_order: 6,
        },
        WeightSet::binary(),
    )
    .with_filters(Filters {
        even_only: true,
        ..Filters::default()
    });
    let report = find_bob_wins(&campaign).unwrap();
    assert!(!report.rows.is_empty());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    fs::write(&path, report.to_jsonl()).unwrap();
    let back = load_report(&fs::read_to_string(&path).unwrap(), Budget::default()).unwrap();
    assert_eq!(back.header, report.header);
    assert_eq!(back.rows, report.rows);
    for row in &back.rows {
        let g: WeightedGraph = row.graph().unwrap();
        assert_eq!(g.order() % 2, 0);
        assert!(alice_outcome(&g).unwrap().diff_value < 0);
    }
}
