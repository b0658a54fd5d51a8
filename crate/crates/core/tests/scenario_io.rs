use resgame::dynamics::ControlLaw;
use resgame::game::{solve, EquilibriumReport, DEFAULT_ENUM_CAP};
use resgame::io::{self, GraphFormat, Requirements, RunConfig};
use resgame::{generators, Error};

#[test]
fn clique_with_tail_separates_degree_and_effective_centers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("clique_tail.txt");
    io::write_graph(
        &generators::clique_with_tail(5, 7),
        &path,
        GraphFormat::EdgeList,
    )
    .unwrap();
    let g = io::load_graph(&path).unwrap();
    let r = io::centrality_report(&g, true);
    assert_eq!(r.max_degree_nodes, vec![4]);
    let eff = r.effective_center.unwrap();
    assert!(!eff.contains(&4), "{eff:?}");
}

#[test]
fn star_center_is_hub() {
    let r = io::centrality_report(&generators::star(6), true);
    assert_eq!(r.center, vec![0]);
    assert_eq!(r.max_degree_nodes, vec![0]);
    assert_eq!(r.effective_center.unwrap(), vec![0]);
}

#[test]
fn labelled_graph_keeps_names_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("grid.txt");
    std::fs::write(&text, "bus_a bus_b 2\nbus_b bus_c\nbus_c bus_a 0.25\n").unwrap();
    let g = io::load_graph(&text).unwrap();
    let json = dir.path().join("grid.json");
    io::write_graph(&g, &json, GraphFormat::Json).unwrap();
    let back = io::load_graph(&json).unwrap();
    assert_eq!(back, g);
    assert_eq!(back.names().unwrap()[2], "bus_c");
}

#[test]
fn report_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let g = generators::clique_with_tail(4, 2);
    let r = solve(&g, 0.8, 2, ControlLaw::RelVelocity, DEFAULT_ENUM_CAP).unwrap();
    let p = dir.path().join("report.json");
    io::write_json(&r, &p).unwrap();
    let back: EquilibriumReport = io::read_json(&p).unwrap();
    assert_eq!(back, r);
}

#[test]
fn config_validation_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cfg.json");
    std::fs::write(
        &p,
        r#"{"graph": {"n": 4, "edges": [[0,1],[1,2],[2,3]]}, "law": 1, "gain": 0.5, "budget": 2, "defense": [0, 1, 1], "attack": [2, 3]}"#,
    )
    .unwrap();
    let cfg = RunConfig::load(&p).unwrap();
    let g = cfg.graph.as_ref().unwrap().load(None).unwrap();
    let v = cfg.violations(
        Some(&g),
        Requirements {
            law: true,
            gain: true,
            budget: true,
            equal_budgets: true,
            ..Requirements::default()
        },
    );
    assert!(v.iter().any(|m| m.contains("repeated")), "{v:?}");
    assert!(v.iter().any(|m| m.contains("differs")), "{v:?}");

    std::fs::write(&p, "{ not json").unwrap();
    assert!(matches!(RunConfig::load(&p), Err(Error::Format { .. })));
    assert!(matches!(
        io::load_graph(&dir.path().join("missing.txt")),
        Err(Error::Io { .. })
    ));
}
