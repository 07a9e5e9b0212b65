use layerdraw::fixture::{parse_fixtures, K7_FIXTURES, K8_FIXTURES};
use layerdraw::*;

fn replay_all(g: &Graph, fx: &layerdraw::Fixture) -> Vec<layerdraw::layering::StepOutcome> {
    let mut r = Replay::new(g, fx).unwrap();
    let mut out = Vec::new();
    while let Some(o) = r.step().unwrap() {
        out.push(o);
    }
    out
}

#[test]
fn pinned_routes_are_shortest_routes() {
    let k7 = parse_fixtures(K7_FIXTURES).unwrap();
    let k8 = parse_fixtures(K8_FIXTURES).unwrap();
    let cases = [
        (Graph::complete(7), &k7["k7-inner"]),
        (Graph::complete(7), &k7["k7-outer"]),
        (Graph::complete(8), &k8["k8"]),
    ];
    for (g, fx) in cases {
        for o in replay_all(&g, fx) {
            let computed = o.computed.expect("a shortest route exists");
            assert_eq!(computed.links.len(), o.route.links.len(), "e{}", o.chord);
            assert_eq!(computed.cycles, o.route.cycles, "e{}", o.chord);
        }
    }
}

#[test]
fn k7_two_strategies() {
    let g = Graph::complete(7);
    let k7 = parse_fixtures(K7_FIXTURES).unwrap();
    let inner = decompose_pinned(&g, &k7["k7-inner"], Strategy::InnerOnly).unwrap();
    let outer = decompose_pinned(&g, &k7["k7-outer"], Strategy::Thickness).unwrap();
    assert_eq!(inner.thickness(), 3);
    assert_eq!(outer.thickness(), 2);
    for d in [&inner, &outer] {
        let rep = verify_document(&DecompositionDocument::of(d));
        assert!(rep.is_ok(), "{rep}");
    }
    let parts = layer_edge_partition(&inner);
    assert_eq!(parts[&2], vec![8, 9, 10, 14]);
    assert_eq!(parts[&3], vec![3, 17]);
}

#[test]
fn k7_inner_only_third_layer_sequences() {
    let g = Graph::complete(7);
    let k7 = parse_fixtures(K7_FIXTURES).unwrap();
    let d = decompose_pinned(&g, &k7["k7-inner"], Strategy::InnerOnly).unwrap();
    let seqs = d.layers[2].sequences();
    assert_eq!(seqs[&17], vec![16, 17]);
    assert_eq!(seqs[&3], vec![22, 21, 20, 19, 18]);
    assert!(d.layers[2].system.rim.is_some());
}

#[test]
fn k8_pinned_then_complete() {
    let g = Graph::complete(8);
    let k8 = parse_fixtures(K8_FIXTURES).unwrap();
    let d = decompose_pinned(&g, &k8["k8"], Strategy::Thickness).unwrap();
    assert_eq!(d.thickness(), 2);
    let imaginary: usize = d.layers[1].imaginary.len();
    assert_eq!(imaginary, 1 + 2 + 3 + 4 + 2 + 3 + 1 + 2 + 3 + 7);
    assert!(d.layers[1].system.rim.is_none());
    assert!(verify_document(&DecompositionDocument::of(&d)).is_ok());
}

#[test]
fn fixture_for_wrong_graph_is_refused() {
    let k8 = parse_fixtures(K8_FIXTURES).unwrap();
    assert!(Replay::new(&Graph::complete(7), &k8["k8"]).is_err());
}

#[test]
fn banned_link_in_script_is_refused() {
    let g = Graph::complete(7);
    let mut fx = parse_fixtures(K7_FIXTURES).unwrap()["k7-inner"].clone();
    fx.steps.truncate(2);
    // second connection forced across the first one's piece (2,8)
    fx.steps[1].cross = Some(vec![[2, 8], [4, 7]]);
    let mut r = Replay::new(&g, &fx).unwrap();
    r.step().unwrap();
    assert!(r.step().is_err());
}

#[test]
fn complete_graphs_verify() {
    for n in 4..=9 {
        for strategy in [Strategy::Thickness, Strategy::InnerOnly] {
            let opts = DecomposeOptions {
                strategy,
                ..DecomposeOptions::default()
            };
            let d = decompose(&Graph::complete(n), opts).unwrap();
            let rep = verify_document(&DecompositionDocument::of(&d));
            assert!(rep.is_ok(), "K{n} {strategy:?}\n{rep}");
        }
    }
}
