use fracture_lab::formats::{
    graph_to_text, parse_graph, parse_graph_text, ColoredDoc, EdgeColoringDoc, FormatError,
    InstanceDoc,
};
use fracture_lab_core::graph::EdgeColoring;
use fracture_lab_core::samples::{all_kinds, default_instance, random_colored};
use fracture_lab_core::{Graph, QColoredGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn text_round_trip() {
    let g = Graph::complete_bipartite(2, 3);
    assert_eq!(parse_graph_text(&graph_to_text(&g)).unwrap(), g);
    assert_eq!(
        parse_graph("p 3 1\n\n0 2\n").unwrap(),
        Graph::new(3, [(0, 2)]).unwrap()
    );
    assert_eq!(
        parse_graph(r#"{"n": 3, "edges": [[0, 2]]}"#).unwrap(),
        Graph::new(3, [(0, 2)]).unwrap()
    );
}

#[test]
fn text_errors() {
    assert!(matches!(
        parse_graph_text("q 3 1\n0 1\n"),
        Err(FormatError::Header { line: 1 })
    ));
    assert!(matches!(
        parse_graph_text(""),
        Err(FormatError::Header { .. })
    ));
    assert!(matches!(
        parse_graph_text("p 3 1\n0 x\n"),
        Err(FormatError::EdgeLine { line: 2 })
    ));
    assert!(matches!(
        parse_graph_text("p 3 1\n1 0\n"),
        Err(FormatError::EdgeOrder { line: 2 })
    ));
    assert!(matches!(
        parse_graph_text("p 3 2\n0 1\n"),
        Err(FormatError::EdgeCount {
            expected: 2,
            got: 1
        })
    ));
    assert!(matches!(
        parse_graph_text("p 3 1\n0 5\n"),
        Err(FormatError::Graph(_))
    ));
    assert!(matches!(
        parse_graph_text("p 3 2\n0 1\n0 1\n"),
        Err(FormatError::Graph(_))
    ));
    assert!(matches!(
        parse_graph("{\"n\": 3}"),
        Err(FormatError::Json(_))
    ));
}

#[test]
fn coloured_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let q = Graph::complete(3);
    for _ in 0..10 {
        let h = random_colored(&q, 7, 0.5, &mut rng);
        let doc = ColoredDoc::from_colored(&h);
        let text = serde_json::to_string(&doc).unwrap();
        let back = serde_json::from_str::<ColoredDoc>(&text)
            .unwrap()
            .to_colored()
            .unwrap();
        assert_eq!(back, h);
    }
    let bad = ColoredDoc {
        q: fracture_lab::formats::GraphDoc::from_graph(&q),
        host: fracture_lab::formats::GraphDoc {
            n: 2,
            edges: vec![(0, 1)],
        },
        assignment: vec![0, 0],
        surjective: false,
    };
    assert!(matches!(bad.to_colored(), Err(FormatError::Graph(_))));
    let partial = QColoredGraph::new(Graph::empty(1), q.clone(), vec![0]).unwrap();
    let mut doc = ColoredDoc::from_colored(&partial);
    doc.surjective = true;
    assert!(matches!(doc.to_colored(), Err(FormatError::Graph(_))));
}

#[test]
fn edge_colourings() {
    let h = Graph::complete(3);
    let c = EdgeColoring::new(&h, 2, vec![0, 1, 1]).unwrap();
    let doc = EdgeColoringDoc::from_coloring(&h, &c);
    assert_eq!(doc.to_coloring(&h).unwrap(), c);
    let swapped = EdgeColoringDoc {
        palette: 2,
        colors: vec![(1, 0, 0), (2, 0, 1), (2, 1, 1)],
    };
    assert_eq!(swapped.to_coloring(&h).unwrap(), c);
    let missing = EdgeColoringDoc {
        palette: 2,
        colors: vec![(0, 1, 0)],
    };
    assert!(matches!(
        missing.to_coloring(&h),
        Err(FormatError::EdgeUncoloured(0, 2))
    ));
    let twice = EdgeColoringDoc {
        palette: 2,
        colors: vec![(0, 1, 0), (1, 0, 1), (0, 2, 0), (1, 2, 0)],
    };
    assert!(matches!(
        twice.to_coloring(&h),
        Err(FormatError::EdgeColouredTwice(0, 1))
    ));
    let stray = EdgeColoringDoc {
        palette: 2,
        colors: vec![(0, 7, 0)],
    };
    assert!(matches!(
        stray.to_coloring(&h),
        Err(FormatError::UnknownEdge(0, 7))
    ));
    let wide = EdgeColoringDoc {
        palette: 1,
        colors: vec![(0, 1, 0), (0, 2, 1), (1, 2, 0)],
    };
    assert!(matches!(wide.to_coloring(&h), Err(FormatError::Graph(_))));
}

#[test]
fn instances_round_trip() {
    for kind in all_kinds() {
        let i = default_instance(kind).unwrap();
        let text = serde_json::to_string(&InstanceDoc::from_instance(&i)).unwrap();
        let back = serde_json::from_str::<InstanceDoc>(&text)
            .unwrap()
            .to_instance()
            .unwrap();
        assert_eq!(back, i);
    }
    let i = default_instance(all_kinds()[0]).unwrap();
    let mut doc = InstanceDoc::from_instance(&i);
    doc.kind = "hexagon".into();
    assert!(matches!(
        doc.to_instance(),
        Err(FormatError::UnknownKind(_))
    ));
    let mut doc = InstanceDoc::from_instance(&i);
    doc.tau = "0".into();
    assert!(matches!(doc.to_instance(), Err(FormatError::Fracture(_))));
    let mut doc = InstanceDoc::from_instance(&i);
    doc.gamma.swap(0, 3);
    doc.gamma[0] = None;
    assert!(matches!(doc.to_instance(), Err(FormatError::Gadget(_))));
}
