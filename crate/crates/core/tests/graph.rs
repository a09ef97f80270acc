mod common;

use common::{brute_maps, permute};
use fracture_lab_core::counting::count_cp_homs;
use fracture_lab_core::graph::{fibered_product, fibered_product_with, line_graph, subdivide};
use fracture_lab_core::iso::{find_isomorphism, is_isomorphic};
use fracture_lab_core::samples::{random_colored, random_graph};
use fracture_lab_core::{EdgeColoring, Graph, GraphError, QColoredGraph, VertexColoring};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn constructors() {
    assert_eq!(Graph::complete(4).m(), 6);
    assert_eq!(Graph::path(3).edges(), &[(0, 1), (1, 2), (2, 3)]);
    assert_eq!(Graph::cycle(4).m(), 4);
    assert_eq!(Graph::star(3).degree(0), 3);
    assert_eq!(Graph::complete_bipartite(3, 3).m(), 9);
    assert_eq!(Graph::complete(3).copies(2).n(), 6);
    assert_eq!(
        Graph::new(2, [(0, 2)]).unwrap_err(),
        GraphError::VertexOutOfRange { vertex: 2, n: 2 }
    );
    assert_eq!(
        Graph::new(2, [(1, 1)]).unwrap_err(),
        GraphError::SelfLoop(1)
    );
    assert_eq!(
        Graph::new(2, [(0, 1), (1, 0)]).unwrap_err(),
        GraphError::DuplicateEdge(0, 1)
    );
}

#[test]
fn edge_ids_follow_sorted_order() {
    let g = Graph::new(4, [(2, 3), (1, 0), (0, 2)]).unwrap();
    assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
    assert_eq!(g.edge_index(3, 2), Some(2));
    for v in 0..4 {
        for (i, &e) in g.incident(v).iter().enumerate() {
            assert_eq!(g.other(e, v), g.neighbors(v)[i]);
        }
    }
}

#[test]
fn isomorphism_examples() {
    assert!(is_isomorphic(&Graph::complete(3), &Graph::cycle(3)));
    assert!(!is_isomorphic(&Graph::path(3), &Graph::star(3)));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let g = random_graph(7, rng.gen_range(0.2..0.8), &mut rng);
        let mut perm: Vec<usize> = (0..7).collect();
        perm.shuffle(&mut rng);
        let h = permute(&g, &perm);
        assert!(is_isomorphic(&g, &h));
        assert!(is_isomorphic(&h, &g));
        let f = find_isomorphism(&g, &h).unwrap();
        assert!(g.edges().iter().all(|&(a, b)| h.has_edge(f[a], f[b])));
    }
}

#[test]
fn non_isomorphic_with_equal_degrees() {
    // C₆ and two triangles share the degree sequence.
    assert!(!is_isomorphic(
        &Graph::cycle(6),
        &Graph::complete(3).copies(2)
    ));
}

#[test]
fn line_graphs() {
    assert!(is_isomorphic(
        &line_graph(&Graph::star(3)).unwrap(),
        &Graph::complete(3)
    ));
    assert!(is_isomorphic(
        &line_graph(&Graph::path(3)).unwrap(),
        &Graph::path(2)
    ));
    let l = line_graph(&Graph::complete_bipartite(3, 3)).unwrap();
    assert_eq!((l.n(), l.m()), (9, 18));
    assert_eq!(
        line_graph(&Graph::empty(3)).unwrap_err(),
        GraphError::NoEdges
    );
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let h = random_graph(8, 0.4, &mut rng);
        if h.m() == 0 {
            continue;
        }
        let l = line_graph(&h).unwrap();
        assert_eq!(l.n(), h.m());
        let want: usize = (0..h.n())
            .map(|v| h.degree(v) * h.degree(v).saturating_sub(1) / 2)
            .sum();
        assert_eq!(l.m(), want);
    }
}

#[test]
fn subdivisions() {
    assert!(is_isomorphic(
        &subdivide(&Graph::complete(2)).0,
        &Graph::path(2)
    ));
    let (k5, map) = subdivide(&Graph::complete(5));
    assert_eq!((k5.n(), k5.m()), (15, 20));
    assert_eq!(map, (5..15).collect::<Vec<_>>());
    assert!(is_isomorphic(
        &subdivide(&Graph::cycle(4)).0,
        &Graph::cycle(8)
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        assert!(subdivide(&random_graph(7, 0.5, &mut rng)).0.is_bipartite());
    }
}

#[test]
fn colourings_are_validated() {
    let q = Graph::path(1);
    let g = Graph::path(2);
    assert_eq!(
        VertexColoring::new(&g, q.clone(), vec![0, 0, 1]).unwrap_err(),
        GraphError::NotHomomorphism(0, 1)
    );
    assert_eq!(
        VertexColoring::new(&g, q.clone(), vec![0, 1]).unwrap_err(),
        GraphError::AssignmentLength {
            got: 2,
            expected: 3
        }
    );
    assert_eq!(
        VertexColoring::new(&g, q.clone(), vec![0, 1, 2]).unwrap_err(),
        GraphError::ColorOutOfRange { color: 2, n: 2 }
    );
    let c = VertexColoring::new(&g, q.clone(), vec![0, 1, 0]).unwrap();
    assert!(c.surjective);
    let e = Graph::empty(2);
    assert_eq!(
        VertexColoring::with_flag(&e, q.clone(), vec![0, 0], true).unwrap_err(),
        GraphError::NotSurjective(1)
    );
    assert_eq!(c.edge_coloring(&g).colors, vec![0, 0]);
    assert_eq!(
        EdgeColoring::new(&g, 1, vec![0]).unwrap_err(),
        GraphError::EdgeColoringLength {
            got: 1,
            expected: 2
        }
    );
    assert_eq!(
        EdgeColoring::new(&g, 1, vec![0, 1]).unwrap_err(),
        GraphError::PaletteOverflow {
            color: 1,
            palette: 1
        }
    );
}

#[test]
fn fibered_product_examples() {
    let q = Graph::cycle(4);
    let id = QColoredGraph::identity(&q);
    let p = fibered_product(&id, &id).unwrap();
    assert!(is_isomorphic(&p.graph, &q));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = random_colored(&q, 9, 0.6, &mut rng);
    let p = fibered_product(&id, &g).unwrap();
    assert!(is_isomorphic(&p.graph, &g.graph));
    let other = QColoredGraph::identity(&Graph::complete(3));
    assert_eq!(
        fibered_product(&id, &other).unwrap_err(),
        GraphError::TargetMismatch
    );
    let kept = fibered_product_with(&g, &g, false).unwrap();
    let dropped = fibered_product_with(&g, &g, true).unwrap();
    assert_eq!(kept.graph.m(), dropped.graph.m());
    assert_eq!(dropped.graph.isolated_count(), 0);
}

#[test]
fn fibered_product_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let q = random_graph(4, 0.7, &mut rng);
        if q.m() == 0 {
            continue;
        }
        let f = random_colored(&q, 4, 0.7, &mut rng);
        let g1 = random_colored(&q, 5, 0.6, &mut rng);
        let g2 = random_colored(&q, 5, 0.6, &mut rng);
        let p = fibered_product(&g1, &g2).unwrap();
        let brute = |h: &QColoredGraph| {
            brute_maps(
                &f.graph,
                &h.graph,
                Some((&f.coloring.assignment, &h.coloring.assignment)),
                false,
            )
        };
        assert_eq!(brute(&p), brute(&g1) * brute(&g2));
        let fast = count_cp_homs(&f, &p).unwrap().to_u128().unwrap();
        assert_eq!(fast, brute(&p));
        // Commutative up to isomorphism.
        assert!(is_isomorphic(
            &p.graph,
            &fibered_product(&g2, &g1).unwrap().graph
        ));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_graph(n, 0.5, &mut rng);
        let b = random_graph(n, 0.5, &mut rng);
        prop_assert!(is_isomorphic(&a, &a));
        prop_assert_eq!(is_isomorphic(&a, &b), is_isomorphic(&b, &a));
    }

    #[test]
    fn product_colouring_is_valid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_graph(4, 0.6, &mut rng);
        let g1 = random_colored(&q, 6, 0.5, &mut rng);
        let g2 = random_colored(&q, 6, 0.5, &mut rng);
        let p = fibered_product(&g1, &g2).unwrap();
        let assignment: Vec<usize> = (0..p.graph.n()).map(|v| p.color(v)).collect();
        prop_assert!(VertexColoring::new(&p.graph, q, assignment).is_ok());
    }
}
