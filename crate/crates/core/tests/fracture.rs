mod common;

use common::random_base;
use fracture_lab_core::counting::{count_colorful_subs, count_cp_embs, count_cp_homs};
use fracture_lab_core::fracture::{
    apply_fracture, bell, coarsenings, colsub_coefficients, count_odd_fractures,
    enumerate_fractures, fracture_count, fracture_leq, fracture_mobius, fractured_graph,
    fractures_with_quotient, is_odd_fracture, is_p2_packing, is_triangle_packing, isomorphic_to,
    odd_fractures, set_partitions, top_coefficient, Fracture, FractureError,
};
use fracture_lab_core::graph::{line_graph, subdivide};
use fracture_lab_core::iso::is_isomorphic;
use fracture_lab_core::samples::{graphs_with_edges, random_colored};
use fracture_lab_core::{Graph, VertexColoring};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn one_vertex_split(q: &Graph, v: usize, labels: Vec<u8>) -> Fracture {
    let parts: Vec<Vec<u8>> = (0..q.n())
        .map(|x| {
            if x == v {
                labels.clone()
            } else {
                vec![0; q.degree(x)]
            }
        })
        .collect();
    Fracture::from_labels(q, parts).unwrap()
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_fractures(&Graph::complete(3), None).len(), 8);
    assert_eq!(enumerate_fractures(&Graph::star(3), None).len(), 5);
    assert_eq!(
        enumerate_fractures(&Graph::complete(3), Some(1)),
        vec![Fracture::top(&Graph::complete(3))]
    );
    assert_eq!(
        (0..=6).map(bell).collect::<Vec<_>>(),
        vec![1, 1, 2, 5, 15, 52, 203]
    );
    assert_eq!(set_partitions(3, 3).len(), 5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..30 {
        let q = random_base(&mut rng, 7, 4);
        let all = enumerate_fractures(&q, None);
        let want: u64 = (0..q.n()).map(|v| bell(q.degree(v))).product();
        assert_eq!(all.len() as u64, want);
        assert_eq!(fracture_count(&q), want as u128);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        let two = enumerate_fractures(&q, Some(2));
        assert!(two
            .iter()
            .all(|f| (0..q.n()).all(|v| f.block_count(v) <= 2)));
        assert_eq!(
            two.len(),
            all.iter()
                .filter(|f| (0..q.n()).all(|v| f.block_count(v) <= 2))
                .count()
        );
    }
}

#[test]
fn applying_fractures() {
    let k3 = Graph::complete(3);
    let top = apply_fracture(&k3, &Fracture::top(&k3)).unwrap();
    assert_eq!(top.graph, k3);
    let single = apply_fracture(&k3, &Fracture::singletons(&k3)).unwrap();
    assert!(is_isomorphic(&single.graph, &Graph::complete(2).copies(3)));
    let open = apply_fracture(&k3, &one_vertex_split(&k3, 0, vec![0, 1])).unwrap();
    assert!(is_isomorphic(&open.graph, &Graph::path(3)));
    assert_eq!(open.origin[0], (0, vec![0]));
    assert_eq!(open.origin[1], (0, vec![1]));
    assert_eq!(
        apply_fracture(&Graph::path(2), &Fracture::top(&k3)).unwrap_err(),
        FractureError::BaseMismatch
    );
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let q = random_base(&mut rng, 6, 4);
        for rho in enumerate_fractures(&q, None).iter().take(60) {
            let f = apply_fracture(&q, rho).unwrap();
            assert_eq!(f.graph.m(), q.m());
            assert_eq!(f.graph, fractured_graph(&q, rho));
            assert!(
                VertexColoring::new(&f.graph, q.clone(), f.coloring.assignment.clone()).is_ok()
            );
            for (i, &e) in f.edge_map.iter().enumerate() {
                let (a, b) = f.graph.edge(e);
                let (x, y) = q.edge(i);
                assert_eq!((f.origin[a].0, f.origin[b].0), (x, y));
            }
        }
    }
}

#[test]
fn order_examples() {
    let k3 = Graph::complete(3);
    let s = Fracture::singletons(&k3);
    let t = Fracture::top(&k3);
    assert!(fracture_leq(&s, &s).unwrap());
    assert!(fracture_leq(&s, &t).unwrap());
    assert!(!fracture_leq(&t, &s).unwrap());
    let p2 = Graph::path(2);
    assert_eq!(
        fracture_leq(&Fracture::top(&p2), &t).unwrap_err(),
        FractureError::BaseMismatch
    );
}

#[test]
fn mobius_examples() {
    let k4 = Graph::complete(4);
    let t = Fracture::top(&k4);
    assert_eq!(fracture_mobius(&t, &t).unwrap(), BigInt::from(1));
    assert_eq!(
        fracture_mobius(&one_vertex_split(&k4, 0, vec![0, 0, 1]), &t).unwrap(),
        BigInt::from(-1)
    );
    assert_eq!(
        fracture_mobius(&one_vertex_split(&k4, 0, vec![0, 1, 2]), &t).unwrap(),
        BigInt::from(2)
    );
    let a = one_vertex_split(&k4, 0, vec![0, 0, 1]);
    let b = one_vertex_split(&k4, 0, vec![0, 1, 1]);
    assert_eq!(
        fracture_mobius(&a, &b).unwrap_err(),
        FractureError::Incomparable
    );
}

/// `Σ_{σ ≤ π ≤ ρ} μ(π, ρ) = [σ = ρ]` over every comparable pair, with the
/// interval found by direct comparison.
fn check_mobius_identity(q: &Graph) {
    let all = enumerate_fractures(q, None);
    for rho in &all {
        let below: Vec<&Fracture> = all
            .iter()
            .filter(|p| fracture_leq(p, rho).unwrap())
            .collect();
        let mu: Vec<BigInt> = below
            .iter()
            .map(|p| fracture_mobius(p, rho).unwrap())
            .collect();
        for sigma in &below {
            let s: BigInt = below
                .iter()
                .zip(&mu)
                .filter(|(p, _)| fracture_leq(sigma, p).unwrap())
                .map(|(_, m)| m.clone())
                .sum();
            assert_eq!(s, BigInt::from((*sigma == rho) as i32), "{}", rho.encode(q));
        }
    }
}

#[test]
fn mobius_defining_identity_up_to_four_edges() {
    for m in 1..=4 {
        for q in graphs_with_edges(m) {
            check_mobius_identity(&q);
        }
    }
}

#[test]
fn isolated_free_graph_counts() {
    let counts: Vec<usize> = (1..=5).map(|m| graphs_with_edges(m).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 11, 26]);
}

#[test]
fn coarsenings_carry_the_mobius_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let q = random_base(&mut rng, 6, 4);
        let all = enumerate_fractures(&q, None);
        let sigma = &all[rng.gen_range(0..all.len())];
        let ups = coarsenings(sigma);
        let want: Vec<&Fracture> = all
            .iter()
            .filter(|r| fracture_leq(sigma, r).unwrap())
            .collect();
        assert_eq!(ups.len(), want.len());
        for (rho, mu) in &ups {
            assert!(fracture_leq(sigma, rho).unwrap());
            assert_eq!(*mu, fracture_mobius(sigma, rho).unwrap());
        }
    }
}

#[test]
fn coefficient_examples() {
    let k2 = Graph::complete(2);
    let a = colsub_coefficients(&k2, isomorphic_to(k2.clone())).unwrap();
    assert_eq!(a.entries.len(), 1);
    assert_eq!(a.get(&Fracture::top(&k2)), BigInt::from(1));
    let l = line_graph(&Graph::complete_bipartite(3, 3)).unwrap();
    assert_eq!(
        top_coefficient(&l, &Graph::complete(3).copies(6)),
        BigInt::from(-1)
    );
    let with_isolated = Graph::new(3, [(0, 1)]).unwrap();
    assert_eq!(
        colsub_coefficients(&with_isolated, |_: &Graph| true).unwrap_err(),
        FractureError::IsolatedVertex(2)
    );
}

#[test]
fn p2_top_coefficient_is_odd() {
    let (q, _) = subdivide(&Graph::complete(5));
    let a = top_coefficient(&q, &Graph::path(2).copies(10));
    assert!(a.bit(0));
}

/// Picks a pattern `Q♯σ` for a random `σ`.
fn random_target<R: Rng>(q: &Graph, rng: &mut R) -> Graph {
    let all = enumerate_fractures(q, None);
    fractured_graph(q, &all[rng.gen_range(0..all.len())])
}

#[test]
fn hom_basis_identity_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let q = random_base(&mut rng, 6, 4);
        let target = random_target(&q, &mut rng);
        let a = colsub_coefficients(&q, isomorphic_to(target.clone())).unwrap();
        let host = random_colored(&q, rng.gen_range(1..=10), 0.6, &mut rng);
        let lhs = count_colorful_subs(&target, &host.graph, &host.edge_coloring())
            .unwrap()
            .exact;
        let mut rhs = BigInt::from(0);
        for (rho, c) in &a.entries {
            let f = apply_fracture(&q, rho).unwrap().colored();
            rhs += c * BigInt::from(count_cp_homs(&f, &host).unwrap().exact);
        }
        assert_eq!(BigInt::from(lhs), rhs);
    }
}

#[test]
fn embedding_expansion_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let q = random_base(&mut rng, 6, 4);
        let all = enumerate_fractures(&q, None);
        let tau = &all[rng.gen_range(0..all.len())];
        let host = random_colored(&q, rng.gen_range(1..=10), 0.6, &mut rng);
        let lhs = count_cp_embs(&apply_fracture(&q, tau).unwrap().colored(), &host)
            .unwrap()
            .exact;
        let mut rhs = BigInt::from(0);
        for (rho, mu) in coarsenings(tau) {
            let f = apply_fracture(&q, &rho).unwrap().colored();
            rhs += mu * BigInt::from(count_cp_homs(&f, &host).unwrap().exact);
        }
        assert_eq!(BigInt::from(lhs), rhs);
    }
}

#[test]
fn colourful_copies_are_fractured_embeddings() {
    // Every colourful copy of a pattern is the image of exactly one
    // colour-preserving embedding of some Q♯σ ≅ pattern.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..30 {
        let q = random_base(&mut rng, 5, 4);
        let target = random_target(&q, &mut rng);
        let host = random_colored(&q, rng.gen_range(1..=9), 0.6, &mut rng);
        let lhs = count_colorful_subs(&target, &host.graph, &host.edge_coloring())
            .unwrap()
            .exact;
        let mut rhs = BigUint::from(0u32);
        for sigma in fractures_with_quotient(&q, &target, None).fractures {
            rhs += count_cp_embs(&apply_fracture(&q, &sigma).unwrap().colored(), &host)
                .unwrap()
                .exact;
        }
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn quotient_search_matches_filtering() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let q = random_base(&mut rng, 6, 4);
        let target = random_target(&q, &mut rng);
        for max in [None, Some(2)] {
            let mut want: Vec<Fracture> = enumerate_fractures(&q, max)
                .into_iter()
                .filter(|f| is_isomorphic(&fractured_graph(&q, f), &target))
                .collect();
            want.sort();
            let s = fractures_with_quotient(&q, &target, max);
            let mut got = s.fractures.clone();
            got.sort();
            assert_eq!(got, want);
            assert_eq!(s.covered, enumerate_fractures(&q, max).len() as u128);
        }
    }
}

#[test]
fn encoding_round_trips() {
    let k4 = Graph::complete(4);
    let f = one_vertex_split(&k4, 0, vec![0, 1, 0]);
    assert_eq!(f.encode(&k4), "0,2/1;0,3,4;1,3,5;2,4,5");
    assert_eq!(Fracture::decode(&k4, &f.encode(&k4)).unwrap(), f);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..30 {
        let q = random_base(&mut rng, 6, 4);
        for rho in enumerate_fractures(&q, None) {
            assert_eq!(Fracture::decode(&q, &rho.encode(&q)).unwrap(), rho);
        }
    }
    assert!(matches!(
        Fracture::decode(&k4, "0,x;0,3,4;1,3,5;2,4,5"),
        Err(FractureError::Encoding(_))
    ));
    assert_eq!(
        Fracture::decode(&k4, "0,1,2"),
        Err(FractureError::BaseMismatch)
    );
    assert_eq!(
        Fracture::decode(&k4, "0,1;0,3,4;1,3,5;2,4,5"),
        Err(FractureError::NotAPartition { vertex: 0 })
    );
}

#[test]
fn odd_fractures_of_k5() {
    let k5 = Graph::complete(5);
    assert_eq!(count_odd_fractures(&k5), 243);
    let (q, map) = subdivide(&k5);
    assert!(!is_odd_fracture(&q, &map, &Fracture::top(&q)));
    let odd = odd_fractures(&k5);
    assert_eq!(odd.len(), 243);
    let packing = Graph::path(2).copies(10);
    for tau in &odd {
        assert!(is_odd_fracture(&q, &map, tau));
        assert!(is_isomorphic(&fractured_graph(&q, tau), &packing));
        assert!(is_p2_packing(&fractured_graph(&q, tau)));
    }
}

#[test]
fn packing_predicates() {
    assert!(is_triangle_packing(&Graph::complete(3).copies(4)));
    assert!(!is_triangle_packing(
        &Graph::complete(3).disjoint_union(&Graph::path(2))
    ));
    assert!(is_p2_packing(&Graph::path(2).copies(3)));
    assert!(!is_p2_packing(&Graph::path(3)));
    assert!(!is_p2_packing(&Graph::empty(0)));
}
