//! Fixed trees and base graphs for the default gadget instances, and
//! seeded random inputs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::fracture::apply_fracture;
use crate::gadgets::{
    cnum_gadget, fork_gadget, p2_gadget, pad_odd, star_gadget, triangle_gadget, GadgetError,
    GadgetKind, ReductionInstance,
};
use crate::graph::{Graph, QColoredGraph};
use crate::iso::{invariant, is_isomorphic};
use crate::tree::find_closed_strong_c_gadget;

/// A path `0..=spine` with a leg of the given length hanging off each
/// listed spine vertex. Leg vertices are numbered after the spine, leg by
/// leg.
pub fn caterpillar(spine: usize, legs: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..spine).map(|i| (i, i + 1)).collect();
    let mut next = spine + 1;
    for &(at, len) in legs {
        let mut prev = at;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next, &edges)
}

/// `legs` paths of length `len` from centre 0.
pub fn spider(legs: usize, len: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next, &edges)
}

/// A spider with an extra branch `0 - a` where `a` carries two leaves, so
/// that the centre also has a non-ray neighbour.
pub fn anchored_spider(legs: usize, len: usize) -> Graph {
    let s = spider(legs, len);
    let a = s.n();
    let mut edges = s.edges().to_vec();
    edges.extend([(0, a), (a, a + 1), (a, a + 2)]);
    Graph::from_edges(a + 3, &edges)
}

/// Root 0 with `branches` children; each child carries `forks` sources,
/// each with one leaf and one path of length 2. The first `extra` sources
/// get a second leaf.
pub fn fork_tree(branches: usize, forks: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    let mut made = 0;
    for _ in 0..branches {
        let p = next;
        next += 1;
        edges.push((0, p));
        for _ in 0..forks {
            let s = next;
            edges.extend([(p, s), (s, s + 1), (s, s + 2), (s + 2, s + 3)]);
            next += 4;
            if made < extra {
                edges.push((s, next));
                next += 1;
            }
            made += 1;
        }
    }
    Graph::from_edges(next, &edges)
}

/// Caterpillar with `k + 2` single-vertex legs spaced three apart: a closed
/// strong C-gadget of order 1 with `k` junctions.
pub fn cnum_tree(k: usize) -> Graph {
    let legs: Vec<(usize, usize)> = (1..=k + 2).map(|i| (3 * i, 1)).collect();
    caterpillar(3 * (k + 2) + 3, &legs)
}

/// Default instance of each kind: K₃,₃ for triangles, K₅ for 2-paths, K₄
/// for the C-number and star gadgets, K₃,₃ with `a = 1`, `b = 2` for forks.
pub fn default_instance(kind: GadgetKind) -> Result<ReductionInstance, GadgetError> {
    let base = match kind {
        GadgetKind::Triangle | GadgetKind::Fork => Graph::complete_bipartite(3, 3),
        GadgetKind::P2 => Graph::complete(5),
        GadgetKind::CNumber | GadgetKind::Star => Graph::complete(4),
    };
    instance_on(kind, &base)
}

/// An instance of `kind` over `base`, with a tree sized to it: `cnum_tree`,
/// an anchored spider with `6·|V(base)|` legs of length 3, or a fork tree
/// with `2·|V(base)|` forks of shape `(1, 2)`.
pub fn instance_on(kind: GadgetKind, base: &Graph) -> Result<ReductionInstance, GadgetError> {
    let k = base.n();
    match kind {
        GadgetKind::Triangle => triangle_gadget(base),
        GadgetKind::P2 => p2_gadget(base),
        GadgetKind::CNumber => {
            let t = cnum_tree(k);
            let g = find_closed_strong_c_gadget(&t, 1, k)?.ok_or(GadgetError::BadCGadget)?;
            cnum_gadget(base, None, &t, &g)
        }
        GadgetKind::Star => star_gadget(base, &anchored_spider(6 * k, 3), 0, 3),
        GadgetKind::Fork => fork_gadget(base, &fork_tree((2 * k).div_ceil(3), 3, 2), 1, 2),
    }
}

/// All kinds in a fixed order.
pub fn all_kinds() -> Vec<GadgetKind> {
    vec![
        GadgetKind::Triangle,
        GadgetKind::P2,
        GadgetKind::CNumber,
        GadgetKind::Star,
        GadgetKind::Fork,
    ]
}

/// A random host coloured by `inst.q`.
///
/// Each class gets 1 or 2 vertices (uniformly), raised to the number of
/// `tau` blocks at that vertex. Every candidate edge between the classes of
/// a `q` edge is kept with probability ½. With `plant`, one copy of `q`
/// fractured along `tau` is placed on the first vertices of the classes and
/// its edges are always kept. Fork hosts are padded to odd class sizes.
pub fn random_host<R: Rng + ?Sized>(
    inst: &ReductionInstance,
    plant: bool,
    rng: &mut R,
) -> QColoredGraph {
    let q = &inst.q;
    let sizes: Vec<usize> = (0..q.n())
        .map(|v| rng.gen_range(1..=2).max(inst.tau.block_count(v)))
        .collect();
    let mut offset = vec![0; q.n() + 1];
    for v in 0..q.n() {
        offset[v + 1] = offset[v] + sizes[v];
    }
    let mut planted = BTreeSet::new();
    if plant {
        let f = apply_fracture(q, &inst.tau).expect("tau is a fracture of q");
        let mut seen = vec![0; q.n()];
        let place: Vec<usize> = f
            .origin
            .iter()
            .map(|&(v, _)| {
                seen[v] += 1;
                offset[v] + seen[v] - 1
            })
            .collect();
        for &(a, b) in f.graph.edges() {
            let (x, y) = (place[a], place[b]);
            planted.insert((x.min(y), x.max(y)));
        }
    }
    let mut edges = Vec::new();
    for &(a, b) in q.edges() {
        for x in offset[a]..offset[a + 1] {
            for y in offset[b]..offset[b + 1] {
                let keep = rng.gen_bool(0.5);
                if keep || planted.contains(&(x.min(y), x.max(y))) {
                    edges.push((x, y));
                }
            }
        }
    }
    let assignment: Vec<usize> = (0..q.n())
        .flat_map(|v| core::iter::repeat_n(v, sizes[v]))
        .collect();
    let graph = Graph::new(offset[q.n()], edges).expect("class pairs are disjoint");
    let host = QColoredGraph::new(graph, q.clone(), assignment).expect("edges follow q");
    if inst.kind == GadgetKind::Fork {
        pad_odd(&host)
    } else {
        host
    }
}

/// `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// A uniformly random labelled tree on `n` vertices (Prüfer sequence).
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1; n];
    for &x in &code {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges)
}

/// A random graph with every edge's endpoints in adjacent `q` classes,
/// coloured by `q`: `n` vertices with uniform colours, each compatible pair
/// kept with probability `p`.
pub fn random_colored<R: Rng + ?Sized>(q: &Graph, n: usize, p: f64, rng: &mut R) -> QColoredGraph {
    let assignment: Vec<usize> = (0..n).map(|_| rng.gen_range(0..q.n())).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if q.has_edge(assignment[u], assignment[v]) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    QColoredGraph::new(Graph::from_edges(n, &edges), q.clone(), assignment).expect("edges follow q")
}

/// One graph per isomorphism class among graphs with exactly `m` edges and
/// no isolated vertices, grown edge by edge.
pub fn graphs_with_edges(m: usize) -> Vec<Graph> {
    let mut layer = vec![Graph::empty(0)];
    for _ in 0..m {
        let mut next: Vec<Graph> = Vec::new();
        for g in &layer {
            let n = g.n();
            let mut cands = Vec::new();
            for a in 0..n + 2 {
                for b in a + 1..n + 2 {
                    // A new vertex may only be n, or n and n + 1 together.
                    let fresh = (a >= n) as usize + (b >= n) as usize;
                    if (fresh == 1 && b != n)
                        || (fresh == 2 && (a, b) != (n, n + 1))
                        || (fresh == 0 && g.has_edge(a, b))
                    {
                        continue;
                    }
                    let mut e = g.edges().to_vec();
                    e.push((a, b));
                    cands.push(Graph::from_edges(n + fresh, &e));
                }
            }
            for c in cands {
                let key = invariant(&c);
                if !next
                    .iter()
                    .any(|h| invariant(h) == key && is_isomorphic(h, &c))
                {
                    next.push(c);
                }
            }
        }
        layer = next;
    }
    layer
}

/// A path `0..=len` with `leaves` leaves on each end.
pub fn double_broom(len: usize, leaves: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
    let mut next = len + 1;
    for end in [0, len] {
        for _ in 0..leaves {
            edges.push((end, next));
            next += 1;
        }
    }
    Graph::from_edges(next, &edges)
}
