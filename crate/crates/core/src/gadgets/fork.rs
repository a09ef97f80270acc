//! The fork gadget: a cubic bipartite base graph with its edges stretched
//! by colour, onto which pairs of forks are mapped.

use alloc::vec;
use alloc::vec::Vec;

use super::{GadgetError, GadgetKind, InstanceMeta, ReductionInstance};
use crate::fracture::Fracture;
use crate::graph::Graph;
use crate::tree::{is_fork, ray_report, TreeError};

/// Proper edge colouring of a regular bipartite graph with `degree` colours,
/// peeling off perfect matchings found by augmenting paths (edges tried in
/// index order).
pub fn three_edge_coloring(delta: &Graph) -> Option<Vec<u8>> {
    let side = delta.bipartition()?;
    let r = delta.max_degree();
    if !delta.is_regular(r) {
        return None;
    }
    let mut color = vec![u8::MAX; delta.m()];
    for c in 0..r as u8 {
        let mut mate_edge = vec![usize::MAX; delta.n()];
        for u in (0..delta.n()).filter(|&u| !side[u]) {
            let mut seen = vec![false; delta.n()];
            if !augment(delta, &color, u, &mut mate_edge, &mut seen) {
                return None;
            }
        }
        for v in (0..delta.n()).filter(|&v| side[v]) {
            color[mate_edge[v]] = c;
        }
    }
    Some(color)
}

fn augment(g: &Graph, color: &[u8], u: usize, mate_edge: &mut [usize], seen: &mut [bool]) -> bool {
    for &e in g.incident(u) {
        if color[e] != u8::MAX {
            continue;
        }
        let v = g.other(e, u);
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = mate_edge[v] == usize::MAX;
        if free || augment(g, color, g.other(mate_edge[v], v), mate_edge, seen) {
            mate_edge[v] = e;
            return true;
        }
    }
    false
}

/// Builds `Q` by stretching edges coloured `s`, `m`, `l` to paths of length
/// `2a`, `2b`, `2(a+b)`. In the gadget of `v_i`, `v_i^1` reaches the `s`
/// and `m` colour vertices directly and the `l` colour vertex through
/// `v_i^2` (at distance `a`). `tau` splits every colour vertex and separates
/// the `l` direction at each `v_i^1`.
///
/// `Q` ids: per base vertex `v_i^1`, `v_i^2`, then the interiors of its
/// `s`, `m`, `v_i^1 v_i^2` and `l` paths; the colour vertices come last in
/// base edge order.
pub fn fork_gadget(
    delta: &Graph,
    t: &Graph,
    a: usize,
    b: usize,
) -> Result<ReductionInstance, GadgetError> {
    if a == 0 || a > b {
        return Err(TreeError::ForkLengths(a, b).into());
    }
    if !delta.is_regular(3) {
        return Err(GadgetError::NotRegular(3));
    }
    if !delta.is_bipartite() {
        return Err(GadgetError::NotBipartite);
    }
    let colors = three_edge_coloring(delta).expect("bipartite cubic graphs are 3-edge-colourable");
    let k = delta.n();
    let report = ray_report(t)?;
    let mut forks: Vec<usize> = (0..t.n()).filter(|&v| is_fork(&report, v, a, b)).collect();
    if forks.len() < 2 * k {
        return Err(GadgetError::ForkTooSmall {
            need: 2 * k,
            have: forks.len(),
        });
    }
    forks.sort_by_key(|&v| (usize::MAX - report.source(v).unwrap().deg_leaves, v));
    forks.truncate(2 * k);

    let per = 2 * a + 2 * b - 2;
    let colour_vertex = |e: usize| k * per + e;
    let mut edges = Vec::new();
    let mut gamma = vec![None; t.n()];
    let mut parents = Vec::with_capacity(2 * k);
    let mut images = Vec::with_capacity(2 * k);
    let mut split_l = Vec::with_capacity(k);
    for i in 0..k {
        let base = i * per;
        let (v1, v2) = (base, base + 1);
        let mut next = base + 2;
        let path = |from: usize, to: usize, len: usize, next: &mut usize| {
            let mut seq = vec![from];
            seq.extend((0..len - 1).map(|j| *next + j));
            *next += len - 1;
            seq.push(to);
            seq
        };
        let by_colour = |c: u8| {
            let e = delta
                .incident(i)
                .iter()
                .copied()
                .find(|&e| colors[e] == c)
                .unwrap();
            colour_vertex(e)
        };
        let sp = path(v1, by_colour(0), a, &mut next);
        let mp = path(v1, by_colour(1), b, &mut next);
        let mid = path(v1, v2, a, &mut next);
        let lp = path(v2, by_colour(2), b, &mut next);
        for p in [&sp, &mp, &mid, &lp] {
            for w in p.windows(2) {
                edges.push((w[0], w[1]));
            }
        }
        split_l.push((v1, mid[1]));
        let mid_back: Vec<usize> = mid.iter().rev().copied().collect();
        for (j, (towards_a, towards_b)) in [(&sp, &mp), (&mid_back, &lp)].into_iter().enumerate() {
            let s = forks[2 * i + j];
            let src = report.source(s).unwrap();
            let ra = src.rays.iter().find(|r| r.len() == a + 1).unwrap();
            let rb = src
                .rays
                .iter()
                .find(|r| r.len() == b + 1 && r[1] != ra[1])
                .unwrap();
            gamma[s] = Some(towards_a[0]);
            for step in 1..=a {
                gamma[ra[step]] = Some(towards_a[step]);
            }
            for step in 1..=b {
                gamma[rb[step]] = Some(towards_b[step]);
            }
            let ray_starts: Vec<usize> = src.rays.iter().map(|r| r[1]).collect();
            let p = t
                .neighbors(s)
                .iter()
                .copied()
                .find(|w| !ray_starts.contains(w))
                .unwrap();
            parents.push(p);
            images.push(towards_a[0]);
        }
    }
    let q = Graph::new(k * per + delta.m(), edges)?;
    let labels: Vec<Vec<u8>> = (0..q.n())
        .map(|x| {
            if x >= k * per {
                vec![0, 1]
            } else if let Some(&(_, l)) = split_l.iter().find(|&&(v, _)| v == x) {
                q.neighbors(x).iter().map(|&w| (w == l) as u8).collect()
            } else {
                vec![0; q.degree(x)]
            }
        })
        .collect();
    let tau = Fracture::from_labels(&q, labels)?;
    let meta = InstanceMeta {
        k,
        a,
        b,
        sources: forks,
        parents,
        source_images: images,
        edge_colors: colors,
        ..InstanceMeta::default()
    };
    ReductionInstance::assemble(
        GadgetKind::Fork,
        t.clone(),
        delta.clone(),
        q,
        tau,
        gamma,
        meta,
    )
}
