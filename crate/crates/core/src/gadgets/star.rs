//! The star gadget: each vertex of a cubic base graph becomes six paths of
//! length `d - 1` that the rays of a large star are mapped onto.
//!
//! Per base vertex `v` the gadget is a spine `v1 .. v3 .. v5 .. end` made of
//! three segments of length `d - 1` (`v2`, `v4`, `v6` sit one step into
//! each segment), and three pendant paths of length `d - 1` from `v2`,
//! `v4`, `v6` to the connection vertices shared with the neighbours of `v`
//! (in increasing order). The fracture cuts the spine at `v3`, `v5` and the
//! connection vertices, and detaches each pendant at its start.

use alloc::vec;
use alloc::vec::Vec;

use super::{GadgetError, GadgetKind, InstanceMeta, ReductionInstance};
use crate::fracture::Fracture;
use crate::graph::Graph;
use crate::tree::ray_report;

pub fn star_gadget(
    delta: &Graph,
    t: &Graph,
    source: usize,
    d: usize,
) -> Result<ReductionInstance, GadgetError> {
    if d < 3 {
        return Err(GadgetError::StarLength(d));
    }
    if !delta.is_regular(3) {
        return Err(GadgetError::NotRegular(3));
    }
    let k = delta.n();
    let report = ray_report(t)?;
    let mut rays: Vec<Vec<usize>> = report
        .source(source)
        .map(|s| {
            s.rays
                .iter()
                .filter(|r| r.len() == d + 1)
                .cloned()
                .collect()
        })
        .unwrap_or_default();
    if rays.len() < 6 * k {
        return Err(GadgetError::StarTooSmall {
            need: 6 * k,
            have: rays.len(),
            d,
        });
    }
    rays.sort_by_key(|r| r[1]);
    rays.truncate(6 * k);

    let per = 6 * d - 8;
    let conn = |e: usize| k * per + e;
    let spine_len = 3 * (d - 1);
    let mut edges = Vec::new();
    // paths[v][i] is P_v^{i+1} as a vertex sequence starting at v_{i+1}.
    let mut paths: Vec<Vec<Vec<usize>>> = Vec::with_capacity(k);
    // Vertices where tau splits off the pendant: (vertex, pendant edge end).
    let mut detach: Vec<(usize, usize)> = Vec::new();
    let mut cut: Vec<usize> = (0..delta.m()).map(conn).collect();
    for v in 0..k {
        let base = v * per;
        let spine: Vec<usize> = (0..=spine_len).map(|i| base + i).collect();
        for w in spine.windows(2) {
            edges.push((w[0], w[1]));
        }
        let nbrs = delta.neighbors(v);
        let mut pend = Vec::with_capacity(3);
        for (p, &at) in [1, d, 2 * (d - 1) + 1].iter().enumerate() {
            let mut seq = vec![spine[at]];
            seq.extend((0..d - 2).map(|i| base + spine_len + 1 + p * (d - 2) + i));
            seq.push(conn(delta.edge_index(v, nbrs[p]).unwrap()));
            for w in seq.windows(2) {
                edges.push((w[0], w[1]));
            }
            detach.push((seq[0], seq[1]));
            pend.push(seq);
        }
        cut.push(spine[d - 1]);
        cut.push(spine[2 * (d - 1)]);
        let seg = |i: usize| spine[i * (d - 1)..=(i + 1) * (d - 1)].to_vec();
        paths.push(vec![
            seg(0),
            pend[0].clone(),
            seg(1),
            pend[1].clone(),
            seg(2),
            pend[2].clone(),
        ]);
    }
    let q = Graph::new(k * per + delta.m(), edges)?;
    let labels: Vec<Vec<u8>> = (0..q.n())
        .map(|x| {
            if cut.contains(&x) {
                vec![0, 1]
            } else if let Some(&(_, below)) = detach.iter().find(|&&(y, _)| y == x) {
                q.neighbors(x).iter().map(|&w| (w == below) as u8).collect()
            } else {
                vec![0; q.degree(x)]
            }
        })
        .collect();
    let tau = Fracture::from_labels(&q, labels)?;
    let mut gamma = vec![None; t.n()];
    for (j, ray) in rays.iter().enumerate() {
        let target = &paths[j / 6][j % 6];
        for s in 1..=d {
            gamma[ray[s]] = Some(target[s - 1]);
        }
    }
    let meta = InstanceMeta {
        k,
        d,
        source: Some(source),
        ..InstanceMeta::default()
    };
    ReductionInstance::assemble(
        GadgetKind::Star,
        t.clone(),
        delta.clone(),
        q,
        tau,
        gamma,
        meta,
    )
}
