//! The C-number gadget: a cubic Hamiltonian base graph laid along the
//! junctions of a closed strong C-gadget.

use alloc::vec;
use alloc::vec::Vec;

use super::{GadgetError, GadgetKind, InstanceMeta, ReductionInstance};
use crate::fracture::Fracture;
use crate::graph::Graph;
use crate::tree::CGadget;

/// Lexicographically first Hamiltonian cycle starting at vertex 0, by
/// exhaustive search.
pub fn hamiltonian_cycle(g: &Graph) -> Option<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, seen: &mut [bool]) -> bool {
        let v = *path.last().unwrap();
        if path.len() == g.n() {
            return g.has_edge(v, path[0]);
        }
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                path.push(w);
                if extend(g, path, seen) {
                    return true;
                }
                path.pop();
                seen[w] = false;
            }
        }
        false
    }
    if g.n() < 3 {
        return None;
    }
    let mut path = vec![0];
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    extend(g, &mut path, &mut seen).then_some(path)
}

fn check_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    let mut seen = vec![false; n];
    cycle.len() == n
        && cycle
            .iter()
            .all(|&v| v < n && !core::mem::replace(&mut seen[v], true))
        && (0..n).all(|j| g.has_edge(cycle[j], cycle[(j + 1) % n]))
}

/// Builds `Q` by deleting the closing cycle edge `{v_k, v_1}`, stretching
/// each remaining cycle edge `{v_j, v_{j+1}}` to the distance between the
/// matching junctions, and replacing every chord by a path of length `2d`
/// through a midpoint, which `tau` splits.
///
/// `Q` ids: the cycle vertices in cycle order, then the stretched-path
/// interiors, then each chord path's interior in `Delta` edge order.
pub fn cnum_gadget(
    delta: &Graph,
    cycle: Option<&[usize]>,
    t: &Graph,
    gadget: &CGadget,
) -> Result<ReductionInstance, GadgetError> {
    if !delta.is_regular(3) {
        return Err(GadgetError::NotRegular(3));
    }
    let cycle = match cycle {
        Some(c) => c.to_vec(),
        None => hamiltonian_cycle(delta).ok_or(GadgetError::NotHamiltonian)?,
    };
    if !check_cycle(delta, &cycle) {
        return Err(GadgetError::NotHamiltonian);
    }
    let (_, strong, closed) = gadget.check(t);
    if !(strong && closed) {
        return Err(GadgetError::BadCGadget);
    }
    let k = delta.n();
    if gadget.junctions.len() != k {
        return Err(GadgetError::JunctionMismatch {
            expected: k,
            got: gadget.junctions.len(),
        });
    }
    let d = gadget.order;
    let idx = &gadget.junctions;
    let mut pos = vec![0; k];
    for (j, &v) in cycle.iter().enumerate() {
        pos[v] = j;
    }
    let mut gamma: Vec<Option<usize>> = vec![None; t.n()];
    let mut edges = Vec::new();
    let mut next = k;
    for j in 0..k - 1 {
        let len = idx[j + 1] - idx[j];
        let mut prev = j;
        gamma[gadget.path[idx[j]]] = Some(j);
        for s in 1..len {
            gamma[gadget.path[idx[j] + s]] = Some(next);
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, j + 1));
    }
    gamma[gadget.path[idx[k - 1]]] = Some(k - 1);
    let mut tau_split = Vec::new();
    for &(x, y) in delta.edges() {
        let (a, b) = (pos[x].min(pos[y]), pos[x].max(pos[y]));
        if b == a + 1 || (a == 0 && b == k - 1) {
            continue;
        }
        // v_a, w_a^1 .. w_a^{d-1}, m, w_b^{d-1} .. w_b^1, v_b
        let chord: Vec<usize> = (0..2 * d - 1).map(|i| next + i).collect();
        next += 2 * d - 1;
        let mut walk = vec![a];
        walk.extend(&chord);
        walk.push(b);
        for w in walk.windows(2) {
            edges.push((w[0], w[1]));
        }
        let mid = chord[d - 1];
        tau_split.push(mid);
        for (end, ray) in [(a, &gadget.rays[a]), (b, &gadget.rays[b])] {
            for s in 1..=d {
                let image = if end == a {
                    walk[s]
                } else {
                    walk[walk.len() - 1 - s]
                };
                gamma[ray[s]] = Some(image);
            }
        }
    }
    let q = Graph::new(next, edges)?;
    let labels: Vec<Vec<u8>> = (0..q.n())
        .map(|v| {
            if tau_split.contains(&v) {
                vec![0, 1]
            } else {
                vec![0; q.degree(v)]
            }
        })
        .collect();
    let tau = Fracture::from_labels(&q, labels)?;
    let meta = InstanceMeta {
        k,
        d,
        cycle,
        junctions: idx.iter().map(|&i| gadget.path[i]).collect(),
        ..InstanceMeta::default()
    };
    ReductionInstance::assemble(
        GadgetKind::CNumber,
        t.clone(),
        delta.clone(),
        q,
        tau,
        gamma,
        meta,
    )
}
