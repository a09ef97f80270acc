//! Isomorphism testing for small graphs: colour refinement followed by
//! backtracking over refined classes.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Stable colour refinement run jointly on both graphs so colour ids are
/// comparable. Returns the colours of `a` and of `b`.
fn refine(a: &Graph, b: &Graph) -> (Vec<usize>, Vec<usize>) {
    let na = a.n();
    let total = na + b.n();
    let graph_of = |v: usize| if v < na { (a, v) } else { (b, v - na) };
    let mut col: Vec<usize> = (0..total)
        .map(|v| {
            let (g, x) = graph_of(v);
            g.degree(x)
        })
        .collect();
    let mut classes = 0;
    loop {
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..total)
            .map(|v| {
                let (g, x) = graph_of(v);
                let off = if v < na { 0 } else { na };
                let mut nb: Vec<usize> = g.neighbors(x).iter().map(|&w| col[w + off]).collect();
                nb.sort_unstable();
                (col[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0; total];
        let mut c = 0;
        for i in 0..total {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                c += 1;
            }
            next[sig[i].2] = c;
        }
        let count = if total == 0 { 0 } else { c + 1 };
        col = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let cb = col.split_off(na);
    (col, cb)
}

/// An isomorphism `a -> b` as a vertex map, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.m() != b.m() || a.degree_sequence() != b.degree_sequence() {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return None;
    }
    let n = a.n();
    let mut class_size = vec![0usize; n + 1];
    for &c in &ca {
        class_size[c] += 1;
    }
    // Order: start from the vertex in the smallest class, then grow along
    // edges preferring vertices with many placed neighbours.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (usize::MAX - links[v], class_size[ca[v]], v))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &w in a.neighbors(next) {
            links[w] += 1;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &ca, &cb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let anchor = a
        .neighbors(v)
        .iter()
        .copied()
        .find(|&w| map[w] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(w) => b.neighbors(map[w]).to_vec(),
        None => (0..b.n()).collect(),
    };
    for x in candidates {
        if used[x] || cb[x] != ca[v] {
            continue;
        }
        let ok = order[..depth]
            .iter()
            .all(|&u| a.has_edge(u, v) == b.has_edge(map[u], x));
        if !ok {
            continue;
        }
        map[v] = x;
        used[x] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[x] = false;
    }
    false
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Graph invariant used to bucket graphs before exact isomorphism tests.
pub fn invariant(g: &Graph) -> (usize, usize, Vec<usize>) {
    (g.n(), g.m(), g.degree_sequence())
}
