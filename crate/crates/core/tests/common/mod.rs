#![allow(dead_code)]

use fracture_lab_core::Graph;

/// Every map `pattern -> host` by odometer, counting those that are edge
/// preserving (and injective, colour-preserving when asked).
pub fn brute_maps(
    pattern: &Graph,
    host: &Graph,
    colors: Option<(&[usize], &[usize])>,
    injective: bool,
) -> u128 {
    let (n, h) = (pattern.n(), host.n());
    if n == 0 {
        return 1;
    }
    if h == 0 {
        return 0;
    }
    let mut f = vec![0usize; n];
    let mut total = 0;
    loop {
        let colours_ok = colors.map_or(true, |(pc, hc)| (0..n).all(|v| hc[f[v]] == pc[v]));
        let edges_ok = pattern
            .edges()
            .iter()
            .all(|&(a, b)| host.has_edge(f[a], f[b]));
        let inj_ok = !injective || (0..n).all(|a| (a + 1..n).all(|b| f[a] != f[b]));
        if colours_ok && edges_ok && inj_ok {
            total += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return total;
            }
            f[i] += 1;
            if f[i] < h {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Relabels `g` by `perm` (vertex `v` becomes `perm[v]`).
pub fn permute(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Graph::new(g.n(), edges).unwrap()
}

/// All graphs on `n` vertices, one per edge subset.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let e: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            Graph::from_edges(n, &e)
        })
        .collect()
}

/// One graph per isomorphism class on `n` vertices.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    for g in all_graphs(n) {
        let key = fracture_lab_core::iso::invariant(&g);
        if !out.iter().any(|h| {
            fracture_lab_core::iso::invariant(h) == key
                && fracture_lab_core::iso::is_isomorphic(h, &g)
        }) {
            out.push(g);
        }
    }
    out
}

/// Subgraphs of `host` isomorphic to `pattern`, by choosing `|E(pattern)|`
/// host edges and then the isolated vertices among the untouched ones.
pub fn brute_subs(pattern: &Graph, host: &Graph) -> u128 {
    let (core, _) = pattern.without_isolated();
    let iso = pattern.n() - core.n();
    let m = core.m();
    let mut total = 0u128;
    let mut pick: Vec<usize> = (0..m).collect();
    let hm = host.m();
    if m > hm {
        return 0;
    }
    loop {
        let mut verts: Vec<usize> = pick
            .iter()
            .flat_map(|&e| [host.edge(e).0, host.edge(e).1])
            .collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() == core.n() {
            let e: Vec<(usize, usize)> = pick
                .iter()
                .map(|&e| {
                    let (a, b) = host.edge(e);
                    (
                        verts.binary_search(&a).unwrap(),
                        verts.binary_search(&b).unwrap(),
                    )
                })
                .collect();
            let sub = Graph::new(verts.len(), e).unwrap();
            if fracture_lab_core::iso::is_isomorphic(&sub, &core) {
                total += binomial(host.n() - verts.len(), iso);
            }
        }
        // Next m-subset in lexicographic order.
        let mut i = m;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if pick[i] < hm - m + i {
                pick[i] += 1;
                for j in i + 1..m {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |r, i| r * (n - i) as u128 / (i + 1) as u128)
}

/// Automorphisms by trying every permutation.
pub fn brute_aut(g: &Graph) -> u128 {
    fn go(g: &Graph, perm: &mut Vec<usize>, used: &mut [bool]) -> u128 {
        let i = perm.len();
        if i == g.n() {
            return 1;
        }
        let mut total = 0;
        for v in 0..g.n() {
            if used[v] {
                continue;
            }
            let ok = (0..i).all(|j| g.has_edge(i, j) == g.has_edge(v, perm[j]));
            if ok {
                used[v] = true;
                perm.push(v);
                total += go(g, perm, used);
                perm.pop();
                used[v] = false;
            }
        }
        total
    }
    go(g, &mut Vec::new(), &mut vec![false; g.n()])
}

/// A random graph with 1 to `max_edges` edges, maximum degree at most
/// `max_deg` and no isolated vertices.
pub fn random_base<R: rand::Rng>(rng: &mut R, max_edges: usize, max_deg: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_edges + 1);
        let g = fracture_lab_core::samples::random_graph(n, rng.gen_range(0.3..0.9), rng);
        let (g, _) = g.without_isolated();
        if (1..=max_edges).contains(&g.m()) && g.max_degree() <= max_deg {
            return g;
        }
    }
}
