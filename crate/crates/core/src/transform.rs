//! Reduction engines: recovering individual fractured-graph terms from an
//! oracle for a linear combination, removing edge colours by
//! inclusion-exclusion, and counting s-t-paths through a tree oracle.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};

use crate::counting::{count_cp_homs, count_subs};
use crate::fracture::{
    apply_fracture, enumerate_fractures, fracture_leq, CoefficientVector, Fracture,
};
use crate::gf2::{solve, Gf2Matrix, Gf2Solution};
use crate::graph::{fibered_product, EdgeColoring, Graph, GraphError, QColoredGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("the oracle answers do not determine the term of fracture {0}")]
    Underdetermined(String),
    #[error("the oracle answers are inconsistent with any linear combination")]
    Inconsistent,
    #[error("requested fracture does not match the base graph")]
    BaseMismatch,
    #[error("host is coloured over a different graph than the oracle")]
    ColoringMismatch,
    #[error("palette has {palette} colours but the pattern has {edges} edges")]
    PaletteMismatch { palette: usize, edges: usize },
    #[error("tree has no 2-path with a window of length {0} between non-leaves")]
    NoLongTwoPath(usize),
    #[error("invalid path endpoints")]
    BadEndpoints,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An oracle for `Σ_ρ a(ρ)·⊕Homs((Q♯ρ, c_ρ) → ·)` with unknown integer `a`.
pub trait LinearCombinationOracle {
    fn base(&self) -> &Graph;
    fn query(&self, host: &QColoredGraph) -> bool;
}

/// A test double with a known coefficient vector, answering by direct
/// counting.
#[derive(Debug, Clone)]
pub struct SyntheticOracle {
    pub q: Graph,
    pub coefficients: CoefficientVector,
}

impl LinearCombinationOracle for SyntheticOracle {
    fn base(&self) -> &Graph {
        &self.q
    }

    fn query(&self, host: &QColoredGraph) -> bool {
        let mut bit = false;
        for rho in self.coefficients.odd_support() {
            let f = apply_fracture(&self.q, &rho).expect("coefficient keys are fractures of q");
            bit ^= count_cp_homs(&f.colored(), host).expect("same base").parity;
        }
        bit
    }
}

fn cp_hom_parity(pattern: &QColoredGraph, host: &QColoredGraph) -> bool {
    count_cp_homs(pattern, host).expect("same base").parity
}

/// Recovers `⊕Homs((Q♯ρ, c_ρ) → host)` for each requested `ρ`.
///
/// The oracle is first queried on every `(Q♯σ, c_σ)` to learn the
/// coefficients modulo 2, then on every fibered product `host ×_Q Q♯σ`.
/// Since colour-preserving hom counts are multiplicative over fibered
/// products, the second batch is a GF(2) system in the unknown parities.
/// A requested term the system does not pin down is reported as
/// [`TransformError::Underdetermined`].
pub fn extract_odd_terms<O: LinearCombinationOracle + ?Sized>(
    oracle: &O,
    q: &Graph,
    host: &QColoredGraph,
    requested: &[Fracture],
) -> Result<BTreeMap<Fracture, bool>, TransformError> {
    if oracle.base() != q || host.q() != q {
        return Err(TransformError::ColoringMismatch);
    }
    if requested.iter().any(|r| !r.matches(q)) {
        return Err(TransformError::BaseMismatch);
    }
    let all = enumerate_fractures(q, None);
    let n = all.len();
    let fractured: Vec<QColoredGraph> = all
        .iter()
        .map(|r| apply_fracture(q, r).map(|f| f.colored()))
        .collect::<Result<_, _>>()
        .map_err(|_| TransformError::BaseMismatch)?;
    // leq[r][s] = [ρ_r ≤ σ_s] = ⊕Homs(Q♯ρ_r → Q♯σ_s).
    let leq: Vec<Vec<bool>> = all
        .iter()
        .map(|r| all.iter().map(|s| fracture_leq(r, s).unwrap()).collect())
        .collect();

    let mut cal = Gf2Matrix::new(n);
    let mut b = Vec::with_capacity(n);
    for (s, fs) in fractured.iter().enumerate() {
        cal.push_row(&(0..n).map(|r| leq[r][s]).collect::<Vec<_>>());
        b.push(oracle.query(fs));
    }
    let alpha: Vec<bool> = match solve(&cal, &b) {
        Gf2Solution::Inconsistent => return Err(TransformError::Inconsistent),
        Gf2Solution::Solved { values, .. } => {
            values.into_iter().map(|v| v.unwrap_or(false)).collect()
        }
    };

    let mut sys = Gf2Matrix::new(n);
    let mut rhs = Vec::with_capacity(n);
    for (s, fs) in fractured.iter().enumerate() {
        sys.push_row(&(0..n).map(|r| alpha[r] && leq[r][s]).collect::<Vec<_>>());
        rhs.push(oracle.query(&fibered_product(host, fs)?));
    }
    let values = match solve(&sys, &rhs) {
        Gf2Solution::Inconsistent => return Err(TransformError::Inconsistent),
        Gf2Solution::Solved { values, .. } => values,
    };
    let mut out = BTreeMap::new();
    for r in requested {
        let i = all
            .iter()
            .position(|x| x == r)
            .ok_or(TransformError::BaseMismatch)?;
        match values[i] {
            Some(v) => {
                out.insert(r.clone(), v);
            }
            None => return Err(TransformError::Underdetermined(r.encode(q))),
        }
    }
    Ok(out)
}

/// Direct parity `⊕Homs((Q♯ρ, c_ρ) → host)`, for checking extractions.
pub fn direct_term(
    q: &Graph,
    rho: &Fracture,
    host: &QColoredGraph,
) -> Result<bool, TransformError> {
    let f = apply_fracture(q, rho).map_err(|_| TransformError::BaseMismatch)?;
    Ok(cp_hom_parity(&f.colored(), host))
}

/// An oracle for `⊕Subs(H, ·)` with a fixed pattern `H`.
pub trait SubsParityOracle {
    fn subs_parity(&self, host: &Graph) -> bool;
}

impl<F: Fn(&Graph) -> bool> SubsParityOracle for F {
    fn subs_parity(&self, host: &Graph) -> bool {
        self(host)
    }
}

/// The brute-force oracle for a fixed pattern.
#[derive(Debug, Clone)]
pub struct BruteForceSubs {
    pub pattern: Graph,
}

impl SubsParityOracle for BruteForceSubs {
    fn subs_parity(&self, host: &Graph) -> bool {
        count_subs(&self.pattern, host).parity
    }
}

/// `⊕ColSubs(H, (G, γ))` by inclusion-exclusion over colour subsets, with
/// one oracle call per subset on the edge-subgraph of the kept colours.
pub fn colorful_parity_via_uncolored<O: SubsParityOracle + ?Sized>(
    pattern: &Graph,
    host: &Graph,
    coloring: &EdgeColoring,
    oracle: &O,
) -> Result<bool, TransformError> {
    let p = coloring.palette;
    if p != pattern.m() {
        return Err(TransformError::PaletteMismatch {
            palette: p,
            edges: pattern.m(),
        });
    }
    if coloring.colors.len() != host.m() {
        return Err(TransformError::Graph(GraphError::EdgeColoringLength {
            got: coloring.colors.len(),
            expected: host.m(),
        }));
    }
    assert!(p < 64, "palette too large for subset enumeration");
    let mut bit = false;
    for mask in 0u64..1 << p {
        let sub = host.edge_subgraph(|e| mask >> coloring.colors[e] & 1 == 1);
        bit ^= oracle.subs_parity(&sub);
    }
    Ok(bit)
}

/// All 2-paths of a tree, each oriented so that its vertex sequence is the
/// lexicographically smaller of its two readings, sorted.
pub fn two_paths(t: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s in 0..t.n() {
        if t.degree(s) == 2 {
            continue;
        }
        for &w in t.neighbors(s) {
            let mut p = vec![s, w];
            while t.degree(*p.last().unwrap()) == 2 {
                let x = *p.last().unwrap();
                let prev = p[p.len() - 2];
                let next = t.neighbors(x).iter().copied().find(|&y| y != prev).unwrap();
                p.push(next);
            }
            let mut r = p.clone();
            r.reverse();
            if p <= r {
                out.push(p);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The attachment used by the s-t-path reduction: a window `x_0..x_{k+2}`
/// of a 2-path whose ends are not leaves, and the two subtrees hanging off
/// the window ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWindow {
    pub window: Vec<usize>,
    /// Edges of `T_1` and `T_2` as vertex pairs of `T`.
    pub t1: Vec<(usize, usize)>,
    pub t2: Vec<(usize, usize)>,
    pub t1_vertices: Vec<usize>,
    pub t2_vertices: Vec<usize>,
}

/// Picks the window inside `two_path` (or inside the lexicographically
/// least 2-path that admits one) for paths of length `k`.
pub fn path_window(
    tree: &Graph,
    k: usize,
    two_path: Option<&[usize]>,
) -> Result<PathWindow, TransformError> {
    if !tree.is_tree() {
        return Err(TransformError::NoLongTwoPath(k + 2));
    }
    let fit = |p: &[usize]| -> Option<usize> {
        let start = if tree.degree(p[0]) == 1 { 1 } else { 0 };
        let end = if tree.degree(p[p.len() - 1]) == 1 {
            p.len() - 2
        } else {
            p.len() - 1
        };
        if end >= start + k + 2 {
            Some(start)
        } else {
            None
        }
    };
    let (path, start) = match two_path {
        Some(p) => {
            let ok = p.len() >= 2 && p.windows(2).all(|w| tree.has_edge(w[0], w[1]));
            match fit(p) {
                Some(s) if ok => (p.to_vec(), s),
                _ => return Err(TransformError::NoLongTwoPath(k + 2)),
            }
        }
        None => two_paths(tree)
            .into_iter()
            .find_map(|p| fit(&p).map(|s| (p, s)))
            .ok_or(TransformError::NoLongTwoPath(k + 2))?,
    };
    let window: Vec<usize> = path[start..start + k + 3].to_vec();
    let interior: Vec<usize> = window[1..k + 2].to_vec();
    let mut blocked = vec![false; tree.n()];
    for &x in &interior {
        blocked[x] = true;
    }
    let side = |root: usize| -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut verts = vec![root];
        let mut seen = blocked.clone();
        seen[root] = true;
        let mut edges = Vec::new();
        let mut i = 0;
        while i < verts.len() {
            let v = verts[i];
            i += 1;
            for &w in tree.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    verts.push(w);
                    edges.push((v, w));
                }
            }
        }
        (verts, edges)
    };
    let (t1_vertices, t1) = side(window[0]);
    let (t2_vertices, t2) = side(window[k + 2]);
    Ok(PathWindow {
        window,
        t1,
        t2,
        t1_vertices,
        t2_vertices,
    })
}

/// The graph `G′`: the host, then `T_1` (root first), then `T_2` (root
/// first); the roots are joined to `s` and `t`. Returns `G′` and the
/// indices of the edges of `T_1 ∪ T_2` in `G′`.
pub fn st_path_host(
    host: &Graph,
    s: usize,
    t: usize,
    w: &PathWindow,
) -> Result<(Graph, Vec<usize>), TransformError> {
    let n = host.n();
    let mut id = BTreeMap::new();
    for (i, &v) in w.t1_vertices.iter().chain(&w.t2_vertices).enumerate() {
        id.insert(v, n + i);
    }
    let x0 = id[&w.window[0]];
    let xk = id[&w.window[w.window.len() - 1]];
    let mut edges: Vec<(usize, usize)> = host.edges().to_vec();
    edges.push((x0, s));
    edges.push((t, xk));
    let tree_edges: Vec<(usize, usize)> =
        w.t1.iter()
            .chain(&w.t2)
            .map(|&(a, b)| (id[&a], id[&b]))
            .collect();
    edges.extend(&tree_edges);
    let g = Graph::new(n + w.t1_vertices.len() + w.t2_vertices.len(), edges)?;
    let s_edges = tree_edges
        .iter()
        .map(|&(a, b)| g.edge_index(a, b).unwrap())
        .collect();
    Ok((g, s_edges))
}

fn check_endpoints(host: &Graph, s: usize, t: usize) -> Result<(), TransformError> {
    if s == t || s >= host.n() || t >= host.n() {
        return Err(TransformError::BadEndpoints);
    }
    Ok(())
}

/// Parity of the number of s-t-paths with `k` edges, computed with a
/// `⊕Subs(T, ·)` oracle by inclusion-exclusion over the edges of `T_1`
/// and `T_2`.
pub fn st_path_parity<O: SubsParityOracle + ?Sized>(
    host: &Graph,
    s: usize,
    t: usize,
    k: usize,
    tree: &Graph,
    two_path: Option<&[usize]>,
    oracle: &O,
) -> Result<bool, TransformError> {
    check_endpoints(host, s, t)?;
    let w = path_window(tree, k, two_path)?;
    let (g, se) = st_path_host(host, s, t, &w)?;
    let mut bit = false;
    for mask in 0u64..1 << se.len() {
        let sub = g.edge_subgraph(|e| match se.iter().position(|&x| x == e) {
            Some(i) => mask >> i & 1 == 0,
            None => true,
        });
        bit ^= oracle.subs_parity(&sub);
    }
    Ok(bit)
}

/// The same inclusion-exclusion evaluated over the integers with exact
/// subgraph counts.
pub fn st_path_count(
    host: &Graph,
    s: usize,
    t: usize,
    k: usize,
    tree: &Graph,
    two_path: Option<&[usize]>,
) -> Result<BigInt, TransformError> {
    check_endpoints(host, s, t)?;
    let w = path_window(tree, k, two_path)?;
    let (g, se) = st_path_host(host, s, t, &w)?;
    let mut total = BigInt::from(0);
    for mask in 0u64..1 << se.len() {
        let sub = g.edge_subgraph(|e| match se.iter().position(|&x| x == e) {
            Some(i) => mask >> i & 1 == 0,
            None => true,
        });
        let c = BigInt::from(count_subs(tree, &sub).exact);
        if mask.count_ones() % 2 == 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    Ok(total)
}

/// Exhaustive simple s-t-path count, as a reference.
pub fn st_paths_exact(host: &Graph, s: usize, t: usize, k: usize) -> BigUint {
    crate::counting::count_st_paths(host, s, t, k)
}
