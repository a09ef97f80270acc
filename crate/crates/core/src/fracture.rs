//! Fractures of a graph `Q`, fractured graphs `Q♯ρ`, the fracture lattice
//! and its Möbius function, and the homomorphism-basis coefficients of
//! colourful subgraph counts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::{Graph, GraphError, QColoredGraph, VertexColoring};
use crate::iso::{invariant, is_isomorphic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractureError {
    #[error("fracture does not match the base graph")]
    BaseMismatch,
    #[error("fractures are not comparable")]
    Incomparable,
    #[error("vertex {0} of the base graph is isolated")]
    IsolatedVertex(usize),
    #[error("vertex {vertex}: blocks do not partition its incident edges")]
    NotAPartition { vertex: usize },
    #[error("malformed fracture encoding: {0}")]
    Encoding(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A fracture of `Q`: for every vertex, a partition of its incident edges.
///
/// `parts[v][i]` is the block of the `i`-th incident edge of `v` (incident
/// edges in ascending edge index). Blocks are numbered by first occurrence,
/// so block order is the order of least edge index and equal fractures have
/// equal representations. The base graph is not stored; operations taking a
/// fracture also take `Q` and check that the shapes agree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fracture {
    parts: Vec<Vec<u8>>,
}

/// Restricted growth strings of length `k` with at most `max` blocks, in
/// lexicographic order.
pub fn set_partitions(k: usize, max: usize) -> Vec<Vec<u8>> {
    fn go(k: usize, max: usize, cur: &mut Vec<u8>, top: u8, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let limit = if cur.is_empty() {
            0
        } else {
            (top as usize + 1).min(max - 1) as u8
        };
        for b in 0..=limit {
            cur.push(b);
            go(k, max, cur, top.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
    } else if max > 0 {
        go(k, max, &mut Vec::with_capacity(k), 0, &mut out);
    }
    out
}

pub fn bell(k: usize) -> u64 {
    set_partitions(k, k.max(1)).len() as u64
}

fn normalize(rgs: &[u8]) -> Vec<u8> {
    let mut seen: Vec<u8> = Vec::new();
    rgs.iter()
        .map(|&b| match seen.iter().position(|&x| x == b) {
            Some(i) => i as u8,
            None => {
                seen.push(b);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

impl Fracture {
    /// The coarsest fracture: one block per vertex.
    pub fn top(q: &Graph) -> Fracture {
        Fracture {
            parts: (0..q.n()).map(|v| vec![0; q.degree(v)]).collect(),
        }
    }

    /// The finest fracture: every incident edge alone.
    pub fn singletons(q: &Graph) -> Fracture {
        Fracture {
            parts: (0..q.n())
                .map(|v| (0..q.degree(v) as u8).collect())
                .collect(),
        }
    }

    /// Builds a fracture from per-vertex block labels over the incident
    /// edges. Labels are arbitrary and get renumbered canonically.
    pub fn from_labels(q: &Graph, labels: Vec<Vec<u8>>) -> Result<Fracture, FractureError> {
        if labels.len() != q.n() {
            return Err(FractureError::BaseMismatch);
        }
        let mut parts = Vec::with_capacity(q.n());
        for (v, l) in labels.iter().enumerate() {
            if l.len() != q.degree(v) {
                return Err(FractureError::BaseMismatch);
            }
            parts.push(normalize(l));
        }
        Ok(Fracture { parts })
    }

    /// Builds a fracture from explicit blocks of edge indices per vertex.
    pub fn from_blocks(q: &Graph, blocks: &[Vec<Vec<usize>>]) -> Result<Fracture, FractureError> {
        if blocks.len() != q.n() {
            return Err(FractureError::BaseMismatch);
        }
        let mut labels = Vec::with_capacity(q.n());
        for (v, bs) in blocks.iter().enumerate() {
            let inc = q.incident(v);
            let mut l = vec![u8::MAX; inc.len()];
            for (b, block) in bs.iter().enumerate() {
                if block.is_empty() {
                    return Err(FractureError::NotAPartition { vertex: v });
                }
                for e in block {
                    match inc.binary_search(e) {
                        Ok(i) if l[i] == u8::MAX => l[i] = b as u8,
                        _ => return Err(FractureError::NotAPartition { vertex: v }),
                    }
                }
            }
            if l.contains(&u8::MAX) {
                return Err(FractureError::NotAPartition { vertex: v });
            }
            labels.push(l);
        }
        Fracture::from_labels(q, labels)
    }

    pub fn parts(&self) -> &[Vec<u8>] {
        &self.parts
    }

    /// Block labels at `v`, aligned with `q.incident(v)`.
    pub fn part(&self, v: usize) -> &[u8] {
        &self.parts[v]
    }

    pub fn block_count(&self, v: usize) -> usize {
        self.parts[v]
            .iter()
            .map(|&b| b as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Block of edge `e` at its endpoint `v`.
    pub fn block_of(&self, q: &Graph, v: usize, e: usize) -> usize {
        let i = q
            .incident(v)
            .binary_search(&e)
            .expect("edge is incident to the vertex");
        self.parts[v][i] as usize
    }

    /// Blocks at each vertex as sorted edge-index lists, by least element.
    pub fn blocks(&self, q: &Graph) -> Vec<Vec<Vec<usize>>> {
        (0..q.n())
            .map(|v| {
                let mut bs = vec![Vec::new(); self.block_count(v)];
                for (i, &e) in q.incident(v).iter().enumerate() {
                    bs[self.parts[v][i] as usize].push(e);
                }
                bs
            })
            .collect()
    }

    pub fn is_top(&self) -> bool {
        self.parts.iter().all(|p| p.iter().all(|&b| b == 0))
    }

    pub fn matches(&self, q: &Graph) -> bool {
        self.parts.len() == q.n() && (0..q.n()).all(|v| self.parts[v].len() == q.degree(v))
    }

    fn same_shape(&self, other: &Fracture) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(a, b)| a.len() == b.len())
    }

    /// Canonical text form: per vertex the blocks as comma-separated edge
    /// indices joined by `/`, vertices joined by `;`.
    pub fn encode(&self, q: &Graph) -> String {
        let mut s = String::new();
        for (v, bs) in self.blocks(q).iter().enumerate() {
            if v > 0 {
                s.push(';');
            }
            for (i, b) in bs.iter().enumerate() {
                if i > 0 {
                    s.push('/');
                }
                for (j, e) in b.iter().enumerate() {
                    if j > 0 {
                        s.push(',');
                    }
                    s.push_str(&format!("{e}"));
                }
            }
        }
        s
    }

    /// Inverse of [`Fracture::encode`].
    pub fn decode(q: &Graph, s: &str) -> Result<Fracture, FractureError> {
        let verts: Vec<&str> = if q.n() == 0 && s.is_empty() {
            Vec::new()
        } else {
            s.split(';').collect()
        };
        if verts.len() != q.n() {
            return Err(FractureError::BaseMismatch);
        }
        let mut blocks = Vec::with_capacity(q.n());
        for v in verts {
            let mut bs = Vec::new();
            if !v.is_empty() {
                for b in v.split('/') {
                    let mut block = Vec::new();
                    for e in b.split(',') {
                        let x = e
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| FractureError::Encoding(e.into()))?;
                        block.push(x);
                    }
                    bs.push(block);
                }
            }
            blocks.push(bs);
        }
        Fracture::from_blocks(q, &blocks)
    }
}

/// Number of fractures of `q`, `Π_v Bell(deg v)`.
pub fn fracture_count(q: &Graph) -> u128 {
    (0..q.n()).map(|v| bell(q.degree(v)) as u128).product()
}

/// All fractures of `q`, optionally with at most `max_blocks` blocks per
/// vertex. Order: lexicographic in the per-vertex partition lists, vertex 0
/// most significant.
pub fn enumerate_fractures(q: &Graph, max_blocks: Option<usize>) -> Vec<Fracture> {
    let choices: Vec<Vec<Vec<u8>>> = (0..q.n())
        .map(|v| {
            let d = q.degree(v);
            set_partitions(d, max_blocks.unwrap_or(d).max(1).min(d.max(1)))
        })
        .collect();
    let mut out = Vec::new();
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0usize; q.n()];
    loop {
        out.push(Fracture {
            parts: (0..q.n()).map(|v| choices[v][idx[v]].clone()).collect(),
        });
        let mut v = q.n();
        loop {
            if v == 0 {
                return out;
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

/// `Q♯ρ` together with its canonical colouring and the origin of every
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracturedGraph {
    pub graph: Graph,
    pub coloring: VertexColoring,
    /// `origin[x] = (v, block)`: `x` is the copy of `v` for that block.
    pub origin: Vec<(usize, Vec<usize>)>,
    /// Edge `i` of `Q` becomes edge `edge_map[i]` of `Q♯ρ`.
    pub edge_map: Vec<usize>,
}

impl FracturedGraph {
    pub fn colored(&self) -> QColoredGraph {
        QColoredGraph {
            graph: self.graph.clone(),
            coloring: self.coloring.clone(),
        }
    }
}

/// Builds `Q♯ρ`. Vertex ids follow `(v, least edge of the block)`.
pub fn apply_fracture(q: &Graph, rho: &Fracture) -> Result<FracturedGraph, FractureError> {
    if !rho.matches(q) {
        return Err(FractureError::BaseMismatch);
    }
    let blocks = rho.blocks(q);
    let mut first = vec![0usize; q.n() + 1];
    for v in 0..q.n() {
        first[v + 1] = first[v] + blocks[v].len();
    }
    let mut origin = Vec::with_capacity(first[q.n()]);
    let mut assignment = Vec::with_capacity(first[q.n()]);
    for (v, bs) in blocks.into_iter().enumerate() {
        for b in bs {
            origin.push((v, b));
            assignment.push(v);
        }
    }
    let edges: Vec<(usize, usize)> = q
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            (
                first[a] + rho.block_of(q, a, i),
                first[b] + rho.block_of(q, b, i),
            )
        })
        .collect();
    let graph = Graph::new(origin.len(), edges.iter().copied())?;
    let edge_map = edges
        .iter()
        .map(|&(x, y)| graph.edge_index(x, y).unwrap())
        .collect();
    let coloring = VertexColoring::new(&graph, q.clone(), assignment)?;
    Ok(FracturedGraph {
        graph,
        coloring,
        origin,
        edge_map,
    })
}

/// Only the graph `Q♯ρ`, skipping the colouring and origin bookkeeping.
pub fn fractured_graph(q: &Graph, rho: &Fracture) -> Graph {
    let mut first = vec![0usize; q.n() + 1];
    for v in 0..q.n() {
        first[v + 1] = first[v] + rho.block_count(v);
    }
    let edges = q.edges().iter().enumerate().map(|(i, &(a, b))| {
        (
            first[a] + rho.block_of(q, a, i),
            first[b] + rho.block_of(q, b, i),
        )
    });
    Graph::from_edges_dedup(first[q.n()], edges)
}

/// `σ ≤ ρ`: every block of `σ_v` lies inside a block of `ρ_v`.
pub fn fracture_leq(sigma: &Fracture, rho: &Fracture) -> Result<bool, FractureError> {
    if !sigma.same_shape(rho) {
        return Err(FractureError::BaseMismatch);
    }
    Ok(sigma
        .parts
        .iter()
        .zip(&rho.parts)
        .all(|(s, r)| refines(s, r)))
}

fn refines(s: &[u8], r: &[u8]) -> bool {
    let mut to = [u8::MAX; 256];
    for (&a, &b) in s.iter().zip(r) {
        if to[a as usize] == u8::MAX {
            to[a as usize] = b;
        } else if to[a as usize] != b {
            return false;
        }
    }
    true
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Möbius value of a coarsening in which the given numbers of fine blocks
/// are merged into each coarse block.
fn mobius_of_sizes(sizes: impl IntoIterator<Item = usize>) -> BigInt {
    let mut m = BigInt::one();
    for n in sizes {
        let f = factorial(n - 1);
        m *= if (n - 1) % 2 == 0 { f } else { -f };
    }
    m
}

/// The Möbius function of the fracture lattice (product of partition
/// lattices ordered by refinement).
pub fn fracture_mobius(sigma: &Fracture, rho: &Fracture) -> Result<BigInt, FractureError> {
    if !fracture_leq(sigma, rho)? {
        return Err(FractureError::Incomparable);
    }
    let mut sizes = Vec::new();
    for (s, r) in sigma.parts.iter().zip(&rho.parts) {
        let nr = r.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        let mut seen = vec![Vec::<u8>::new(); nr];
        for (&a, &b) in s.iter().zip(r) {
            if !seen[b as usize].contains(&a) {
                seen[b as usize].push(a);
            }
        }
        sizes.extend(seen.iter().map(Vec::len));
    }
    Ok(mobius_of_sizes(sizes))
}

/// All `ρ ≥ σ`, each with `μ(σ, ρ)`.
pub fn coarsenings(sigma: &Fracture) -> Vec<(Fracture, BigInt)> {
    let per_vertex: Vec<Vec<(Vec<u8>, BigInt)>> = sigma
        .parts
        .iter()
        .map(|p| {
            let nb = p.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
            set_partitions(nb, nb.max(1))
                .into_iter()
                .map(|merge| {
                    let mut sizes = vec![0usize; nb];
                    for &m in &merge {
                        sizes[m as usize] += 1;
                    }
                    let coarse: Vec<u8> =
                        normalize(&p.iter().map(|&b| merge[b as usize]).collect::<Vec<_>>());
                    (
                        coarse,
                        mobius_of_sizes(sizes.into_iter().filter(|&s| s > 0)),
                    )
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        let parts = idx
            .iter()
            .enumerate()
            .map(|(v, &i)| per_vertex[v][i].0.clone())
            .collect();
        let mu = idx
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (v, &i)| acc * &per_vertex[v][i].1);
        out.push((Fracture { parts }, mu));
        let mut v = per_vertex.len();
        loop {
            if v == 0 {
                return out;
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

/// Signed coefficients keyed by fracture; absent keys are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoefficientVector {
    pub entries: BTreeMap<Fracture, BigInt>,
}

impl CoefficientVector {
    pub fn get(&self, rho: &Fracture) -> BigInt {
        self.entries.get(rho).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&mut self, rho: Fracture, x: &BigInt) {
        let e = self.entries.entry(rho.clone()).or_insert_with(BigInt::zero);
        *e += x;
        if e.is_zero() {
            self.entries.remove(&rho);
        }
    }

    /// Fractures with odd coefficient.
    pub fn odd_support(&self) -> Vec<Fracture> {
        self.entries
            .iter()
            .filter(|(_, v)| v.bit(0))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

fn check_no_isolated(q: &Graph) -> Result<(), FractureError> {
    match (0..q.n()).find(|&v| q.degree(v) == 0) {
        Some(v) => Err(FractureError::IsolatedVertex(v)),
        None => Ok(()),
    }
}

/// `a(ρ) = Σ_{σ ≤ ρ, pred(Q♯σ)} μ(σ, ρ)`, by full Möbius inversion.
pub fn colsub_coefficients<P>(q: &Graph, pred: P) -> Result<CoefficientVector, FractureError>
where
    P: Fn(&Graph) -> bool,
{
    check_no_isolated(q)?;
    let mut out = CoefficientVector::default();
    for sigma in enumerate_fractures(q, None) {
        if !pred(&fractured_graph(q, &sigma)) {
            continue;
        }
        for (rho, mu) in coarsenings(&sigma) {
            out.add(rho, &mu);
        }
    }
    Ok(out)
}

/// Predicate "isomorphic to `target`".
pub fn isomorphic_to(target: Graph) -> impl Fn(&Graph) -> bool {
    move |g: &Graph| is_isomorphic(g, &target)
}

fn components_all(g: &Graph, ok: impl Fn(usize, usize) -> bool) -> bool {
    let (c, comp) = g.components();
    let mut nv = vec![0usize; c];
    let mut ne = vec![0usize; c];
    for v in 0..g.n() {
        nv[comp[v]] += 1;
    }
    for &(a, _) in g.edges() {
        ne[comp[a]] += 1;
    }
    (0..c).all(|i| ok(nv[i], ne[i]))
}

/// Predicate "disjoint union of triangles" (no isolated vertices).
pub fn is_triangle_packing(g: &Graph) -> bool {
    g.n() > 0 && components_all(g, |v, e| v == 3 && e == 3)
}

/// Predicate "disjoint union of 2-edge paths" (no isolated vertices).
pub fn is_p2_packing(g: &Graph) -> bool {
    g.n() > 0 && components_all(g, |v, e| v == 3 && e == 2)
}

/// Result of a search for the fractures whose fractured graph is
/// isomorphic to a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSearch {
    pub fractures: Vec<Fracture>,
    /// Number of fractures in the searched space (visited or pruned).
    pub covered: u128,
}

/// All fractures `σ` of `q` (at most `max_blocks` blocks per vertex) with
/// `Q♯σ ≅ target`. Exhaustive: subtrees are cut only when every completion
/// is provably wrong (a block larger than the target's maximum degree, a
/// component with more edges than any target component, or a finished
/// component matching no unused target component).
pub fn fractures_with_quotient(
    q: &Graph,
    target: &Graph,
    max_blocks: Option<usize>,
) -> QuotientSearch {
    let order = bfs_order(q);
    let choices: Vec<Vec<Vec<u8>>> = order
        .iter()
        .map(|&v| {
            let d = q.degree(v);
            set_partitions(d, max_blocks.unwrap_or(d).max(1).min(d.max(1)))
        })
        .collect();
    let mut suffix = vec![1u128; order.len() + 1];
    for i in (0..order.len()).rev() {
        suffix[i] = suffix[i + 1] * choices[i].len() as u128;
    }
    let (tc, tcomp) = target.components();
    let mut kinds: Vec<(Graph, usize)> = Vec::new();
    for c in 0..tc {
        let verts: Vec<usize> = (0..target.n()).filter(|&v| tcomp[v] == c).collect();
        let (g, _) = target.induced(&verts);
        match kinds.iter_mut().find(|(k, _)| is_isomorphic(k, &g)) {
            Some(k) => k.1 += 1,
            None => kinds.push((g, 1)),
        }
    }
    let valid = target.m() == q.m() && target.isolated_count() == 0;
    let mut st = QuotientState {
        q,
        order: &order,
        choices: &choices,
        suffix: &suffix,
        max_deg: target.max_degree(),
        max_comp: kinds.iter().map(|(g, _)| g.m()).max().unwrap_or(0),
        kinds,
        parent: (0..q.m()).collect(),
        size: vec![1; q.m()],
        open: vec![2; q.m()],
        history: Vec::new(),
        labels: vec![Vec::new(); q.n()],
        found: Vec::new(),
        covered: 0,
    };
    if valid {
        st.go(0);
    } else {
        st.covered = suffix[0];
    }
    QuotientSearch {
        fractures: st.found,
        covered: st.covered,
    }
}

fn bfs_order(q: &Graph) -> Vec<usize> {
    let mut seen = vec![false; q.n()];
    let mut order = Vec::with_capacity(q.n());
    for s in 0..q.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &w in q.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

enum Undo {
    Union {
        child: usize,
        root: usize,
        open: usize,
    },
    Open(usize),
    Use(usize),
}

struct QuotientState<'a> {
    q: &'a Graph,
    order: &'a [usize],
    choices: &'a [Vec<Vec<u8>>],
    suffix: &'a [u128],
    max_deg: usize,
    max_comp: usize,
    kinds: Vec<(Graph, usize)>,
    parent: Vec<usize>,
    size: Vec<usize>,
    open: Vec<usize>,
    history: Vec<Undo>,
    labels: Vec<Vec<u8>>,
    found: Vec<Fracture>,
    covered: u128,
}

impl QuotientState<'_> {
    fn find(&self, mut e: usize) -> usize {
        while self.parent[e] != e {
            e = self.parent[e];
        }
        e
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.history.push(Undo::Union {
            child: rb,
            root: ra,
            open: self.open[ra],
        });
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.open[ra] += self.open[rb];
        ra
    }

    fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            match self.history.pop().unwrap() {
                Undo::Union { child, root, open } => {
                    self.parent[child] = child;
                    self.size[root] -= self.size[child];
                    self.open[root] = open;
                }
                Undo::Open(r) => self.open[r] += 1,
                Undo::Use(k) => self.kinds[k].1 += 1,
            }
        }
    }

    /// The component of edge root `r` as a graph on its fractured vertices.
    fn component(&self, r: usize) -> Graph {
        let q = self.q;
        let mut verts: Vec<(usize, u8)> = Vec::new();
        let mut edges = Vec::new();
        for e in 0..q.m() {
            if self.find(e) != r {
                continue;
            }
            let (a, b) = q.edge(e);
            let mut ids = [0usize; 2];
            for (k, v) in [a, b].into_iter().enumerate() {
                let i = q.incident(v).binary_search(&e).unwrap();
                let key = (v, self.labels[v][i]);
                ids[k] = match verts.iter().position(|&x| x == key) {
                    Some(p) => p,
                    None => {
                        verts.push(key);
                        verts.len() - 1
                    }
                };
            }
            edges.push((ids[0], ids[1]));
        }
        Graph::from_edges_dedup(verts.len(), edges)
    }

    fn go(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.covered += 1;
            self.found.push(Fracture {
                parts: self.labels.clone(),
            });
            return;
        }
        let v = self.order[depth];
        let inc: Vec<usize> = self.q.incident(v).to_vec();
        for c in 0..self.choices[depth].len() {
            let part = self.choices[depth][c].clone();
            let mark = self.history.len();
            if self.apply(v, &inc, &part) {
                self.labels[v] = part;
                self.go(depth + 1);
                self.labels[v] = Vec::new();
            } else {
                self.covered += self.suffix[depth + 1];
            }
            self.rollback(mark);
        }
    }

    fn apply(&mut self, v: usize, inc: &[usize], part: &[u8]) -> bool {
        let nb = part.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        let mut sizes = vec![0usize; nb];
        for &b in part {
            sizes[b as usize] += 1;
        }
        if sizes.iter().any(|&s| s > self.max_deg) {
            return false;
        }
        for b in 0..nb {
            let mut first = None;
            for (i, &e) in inc.iter().enumerate() {
                if part[i] as usize == b {
                    match first {
                        None => first = Some(e),
                        Some(f) => {
                            let r = self.union(f, e);
                            if self.size[r] > self.max_comp {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        // `v` is now decided: close one endpoint of every incident edge.
        let saved = core::mem::take(&mut self.labels[v]);
        self.labels[v] = part.to_vec();
        let mut ok = true;
        for &e in inc {
            let r = self.find(e);
            self.open[r] -= 1;
            self.history.push(Undo::Open(r));
            if self.open[r] == 0 {
                let g = self.component(r);
                let inv = invariant(&g);
                match self
                    .kinds
                    .iter()
                    .position(|(k, n)| *n > 0 && invariant(k) == inv && is_isomorphic(k, &g))
                {
                    Some(k) => {
                        self.kinds[k].1 -= 1;
                        self.history.push(Undo::Use(k));
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
        }
        self.labels[v] = saved;
        ok
    }
}

/// `a(⊤) = Σ μ(σ, ⊤)` over the fractures `σ` with `Q♯σ ≅ target`.
pub fn top_coefficient(q: &Graph, target: &Graph) -> BigInt {
    let top = Fracture::top(q);
    fractures_with_quotient(q, target, None)
        .fractures
        .iter()
        .map(|s| fracture_mobius(s, &top).expect("every fracture is below the top"))
        .sum()
}

/// Is `tau` an odd fracture of the subdivision `h2`? `subdivision[i]` is
/// the id of the subdivision vertex of the `i`-th edge of the original
/// graph. Subdivision vertices must be split into two singletons and every
/// original vertex into two blocks of size 2.
pub fn is_odd_fracture(h2: &Graph, subdivision: &[usize], tau: &Fracture) -> bool {
    if !tau.matches(h2) {
        return false;
    }
    let mut is_sub = vec![false; h2.n()];
    for &s in subdivision {
        is_sub[s] = true;
    }
    (0..h2.n()).all(|v| {
        let p = tau.part(v);
        if is_sub[v] {
            p == [0, 1]
        } else {
            p.len() == 4 && p.iter().filter(|&&b| b == 0).count() == 2 && p.iter().all(|&b| b < 2)
        }
    })
}

/// The odd fractures of `subdivide(h)`, in enumeration order.
pub fn odd_fractures(h: &Graph) -> Vec<Fracture> {
    let (h2, map) = crate::graph::subdivide(h);
    let pairings: Vec<Vec<u8>> = set_partitions(4, 2)
        .into_iter()
        .filter(|p| p.iter().filter(|&&b| b == 0).count() == 2)
        .collect();
    let choices: Vec<Vec<Vec<u8>>> = (0..h2.n())
        .map(|v| {
            if v >= h.n() {
                vec![vec![0, 1]]
            } else if h2.degree(v) == 4 {
                pairings.clone()
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut out = Vec::new();
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0usize; h2.n()];
    loop {
        let f = Fracture {
            parts: (0..h2.n()).map(|v| choices[v][idx[v]].clone()).collect(),
        };
        debug_assert!(is_odd_fracture(&h2, &map, &f));
        out.push(f);
        let mut v = h2.n();
        loop {
            if v == 0 {
                return out;
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

/// Number of odd fractures of `subdivide(h)`: the product over original
/// vertices of the number of ways to split their incident edges into two
/// pairs.
pub fn count_odd_fractures(h: &Graph) -> u128 {
    let pairings = set_partitions(4, 2)
        .into_iter()
        .filter(|p| p.iter().filter(|&&b| b == 0).count() == 2)
        .count() as u128;
    (0..h.n())
        .map(|v| if h.degree(v) == 4 { pairings } else { 0 })
        .product()
}
