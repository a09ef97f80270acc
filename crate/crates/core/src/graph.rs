//! Simple undirected graphs on dense vertex ids, Q-colourings and the
//! constructions used throughout the crate.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised when building graphs and colourings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error("colouring is not a homomorphism: host edge {{{0}, {1}}} maps to a non-edge")]
    NotHomomorphism(usize, usize),
    #[error("assignment has length {got}, expected {expected}")]
    AssignmentLength { got: usize, expected: usize },
    #[error("colour {color} is not a vertex of the target graph ({n} vertices)")]
    ColorOutOfRange { color: usize, n: usize },
    #[error("colourings are over different target graphs")]
    TargetMismatch,
    #[error("colouring is flagged surjective but colour {0} has no preimage")]
    NotSurjective(usize),
    #[error("edge colouring covers {got} edges, host has {expected}")]
    EdgeColoringLength { got: usize, expected: usize },
    #[error("edge colour {color} is outside the palette of size {palette}")]
    PaletteOverflow { color: usize, palette: usize },
}

/// A simple undirected graph with vertices `0..n`.
///
/// Edges are stored as sorted pairs `(u, v)` with `u < v`, in lexicographic
/// order; the position of an edge in that order is its edge index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range ids and duplicates.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push(if a < b { (a, b) } else { (b, a) });
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(Graph::from_sorted(n, list))
    }

    /// Like [`Graph::new`] but panics on invalid input. Meant for fixed
    /// constructions whose validity is evident.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).expect("invalid edge list")
    }

    /// Builds a graph from an edge list, silently dropping duplicates.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        list.sort_unstable();
        list.dedup();
        assert!(
            list.iter().all(|&(a, b)| a != b && b < n),
            "invalid edge list"
        );
        Graph::from_sorted(n, list)
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut bits = vec![0u64; words * n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adj[a].push(b);
            adj[b].push(a);
            inc[a].push(i);
            inc[b].push(i);
            bits[a * words + b / 64] |= 1 << (b % 64);
            bits[b * words + a / 64] |= 1 << (a % 64);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            inc,
            words,
            bits,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Graph::from_sorted(n, e)
    }

    /// Path with `len` edges on vertices `0..=len`.
    pub fn path(len: usize) -> Graph {
        Graph::from_sorted(len + 1, (0..len).map(|i| (i, i + 1)).collect())
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((0, n - 1));
        e.sort_unstable();
        Graph::from_sorted(n, e)
    }

    /// The star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Graph {
        Graph::from_sorted(k + 1, (1..=k).map(|i| (0, i)).collect())
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut e = Vec::new();
        for x in 0..a {
            for y in a..a + b {
                e.push((x, y));
            }
        }
        Graph::from_sorted(a + b, e)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let e = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + off, b + off)))
            .collect();
        Graph::from_sorted(self.n + other.n, e)
    }

    /// `k` disjoint copies of `self`.
    pub fn copies(&self, k: usize) -> Graph {
        let mut g = Graph::empty(0);
        for _ in 0..k {
            g = g.disjoint_union(self);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Indices of the edges incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    /// The endpoint of edge `e` other than `v`.
    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|l| l.len() == d)
    }

    /// Same vertex set, keeping the edges whose index satisfies `keep`.
    pub fn edge_subgraph<F: Fn(usize) -> bool>(&self, keep: F) -> Graph {
        let e = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, &e)| e)
            .collect();
        Graph::from_sorted(self.n, e)
    }

    /// Subgraph induced by `verts` (in the given order); returns the graph
    /// and the map from new ids to old ids.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut e = Vec::new();
        for &(a, b) in &self.edges {
            if pos[a] != usize::MAX && pos[b] != usize::MAX {
                let (x, y) = (pos[a], pos[b]);
                e.push(if x < y { (x, y) } else { (y, x) });
            }
        }
        e.sort_unstable();
        (Graph::from_sorted(verts.len(), e), verts.to_vec())
    }

    /// Drops isolated vertices; returns the graph and the new-to-old id map.
    pub fn without_isolated(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    pub fn isolated_count(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) == 0).count()
    }

    /// Component id per vertex, numbered in order of least vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n];
        let mut c = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = c;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        queue.push_back(w);
                    }
                }
            }
            c += 1;
        }
        (c, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.m() + 1 == self.n && self.is_connected()
    }

    /// A proper 2-colouring if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side = vec![None; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(x) if x == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Vertex sequence of the unique path between `u` and `v` in a tree
    /// (or a shortest path in general graphs).
    pub fn path_between(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &w in &self.adj[x] {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        if parent[v] == usize::MAX {
            return None;
        }
        let mut p = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            p.push(x);
        }
        p.reverse();
        Some(p)
    }
}

/// The line graph: one vertex per edge of `h` (in edge-index order), adjacent
/// when the edges share an endpoint.
pub fn line_graph(h: &Graph) -> Result<Graph, GraphError> {
    if h.m() == 0 {
        return Err(GraphError::NoEdges);
    }
    let mut e = Vec::new();
    for v in 0..h.n() {
        let inc = h.incident(v);
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                e.push((a, b));
            }
        }
    }
    Graph::new(h.m(), e)
}

/// Subdivides every edge once. The subdivision vertex of edge `i` gets id
/// `n + i`; the returned vector maps edge indices of `h` to those ids.
pub fn subdivide(h: &Graph) -> (Graph, Vec<usize>) {
    let n = h.n();
    let mut e = Vec::with_capacity(2 * h.m());
    let mut map = Vec::with_capacity(h.m());
    for (i, &(a, b)) in h.edges().iter().enumerate() {
        e.push((a, n + i));
        e.push((b, n + i));
        map.push(n + i);
    }
    e.sort_unstable();
    (Graph::from_sorted(n + h.m(), e), map)
}

/// A homomorphism from a host graph into a target graph `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    pub target: Graph,
    pub assignment: Vec<usize>,
    pub surjective: bool,
}

impl VertexColoring {
    /// Validates the homomorphism property and records surjectivity.
    pub fn new(host: &Graph, target: Graph, assignment: Vec<usize>) -> Result<Self, GraphError> {
        validate_assignment(host, &target, &assignment)?;
        let mut hit = vec![false; target.n()];
        for &c in &assignment {
            hit[c] = true;
        }
        let surjective = hit.iter().all(|&x| x);
        Ok(VertexColoring {
            target,
            assignment,
            surjective,
        })
    }

    /// Like [`VertexColoring::new`], but with an explicit surjectivity flag
    /// that is checked when set.
    pub fn with_flag(
        host: &Graph,
        target: Graph,
        assignment: Vec<usize>,
        surjective: bool,
    ) -> Result<Self, GraphError> {
        let c = VertexColoring::new(host, target, assignment)?;
        if surjective && !c.surjective {
            let mut hit = vec![false; c.target.n()];
            for &x in &c.assignment {
                hit[x] = true;
            }
            let missing = hit.iter().position(|&x| !x).unwrap_or(0);
            return Err(GraphError::NotSurjective(missing));
        }
        Ok(VertexColoring { surjective, ..c })
    }

    /// Host vertices of each colour, ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut cl = vec![Vec::new(); self.target.n()];
        for (v, &c) in self.assignment.iter().enumerate() {
            cl[c].push(v);
        }
        cl
    }

    /// The induced edge colouring `c_E`, with palette `E(Q)`.
    pub fn edge_coloring(&self, host: &Graph) -> EdgeColoring {
        let colors = host
            .edges()
            .iter()
            .map(|&(a, b)| {
                self.target
                    .edge_index(self.assignment[a], self.assignment[b])
                    .expect("colouring is a homomorphism")
            })
            .collect();
        EdgeColoring {
            palette: self.target.m(),
            colors,
        }
    }
}

fn validate_assignment(
    host: &Graph,
    target: &Graph,
    assignment: &[usize],
) -> Result<(), GraphError> {
    if assignment.len() != host.n() {
        return Err(GraphError::AssignmentLength {
            got: assignment.len(),
            expected: host.n(),
        });
    }
    if let Some(&c) = assignment.iter().find(|&&c| c >= target.n()) {
        return Err(GraphError::ColorOutOfRange {
            color: c,
            n: target.n(),
        });
    }
    for &(a, b) in host.edges() {
        if !target.has_edge(assignment[a], assignment[b]) {
            return Err(GraphError::NotHomomorphism(a, b));
        }
    }
    Ok(())
}

/// A host graph together with a Q-colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QColoredGraph {
    pub graph: Graph,
    pub coloring: VertexColoring,
}

impl QColoredGraph {
    pub fn new(graph: Graph, q: Graph, assignment: Vec<usize>) -> Result<Self, GraphError> {
        let coloring = VertexColoring::new(&graph, q, assignment)?;
        Ok(QColoredGraph { graph, coloring })
    }

    /// `Q` coloured by the identity.
    pub fn identity(q: &Graph) -> QColoredGraph {
        QColoredGraph::new(q.clone(), q.clone(), (0..q.n()).collect()).expect("identity colouring")
    }

    pub fn q(&self) -> &Graph {
        &self.coloring.target
    }

    pub fn color(&self, v: usize) -> usize {
        self.coloring.assignment[v]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.coloring.classes()
    }

    pub fn edge_coloring(&self) -> EdgeColoring {
        self.coloring.edge_coloring(&self.graph)
    }
}

/// An edge colouring with colours `0..palette`, indexed by host edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub palette: usize,
    pub colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(host: &Graph, palette: usize, colors: Vec<usize>) -> Result<Self, GraphError> {
        if colors.len() != host.m() {
            return Err(GraphError::EdgeColoringLength {
                got: colors.len(),
                expected: host.m(),
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= palette) {
            return Err(GraphError::PaletteOverflow { color: c, palette });
        }
        Ok(EdgeColoring { palette, colors })
    }

    /// Host edges grouped by colour.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut cl = vec![Vec::new(); self.palette];
        for (e, &c) in self.colors.iter().enumerate() {
            cl[c].push(e);
        }
        cl
    }
}

/// The fibered product `G1 ×_Q G2`: pairs `(u, w)` with equal colours,
/// ordered lexicographically, adjacent when both coordinates are adjacent.
pub fn fibered_product(
    g1: &QColoredGraph,
    g2: &QColoredGraph,
) -> Result<QColoredGraph, GraphError> {
    fibered_product_with(g1, g2, false)
}

/// [`fibered_product`], optionally dropping isolated vertices.
pub fn fibered_product_with(
    g1: &QColoredGraph,
    g2: &QColoredGraph,
    drop_isolated: bool,
) -> Result<QColoredGraph, GraphError> {
    if g1.q() != g2.q() {
        return Err(GraphError::TargetMismatch);
    }
    let n2 = g2.graph.n();
    let mut id = vec![usize::MAX; g1.graph.n() * n2];
    let mut pairs = Vec::new();
    for u in 0..g1.graph.n() {
        for w in 0..n2 {
            if g1.color(u) == g2.color(w) {
                id[u * n2 + w] = pairs.len();
                pairs.push((u, w));
            }
        }
    }
    let mut e = Vec::new();
    for &(a, b) in g1.graph.edges() {
        for &(x, y) in g2.graph.edges() {
            for (p, q) in [((a, x), (b, y)), ((a, y), (b, x))] {
                let i = id[p.0 * n2 + p.1];
                let j = id[q.0 * n2 + q.1];
                if i != usize::MAX && j != usize::MAX {
                    e.push(if i < j { (i, j) } else { (j, i) });
                }
            }
        }
    }
    let g = Graph::from_edges_dedup(pairs.len(), e);
    let col: Vec<usize> = pairs.iter().map(|&(u, _)| g1.color(u)).collect();
    if drop_isolated {
        let (h, map) = g.without_isolated();
        let col = map.iter().map(|&v| col[v]).collect();
        return QColoredGraph::new(h, g1.q().clone(), col);
    }
    QColoredGraph::new(g, g1.q().clone(), col)
}
