//! The colour graph of a tree reduction and the orbit enumeration behind
//! the colourful-copy count.
//!
//! Let `X` be the graph on `V(Q)` plus the tree vertices outside the core,
//! with one edge per tree edge: core edges land on their `Q`-edge, the rest
//! keep their endpoints (core endpoints replaced by their image). Every
//! vertex of the hat host maps to `X` (host vertices by colour, added tree
//! vertices to themselves), and a colourful copy of the tree composed with
//! this map is an edge-bijective homomorphism `T -> X`. Automorphisms of `T`
//! act freely on those, so the copies are counted by summing, over one
//! homomorphism per orbit, the number of embeddings that realise it.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{GadgetError, ReductionInstance};
use crate::counting::eliminate::DomainProblem;
use crate::counting::{solve, CountResult, Engine};
use crate::fracture::Fracture;
use crate::graph::{EdgeColoring, Graph, QColoredGraph};
use crate::tree::{center, rooted, subtree_classes};

/// The colour graph `X` of a tree reduction.
#[derive(Debug, Clone)]
pub struct Frame {
    pub tree: Graph,
    pub q: Graph,
    pub x: Graph,
    /// Image in `X` of each tree vertex.
    pub pi: Vec<usize>,
    /// Tree vertices outside the core; external `i` is `X` vertex
    /// `q.n() + i`.
    pub externals: Vec<usize>,
    /// Tree edge behind each `X` edge.
    pub tree_edge: Vec<usize>,
    /// `Q` edge of each `X` edge inside `Q`.
    pub q_edge: Vec<Option<usize>>,
}

impl Frame {
    pub fn new(inst: &ReductionInstance) -> Result<Frame, GadgetError> {
        let tree = &inst.pattern;
        let q = &inst.q;
        let mut pi = vec![usize::MAX; tree.n()];
        let mut externals = Vec::new();
        for v in 0..tree.n() {
            match inst.gamma[v] {
                Some(x) => pi[v] = x,
                None => {
                    pi[v] = q.n() + externals.len();
                    externals.push(v);
                }
            }
        }
        let images: Vec<(usize, usize)> =
            tree.edges().iter().map(|&(a, b)| (pi[a], pi[b])).collect();
        let x = Graph::new(q.n() + externals.len(), images.iter().copied())
            .map_err(|_| GadgetError::NotEdgeBijective)?;
        if x.m() != tree.m() {
            return Err(GadgetError::NotEdgeBijective);
        }
        let mut tree_edge = vec![0; x.m()];
        for (i, &(a, b)) in images.iter().enumerate() {
            tree_edge[x.edge_index(a, b).unwrap()] = i;
        }
        let q_edge: Vec<Option<usize>> = x
            .edges()
            .iter()
            .map(|&(a, b)| if b < q.n() { q.edge_index(a, b) } else { None })
            .collect();
        let covered = q_edge.iter().filter(|e| e.is_some()).count();
        let inside = x.edges().iter().filter(|&&(_, b)| b < q.n()).count();
        if covered != q.m() || inside != q.m() {
            return Err(GadgetError::NotEdgeBijective);
        }
        Ok(Frame {
            tree: tree.clone(),
            q: q.clone(),
            x,
            pi,
            externals,
            tree_edge,
            q_edge,
        })
    }

    /// The hat host of `g`: `g` itself, one copy of every external tree
    /// vertex, tree edges among externals, and every external joined to the
    /// whole colour class of each core neighbour's image. Edges are coloured
    /// by tree edge.
    pub fn hat_host(&self, g: &QColoredGraph) -> Result<HatHost, GadgetError> {
        if g.q() != &self.q {
            return Err(GadgetError::ColoringMismatch);
        }
        let ng = g.graph.n();
        let nq = self.q.n();
        let classes = g.classes();
        let mut phi: Vec<usize> = (0..ng).map(|v| g.color(v)).collect();
        phi.extend((0..self.externals.len()).map(|i| nq + i));
        let host_of = |x: usize| ng + x - nq;
        let mut edges: Vec<(usize, usize)> = g.graph.edges().to_vec();
        for &(a, b) in self.x.edges() {
            if b < nq {
                continue;
            }
            if a >= nq {
                edges.push((host_of(a), host_of(b)));
            } else {
                edges.extend(classes[a].iter().map(|&v| (v, host_of(b))));
            }
        }
        let graph = Graph::new(ng + self.externals.len(), edges)?;
        let colors = graph
            .edges()
            .iter()
            .map(|&(u, v)| self.tree_edge[self.x.edge_index(phi[u], phi[v]).unwrap()])
            .collect();
        let coloring = EdgeColoring::new(&graph, self.tree.m(), colors)?;
        Ok(HatHost {
            graph,
            phi,
            coloring,
            host_vertices: ng,
        })
    }

    /// Fracture of `Q` induced by a homomorphism `h: T -> X`: at each `Q`
    /// vertex, edges whose tree preimages meet at a common tree vertex share
    /// a block.
    pub fn induced_fracture(&self, h: &[usize]) -> Fracture {
        let nq = self.q.n();
        let mut blocks: Vec<Vec<Vec<usize>>> = vec![Vec::new(); nq];
        for u in 0..self.tree.n() {
            if h[u] >= nq {
                continue;
            }
            let block: Vec<usize> = self
                .tree
                .neighbors(u)
                .iter()
                .filter_map(|&w| self.q_edge[self.x.edge_index(h[u], h[w]).unwrap()])
                .collect();
            if !block.is_empty() {
                let mut block = block;
                block.sort_unstable();
                blocks[h[u]].push(block);
            }
        }
        Fracture::from_blocks(&self.q, &blocks).expect("edge-bijective maps induce fractures")
    }

    /// Calls `visit(h, N(h))` for one edge-bijective homomorphism `h` per
    /// automorphism orbit with `N(h) > 0`, where `N(h)` counts embeddings
    /// of the tree into the hat host lying over `h`. Returns the number of
    /// orbit representatives examined.
    pub fn for_each_copy_class<F>(&self, hat: &HatHost, mut visit: F) -> usize
    where
        F: FnMut(&[usize], &BigUint),
    {
        let mut cap = vec![0usize; self.x.n()];
        for &p in &hat.phi {
            cap[p] += 1;
        }
        let mut classes = vec![Vec::new(); self.x.n()];
        for (v, &p) in hat.phi.iter().enumerate() {
            classes[p].push(v);
        }
        let mut reps = 0;
        let tree = &self.tree;
        orbit_representatives(tree, &self.x, &cap, |h| {
            reps += 1;
            let domains = h.iter().map(|&x| classes[x].clone()).collect();
            let mut distinct = Vec::new();
            for a in 0..h.len() {
                for b in a + 1..h.len() {
                    if h[a] == h[b] {
                        distinct.push((a, b));
                    }
                }
            }
            let problem = DomainProblem {
                pattern: tree,
                host: &hat.graph,
                domains,
                distinct,
            };
            let n: CountResult = solve(&problem, Engine::Auto);
            if n.exact != BigUint::from(0u32) {
                visit(h, &n.exact);
            }
        });
        reps
    }
}

/// The edge-coloured host of a tree reduction.
#[derive(Debug, Clone)]
pub struct HatHost {
    pub graph: Graph,
    /// Image of each host vertex in the colour graph.
    pub phi: Vec<usize>,
    /// Edge colours; the palette is the tree's edge set.
    pub coloring: EdgeColoring,
    /// Vertices `0..host_vertices` are the original host.
    pub host_vertices: usize,
}

/// Enumerates one edge-bijective homomorphism `t -> x` per orbit of
/// `Aut(t)`, skipping any that send more than `cap[v]` tree vertices to
/// `v`.
///
/// The tree hangs from its centre. Isomorphic sibling subtrees receive
/// increasing images, and for a central edge with isomorphic halves the
/// first centre gets the smaller image; this picks exactly one element per
/// orbit. Children of a vertex are placed together on unused `X` edges at
/// its image, most constrained vertex first.
pub fn orbit_representatives<F: FnMut(&[usize])>(
    t: &Graph,
    x: &Graph,
    cap: &[usize],
    mut visit: F,
) {
    if t.m() != x.m() || t.n() == 0 {
        return;
    }
    let centre = center(t);
    let root = centre[0];
    let (_, parent) = rooted(t, root);
    let code = subtree_classes(t, root);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); t.n()];
    for v in 0..t.n() {
        if parent[v] != usize::MAX {
            children[parent[v]].push(v);
        }
    }
    for c in children.iter_mut() {
        c.sort_by_key(|&v| (code[v], v));
    }
    let swap_halves = centre.len() == 2 && halves_isomorphic(t, centre[0], centre[1]);
    let mut s = Search {
        x,
        cap,
        children: &children,
        code: &code,
        h: vec![usize::MAX; t.n()],
        used: vec![false; x.m()],
        load: vec![0; x.n()],
        free: (0..x.n()).map(|v| x.degree(v)).collect(),
        demand: vec![0; x.n()],
        frontier: Vec::new(),
        swap: if swap_halves {
            Some((centre[0], centre[1]))
        } else {
            None
        },
    };
    for r in 0..x.n() {
        if cap[r] == 0 || x.degree(r) < children[root].len() {
            continue;
        }
        s.h[root] = r;
        s.load[r] += 1;
        s.demand[r] += children[root].len();
        s.frontier.push(root);
        if s.feasible(r) {
            s.run(&mut visit);
        }
        s.frontier.pop();
        s.demand[r] -= children[root].len();
        s.load[r] -= 1;
        s.h[root] = usize::MAX;
    }
}

fn halves_isomorphic(t: &Graph, a: usize, b: usize) -> bool {
    let e = t.edge_index(a, b).unwrap();
    let cut = t.edge_subgraph(|i| i != e);
    rooted_code(&cut, a) == rooted_code(&cut, b)
}

/// Canonical parenthesis string of the component of `root`.
fn rooted_code(t: &Graph, root: usize) -> Vec<u8> {
    fn go(t: &Graph, v: usize, p: usize, out: &mut Vec<u8>) {
        let mut parts: Vec<Vec<u8>> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != p)
            .map(|&w| {
                let mut s = Vec::new();
                go(t, w, v, &mut s);
                s
            })
            .collect();
        parts.sort();
        out.push(b'(');
        for s in parts {
            out.extend(s);
        }
        out.push(b')');
    }
    let mut out = Vec::new();
    go(t, root, usize::MAX, &mut out);
    out
}

struct Search<'a> {
    x: &'a Graph,
    cap: &'a [usize],
    children: &'a [Vec<usize>],
    code: &'a [usize],
    h: Vec<usize>,
    used: Vec<bool>,
    load: Vec<usize>,
    free: Vec<usize>,
    demand: Vec<usize>,
    frontier: Vec<usize>,
    swap: Option<(usize, usize)>,
}

impl Search<'_> {
    fn feasible(&self, v: usize) -> bool {
        let (f, d) = (self.free[v], self.demand[v]);
        d <= f && (f == d || self.load[v] < self.cap[v])
    }

    fn options(&self, v: usize) -> u128 {
        let f = self.free[self.h[v]] as u128;
        let ch = &self.children[v];
        let mut total: u128 = 1;
        for i in 0..ch.len() as u128 {
            total = total.saturating_mul(f.saturating_sub(i));
        }
        let mut run = 1u128;
        for i in 1..ch.len() {
            if self.code[ch[i]] == self.code[ch[i - 1]] {
                run += 1;
                total /= run;
            } else {
                run = 1;
            }
        }
        total
    }

    fn run<F: FnMut(&[usize])>(&mut self, visit: &mut F) {
        if self.frontier.is_empty() {
            visit(&self.h);
            return;
        }
        let (pos, _) = self
            .frontier
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, self.options(v)))
            .min_by_key(|&(_, o)| o)
            .unwrap();
        let v = self.frontier.swap_remove(pos);
        let mut chosen = Vec::with_capacity(self.children[v].len());
        self.place(v, 0, &mut chosen, visit);
        self.frontier.push(v);
        let last = self.frontier.len() - 1;
        self.frontier.swap(pos, last);
    }

    /// Assigns the `i`-th child of `v`, then recurses.
    fn place<F: FnMut(&[usize])>(
        &mut self,
        v: usize,
        i: usize,
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) {
        let ch = self.children[v].clone();
        let hv = self.h[v];
        if i == ch.len() {
            self.commit(v, &ch, chosen, visit);
            return;
        }
        let u = ch[i];
        let lower = if i > 0 && self.code[ch[i - 1]] == self.code[u] {
            Some(chosen[i - 1])
        } else {
            None
        };
        // Incident edges and neighbours are both sorted, so they align.
        let incident = self.x.incident(hv);
        let mut unused_from = vec![0usize; incident.len() + 1];
        for k in (0..incident.len()).rev() {
            unused_from[k] = unused_from[k + 1] + !self.used[incident[k]] as usize;
        }
        if unused_from[0] < ch.len() - i {
            return;
        }
        // Later siblings of the same shape need larger images.
        let same_after = ch[i + 1..]
            .iter()
            .take_while(|&&w| self.code[w] == self.code[u])
            .count();
        for (k, &y) in self.x.neighbors(hv).iter().enumerate() {
            if unused_from[k + 1] < same_after {
                break;
            }
            if lower.is_some_and(|l| y <= l) {
                continue;
            }
            if let Some((a, b)) = self.swap {
                if v == a && u == b && y <= hv {
                    continue;
                }
            }
            let e = incident[k];
            if self.used[e] || self.load[y] >= self.cap[y] {
                continue;
            }
            self.used[e] = true;
            self.load[y] += 1;
            chosen.push(y);
            self.place(v, i + 1, chosen, visit);
            chosen.pop();
            self.load[y] -= 1;
            self.used[e] = false;
        }
    }

    fn commit<F: FnMut(&[usize])>(
        &mut self,
        v: usize,
        ch: &[usize],
        chosen: &[usize],
        visit: &mut F,
    ) {
        let hv = self.h[v];
        self.free[hv] -= ch.len();
        self.demand[hv] -= ch.len();
        for (&u, &y) in ch.iter().zip(chosen) {
            self.h[u] = y;
            self.free[y] -= 1;
            let c = self.children[u].len();
            self.demand[y] += c;
            if c > 0 {
                self.frontier.push(u);
            }
        }
        let ok = self.feasible(hv) && chosen.iter().all(|&y| self.feasible(y));
        if ok {
            self.run(visit);
        }
        for (&u, &y) in ch.iter().zip(chosen).rev() {
            let c = self.children[u].len();
            if c > 0 {
                let p = self.frontier.iter().rposition(|&w| w == u).unwrap();
                self.frontier.remove(p);
            }
            self.demand[y] -= c;
            self.free[y] += 1;
            self.h[u] = usize::MAX;
        }
        self.demand[hv] += ch.len();
        self.free[hv] += ch.len();
    }
}
