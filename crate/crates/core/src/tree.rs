//! Structural invariants of trees: 2-paths, rays and sources, fork, star
//! and C-numbers, the matching-split number and strong C-gadgets.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("input graph is not a tree")]
    NotATree,
    #[error("star length must be at least 3, got {0}")]
    StarLength(usize),
    #[error("fork lengths must satisfy 1 <= a <= b, got a = {0}, b = {1}")]
    ForkLengths(usize, usize),
    #[error("order must be positive")]
    ZeroOrder,
}

fn check_tree(t: &Graph) -> Result<(), TreeError> {
    if t.is_tree() {
        Ok(())
    } else {
        Err(TreeError::NotATree)
    }
}

/// Rays of one source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceRays {
    pub source: usize,
    /// Each ray as its vertex sequence from the source to the leaf, ordered
    /// by the source's neighbour they leave through.
    pub rays: Vec<Vec<usize>>,
    pub deg_leaves: usize,
    pub deg_nonleaves: usize,
    /// Number of rays per length.
    pub by_length: BTreeMap<usize, usize>,
}

impl SourceRays {
    pub fn rays_of_length(&self, a: usize) -> usize {
        self.by_length.get(&a).copied().unwrap_or(0)
    }
}

/// Every 2-path and every ray of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayReport {
    /// 2-paths, each read from the smaller of its two orientations.
    pub two_paths: Vec<Vec<usize>>,
    /// Sources in increasing id order.
    pub sources: Vec<SourceRays>,
}

impl RayReport {
    pub fn source(&self, s: usize) -> Option<&SourceRays> {
        self.sources.iter().find(|r| r.source == s)
    }
}

/// Walks from `s` through `w` while the current vertex has degree 2.
fn walk(t: &Graph, s: usize, w: usize) -> Vec<usize> {
    let mut p = vec![s, w];
    while t.degree(*p.last().unwrap()) == 2 {
        let x = p[p.len() - 1];
        let prev = p[p.len() - 2];
        let next = t.neighbors(x).iter().copied().find(|&y| y != prev).unwrap();
        p.push(next);
    }
    p
}

pub fn ray_report(t: &Graph) -> Result<RayReport, TreeError> {
    check_tree(t)?;
    let mut sources = Vec::new();
    for s in (0..t.n()).filter(|&s| t.degree(s) > 2) {
        let mut rays = Vec::new();
        let mut by_length = BTreeMap::new();
        for &w in t.neighbors(s) {
            let p = walk(t, s, w);
            if t.degree(*p.last().unwrap()) == 1 {
                *by_length.entry(p.len() - 1).or_insert(0) += 1;
                rays.push(p);
            }
        }
        let deg_leaves = rays.len();
        sources.push(SourceRays {
            source: s,
            deg_leaves,
            deg_nonleaves: t.degree(s) - deg_leaves,
            rays,
            by_length,
        });
    }
    Ok(RayReport {
        two_paths: crate::transform::two_paths(t),
        sources,
    })
}

/// Is `s` an a-b-fork?
pub fn is_fork(report: &RayReport, s: usize, a: usize, b: usize) -> bool {
    match report.source(s) {
        None => false,
        Some(r) => {
            r.deg_nonleaves == 1
                && if a != b {
                    r.rays_of_length(a) > 0 && r.rays_of_length(b) > 0
                } else {
                    r.rays_of_length(a) > 1
                }
        }
    }
}

/// Maximum independent set among the a-b-forks, by tree dynamic
/// programming.
pub fn fork_number(t: &Graph, a: usize, b: usize) -> Result<usize, TreeError> {
    if a == 0 || a > b {
        return Err(TreeError::ForkLengths(a, b));
    }
    let report = ray_report(t)?;
    let fork: Vec<bool> = (0..t.n()).map(|v| is_fork(&report, v, a, b)).collect();
    let (order, parent) = rooted(t, 0);
    let mut take = vec![0usize; t.n()];
    let mut skip = vec![0usize; t.n()];
    for &v in order.iter().rev() {
        take[v] = fork[v] as usize;
        for &c in t.neighbors(v) {
            if c != parent[v] {
                take[v] += skip[c];
                skip[v] += take[c].max(skip[c]);
            }
        }
        if !fork[v] {
            take[v] = 0;
        }
    }
    Ok(take[0].max(skip[0]))
}

/// BFS order from `root` and parent pointers (`usize::MAX` at the root).
pub fn rooted(t: &Graph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; t.n()];
    let mut order = vec![root];
    let mut seen = vec![false; t.n()];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
    }
    (order, parent)
}

/// Largest number of length-`c` rays sharing a source; a single ray does
/// not form a star, so 1 is reported as 0.
pub fn star_number(t: &Graph, c: usize) -> Result<usize, TreeError> {
    if c < 3 {
        return Err(TreeError::StarLength(c));
    }
    let report = ray_report(t)?;
    let best = report
        .sources
        .iter()
        .map(|r| r.rays_of_length(c))
        .max()
        .unwrap_or(0);
    Ok(if best > 1 { best } else { 0 })
}

/// Neighbours of each vertex whose branch is not a ray of length at most
/// `d` from that vertex.
fn bad_neighbours(t: &Graph, d: usize) -> Vec<Vec<usize>> {
    (0..t.n())
        .map(|x| {
            t.neighbors(x)
                .iter()
                .copied()
                .filter(|&w| {
                    let p = walk(t, x, w);
                    !(t.degree(*p.last().unwrap()) == 1 && p.len() - 1 <= d)
                })
                .collect()
        })
        .collect()
}

fn inner_ok(t: &Graph, bad: &[Vec<usize>], x: usize, prev: usize, next: usize) -> bool {
    t.degree(x) == 2 || (t.degree(x) > 2 && bad[x].iter().all(|&w| w == prev || w == next))
}

/// Is the vertex sequence `path` a C-gadget of order `d`?
pub fn is_c_gadget(t: &Graph, path: &[usize], d: usize) -> bool {
    if path.is_empty() || path.windows(2).any(|w| !t.has_edge(w[0], w[1])) {
        return false;
    }
    let mut seen = vec![false; t.n()];
    for &v in path {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let bad = bad_neighbours(t, d);
    (1..path.len().saturating_sub(1)).all(|i| inner_ok(t, &bad, path[i], path[i - 1], path[i + 1]))
}

/// Every C-gadget of order `d` as `(u, v, length)` for ordered pairs
/// `u != v`.
fn c_gadget_pairs(t: &Graph, d: usize) -> Vec<(usize, usize, usize)> {
    let bad = bad_neighbours(t, d);
    let mut out = Vec::new();
    for u in 0..t.n() {
        // DFS carrying (vertex, parent, depth); extending through x to w
        // requires x to be a valid inner vertex.
        let mut stack: Vec<(usize, usize, usize)> =
            t.neighbors(u).iter().map(|&w| (w, u, 1)).collect();
        while let Some((x, p, len)) = stack.pop() {
            out.push((u, x, len));
            for &w in t.neighbors(x) {
                if w != p && inner_ok(t, &bad, x, p, w) {
                    stack.push((w, x, len + 1));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Length of the longest C-gadget of order `d`.
pub fn c_number(t: &Graph, d: usize) -> Result<usize, TreeError> {
    if d == 0 {
        return Err(TreeError::ZeroOrder);
    }
    check_tree(t)?;
    Ok(c_gadget_pairs(t, d).iter().map(|x| x.2).max().unwrap_or(0))
}

/// A C-gadget with junctions and their designated rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CGadget {
    pub path: Vec<usize>,
    pub order: usize,
    /// Junction positions in `path`, increasing.
    pub junctions: Vec<usize>,
    /// `rays[j]` starts at `path[junctions[j]]` and ends at a leaf.
    pub rays: Vec<Vec<usize>>,
    pub strong: bool,
    pub closed: bool,
}

impl CGadget {
    /// Checks the gadget conditions vertex by vertex, the junction spacing
    /// and rays, and closedness. Returns `(is gadget, strong, closed)`.
    pub fn check(&self, t: &Graph) -> (bool, bool, bool) {
        let gadget = is_c_gadget(t, &self.path, self.order);
        let d = self.order;
        let l = self.path.len().saturating_sub(1);
        let mut idx = vec![0];
        idx.extend(&self.junctions);
        idx.push(l);
        let spaced = idx.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] > 2 * d);
        let rays_ok = self.rays.len() == self.junctions.len()
            && self.junctions.iter().zip(&self.rays).all(|(&i, r)| {
                let x = self.path[i];
                r.len() == d + 1
                    && r[0] == x
                    && i > 0
                    && i < l
                    && !r.contains(&self.path[i - 1])
                    && !r.contains(&self.path[i + 1])
                    && t.degree(x) > 2
                    && walk(t, x, r[1]) == *r
                    && t.degree(r[d]) == 1
            });
        let strong = gadget && spaced && rays_ok && !self.junctions.is_empty();
        let closed = strong
            && ray_report(t)
                .map(|rep| {
                    let not_fork =
                        |v: usize| rep.source(v).map(|s| s.deg_nonleaves != 1).unwrap_or(true);
                    not_fork(self.path[self.junctions[0]])
                        && not_fork(self.path[*self.junctions.last().unwrap()])
                })
                .unwrap_or(false);
        (gadget, strong, closed)
    }
}

/// Rays of length exactly `d` at `path[i]` avoiding both path neighbours,
/// least first vertex first.
fn junction_ray(t: &Graph, path: &[usize], i: usize, d: usize) -> Option<Vec<usize>> {
    if i == 0 || i + 1 >= path.len() || t.degree(path[i]) <= 2 {
        return None;
    }
    let x = path[i];
    t.neighbors(x)
        .iter()
        .filter(|&&w| w != path[i - 1] && w != path[i + 1])
        .map(|&w| walk(t, x, w))
        .find(|p| p.len() == d + 1 && t.degree(p[d]) == 1)
}

/// Searches for a closed strong C-gadget with at least `k` junctions.
///
/// For orders `d' = d, d-1, ..., 1` and C-gadgets of that order (longest
/// first, then lexicographically least endpoints), junctions are picked
/// greedily at the least admissible index, spaced more than `2d'` apart,
/// until `k + 2` are found; dropping the first and last gives the result.
pub fn find_closed_strong_c_gadget(
    t: &Graph,
    d: usize,
    k: usize,
) -> Result<Option<CGadget>, TreeError> {
    if d == 0 {
        return Err(TreeError::ZeroOrder);
    }
    check_tree(t)?;
    if k == 0 {
        return Ok(None);
    }
    for dp in (1..=d).rev() {
        let mut pairs = c_gadget_pairs(t, dp);
        pairs.sort_by_key(|&(u, v, len)| (usize::MAX - len, u, v));
        for (u, v, len) in pairs {
            if len < (k + 3) * (2 * dp + 1) {
                break;
            }
            let path = t.path_between(u, v).expect("tree is connected");
            let mut junctions = Vec::new();
            let mut rays = Vec::new();
            let mut next = 2 * dp + 1;
            while junctions.len() < k + 2 {
                let found =
                    (next..path.len()).find_map(|i| junction_ray(t, &path, i, dp).map(|r| (i, r)));
                match found {
                    Some((i, r)) => {
                        junctions.push(i);
                        rays.push(r);
                        next = i + 2 * dp + 1;
                    }
                    None => break,
                }
            }
            if junctions.len() < k + 2 || len - junctions[k + 1] <= 2 * dp {
                continue;
            }
            let mut g = CGadget {
                path,
                order: dp,
                junctions: junctions[1..k + 1].to_vec(),
                rays: rays[1..k + 1].to_vec(),
                strong: false,
                closed: false,
            };
            let (_, strong, closed) = g.check(t);
            g.strong = strong;
            g.closed = closed;
            if strong && closed {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// Minimum number of vertices whose removal leaves maximum degree at most
/// 1, with a witness set. Forests use an exact dynamic program; other
/// graphs use iterative deepening over branchings on a vertex of degree at
/// least 2 (either it is removed, or all but at most one of its
/// neighbours are).
pub fn matching_split_number(g: &Graph) -> (usize, Vec<usize>) {
    if g.m() + g.components().0 == g.n() {
        return forest_split(g);
    }
    let mut removed = vec![false; g.n()];
    for budget in 0..=g.n() {
        if let Some(s) = split_search(g, &mut removed, budget) {
            let mut s = s;
            s.sort_unstable();
            return (s.len(), s);
        }
    }
    unreachable!("removing every vertex always works")
}

fn split_search(g: &Graph, removed: &mut [bool], budget: usize) -> Option<Vec<usize>> {
    let live = |removed: &[bool], v: usize| g.neighbors(v).iter().filter(|&&w| !removed[w]).count();
    let v = (0..g.n()).find(|&v| !removed[v] && live(removed, v) >= 2);
    let Some(v) = v else {
        return Some(Vec::new());
    };
    if budget == 0 {
        return None;
    }
    removed[v] = true;
    let r = split_search(g, removed, budget - 1);
    removed[v] = false;
    if let Some(mut s) = r {
        s.push(v);
        return Some(s);
    }
    let nb: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| !removed[w])
        .collect();
    if nb.len() - 1 > budget {
        return None;
    }
    for &u in &nb {
        let others: Vec<usize> = nb.iter().copied().filter(|&w| w != u).collect();
        for &w in &others {
            removed[w] = true;
        }
        let r = split_search(g, removed, budget - others.len());
        for &w in &others {
            removed[w] = false;
        }
        if let Some(mut s) = r {
            s.extend(others);
            return Some(s);
        }
    }
    None
}

fn forest_split(g: &Graph) -> (usize, Vec<usize>) {
    const INF: usize = usize::MAX / 4;
    let n = g.n();
    // State 0: removed; 1: kept with no kept child; 2: kept with exactly
    // one kept child (which itself has no kept child).
    let mut dp = vec![[0usize; 3]; n];
    let mut best_child = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut roots = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        roots.push(r);
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
    }
    for &v in order.iter().rev() {
        let children: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&c| parent[c] == v)
            .collect();
        let mut removed = 1;
        let mut kept = 0;
        for &c in &children {
            removed += dp[c].iter().min().unwrap();
            kept += dp[c][0];
        }
        let mut one = INF;
        for &c in &children {
            let cand = kept - dp[c][0] + dp[c][1];
            if cand < one {
                one = cand;
                best_child[v] = c;
            }
        }
        dp[v] = [removed, kept, one];
    }
    let mut set = Vec::new();
    let mut stack: Vec<(usize, usize)> = roots
        .iter()
        .map(|&r| {
            let s = (0..3).min_by_key(|&s| dp[r][s]).unwrap();
            (r, s)
        })
        .collect();
    while let Some((v, s)) = stack.pop() {
        let children = g.neighbors(v).iter().copied().filter(|&c| parent[c] == v);
        match s {
            0 => {
                set.push(v);
                for c in children {
                    let cs = (0..3).min_by_key(|&x| dp[c][x]).unwrap();
                    stack.push((c, cs));
                }
            }
            1 => stack.extend(children.map(|c| (c, 0))),
            _ => {
                let b = best_child[v];
                stack.extend(children.map(|c| (c, if c == b { 1 } else { 0 })));
            }
        }
    }
    set.sort_unstable();
    (set.len(), set)
}

/// Per-tree measurements of every invariant up to the given bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    /// `(a, b, F_{a,b})` for `1 <= a <= b <= a_max`.
    pub fork_numbers: Vec<(usize, usize, usize)>,
    /// `(c, S_c)` for `3 <= c <= d_max`.
    pub star_numbers: Vec<(usize, usize)>,
    /// `(d, C_d)` for `1 <= d <= d_max`.
    pub c_numbers: Vec<(usize, usize)>,
    pub matching_split_number: usize,
    pub splitting_set: Vec<usize>,
}

pub fn classify_tree(t: &Graph, d_max: usize, a_max: usize) -> Result<TreeReport, TreeError> {
    check_tree(t)?;
    let mut fork_numbers = Vec::new();
    for a in 1..=a_max {
        for b in a..=a_max {
            fork_numbers.push((a, b, fork_number(t, a, b)?));
        }
    }
    let star_numbers = (3..=d_max)
        .map(|c| star_number(t, c).map(|s| (c, s)))
        .collect::<Result<_, _>>()?;
    let c_numbers = (1..=d_max)
        .map(|d| c_number(t, d).map(|x| (d, x)))
        .collect::<Result<_, _>>()?;
    let (msn, set) = matching_split_number(t);
    Ok(TreeReport {
        fork_numbers,
        star_numbers,
        c_numbers,
        matching_split_number: msn,
        splitting_set: set,
    })
}

/// Centre of a tree: one vertex or the two ends of the central edge.
pub fn center(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Isomorphism classes of rooted subtrees (AHU): `code[v]` identifies the
/// subtree below `v` when the tree hangs from `root`.
pub fn subtree_classes(t: &Graph, root: usize) -> Vec<usize> {
    let (order, parent) = rooted(t, root);
    let mut table: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut code = vec![0usize; t.n()];
    for &v in order.iter().rev() {
        let mut key: Vec<usize> = t
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&c| parent[c] == v)
            .map(|c| code[c])
            .collect();
        key.sort_unstable();
        let next = table.len();
        code[v] = *table.entry(key).or_insert(next);
    }
    code
}
