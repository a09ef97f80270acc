//! Exhaustive backtracking over pattern vertices in a connected order.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Order in which every vertex after the first of its component has a
/// previously placed neighbour; denser vertices go first.
pub fn connected_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.n();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], pattern.degree(v), usize::MAX - v))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for &w in pattern.neighbors(v) {
            links[w] += 1;
        }
    }
    order
}

/// Counts maps `pattern -> host` preserving edges. `allowed[v]` (if given)
/// restricts the image of pattern vertex `v`; `injective` forbids collisions.
pub fn count(
    pattern: &Graph,
    host: &Graph,
    allowed: Option<&[Vec<bool>]>,
    injective: bool,
) -> u128 {
    let order = connected_order(pattern);
    let mut st = State {
        pattern,
        host,
        allowed,
        injective,
        order: &order,
        map: vec![usize::MAX; pattern.n()],
        used: vec![false; host.n()],
    };
    if pattern.n() == 0 {
        return 1;
    }
    st.go(0)
}

struct State<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    allowed: Option<&'a [Vec<bool>]>,
    injective: bool,
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl State<'_> {
    fn fits(&self, v: usize, x: usize) -> bool {
        if self.injective && self.used[x] {
            return false;
        }
        if let Some(a) = self.allowed {
            if !a[v][x] {
                return false;
            }
        }
        self.pattern
            .neighbors(v)
            .iter()
            .all(|&w| self.map[w] == usize::MAX || self.host.has_edge(self.map[w], x))
    }

    fn go(&mut self, depth: usize) -> u128 {
        let v = self.order[depth];
        let last = depth + 1 == self.order.len();
        let anchor = self
            .pattern
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| self.map[w] != usize::MAX);
        let host = self.host;
        let cands: &[usize] = match anchor {
            Some(w) => host.neighbors(self.map[w]),
            None => &[],
        };
        let mut total = 0u128;
        let mut visit = |st: &mut Self, x: usize| {
            if !st.fits(v, x) {
                return;
            }
            if last {
                total += 1;
                return;
            }
            st.map[v] = x;
            st.used[x] = true;
            total += st.go(depth + 1);
            st.map[v] = usize::MAX;
            st.used[x] = false;
        };
        if anchor.is_some() {
            for &x in cands {
                visit(self, x);
            }
        } else {
            for x in 0..host.n() {
                visit(self, x);
            }
        }
        total
    }
}
