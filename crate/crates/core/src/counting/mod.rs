//! Exact counting of homomorphisms, embeddings, subgraphs and edge-colourful
//! subgraphs, with and without colour preservation.

pub mod backtrack;
pub mod eliminate;

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::graph::{EdgeColoring, Graph, QColoredGraph, VertexColoring};
use crate::iso::is_isomorphic;
use eliminate::{DomainProblem, Sat};

/// An exact count together with its parity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountResult {
    pub exact: BigUint,
    pub parity: bool,
}

impl CountResult {
    pub fn new(exact: BigUint) -> CountResult {
        let parity = exact.bit(0);
        CountResult { exact, parity }
    }

    pub fn zero() -> CountResult {
        CountResult::new(BigUint::zero())
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.exact.to_u128()
    }
}

impl From<u128> for CountResult {
    fn from(x: u128) -> Self {
        CountResult::new(BigUint::from(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("pattern and host colourings are over different graphs")]
    ColoringMismatch,
    #[error("colouring does not cover the graph it is attached to")]
    ColoringSize,
    #[error("palette has {palette} colours but the pattern has {edges} edges")]
    PaletteMismatch { palette: usize, edges: usize },
}

/// Which counting engine to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Elimination for colour-preserving problems with small scopes,
    /// backtracking otherwise.
    #[default]
    Auto,
    Backtrack,
    Eliminate,
}

/// Pattern and host colourings over a common `Q`.
#[derive(Debug, Clone, Copy)]
pub struct Colorings<'a> {
    pub pattern: &'a VertexColoring,
    pub host: &'a VertexColoring,
}

/// Largest elimination table the automatic engine accepts.
const ELIMINATION_LIMIT: usize = 1 << 22;

pub fn count_homs(
    pattern: &Graph,
    host: &Graph,
    colorings: Option<Colorings<'_>>,
) -> Result<CountResult, CountError> {
    count_maps(pattern, host, colorings, false, Engine::Auto)
}

pub fn count_embs(
    pattern: &Graph,
    host: &Graph,
    colorings: Option<Colorings<'_>>,
) -> Result<CountResult, CountError> {
    count_maps(pattern, host, colorings, true, Engine::Auto)
}

/// Colour-preserving homomorphisms between two Q-coloured graphs.
pub fn count_cp_homs(
    pattern: &QColoredGraph,
    host: &QColoredGraph,
) -> Result<CountResult, CountError> {
    count_homs(
        &pattern.graph,
        &host.graph,
        Some(Colorings {
            pattern: &pattern.coloring,
            host: &host.coloring,
        }),
    )
}

/// Colour-preserving embeddings between two Q-coloured graphs.
pub fn count_cp_embs(
    pattern: &QColoredGraph,
    host: &QColoredGraph,
) -> Result<CountResult, CountError> {
    count_embs(
        &pattern.graph,
        &host.graph,
        Some(Colorings {
            pattern: &pattern.coloring,
            host: &host.coloring,
        }),
    )
}

fn check_colorings(pattern: &Graph, host: &Graph, c: Colorings<'_>) -> Result<(), CountError> {
    if c.pattern.target != c.host.target {
        return Err(CountError::ColoringMismatch);
    }
    if c.pattern.assignment.len() != pattern.n() || c.host.assignment.len() != host.n() {
        return Err(CountError::ColoringSize);
    }
    Ok(())
}

/// Domain problem for a colour-preserving count: each pattern vertex ranges
/// over the host class of its colour; same-coloured pairs must differ when
/// counting embeddings.
pub fn colored_problem<'a>(
    pattern: &'a Graph,
    host: &'a Graph,
    c: Colorings<'_>,
    injective: bool,
) -> DomainProblem<'a> {
    let classes = c.host.classes();
    let domains: Vec<Vec<usize>> = (0..pattern.n())
        .map(|v| classes[c.pattern.assignment[v]].clone())
        .collect();
    let mut distinct = Vec::new();
    if injective {
        for a in 0..pattern.n() {
            for b in a + 1..pattern.n() {
                if c.pattern.assignment[a] == c.pattern.assignment[b] {
                    distinct.push((a, b));
                }
            }
        }
    }
    DomainProblem {
        pattern,
        host,
        domains,
        distinct,
    }
}

/// Counts (colour-preserving) homomorphisms or embeddings with an explicit
/// engine choice.
pub fn count_maps(
    pattern: &Graph,
    host: &Graph,
    colorings: Option<Colorings<'_>>,
    injective: bool,
    engine: Engine,
) -> Result<CountResult, CountError> {
    match colorings {
        None => Ok(CountResult::from(backtrack::count(
            pattern, host, None, injective,
        ))),
        Some(c) => {
            check_colorings(pattern, host, c)?;
            let problem = colored_problem(pattern, host, c, injective);
            Ok(solve(&problem, engine))
        }
    }
}

/// Solves a domain problem exactly.
pub fn solve(problem: &DomainProblem<'_>, engine: Engine) -> CountResult {
    let use_elim = match engine {
        Engine::Backtrack => false,
        Engine::Eliminate => true,
        Engine::Auto => plan(problem).1 <= ELIMINATION_LIMIT,
    };
    if use_elim {
        let order = plan(problem).0;
        match eliminate::eliminate::<Sat>(problem, &order).0 {
            Some(x) => CountResult::from(x),
            None => CountResult::new(eliminate::eliminate::<BigUint>(problem, &order)),
        }
    } else {
        let allowed = allowed_table(problem);
        let count = backtrack_with_pairs(problem, &allowed);
        CountResult::from(count)
    }
}

/// Parity of a domain problem, computed modulo 2 throughout.
pub fn solve_parity(problem: &DomainProblem<'_>) -> bool {
    let (order, size) = plan(problem);
    if size <= ELIMINATION_LIMIT {
        eliminate::eliminate::<bool>(problem, &order)
    } else {
        solve(problem, Engine::Backtrack).parity
    }
}

fn plan(problem: &DomainProblem<'_>) -> (Vec<usize>, usize) {
    eliminate::plan(problem)
}

fn allowed_table(problem: &DomainProblem<'_>) -> Vec<Vec<bool>> {
    problem
        .domains
        .iter()
        .map(|d| {
            let mut a = vec![false; problem.host.n()];
            for &x in d {
                a[x] = true;
            }
            a
        })
        .collect()
}

/// Backtracking fallback. Distinct pairs are enforced through global
/// injectivity, which is only equivalent when every pair of vertices that
/// could collide is listed (always the case for colour-preserving
/// embeddings, whose different-coloured vertices have disjoint domains).
fn backtrack_with_pairs(problem: &DomainProblem<'_>, allowed: &[Vec<bool>]) -> u128 {
    if problem.distinct.is_empty() {
        return backtrack::count(problem.pattern, problem.host, Some(allowed), false);
    }
    let n = problem.pattern.n();
    let mut need = vec![vec![false; n]; n];
    for &(a, b) in &problem.distinct {
        need[a][b] = true;
        need[b][a] = true;
    }
    for a in 0..n {
        for b in a + 1..n {
            let overlap = problem.domains[a].iter().any(|x| allowed[b][*x]);
            assert!(
                !overlap || need[a][b] || problem.pattern.has_edge(a, b),
                "partial distinctness is only supported by elimination"
            );
        }
    }
    backtrack::count(problem.pattern, problem.host, Some(allowed), true)
}

/// Number of automorphisms of `g`.
pub fn count_automorphisms(g: &Graph) -> BigUint {
    BigUint::from(backtrack::count(g, g, None, true))
}

/// Subgraphs of `host` isomorphic to `pattern`: embeddings divided by the
/// automorphism count.
pub fn count_subs(pattern: &Graph, host: &Graph) -> CountResult {
    let embs = BigUint::from(backtrack::count(pattern, host, None, true));
    CountResult::new(embs / count_automorphisms(pattern))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Subgraphs isomorphic to `pattern` that use every colour exactly once,
/// by enumerating one edge per colour class.
pub fn count_colorful_subs(
    pattern: &Graph,
    host: &Graph,
    coloring: &EdgeColoring,
) -> Result<CountResult, CountError> {
    if coloring.palette != pattern.m() {
        return Err(CountError::PaletteMismatch {
            palette: coloring.palette,
            edges: pattern.m(),
        });
    }
    let (core, _) = pattern.without_isolated();
    let isolated = pattern.n() - core.n();
    let mut classes = coloring.classes();
    if classes.iter().any(Vec::is_empty) && coloring.palette > 0 {
        return Ok(CountResult::zero());
    }
    classes.sort_by_key(Vec::len);
    let mut st = ColorfulState {
        host,
        core: &core,
        classes: &classes,
        max_deg: core.max_degree(),
        deg: vec![0; host.n()],
        touched: 0,
        chosen: Vec::with_capacity(classes.len()),
        target_degrees: core.degree_sequence(),
    };
    let copies = st.go(0);
    let spare = host.n().saturating_sub(core.n());
    Ok(CountResult::new(
        BigUint::from(copies) * BigUint::from(binomial(spare, isolated)),
    ))
}

struct ColorfulState<'a> {
    host: &'a Graph,
    core: &'a Graph,
    classes: &'a [Vec<usize>],
    max_deg: usize,
    deg: Vec<usize>,
    touched: usize,
    chosen: Vec<usize>,
    target_degrees: Vec<usize>,
}

impl ColorfulState<'_> {
    fn go(&mut self, i: usize) -> u128 {
        if i == self.classes.len() {
            return self.accept() as u128;
        }
        let mut total = 0;
        for &e in &self.classes[i] {
            let (a, b) = self.host.edge(e);
            if self.deg[a] == self.max_deg || self.deg[b] == self.max_deg {
                continue;
            }
            let fresh = (self.deg[a] == 0) as usize + (self.deg[b] == 0) as usize;
            if self.touched + fresh > self.core.n() {
                continue;
            }
            self.deg[a] += 1;
            self.deg[b] += 1;
            self.touched += fresh;
            self.chosen.push(e);
            total += self.go(i + 1);
            self.chosen.pop();
            self.touched -= fresh;
            self.deg[a] -= 1;
            self.deg[b] -= 1;
        }
        total
    }

    fn accept(&self) -> bool {
        if self.touched != self.core.n() {
            return false;
        }
        let mut verts: Vec<usize> = self
            .chosen
            .iter()
            .flat_map(|&e| {
                let (a, b) = self.host.edge(e);
                [a, b]
            })
            .collect();
        verts.sort_unstable();
        verts.dedup();
        let mut degs: Vec<usize> = verts.iter().map(|&v| self.deg[v]).collect();
        degs.sort_unstable();
        if degs != self.target_degrees {
            return false;
        }
        let edges: Vec<(usize, usize)> = self
            .chosen
            .iter()
            .map(|&e| {
                let (a, b) = self.host.edge(e);
                (
                    verts.binary_search(&a).unwrap(),
                    verts.binary_search(&b).unwrap(),
                )
            })
            .collect();
        match Graph::new(verts.len(), edges) {
            Ok(sub) => is_isomorphic(&sub, self.core),
            Err(_) => false,
        }
    }
}

/// Simple paths with exactly `k` edges from `s` to `t`.
pub fn count_st_paths(host: &Graph, s: usize, t: usize, k: usize) -> BigUint {
    fn walk(g: &Graph, v: usize, t: usize, left: usize, seen: &mut [bool]) -> u128 {
        if left == 0 {
            return (v == t) as u128;
        }
        if v == t {
            return 0;
        }
        let mut total = 0;
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                total += walk(g, w, t, left - 1, seen);
                seen[w] = false;
            }
        }
        total
    }
    let mut seen = vec![false; host.n()];
    seen[s] = true;
    BigUint::from(walk(host, s, t, k, &mut seen))
}
