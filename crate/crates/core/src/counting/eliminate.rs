//! Sum-product variable elimination over small domains.
//!
//! Pattern vertices are variables, their domains are host vertex lists, and
//! the constraints are "adjacent in the host" for pattern edges and "distinct"
//! for pairs that must not collide. Counting the satisfying assignments this
//! way costs the product of domain sizes over the largest elimination scope,
//! which is tiny for colour-preserving problems with small colour classes.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::graph::Graph;

/// A commutative semiring used as the table entry type.
pub trait Weight: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Weight for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Counts modulo 2.
impl Weight for bool {
    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add_assign(&mut self, other: &Self) {
        *self ^= *other;
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
    fn is_zero(&self) -> bool {
        !*self
    }
}

/// `u128` arithmetic that turns into `None` on overflow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sat(pub Option<u128>);

impl Weight for Sat {
    fn zero() -> Self {
        Sat(Some(0))
    }
    fn one() -> Self {
        Sat(Some(1))
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 = match (self.0, other.0) {
            (Some(a), Some(b)) => a.checked_add(b),
            _ => None,
        };
    }
    fn mul(&self, other: &Self) -> Self {
        match (self.0, other.0) {
            (Some(0), _) | (_, Some(0)) => Sat(Some(0)),
            (Some(a), Some(b)) => Sat(a.checked_mul(b)),
            _ => Sat(None),
        }
    }
    fn is_zero(&self) -> bool {
        self.0 == Some(0)
    }
}

/// A constraint problem: count maps `pattern -> host` with `f(v)` in
/// `domains[v]`, pattern edges on host edges, and `distinct` pairs apart.
#[derive(Debug, Clone)]
pub struct DomainProblem<'a> {
    pub pattern: &'a Graph,
    pub host: &'a Graph,
    pub domains: Vec<Vec<usize>>,
    pub distinct: Vec<(usize, usize)>,
}

struct Factor<W> {
    vars: Vec<usize>,
    table: Vec<W>,
}

/// Elimination order and largest table size for the problem's scopes.
pub fn plan(problem: &DomainProblem<'_>) -> (Vec<usize>, usize) {
    let k = problem.pattern.n();
    let mut scopes: Vec<Vec<usize>> = Vec::new();
    for &(a, b) in problem.pattern.edges() {
        scopes.push(vec![a, b]);
    }
    for &(a, b) in &problem.distinct {
        scopes.push(if a < b { vec![a, b] } else { vec![b, a] });
    }
    let dim: Vec<usize> = problem.domains.iter().map(|d| d.len().max(1)).collect();
    let mut alive = vec![true; k];
    let mut order = Vec::with_capacity(k);
    let mut worst = 1usize;
    for _ in 0..k {
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for v in (0..k).filter(|&v| alive[v]) {
            let mut u: Vec<usize> = scopes
                .iter()
                .filter(|s| s.contains(&v))
                .flat_map(|s| s.iter().copied())
                .filter(|&x| x != v)
                .collect();
            u.sort_unstable();
            u.dedup();
            let size = u.iter().fold(dim[v], |acc, &x| acc.saturating_mul(dim[x]));
            if best.as_ref().is_none_or(|b| size < b.1) {
                best = Some((v, size, u));
            }
        }
        let (v, size, u) = best.unwrap();
        worst = worst.max(size);
        alive[v] = false;
        order.push(v);
        scopes.retain(|s| !s.contains(&v));
        scopes.push(u);
    }
    (order, worst)
}

/// Runs elimination with the given order. Returns the weighted count.
pub fn eliminate<W: Weight>(problem: &DomainProblem<'_>, order: &[usize]) -> W {
    let d = &problem.domains;
    if d.iter().any(Vec::is_empty) {
        return W::zero();
    }
    let mut factors: Vec<Factor<W>> = Vec::new();
    let host = problem.host;
    for &(a, b) in problem.pattern.edges() {
        let mut table = Vec::with_capacity(d[a].len() * d[b].len());
        for &x in &d[a] {
            for &y in &d[b] {
                table.push(if host.has_edge(x, y) {
                    W::one()
                } else {
                    W::zero()
                });
            }
        }
        factors.push(Factor {
            vars: vec![a, b],
            table,
        });
    }
    for &(a, b) in &problem.distinct {
        if problem.pattern.has_edge(a, b) {
            continue;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let mut table = Vec::with_capacity(d[a].len() * d[b].len());
        for &x in &d[a] {
            for &y in &d[b] {
                table.push(if x != y { W::one() } else { W::zero() });
            }
        }
        factors.push(Factor {
            vars: vec![a, b],
            table,
        });
    }
    let mut scalar = W::one();
    for &v in order {
        let (with, without): (Vec<_>, Vec<_>) =
            factors.into_iter().partition(|f| f.vars.contains(&v));
        factors = without;
        let mut rest: Vec<usize> = with
            .iter()
            .flat_map(|f| f.vars.iter().copied())
            .filter(|&x| x != v)
            .collect();
        rest.sort_unstable();
        rest.dedup();
        let dims: Vec<usize> = rest.iter().map(|&x| d[x].len()).collect();
        let size: usize = dims.iter().product();
        // Per factor: stride of each variable in its own table.
        let strides: Vec<(Vec<(usize, usize)>, usize)> = with
            .iter()
            .map(|f| {
                let mut s = vec![0usize; f.vars.len()];
                let mut acc = 1;
                for i in (0..f.vars.len()).rev() {
                    s[i] = acc;
                    acc *= d[f.vars[i]].len();
                }
                let mut rs = Vec::new();
                let mut vs = 0;
                for (i, &x) in f.vars.iter().enumerate() {
                    if x == v {
                        vs = s[i];
                    } else {
                        let pos = rest.binary_search(&x).unwrap();
                        rs.push((pos, s[i]));
                    }
                }
                (rs, vs)
            })
            .collect();
        let mut table = Vec::with_capacity(size);
        let mut asg = vec![0usize; rest.len()];
        let mut base = vec![0usize; with.len()];
        for _ in 0..size {
            for (fi, (rs, _)) in strides.iter().enumerate() {
                base[fi] = rs.iter().map(|&(p, s)| asg[p] * s).sum();
            }
            let mut sum = W::zero();
            for val in 0..d[v].len() {
                let mut prod = W::one();
                for (fi, f) in with.iter().enumerate() {
                    let w = &f.table[base[fi] + val * strides[fi].1];
                    if w.is_zero() {
                        prod = W::zero();
                        break;
                    }
                    prod = prod.mul(w);
                }
                if !prod.is_zero() {
                    sum.add_assign(&prod);
                }
            }
            table.push(sum);
            for i in (0..asg.len()).rev() {
                asg[i] += 1;
                if asg[i] < dims[i] {
                    break;
                }
                asg[i] = 0;
            }
        }
        if rest.is_empty() {
            scalar = scalar.mul(&table[0]);
            if scalar.is_zero() {
                return scalar;
            }
        } else {
            factors.push(Factor { vars: rest, table });
        }
    }
    for f in factors {
        scalar = scalar.mul(&f.table[0]);
    }
    scalar
}
