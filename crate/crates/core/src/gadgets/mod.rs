//! Hardness gadgets: the reduction instances and the parity identities
//! that tie colour-preserving embeddings of a fractured graph to colourful
//! copies of a pattern.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::counting::{count_colorful_subs, count_cp_embs, CountError};
use crate::fracture::{apply_fracture, fractures_with_quotient, Fracture, FractureError};
use crate::graph::{Graph, GraphError, QColoredGraph};
use crate::tree::TreeError;

mod cnum;
mod fork;
pub mod frame;
mod lines;
mod star;

pub use cnum::{cnum_gadget, hamiltonian_cycle};
pub use fork::{fork_gadget, three_edge_coloring};
pub use frame::{Frame, HatHost};
pub use lines::{
    p2_gadget, packing_equivalence, packing_equivalence_sample, triangle_gadget,
    PackingEquivalence, PackingSample,
};
pub use star::star_gadget;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("base graph must be {0}-regular")]
    NotRegular(usize),
    #[error("base graph must be bipartite")]
    NotBipartite,
    #[error("invalid Hamiltonian cycle")]
    NotHamiltonian,
    #[error("expected {expected} junctions, got {got}")]
    JunctionMismatch { expected: usize, got: usize },
    #[error("gadget is not a closed strong C-gadget of the tree")]
    BadCGadget,
    #[error("need {need} rays of length {d} at the source, found {have}")]
    StarTooSmall { need: usize, have: usize, d: usize },
    #[error("star rays must have length at least 3, got {0}")]
    StarLength(usize),
    #[error("need {need} forks, found {have}")]
    ForkTooSmall { need: usize, have: usize },
    #[error("pattern core does not map edge-bijectively onto Q")]
    NotEdgeBijective,
    #[error("host is not coloured by this instance's Q")]
    ColoringMismatch,
    #[error("operation needs a fork instance")]
    NotFork,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fracture(#[from] FractureError),
    #[error(transparent)]
    Count(#[from] CountError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GadgetKind {
    Triangle,
    P2,
    CNumber,
    Star,
    Fork,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Triangle => "triangle",
            GadgetKind::P2 => "p2",
            GadgetKind::CNumber => "cnum",
            GadgetKind::Star => "star",
            GadgetKind::Fork => "fork",
        }
    }

    pub fn from_name(s: &str) -> Option<GadgetKind> {
        [
            GadgetKind::Triangle,
            GadgetKind::P2,
            GadgetKind::CNumber,
            GadgetKind::Star,
            GadgetKind::Fork,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }

    pub fn is_tree(self) -> bool {
        matches!(
            self,
            GadgetKind::CNumber | GadgetKind::Star | GadgetKind::Fork
        )
    }
}

/// Construction details beyond `(pattern, delta, q, tau, gamma)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceMeta {
    pub k: usize,
    pub d: usize,
    pub a: usize,
    pub b: usize,
    /// Hamiltonian cycle of `delta` (C-number).
    pub cycle: Vec<usize>,
    /// Junction vertices of the tree (C-number).
    pub junctions: Vec<usize>,
    /// The star source (star).
    pub source: Option<usize>,
    /// Designated sources `s_1^1, s_1^2, s_2^1, ...` (fork).
    pub sources: Vec<usize>,
    /// Non-ray neighbour of each designated source (fork).
    pub parents: Vec<usize>,
    /// Image in `q` of each designated source (fork).
    pub source_images: Vec<usize>,
    /// Colour 0, 1 or 2 (`s`, `m`, `l`) of each edge of `delta` (fork).
    pub edge_colors: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub kind: GadgetKind,
    pub pattern: Graph,
    pub delta: Graph,
    pub q: Graph,
    pub tau: Fracture,
    /// Image in `q` of each pattern vertex of the core; `None` elsewhere.
    pub gamma: Vec<Option<usize>>,
    /// `q` edge of each core edge of the pattern.
    pub gamma_e: Vec<Option<usize>>,
    pub meta: InstanceMeta,
}

impl ReductionInstance {
    /// Rebuilds an instance from stored parts, checking that `tau` is a
    /// fracture of `q` and that `gamma` maps the core edges bijectively
    /// onto the edges of `q`.
    pub fn from_parts(
        kind: GadgetKind,
        pattern: Graph,
        delta: Graph,
        q: Graph,
        tau: Fracture,
        gamma: Vec<Option<usize>>,
        meta: InstanceMeta,
    ) -> Result<ReductionInstance, GadgetError> {
        if !tau.matches(&q) {
            return Err(FractureError::BaseMismatch.into());
        }
        if gamma.len() != pattern.n() || gamma.iter().flatten().any(|&x| x >= q.n()) {
            return Err(GadgetError::NotEdgeBijective);
        }
        Self::assemble(kind, pattern, delta, q, tau, gamma, meta)
    }

    fn assemble(
        kind: GadgetKind,
        pattern: Graph,
        delta: Graph,
        q: Graph,
        tau: Fracture,
        gamma: Vec<Option<usize>>,
        meta: InstanceMeta,
    ) -> Result<ReductionInstance, GadgetError> {
        let gamma_e: Vec<Option<usize>> = pattern
            .edges()
            .iter()
            .map(|&(u, v)| match (gamma[u], gamma[v]) {
                (Some(x), Some(y)) => q
                    .edge_index(x, y)
                    .map(Some)
                    .ok_or(GadgetError::NotEdgeBijective),
                _ => Ok(None),
            })
            .collect::<Result<_, _>>()?;
        let mut hit = vec![false; q.m()];
        for e in gamma_e.iter().flatten() {
            if core::mem::replace(&mut hit[*e], true) {
                return Err(GadgetError::NotEdgeBijective);
            }
        }
        if hit.contains(&false) {
            return Err(GadgetError::NotEdgeBijective);
        }
        Ok(ReductionInstance {
            kind,
            pattern,
            delta,
            q,
            tau,
            gamma,
            gamma_e,
            meta,
        })
    }

    /// The pattern restricted to its core.
    pub fn core(&self) -> Graph {
        let verts: Vec<usize> = (0..self.pattern.n())
            .filter(|&v| self.gamma[v].is_some())
            .collect();
        let (g, _) = self.pattern.induced(&verts);
        g
    }

    /// `q` fractured along `tau`.
    pub fn fractured(&self) -> Graph {
        crate::fracture::fractured_graph(&self.q, &self.tau)
    }

    /// The host realising the fractured graph once: `q` fractured along
    /// `tau`, coloured by origin.
    pub fn witness_host(&self) -> QColoredGraph {
        apply_fracture(&self.q, &self.tau)
            .expect("tau is a fracture of q")
            .colored()
    }
}

/// Pads every colour class of even size (including empty ones) with one
/// fresh isolated vertex.
pub fn pad_odd(g: &QColoredGraph) -> QColoredGraph {
    let q = g.q().clone();
    let mut size = vec![0usize; q.n()];
    for v in 0..g.graph.n() {
        size[g.color(v)] += 1;
    }
    let mut assignment: Vec<usize> = (0..g.graph.n()).map(|v| g.color(v)).collect();
    assignment.extend((0..q.n()).filter(|&c| size[c].is_multiple_of(2)));
    let graph = Graph::new(assignment.len(), g.graph.edges().iter().copied()).expect("same edges");
    QColoredGraph::new(graph, q, assignment).expect("padding keeps the colouring")
}

/// The transformed host together with the (possibly padded) input.
#[derive(Debug, Clone)]
pub struct HostTransform {
    pub host: QColoredGraph,
    pub hat: HatHost,
}

/// Builds `(G^, gamma^)` for a tree instance. Fork instances pad even
/// colour classes first.
pub fn build_hat_host(
    inst: &ReductionInstance,
    host: &QColoredGraph,
) -> Result<HostTransform, GadgetError> {
    if host.q() != &inst.q {
        return Err(GadgetError::ColoringMismatch);
    }
    let frame = Frame::new(inst)?;
    let host = if inst.kind == GadgetKind::Fork {
        pad_odd(host)
    } else {
        host.clone()
    };
    let hat = frame.hat_host(&host)?;
    Ok(HostTransform { host, hat })
}

/// Both sides of a gadget identity on one host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: BigUint,
    pub rhs: BigUint,
    /// Whether the identity holds (parity for tree kinds, exact otherwise).
    pub equal: bool,
    /// Colourful copies whose induced fracture differs from `tau`.
    pub fracture_violations: BigUint,
    /// For fork instances, copies that are invalid at some designated
    /// source.
    pub invalid: Option<BigUint>,
}

impl IdentityCheck {
    pub fn lhs_bit(&self) -> bool {
        self.lhs.bit(0)
    }

    pub fn rhs_bit(&self) -> bool {
        self.rhs.bit(0)
    }
}

/// Checks the instance's identity on `host`.
///
/// Tree kinds: colour-preserving embeddings of `q` fractured along `tau`
/// into the host against edge-colourful copies of the tree in the hat host
/// (compared mod 2). Every copy's induced fracture is also checked against
/// `tau` (fork instances: valid copies only).
///
/// Packing kinds: colourful copies of the pattern in the host under the
/// induced edge colouring against the sum of embedding counts over all
/// fractures whose fractured graph is the pattern (compared exactly).
pub fn verify_identity(
    inst: &ReductionInstance,
    host: &QColoredGraph,
) -> Result<IdentityCheck, GadgetError> {
    if host.q() != &inst.q {
        return Err(GadgetError::ColoringMismatch);
    }
    if !inst.kind.is_tree() {
        let lhs = count_colorful_subs(&inst.pattern, &host.graph, &host.edge_coloring())?.exact;
        let mut rhs = BigUint::from(0u32);
        for sigma in fractures_with_quotient(&inst.q, &inst.pattern, None).fractures {
            let fg = apply_fracture(&inst.q, &sigma)?.colored();
            rhs += count_cp_embs(&fg, host)?.exact;
        }
        let equal = lhs == rhs;
        return Ok(IdentityCheck {
            lhs,
            rhs,
            equal,
            fracture_violations: BigUint::from(0u32),
            invalid: None,
        });
    }
    let frame = Frame::new(inst)?;
    let t = build_hat_host(inst, host)?;
    let fractured = apply_fracture(&inst.q, &inst.tau)?.colored();
    let lhs = count_cp_embs(&fractured, &t.host)?.exact;
    let mut rhs = BigUint::from(0u32);
    let mut violations = BigUint::from(0u32);
    let mut invalid = BigUint::from(0u32);
    let fork = inst.kind == GadgetKind::Fork;
    frame.for_each_copy_class(&t.hat, |h, n| {
        rhs += n;
        let bad = fork && is_invalid(inst, &frame, h);
        if bad {
            invalid += n;
        } else if frame.induced_fracture(h) != inst.tau {
            violations += n;
        }
    });
    let equal = lhs.bit(0) == rhs.bit(0);
    Ok(IdentityCheck {
        lhs,
        rhs,
        equal,
        fracture_violations: violations,
        invalid: fork.then_some(invalid),
    })
}

/// Valid and invalid colourful copies of the tree in the hat host of a fork
/// instance.
pub fn invalid_tree_census(
    inst: &ReductionInstance,
    host: &QColoredGraph,
) -> Result<(BigUint, BigUint), GadgetError> {
    if inst.kind != GadgetKind::Fork {
        return Err(GadgetError::NotFork);
    }
    let check = verify_identity(inst, host)?;
    let invalid = check.invalid.unwrap_or_default();
    Ok((check.rhs - &invalid, invalid))
}

/// A copy lying over `h` is invalid at `(i, j)` when exactly two tree
/// vertices land in the class of `v_i^j` and one of them is adjacent to
/// `p_i^j` while touching no edge coloured by the core.
fn is_invalid(inst: &ReductionInstance, frame: &Frame, h: &[usize]) -> bool {
    let t = &inst.pattern;
    let nq = inst.q.n();
    let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (u, &x) in h.iter().enumerate() {
        at.entry(x).or_default().push(u);
    }
    inst.meta
        .parents
        .iter()
        .zip(&inst.meta.source_images)
        .any(|(&p, &v)| {
            let Some(us) = at.get(&v) else { return false };
            if us.len() != 2 {
                return false;
            }
            let p_img = frame.pi[p];
            us.iter().any(|&u| {
                t.neighbors(u).iter().any(|&w| h[w] == p_img)
                    && t.neighbors(u).iter().all(|&w| h[w] >= nq)
            })
        })
}
