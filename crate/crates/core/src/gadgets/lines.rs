//! Packing gadgets: line graphs for triangle packings and subdivisions for
//! packings of 2-edge paths.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{GadgetError, GadgetKind, InstanceMeta, ReductionInstance};
use crate::fracture::{
    apply_fracture, count_odd_fractures, fractured_graph, fractures_with_quotient, is_odd_fracture,
    is_p2_packing, odd_fractures, Fracture,
};
use crate::graph::{line_graph, subdivide, Graph};
use crate::iso::find_isomorphism;

/// `gamma` for a pattern isomorphic to `q` fractured along `tau`.
fn gamma_via_iso(
    pattern: &Graph,
    q: &Graph,
    tau: &Fracture,
) -> Result<Vec<Option<usize>>, GadgetError> {
    let fg = apply_fracture(q, tau)?;
    let iso = find_isomorphism(pattern, &fg.graph).ok_or(GadgetError::NotEdgeBijective)?;
    Ok(iso.into_iter().map(|x| Some(fg.origin[x].0)).collect())
}

/// Line graph of a cubic bipartite `h` with the fracture separating, at each
/// edge of `h`, the neighbours through one endpoint from those through the
/// other. The pattern is `|V(h)|` disjoint triangles.
pub fn triangle_gadget(h: &Graph) -> Result<ReductionInstance, GadgetError> {
    if !h.is_regular(3) {
        return Err(GadgetError::NotRegular(3));
    }
    if !h.is_bipartite() {
        return Err(GadgetError::NotBipartite);
    }
    let q = line_graph(h)?;
    let blocks: Vec<Vec<Vec<usize>>> = (0..q.n())
        .map(|w| {
            let (x, _) = h.edge(w);
            let mut via = [Vec::new(), Vec::new()];
            for &e in q.incident(w) {
                let (a, b) = h.edge(q.other(e, w));
                via[if a == x || b == x { 0 } else { 1 }].push(e);
            }
            via.to_vec()
        })
        .collect();
    let tau = Fracture::from_blocks(&q, &blocks)?;
    let pattern = Graph::complete(3).copies(h.n());
    let gamma = gamma_via_iso(&pattern, &q, &tau)?;
    let meta = InstanceMeta {
        k: h.n(),
        ..InstanceMeta::default()
    };
    ReductionInstance::assemble(
        GadgetKind::Triangle,
        pattern,
        h.clone(),
        q,
        tau,
        gamma,
        meta,
    )
}

/// Subdivision of a 4-regular `h`. The pattern is `2|V(h)|` disjoint
/// 2-edge paths and `tau` is the odd fracture pairing the first two and
/// last two edges at every original vertex.
pub fn p2_gadget(h: &Graph) -> Result<ReductionInstance, GadgetError> {
    if !h.is_regular(4) {
        return Err(GadgetError::NotRegular(4));
    }
    let (q, _) = subdivide(h);
    let labels: Vec<Vec<u8>> = (0..q.n())
        .map(|v| {
            if v < h.n() {
                vec![0, 0, 1, 1]
            } else {
                vec![0, 1]
            }
        })
        .collect();
    let tau = Fracture::from_labels(&q, labels)?;
    let pattern = Graph::path(2).copies(2 * h.n());
    let gamma = gamma_via_iso(&pattern, &q, &tau)?;
    let meta = InstanceMeta {
        k: 2 * h.n(),
        ..InstanceMeta::default()
    };
    ReductionInstance::assemble(GadgetKind::P2, pattern, h.clone(), q, tau, gamma, meta)
}

/// Outcome of comparing the fractures with a 2-path-packing quotient (at
/// most two blocks per vertex) against the odd fractures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingEquivalence {
    pub odd: u128,
    pub packing: usize,
    /// Every packing fracture is odd and the two counts agree.
    pub equivalent: bool,
    /// Fractures accounted for by the search, visited or pruned.
    pub covered: u128,
    /// Size of the space of fractures with at most two blocks per vertex.
    pub space: u128,
}

pub fn packing_equivalence(h: &Graph) -> Result<PackingEquivalence, GadgetError> {
    if !h.is_regular(4) {
        return Err(GadgetError::NotRegular(4));
    }
    let (q, map) = subdivide(h);
    let target = Graph::path(2).copies(2 * h.n());
    let search = fractures_with_quotient(&q, &target, Some(2));
    let odd = count_odd_fractures(h);
    let all_odd = search
        .fractures
        .iter()
        .all(|f| is_odd_fracture(&q, &map, f));
    let space = (0..q.n())
        .map(|v| 1u128 << (q.degree(v).max(1) - 1))
        .product();
    Ok(PackingEquivalence {
        odd,
        packing: search.fractures.len(),
        equivalent: all_odd && search.fractures.len() as u128 == odd,
        covered: search.covered,
        space,
    })
}

/// Outcome of [`packing_equivalence_sample`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingSample {
    pub samples: u64,
    /// Samples whose fractured graph is a 2-path packing.
    pub packing: u64,
    /// Samples that are odd fractures.
    pub odd: u64,
    /// Samples where the two tests disagree.
    pub mismatches: u64,
}

/// Draws fractures with at most two blocks per vertex and checks that the
/// fractured graph is a 2-path packing exactly when the fracture is odd.
/// Every eighth sample is an odd fracture chosen uniformly, the rest are
/// uniform over the whole space (where odd fractures are vanishingly rare).
pub fn packing_equivalence_sample<R: Rng + ?Sized>(
    h: &Graph,
    samples: u64,
    rng: &mut R,
) -> Result<PackingSample, GadgetError> {
    if !h.is_regular(4) {
        return Err(GadgetError::NotRegular(4));
    }
    let (q, map) = subdivide(h);
    let odd_pool = odd_fractures(h);
    let mut out = PackingSample {
        samples,
        packing: 0,
        odd: 0,
        mismatches: 0,
    };
    for i in 0..samples {
        let f = if i % 8 == 7 {
            odd_pool[rng.gen_range(0..odd_pool.len())].clone()
        } else {
            let labels = (0..q.n())
                .map(|v| (0..q.degree(v)).map(|_| rng.gen_range(0..2u8)).collect())
                .collect();
            Fracture::from_labels(&q, labels)?
        };
        let packing = is_p2_packing(&fractured_graph(&q, &f));
        let odd = is_odd_fracture(&q, &map, &f);
        out.packing += packing as u64;
        out.odd += odd as u64;
        out.mismatches += (packing != odd) as u64;
    }
    Ok(out)
}
