//! Batch verification of gadget identities on seeded random hosts.

use fracture_lab_core::gadgets::{verify_identity, GadgetError, ReductionInstance};
use fracture_lab_core::samples::random_host;
use fracture_lab_core::QColoredGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::formats::ColoredDoc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub kind: String,
    pub base_vertices: usize,
    pub base_edges: usize,
    pub q_vertices: usize,
    pub q_edges: usize,
    pub pattern_vertices: usize,
    pub pattern_edges: usize,
}

impl InstanceDescriptor {
    pub fn of(i: &ReductionInstance) -> Self {
        InstanceDescriptor {
            kind: i.kind.name().to_string(),
            base_vertices: i.delta.n(),
            base_edges: i.delta.m(),
            q_vertices: i.q.n(),
            q_edges: i.q.m(),
            pattern_vertices: i.pattern.n(),
            pattern_edges: i.pattern.m(),
        }
    }
}

/// One host. Counts are decimal strings. The host is embedded when the
/// identity fails or a copy induces a fracture other than `tau`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: u64,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub fracture_violations: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invalid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub host: Option<ColoredDoc>,
}

/// Trials are listed by index. Wall time is not part of the report so that
/// equal inputs give byte-identical output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: InstanceDescriptor,
    pub trials: u64,
    pub seed: Option<u64>,
    pub results: Vec<TrialRecord>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &TrialRecord> {
        self.results.iter().filter(|r| !r.equal)
    }
}

pub fn check_host(
    inst: &ReductionInstance,
    index: u64,
    host: &QColoredGraph,
) -> Result<TrialRecord, GadgetError> {
    let c = verify_identity(inst, host)?;
    let suspicious = !c.equal || c.fracture_violations.bits() > 0;
    Ok(TrialRecord {
        index,
        lhs: c.lhs.to_string(),
        rhs: c.rhs.to_string(),
        equal: c.equal,
        fracture_violations: c.fracture_violations.to_string(),
        invalid: c.invalid.map(|x| x.to_string()),
        host: suspicious.then(|| ColoredDoc::from_colored(host)),
    })
}

/// The host of trial `index`: ChaCha8 seeded with `seed` on stream `index`,
/// planted on odd indices.
pub fn trial_host(inst: &ReductionInstance, seed: u64, index: u64) -> QColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    random_host(inst, index % 2 == 1, &mut rng)
}

fn report(
    inst: &ReductionInstance,
    trials: u64,
    seed: Option<u64>,
    results: Vec<TrialRecord>,
) -> VerificationReport {
    let pass = results.iter().all(|r| r.equal);
    VerificationReport {
        instance: InstanceDescriptor::of(inst),
        trials,
        seed,
        results,
        pass,
    }
}

/// Runs `trials` random hosts in parallel on the current rayon pool.
pub fn verify_random(
    inst: &ReductionInstance,
    trials: u64,
    seed: u64,
) -> Result<VerificationReport, GadgetError> {
    let results = (0..trials)
        .into_par_iter()
        .map(|i| check_host(inst, i, &trial_host(inst, seed, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report(inst, trials, Some(seed), results))
}

pub fn verify_host(
    inst: &ReductionInstance,
    host: &QColoredGraph,
) -> Result<VerificationReport, GadgetError> {
    Ok(report(inst, 1, None, vec![check_host(inst, 0, host)?]))
}
