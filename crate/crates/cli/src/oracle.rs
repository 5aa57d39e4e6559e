//! Exhaustive minimal-length search, used to certify search results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use vqc_core::circuit::{target_unitary, Circuit, GateId, TargetSpec, Topology};
use vqc_core::rl::{ActionId, ActionSpace};
use vqc_core::{optimize, CostKind, OptimizerSettings};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct OracleSettings {
    pub alphabet: Vec<GateId>,
    pub topology: Topology,
    pub max_len: usize,
    pub threshold: f64,
    pub cost_kind: CostKind,
    pub optimizer: OptimizerSettings,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthSummary {
    pub length: usize,
    pub structures: usize,
    pub best_cost: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub target: String,
    pub threshold: f64,
    /// Shortest length with a structure below `threshold`, if any up to the limit.
    pub minimal_length: Option<usize>,
    pub witness: Option<Circuit<f64>>,
    pub witness_cost: Option<f64>,
    pub lengths: Vec<LengthSummary>,
    pub structures_evaluated: usize,
}

/// Enumerates all action sequences of length `1, 2, ...` in action-space
/// order, fitting each, and stops at the first length where one reaches
/// `threshold`. Empty circuits are not considered.
pub fn run_oracle(
    target: &TargetSpec,
    settings: &OracleSettings,
    mut progress: impl FnMut(&LengthSummary),
) -> CliResult<OracleReport> {
    let u = target_unitary::<f64>(target)?;
    if u.n() != settings.topology.n {
        return Err(CliError::Config(format!(
            "target has {} qubits, topology {}",
            u.n(),
            settings.topology.n
        )));
    }
    let space = ActionSpace::new(&settings.alphabet, &settings.topology, settings.max_len);
    let actions = space.all();
    if actions.is_empty() {
        return Err(CliError::Config("empty action space".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut report = OracleReport {
        target: target.to_string(),
        threshold: settings.threshold,
        minimal_length: None,
        witness: None,
        witness_cost: None,
        lengths: Vec::new(),
        structures_evaluated: 0,
    };
    for len in 1..=settings.max_len {
        let mut digits = vec![0usize; len];
        let mut summary = LengthSummary {
            length: len,
            structures: 0,
            best_cost: f64::INFINITY,
        };
        loop {
            let seq: Vec<ActionId> = digits.iter().map(|&d| actions[d]).collect();
            let structure = space.structure(&seq);
            let out = optimize(&structure, &u, settings.cost_kind, &settings.optimizer, &mut rng)?;
            summary.structures += 1;
            let cost = out.cost.value();
            summary.best_cost = summary.best_cost.min(cost);
            if cost < settings.threshold {
                report.minimal_length = Some(len);
                report.witness = Some(structure.with_params(&out.theta)?);
                report.witness_cost = Some(cost);
                break;
            }
            if !advance(&mut digits, actions.len()) {
                break;
            }
        }
        report.structures_evaluated += summary.structures;
        progress(&summary);
        report.lengths.push(summary);
        if report.minimal_length.is_some() {
            break;
        }
    }
    Ok(report)
}

/// Next sequence in odometer order, last position fastest; false after the last.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
