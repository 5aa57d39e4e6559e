use serde::{Deserialize, Serialize};
use vqc_core::rl::{SearchConfig, SearchResult};

pub const TOOL_VERSION: &str = concat!("vqc ", env!("CARGO_PKG_VERSION"));

/// Everything needed to reproduce a run, plus its outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: SearchConfig,
    pub wall_time_seconds: f64,
    pub result: ResultSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultSummary {
    pub best_cost: f64,
    pub best_reward: f64,
    /// Placements in the best circuit (a block counts once).
    pub gates: usize,
    pub primitive_gates: usize,
    pub n_cnot: usize,
    pub episodes_run: usize,
    pub stopped_early: bool,
    pub q0: f64,
}

impl ResultSummary {
    pub fn of(r: &SearchResult) -> Self {
        ResultSummary {
            best_cost: r.best_cost.value(),
            best_reward: r.best_reward,
            gates: r.best_circuit.len(),
            primitive_gates: r.best_circuit.primitive_gate_count(),
            n_cnot: r.best_circuit.cnot_count(),
            episodes_run: r.episodes_run,
            stopped_early: r.stopped_early,
            q0: r.q0,
        }
    }
}

impl RunManifest {
    pub fn new(config: SearchConfig, result: &SearchResult, wall_time_seconds: f64) -> Self {
        RunManifest {
            tool_version: TOOL_VERSION.to_string(),
            config,
            wall_time_seconds,
            result: ResultSummary::of(result),
        }
    }
}
