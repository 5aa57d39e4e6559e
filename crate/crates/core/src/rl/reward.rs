use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;

/// How the terminal reward is spread over a trajectory.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewardShaping {
    /// `r_T / L` on each intermediate step and `r_T` on the last.
    #[default]
    TerminalFull,
    /// `r_T / L` on every step.
    Uniform,
}

/// `r_T = 1 - C - lambda * n_cnot / L`, with `L` the number of placements
/// and block CNOTs counted individually.
pub fn terminal_reward(cost: f64, circuit: &Circuit<f64>, lambda: f64) -> f64 {
    let len = circuit.len();
    let penalty = if len == 0 || lambda == 0.0 {
        0.0
    } else {
        lambda * circuit.cnot_count() as f64 / len as f64
    };
    1.0 - cost - penalty
}

/// Per-step rewards for a trajectory of `len` steps.
pub fn shaped_rewards(r_t: f64, len: usize, shaping: RewardShaping) -> Vec<f64> {
    if len == 0 {
        return Vec::new();
    }
    let step = r_t / len as f64;
    let mut out = vec![step; len];
    if shaping == RewardShaping::TerminalFull {
        out[len - 1] = r_t;
    }
    out
}
