//! Variational quantum compiling with tabular double Q-learning.
//!
//! The crate rewrites a target unitary into a gate sequence drawn from a
//! device's native alphabet. Circuit structures are searched by a double
//! Q-learning agent ([`rl`]); the continuous angles of every candidate
//! structure are fitted with parameter-shift gradient descent
//! ([`optimizer`]) against the Hilbert-Schmidt test cost ([`cost`]).
//!
//! All linear algebra is generic over the real scalar type (see [`Real`]);
//! the search itself runs in `f64`, and the aliases at the bottom of this
//! file name the concrete instantiations.
//!
//! # Conventions
//!
//! * Computational basis `|q_{n-1} ... q_1 q_0>` with qubit 0 the least
//!   significant bit of the basis index.
//! * `R_a(theta) = exp(-i theta sigma_a / 2)` for `a` in `{x, y, z}`.
//! * A circuit's gates are applied left to right: `gates[0]` acts first.

pub mod circuit;
pub mod cost;
pub mod error;
pub mod optimizer;
pub mod rl;
pub mod scalar;

pub use circuit::{
    circuit_unitary, embed, gate_matrix, target_unitary, validate_circuit, Circuit, GateId,
    GatePlacement, Qubits, TargetSpec, Topology, Unitary, Violation,
};

pub use cost::{hst_cost, hst_probability, lhst_cost, CostKind, CostValue, HstProbabilities};
pub use error::{Error, Result};
pub use optimizer::{optimize, shift_gradient, InitStrategy, OptimizationOutcome, OptimizerSettings};
pub use rl::{
    action_space, alphabet_preset, double_q_update, init_q, run_search, run_search_with,
    select_action, shaped_rewards, terminal_reward, ActionId, ActionSpace, AgentState,
    EpisodeRecord, EpsilonSchedule, HyperPreset, QTablePair, ReplayEntry, RewardShaping,
    SearchConfig, SearchResult,
};

pub use scalar::Real;

/// Double-precision unitary, the working type of the search.
pub type Unitary64 = Unitary<f64>;
/// Single-precision unitary.
pub type Unitary32 = Unitary<f32>;
pub type Circuit64 = Circuit<f64>;
pub type Circuit32 = Circuit<f32>;
pub type GatePlacement64 = GatePlacement<f64>;
pub type CostValue64 = CostValue<f64>;
pub type OptimizationOutcome64 = OptimizationOutcome<f64>;
