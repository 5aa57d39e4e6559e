//! Structure search: circuits are built gate by gate by an agent trained
//! with tabular double Q-learning and experience replay.

mod config;
mod mdp;
mod policy;
mod qtable;
mod replay;
mod reward;
mod search;
mod update;

pub use config::{
    alphabet_preset, EpsilonSchedule, EpsilonStage, HyperPreset, SearchConfig,
    DEFAULT_Q_INIT_SAMPLES,
};
pub use mdp::{action_space, ActionId, ActionSpace, AgentState};
pub use policy::select_action;
pub use qtable::{QSnapshot, QTablePair, Table};
pub use replay::{ReplayEntry, Transition};
pub use reward::{shaped_rewards, terminal_reward, RewardShaping};
pub use search::{init_q, run_search, run_search_with, EpisodeRecord, SearchResult};
pub use update::double_q_update;
