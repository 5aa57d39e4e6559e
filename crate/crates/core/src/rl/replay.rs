use serde::{Deserialize, Serialize};

use super::mdp::{ActionId, AgentState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub state: AgentState,
    pub action: ActionId,
}

/// One finished episode: the `(s_t, a_{t+1})` pairs and the terminal reward.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayEntry {
    pub trajectory: Vec<Transition>,
    #[serde(rename = "r_T")]
    pub r_t: f64,
}

impl ReplayEntry {
    pub fn from_actions(actions: &[ActionId], r_t: f64) -> Result<Self> {
        let mut s = AgentState::Start;
        let mut trajectory = Vec::with_capacity(actions.len());
        for &a in actions {
            trajectory.push(Transition { state: s, action: a });
            s = s.next(a)?;
        }
        Ok(ReplayEntry { trajectory, r_t })
    }

    pub fn actions(&self) -> Vec<ActionId> {
        self.trajectory.iter().map(|t| t.action).collect()
    }

    /// Checks length and that each state follows from the previous step.
    pub fn validate(&self, max_gates: usize) -> Result<()> {
        if self.trajectory.len() != max_gates {
            return Err(Error::InvalidState(format!(
                "trajectory has {} steps, expected {max_gates}",
                self.trajectory.len()
            )));
        }
        let mut s = AgentState::Start;
        for (i, t) in self.trajectory.iter().enumerate() {
            if t.state != s {
                return Err(Error::InvalidState(format!(
                    "step {i}: state {} does not follow {}",
                    t.state, s
                )));
            }
            s = s.next(t.action)?;
        }
        if !self.r_t.is_finite() {
            return Err(Error::InvalidState("non-finite reward".into()));
        }
        Ok(())
    }
}
