use rand::Rng;

use super::mdp::ActionSpace;
use super::policy::greedy_in;
use super::qtable::{QTablePair, Table};
use super::replay::ReplayEntry;
use super::reward::{shaped_rewards, RewardShaping};
use crate::error::Result;

/// Applies one double Q-learning pass over a sampled trajectory.
///
/// A single coin `y ~ U[0,1)` picks the table for the whole trajectory:
/// `Q1` when `y < 0.5`, else `Q2`. The target evaluates the updated
/// table's argmax at `s'` with the other table; terminal successors
/// bootstrap to zero.
pub fn double_q_update<R: Rng + ?Sized>(
    q: &mut QTablePair,
    entry: &ReplayEntry,
    alpha: f64,
    gamma: f64,
    space: &ActionSpace,
    shaping: RewardShaping,
    rng: &mut R,
) -> Result<()> {
    let y: f64 = rng.gen();
    let table = if y < 0.5 { Table::Q1 } else { Table::Q2 };
    let rewards = shaped_rewards(entry.r_t, entry.trajectory.len(), shaping);
    for (t, step) in entry.trajectory.iter().enumerate() {
        let next = step.state.next(step.action)?;
        let next_actions = space.actions(&next)?;
        let bootstrap = if next_actions.is_empty() {
            0.0
        } else {
            let best = greedy_in(q, table, &next, next_actions, rng);
            q.get(table.other(), &next, &best)
        };
        let old = q.get(table, &step.state, &step.action);
        let new = (1.0 - alpha) * old + alpha * (rewards[t] + gamma * bootstrap);
        q.set(table, &step.state, &step.action, new);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{GateId, Qubits, Topology};
    use crate::rl::mdp::{ActionId, AgentState};
    use rand::rngs::mock::StepRng;

    fn setup() -> (ActionSpace, ReplayEntry) {
        let space = ActionSpace::new(&[GateId::Rz, GateId::Cnot], &Topology::full(2), 2);
        let acts = [
            ActionId::new(GateId::Rz, Qubits::one(0)),
            ActionId::new(GateId::Cnot, Qubits::two(0, 1)),
        ];
        (space, ReplayEntry::from_actions(&acts, 1.0).unwrap())
    }

    #[test]
    fn hand_computed_step() {
        let (space, e) = setup();
        let mut q = QTablePair::new(0.0);
        // StepRng(0, 0) yields y = 0, so Q1 is updated.
        let mut rng = StepRng::new(0, 0);
        double_q_update(&mut q, &e, 0.5, 0.9, &space, RewardShaping::TerminalFull, &mut rng).unwrap();
        let s0 = AgentState::Start;
        let s1 = s0.next(e.trajectory[0].action).unwrap();
        // step 0: r = 0.5, bootstrap Q2(s1, argmax Q1) = 0
        assert!((q.q1(&s0, &e.trajectory[0].action) - 0.25).abs() < 1e-15);
        // step 1: terminal successor, r = 1.0
        assert!((q.q1(&s1, &e.trajectory[1].action) - 0.5).abs() < 1e-15);
        assert_eq!(q.q2(&s0, &e.trajectory[0].action), 0.0);
    }

    #[test]
    fn second_pass_bootstraps_from_other_table() {
        let (space, e) = setup();
        let mut q = QTablePair::new(0.0);
        let s1 = AgentState::Start.next(e.trajectory[0].action).unwrap();
        q.set(Table::Q2, &s1, &e.trajectory[1].action, 2.0);
        q.set(Table::Q1, &s1, &e.trajectory[1].action, 1.0);
        let mut rng = StepRng::new(0, 0);
        double_q_update(&mut q, &e, 1.0, 1.0, &space, RewardShaping::Uniform, &mut rng).unwrap();
        // step 0 target: 0.5 + Q2(s1, argmax_a Q1(s1, a)) = 0.5 + 2.0
        assert!((q.q1(&AgentState::Start, &e.trajectory[0].action) - 2.5).abs() < 1e-15);
    }
}
