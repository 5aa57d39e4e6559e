use rand::Rng;

use super::mdp::{ActionId, ActionSpace, AgentState};
use super::qtable::{QTablePair, Table};
use crate::error::{Error, Result};

/// Index of the maximal score; ties broken uniformly at random.
///
/// An rng draw is consumed only when there is a tie.
pub(crate) fn argmax_random_tie<R: Rng + ?Sized>(scores: &[f64], rng: &mut R) -> usize {
    debug_assert!(!scores.is_empty());
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut ties = 0usize;
    let mut first = 0usize;
    for (i, &s) in scores.iter().enumerate() {
        if s == best {
            if ties == 0 {
                first = i;
            }
            ties += 1;
        }
    }
    if ties == 1 {
        return first;
    }
    let pick = rng.gen_range(0..ties);
    scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == best)
        .nth(pick)
        .map(|(i, _)| i)
        .unwrap_or(first)
}

/// Greedy action under one table.
pub(crate) fn greedy_in<R: Rng + ?Sized>(
    q: &QTablePair,
    table: Table,
    s: &AgentState,
    actions: &[ActionId],
    rng: &mut R,
) -> ActionId {
    let scores: Vec<f64> = actions.iter().map(|a| q.get(table, s, a)).collect();
    actions[argmax_random_tie(&scores, rng)]
}

/// Epsilon-greedy choice on `Q1 + Q2`.
///
/// With probability `epsilon` an action is drawn uniformly from `A(s)`.
/// Errors when `A(s)` is empty.
pub fn select_action<R: Rng + ?Sized>(
    s: &AgentState,
    space: &ActionSpace,
    q: &QTablePair,
    epsilon: f64,
    rng: &mut R,
) -> Result<ActionId> {
    let actions = space.actions(s)?;
    if actions.is_empty() {
        return Err(Error::InvalidState(format!("no actions from {s}")));
    }
    if rng.gen::<f64>() < epsilon {
        return Ok(actions[rng.gen_range(0..actions.len())]);
    }
    let scores: Vec<f64> = actions.iter().map(|a| q.sum(s, a)).collect();
    Ok(actions[argmax_random_tie(&scores, rng)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{GateId, Topology};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space() -> ActionSpace {
        ActionSpace::new(&[GateId::RxHalfPi, GateId::Rz, GateId::Cnot], &Topology::full(2), 5)
    }

    #[test]
    fn greedy_picks_the_max_sum() {
        let sp = space();
        let mut q = QTablePair::new(0.0);
        let target = sp.all()[3];
        q.set(Table::Q1, &AgentState::Start, &target, 0.4);
        q.set(Table::Q2, &AgentState::Start, &sp.all()[1], 0.3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(select_action(&AgentState::Start, &sp, &q, 0.0, &mut rng).unwrap(), target);
        }
    }

    #[test]
    fn epsilon_one_is_uniform() {
        let sp = space();
        let mut q = QTablePair::new(0.0);
        q.set(Table::Q1, &AgentState::Start, &sp.all()[0], 10.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut counts = [0usize; 6];
        let draws = 60_000;
        for _ in 0..draws {
            let a = select_action(&AgentState::Start, &sp, &q, 1.0, &mut rng).unwrap();
            counts[sp.all().iter().position(|x| *x == a).unwrap()] += 1;
        }
        let expected = draws as f64 / 6.0;
        // chi-square, 5 dof, p = 0.001 critical value 20.5
        let chi: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi < 20.5, "chi^2 = {chi}, counts {counts:?}");
    }

    #[test]
    fn ties_are_spread() {
        let sp = space();
        let q = QTablePair::new(0.2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            seen.insert(select_action(&AgentState::Start, &sp, &q, 0.0, &mut rng).unwrap());
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn empty_action_set_is_an_error() {
        let sp = ActionSpace::new(&[GateId::Rz], &Topology::full(1), 0);
        let q = QTablePair::new(0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(select_action(&AgentState::Start, &sp, &q, 0.5, &mut rng).is_err());
    }
}
