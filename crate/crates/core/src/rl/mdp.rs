use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{Arity, Circuit, GateId, GatePlacement, Qubits, Topology};
use crate::error::{Error, Result};

/// One agent decision: which gate, on which qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActionId {
    pub gate: GateId,
    pub qubits: Qubits,
}

impl ActionId {
    pub fn new(gate: GateId, qubits: Qubits) -> Self {
        ActionId { gate, qubits }
    }

    /// The placement this action appends, angles zeroed.
    pub fn placement(&self, n: usize) -> GatePlacement<f64> {
        GatePlacement::new(self.gate, self.qubits, vec![0.0; self.gate.param_count(n)])
    }
}

impl fmt::Display for ActionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.qubits.to_vec().iter().map(|q| q.to_string()).collect();
        write!(f, "{}[{}]", self.gate, qs.join(","))
    }
}

/// Node of the circuit-construction MDP: `(last gate, its qubits, gate count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AgentState {
    Start,
    Intermediate {
        last_gate: GateId,
        last_qubits: Qubits,
        gate_count: usize,
    },
    Terminal,
}

impl AgentState {
    pub fn gate_count(&self) -> Option<usize> {
        match self {
            AgentState::Start => Some(0),
            AgentState::Intermediate { gate_count, .. } => Some(*gate_count),
            AgentState::Terminal => None,
        }
    }

    /// State reached by appending `a`.
    pub fn next(&self, a: ActionId) -> Result<AgentState> {
        let count = self
            .gate_count()
            .ok_or_else(|| Error::InvalidState("no transition out of TERMINAL".into()))?;
        Ok(AgentState::Intermediate {
            last_gate: a.gate,
            last_qubits: a.qubits,
            gate_count: count + 1,
        })
    }
}

impl fmt::Display for AgentState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgentState::Start => f.write_str("START"),
            AgentState::Terminal => f.write_str("TERMINAL"),
            AgentState::Intermediate {
                last_gate,
                last_qubits,
                gate_count,
            } => write!(
                f,
                "{}#{}",
                ActionId::new(*last_gate, *last_qubits),
                gate_count
            ),
        }
    }
}

/// Actions available from non-terminal states for a fixed alphabet,
/// topology and gate budget `max_gates`.
///
/// Ordering is deterministic: alphabet order, then qubit (or ordered
/// pair) in ascending order. Disallowed CNOT pairs and blocks containing
/// one are dropped.
#[derive(Debug, Clone)]
pub struct ActionSpace {
    n: usize,
    max_gates: usize,
    actions: Vec<ActionId>,
}

impl ActionSpace {
    pub fn new(alphabet: &[GateId], topology: &Topology, max_gates: usize) -> Self {
        let n = topology.n;
        let mut actions = Vec::new();
        for &g in alphabet {
            match g.arity() {
                Arity::One => actions.extend((0..n).map(|q| ActionId::new(g, Qubits::one(q)))),
                Arity::Two => {
                    for c in 0..n {
                        for t in 0..n {
                            if c != t && topology.allows(c, t) {
                                actions.push(ActionId::new(g, Qubits::two(c, t)));
                            }
                        }
                    }
                }
                Arity::Block => {
                    let p = GatePlacement::<f64>::block(g, vec![0.0; g.param_count(n)]);
                    if topology.permits(&p) {
                        actions.push(ActionId::new(g, Qubits::NONE));
                    }
                }
            }
        }
        ActionSpace {
            n,
            max_gates,
            actions,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_gates(&self) -> usize {
        self.max_gates
    }

    /// All actions, ignoring the gate budget.
    pub fn all(&self) -> &[ActionId] {
        &self.actions
    }

    /// `A(s)`: empty once the budget is spent (only termination remains).
    pub fn actions(&self, s: &AgentState) -> Result<&[ActionId]> {
        match s.gate_count() {
            None => Err(Error::InvalidState("TERMINAL has no actions".into())),
            Some(k) if k > self.max_gates => Err(Error::InvalidState(format!(
                "gate count {k} exceeds budget {}",
                self.max_gates
            ))),
            Some(k) if k == self.max_gates => Ok(&[]),
            Some(_) => Ok(&self.actions),
        }
    }

    pub fn contains(&self, a: &ActionId) -> bool {
        self.actions.contains(a)
    }

    /// Circuit with zeroed angles built from an action sequence.
    pub fn structure(&self, actions: &[ActionId]) -> Circuit<f64> {
        Circuit {
            n: self.n,
            gates: actions.iter().map(|a| a.placement(self.n)).collect(),
        }
    }
}

/// `A(s)` for the given alphabet, topology and budget.
pub fn action_space(
    s: &AgentState,
    alphabet: &[GateId],
    topology: &Topology,
    max_gates: usize,
) -> Result<Vec<ActionId>> {
    Ok(ActionSpace::new(alphabet, topology, max_gates)
        .actions(s)?
        .to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubit_native_alphabet_has_six_actions() {
        let a = action_space(
            &AgentState::Start,
            &[GateId::RxHalfPi, GateId::Rz, GateId::Cnot],
            &Topology::full(2),
            5,
        )
        .unwrap();
        assert_eq!(a.len(), 6);
    }

    #[test]
    fn count_formula_full_connectivity() {
        // n p + q n (n - 1)
        for n in 1..6 {
            let a = action_space(
                &AgentState::Start,
                &[GateId::Rz, GateId::Ry, GateId::Cnot],
                &Topology::full(n),
                3,
            )
            .unwrap();
            assert_eq!(a.len(), 2 * n + n * (n - 1));
        }
    }

    #[test]
    fn ourense_line_drops_0_2_pairs() {
        let a = action_space(
            &AgentState::Start,
            &[GateId::Rz, GateId::Ry, GateId::Cnot],
            &Topology::ibmq_ourense(3).unwrap(),
            7,
        )
        .unwrap();
        assert_eq!(a.len(), 10);
        assert!(!a.iter().any(|x| x.qubits == Qubits::two(0, 2) || x.qubits == Qubits::two(2, 0)));
    }

    #[test]
    fn budget_exhausted_means_no_actions() {
        let sp = ActionSpace::new(&[GateId::Rz], &Topology::full(1), 2);
        let s = AgentState::Start
            .next(ActionId::new(GateId::Rz, Qubits::one(0)))
            .unwrap();
        assert_eq!(sp.actions(&s).unwrap().len(), 1);
        let s = s.next(ActionId::new(GateId::Rz, Qubits::one(0))).unwrap();
        assert!(sp.actions(&s).unwrap().is_empty());
        assert!(matches!(
            sp.actions(&AgentState::Terminal),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn ordering_is_stable() {
        let sp = ActionSpace::new(&[GateId::Cnot, GateId::Rz], &Topology::full(2), 3);
        let names: Vec<String> = sp.all().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, vec!["CNOT[0,1]", "CNOT[1,0]", "RZ[0]", "RZ[1]"]);
    }

    #[test]
    fn blocks_are_single_actions() {
        let sp = ActionSpace::new(
            &[GateId::RzBlock, GateId::CnotEven, GateId::CnotAll],
            &Topology::full(4),
            4,
        );
        assert_eq!(sp.all().len(), 3);
        let line = ActionSpace::new(&[GateId::CnotEvenBidirect], &Topology::from_pairs(4, [(0, 1)]).unwrap(), 4);
        assert!(line.all().is_empty());
    }

    #[test]
    fn state_serde_and_display() {
        let s = AgentState::Start
            .next(ActionId::new(GateId::Cnot, Qubits::two(1, 0)))
            .unwrap();
        assert_eq!(s.to_string(), "CNOT[1,0]#1");
        let v = serde_json::to_value(s).unwrap();
        assert_eq!(v["tag"], "INTERMEDIATE");
        assert_eq!(v["last_qubits"], serde_json::json!([1, 0]));
        let back: AgentState = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_value(AgentState::Start).unwrap()["tag"], "START");
    }
}
