//! Gates, circuits, dense unitaries, built-in targets and device topologies.

pub(crate) mod apply;
mod gate;
mod target;
mod topology;
mod unitary;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

pub use gate::{embed, gate_matrix, Arity, GateId, GatePlacement, Qubits};
pub use target::{target_unitary, TargetSpec};
pub use topology::{validate_circuit, Topology, Violation};
pub use unitary::{Unitary, UnitaryFile};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Ordered gate list on `n` qubits; `gates[0]` is applied first.
///
/// Serializes to the circuit file format
/// `{"n": int, "gates": [{"gate": str, "qubits": [int...], "theta": [float...]}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Circuit<T> {
    pub n: usize,
    pub gates: Vec<GatePlacement<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n: usize, gates: Vec<GatePlacement<T>>) -> Result<Self> {
        let c = Circuit { n, gates };
        c.validate()?;
        Ok(c)
    }

    pub fn push(&mut self, p: GatePlacement<T>) -> Result<()> {
        p.validate(self.n)?;
        self.gates.push(p);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.n))
    }

    /// Number of placements (a block counts once).
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gate count with every block expanded into its member gates.
    pub fn primitive_gate_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g.gate {
                GateId::RzBlock | GateId::RyBlock => self.n,
                GateId::RxHalfPi | GateId::Rz | GateId::Ry | GateId::Cnot => 1,
                b => b.cnot_count(self.n),
            })
            .sum()
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().map(|g| g.cnot_count(self.n)).sum()
    }

    pub fn param_count(&self) -> usize {
        self.gates.iter().map(|g| g.gate.param_count(self.n)).sum()
    }

    /// Flat angle vector in placement order.
    pub fn params(&self) -> Vec<T> {
        self.gates.iter().flat_map(|g| g.theta.iter().copied()).collect()
    }

    /// Copy of this structure carrying the given flat angle vector.
    pub fn with_params(&self, theta: &[T]) -> Result<Self> {
        self.check_param_len(theta)?;
        let mut out = self.clone();
        let mut k = 0;
        for g in &mut out.gates {
            let p = g.gate.param_count(self.n);
            g.theta = theta[k..k + p].to_vec();
            k += p;
        }
        Ok(out)
    }

    pub(crate) fn check_param_len(&self, theta: &[T]) -> Result<()> {
        let expected = self.param_count();
        if theta.len() != expected {
            return Err(Error::ParameterArity {
                gate: "circuit".to_string(),
                expected,
                got: theta.len(),
            });
        }
        Ok(())
    }

    /// `m <- V(theta) m` for a row-major buffer with `2^n` rows. The
    /// structure must be valid and `theta` the right length.
    pub(crate) fn apply_with_params(&self, m: &mut [Complex<T>], theta: &[T]) {
        let mut k = 0;
        for g in &self.gates {
            let p = g.gate.param_count(self.n);
            apply::apply_gate(m, self.n, g.gate, g.qubits, &theta[k..k + p]);
            k += p;
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Circuit<T> = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }
}

/// `G_L(theta_L) ... G_1(theta_1)` as a dense matrix; the empty circuit gives the identity.
pub fn circuit_unitary<T: Real>(c: &Circuit<T>) -> Result<Unitary<T>> {
    c.validate()?;
    let mut u = Unitary::identity(c.n);
    for g in &c.gates {
        apply::apply_left(u.as_mut_slice(), c.n, g);
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_is_identity() {
        let u = circuit_unitary(&Circuit::<f64>::new(2)).unwrap();
        assert!(u.max_abs_diff(&Unitary::identity(2)) < 1e-15);
    }

    #[test]
    fn rz_rotations_add() {
        let (a, b) = (0.37, -1.91);
        let mut c = Circuit::new(1);
        c.push(GatePlacement::rz(0, a)).unwrap();
        c.push(GatePlacement::rz(0, b)).unwrap();
        let u = circuit_unitary(&c).unwrap();
        let expect = gate_matrix(GateId::Rz, &[a + b], 1).unwrap();
        assert!(u.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn counts() {
        let c = Circuit::from_gates(
            4,
            vec![
                GatePlacement::<f64>::block(GateId::RzBlock, vec![0.0; 4]),
                GatePlacement::block(GateId::CnotEven, vec![]),
                GatePlacement::block(GateId::CnotOdd, vec![]),
                GatePlacement::cnot(0, 3),
            ],
        )
        .unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.primitive_gate_count(), 4 + 2 + 1 + 1);
        assert_eq!(c.cnot_count(), 4);
        assert_eq!(c.param_count(), 4);
    }

    #[test]
    fn with_params_distributes_angles() {
        let c = Circuit::from_gates(
            2,
            vec![
                GatePlacement::<f64>::rz(0, 0.0),
                GatePlacement::cnot(0, 1),
                GatePlacement::block(GateId::RyBlock, vec![0.0, 0.0]),
            ],
        )
        .unwrap();
        let c2 = c.with_params(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(c2.gates[0].theta, vec![1.0]);
        assert_eq!(c2.gates[2].theta, vec![2.0, 3.0]);
        assert_eq!(c2.params(), vec![1.0, 2.0, 3.0]);
        assert!(c.with_params(&[1.0]).is_err());
    }

    #[test]
    fn circuit_json_format() {
        let c = Circuit::from_gates(
            2,
            vec![GatePlacement::<f64>::rz(1, 0.5), GatePlacement::cnot(0, 1)],
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json().unwrap()).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["gates"][0]["gate"], "RZ");
        assert_eq!(v["gates"][1]["qubits"], serde_json::json!([0, 1]));
        assert_eq!(Circuit::<f64>::from_json(&c.to_json().unwrap()).unwrap(), c);
    }

    #[test]
    fn invalid_circuit_file_is_rejected() {
        let text = r#"{"n":2,"gates":[{"gate":"CNOT","qubits":[0,0],"theta":[]}]}"#;
        assert!(Circuit::<f64>::from_json(text).is_err());
        let text = r#"{"n":2,"gates":[{"gate":"FOO","qubits":[0],"theta":[]}]}"#;
        assert!(Circuit::<f64>::from_json(text).is_err());
    }
}
