use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::gate::GatePlacement;
use super::Circuit;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Directed two-qubit connectivity of a device: the `(control, target)` pairs a CNOT may use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub n: usize,
    pub allowed_pairs: BTreeSet<(usize, usize)>,
}

/// Undirected coupling map of the 5-qubit ibmq_ourense device.
const OURENSE_EDGES: [(usize, usize); 4] = [(0, 1), (1, 2), (1, 3), (3, 4)];

impl Topology {
    /// All `n(n-1)` ordered pairs.
    pub fn full(n: usize) -> Self {
        let allowed_pairs = (0..n)
            .flat_map(|c| (0..n).filter(move |&t| t != c).map(move |t| (c, t)))
            .collect();
        Topology { n, allowed_pairs }
    }

    /// Nearest-neighbour chain `0 - 1 - ... - (n-1)`, both directions.
    pub fn line(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::bidirectional(n, &edges)
    }

    /// ibmq_ourense restricted to its first `n <= 5` qubits, both directions.
    ///
    /// For `n = 3` this is the line `0 - 1 - 2`.
    pub fn ibmq_ourense(n: usize) -> Result<Self> {
        if n > 5 {
            return Err(Error::InvalidConfig(format!(
                "ibmq_ourense has 5 qubits, requested {n}"
            )));
        }
        let edges: Vec<_> = OURENSE_EDGES
            .iter()
            .copied()
            .filter(|&(a, b)| a < n && b < n)
            .collect();
        Ok(Self::bidirectional(n, &edges))
    }

    fn bidirectional(n: usize, edges: &[(usize, usize)]) -> Self {
        let allowed_pairs = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        Topology { n, allowed_pairs }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let t = Topology {
            n,
            allowed_pairs: pairs.into_iter().collect(),
        };
        t.validate()?;
        Ok(t)
    }

    /// Resolves a preset name (`full`, `line`, `ibmq_ourense`) for width `n`.
    pub fn preset(name: &str, n: usize) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(Self::full(n)),
            "line" => Ok(Self::line(n)),
            "ibmq_ourense" | "ourense" => Self::ibmq_ourense(n),
            other => Err(Error::InvalidConfig(format!("unknown topology `{other}`"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &(c, t) in &self.allowed_pairs {
            if c >= self.n || t >= self.n || c == t {
                return Err(Error::QubitIndex {
                    qubits: vec![c, t],
                    n: self.n,
                });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn allows(&self, control: usize, target: usize) -> bool {
        self.allowed_pairs.contains(&(control, target))
    }

    /// Whether every CNOT the placement applies (block members included) is allowed.
    pub fn permits<T: Real>(&self, p: &GatePlacement<T>) -> bool {
        p.cnot_pairs(self.n).into_iter().all(|(c, t)| self.allows(c, t))
    }
}

/// A topology breach found by [`validate_circuit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Gate `index` applies a CNOT on a pair the device does not couple.
    Pair {
        index: usize,
        control: usize,
        target: usize,
    },
    WidthMismatch { circuit: usize, topology: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pair {
                index,
                control,
                target,
            } => write!(f, "gate {index}: CNOT({control},{target}) not coupled"),
            Violation::WidthMismatch { circuit, topology } => write!(
                f,
                "circuit has {circuit} qubits, topology has {topology}"
            ),
        }
    }
}

/// Ok iff every two-qubit interaction of `c` (including CNOTs inside blocks)
/// is an allowed pair of `t`. Single-qubit gates are never constrained.
pub fn validate_circuit<T: Real>(
    c: &Circuit<T>,
    t: &Topology,
) -> std::result::Result<(), Vec<Violation>> {
    if c.n != t.n {
        return Err(vec![Violation::WidthMismatch {
            circuit: c.n,
            topology: t.n,
        }]);
    }
    let violations: Vec<_> = c
        .gates
        .iter()
        .enumerate()
        .flat_map(|(index, g)| {
            g.cnot_pairs(c.n)
                .into_iter()
                .filter(|&(a, b)| !t.allows(a, b))
                .map(move |(control, target)| Violation::Pair {
                    index,
                    control,
                    target,
                })
        })
        .collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateId;

    fn one(g: GatePlacement<f64>, n: usize) -> Circuit<f64> {
        Circuit::from_gates(n, vec![g]).unwrap()
    }

    #[test]
    fn full_has_all_ordered_pairs() {
        for n in 1..6 {
            assert_eq!(Topology::full(n).allowed_pairs.len(), n * (n - 1));
        }
    }

    #[test]
    fn ourense_three_qubits_is_a_line() {
        let t = Topology::ibmq_ourense(3).unwrap();
        let pairs: Vec<_> = t.allowed_pairs.iter().copied().collect();
        assert_eq!(pairs, vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert!(Topology::ibmq_ourense(6).is_err());
    }

    #[test]
    fn cnot_0_2_violates_ourense() {
        let t = Topology::ibmq_ourense(3).unwrap();
        let r = validate_circuit(&one(GatePlacement::cnot(0, 2), 3), &t);
        assert_eq!(
            r,
            Err(vec![Violation::Pair {
                index: 0,
                control: 0,
                target: 2
            }])
        );
        assert!(validate_circuit(&one(GatePlacement::cnot(1, 0), 3), &t).is_ok());
    }

    #[test]
    fn single_qubit_circuits_always_pass() {
        let t = Topology::from_pairs(3, []).unwrap();
        let c = Circuit::from_gates(
            3,
            vec![
                GatePlacement::rz(0, 1.0),
                GatePlacement::ry(2, 1.0),
                GatePlacement::rx_half_pi(1),
                GatePlacement::block(GateId::RzBlock, vec![0.0; 3]),
            ],
        )
        .unwrap();
        assert!(validate_circuit(&c, &t).is_ok());
    }

    #[test]
    fn blocks_are_checked_member_by_member() {
        let t = Topology::line(4);
        let c = one(GatePlacement::block(GateId::CnotAll, vec![]), 4);
        assert!(validate_circuit(&c, &t).is_ok());
        let ring_less = Topology::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        let c = one(GatePlacement::block(GateId::CnotEvenBidirect, vec![]), 4);
        assert_eq!(validate_circuit(&c, &ring_less).unwrap_err().len(), 1);
    }

    #[test]
    fn bad_pairs_rejected() {
        assert!(Topology::from_pairs(2, [(0, 0)]).is_err());
        assert!(Topology::from_pairs(2, [(0, 2)]).is_err());
    }
}
