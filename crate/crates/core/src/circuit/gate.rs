use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::apply;
use super::unitary::Unitary;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Gate identifiers of the native and block alphabets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GateId {
    /// Fixed `R_x(pi/2)`.
    RxHalfPi,
    Rz,
    Ry,
    /// Placed as `(control, target)`.
    Cnot,
    /// `R_z(theta_i)` on every qubit `i`.
    RzBlock,
    /// `R_y(theta_i)` on every qubit `i`.
    RyBlock,
    /// `CNOT_{01}`, then `CNOT_{12}`, ..., then `CNOT_{n-2,n-1}`.
    CnotAll,
    /// `CNOT_{01} CNOT_{23} ...`
    CnotEven,
    /// `CNOT_{12} CNOT_{34} ...`
    CnotOdd,
    /// `CNOT_{01} CNOT_{32} CNOT_{45} CNOT_{76} ...`
    CnotEvenBidirect,
}

/// How many qubits a gate names explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    One,
    Two,
    /// Acts on the whole register; placements carry no qubit indices.
    Block,
}

impl GateId {
    pub const ALL: [GateId; 10] = [
        GateId::RxHalfPi,
        GateId::Rz,
        GateId::Ry,
        GateId::Cnot,
        GateId::RzBlock,
        GateId::RyBlock,
        GateId::CnotAll,
        GateId::CnotEven,
        GateId::CnotOdd,
        GateId::CnotEvenBidirect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateId::RxHalfPi => "RX_HALF_PI",
            GateId::Rz => "RZ",
            GateId::Ry => "RY",
            GateId::Cnot => "CNOT",
            GateId::RzBlock => "RZ_BLOCK",
            GateId::RyBlock => "RY_BLOCK",
            GateId::CnotAll => "CNOT_ALL",
            GateId::CnotEven => "CNOT_EVEN",
            GateId::CnotOdd => "CNOT_ODD",
            GateId::CnotEvenBidirect => "CNOT_EVEN_BIDIRECT",
        }
    }

    pub fn arity(self) -> Arity {
        match self {
            GateId::RxHalfPi | GateId::Rz | GateId::Ry => Arity::One,
            GateId::Cnot => Arity::Two,
            _ => Arity::Block,
        }
    }

    pub fn is_block(self) -> bool {
        self.arity() == Arity::Block
    }

    /// Number of continuous angles on a width-`n` register.
    pub fn param_count(self, n: usize) -> usize {
        match self {
            GateId::Rz | GateId::Ry => 1,
            GateId::RzBlock | GateId::RyBlock => n,
            _ => 0,
        }
    }

    /// CNOTs contributed by one placement, counting block members individually.
    pub fn cnot_count(self, n: usize) -> usize {
        match self {
            GateId::Cnot => 1,
            _ => self.block_cnot_pairs(n).len(),
        }
    }

    /// The ordered `(control, target)` pairs of a CNOT block, in application order.
    pub fn block_cnot_pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            GateId::CnotAll => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            GateId::CnotEven => (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect(),
            GateId::CnotOdd => (0..n.saturating_sub(1) / 2)
                .map(|k| (2 * k + 1, 2 * k + 2))
                .collect(),
            GateId::CnotEvenBidirect => (0..n / 2)
                .map(|k| {
                    if k % 2 == 0 {
                        (2 * k, 2 * k + 1)
                    } else {
                        (2 * k + 1, 2 * k)
                    }
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        GateId::ALL
            .iter()
            .copied()
            .find(|g| g.name() == upper)
            .ok_or_else(|| Error::UnknownGate(s.to_string()))
    }
}

/// Ordered qubit tuple of a placement: empty (blocks), one index, or `(control, target)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Qubits {
    len: u8,
    idx: [u8; 2],
}

impl Qubits {
    pub const NONE: Qubits = Qubits { len: 0, idx: [0; 2] };

    pub fn one(q: usize) -> Self {
        Qubits {
            len: 1,
            idx: [to_u8(q), 0],
        }
    }

    pub fn two(a: usize, b: usize) -> Self {
        Qubits {
            len: 2,
            idx: [to_u8(a), to_u8(b)],
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> usize {
        assert!(i < self.len(), "qubit slot {i} out of range");
        self.idx[i] as usize
    }

    pub fn to_vec(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

fn to_u8(q: usize) -> u8 {
    u8::try_from(q).expect("qubit index must fit in u8")
}

impl fmt::Debug for Qubits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_vec()).finish()
    }
}

impl From<Qubits> for Vec<usize> {
    fn from(q: Qubits) -> Self {
        q.to_vec()
    }
}

impl TryFrom<Vec<usize>> for Qubits {
    type Error = String;

    fn try_from(v: Vec<usize>) -> std::result::Result<Self, String> {
        if v.iter().any(|&q| q > u8::MAX as usize) {
            return Err(format!("qubit index out of range in {v:?}"));
        }
        match v.as_slice() {
            [] => Ok(Qubits::NONE),
            [a] => Ok(Qubits::one(*a)),
            [a, b] => Ok(Qubits::two(*a, *b)),
            _ => Err(format!("at most two qubit indices per placement, got {v:?}")),
        }
    }
}

/// One gate of a circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct GatePlacement<T> {
    pub gate: GateId,
    pub qubits: Qubits,
    #[serde(default)]
    pub theta: Vec<T>,
}

impl<T: Real> GatePlacement<T> {
    pub fn new(gate: GateId, qubits: Qubits, theta: Vec<T>) -> Self {
        GatePlacement { gate, qubits, theta }
    }

    pub fn rz(q: usize, theta: T) -> Self {
        Self::new(GateId::Rz, Qubits::one(q), vec![theta])
    }

    pub fn ry(q: usize, theta: T) -> Self {
        Self::new(GateId::Ry, Qubits::one(q), vec![theta])
    }

    pub fn rx_half_pi(q: usize) -> Self {
        Self::new(GateId::RxHalfPi, Qubits::one(q), Vec::new())
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::new(GateId::Cnot, Qubits::two(control, target), Vec::new())
    }

    pub fn block(gate: GateId, theta: Vec<T>) -> Self {
        Self::new(gate, Qubits::NONE, theta)
    }

    /// Checks qubit indices and angle count against a width-`n` register.
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = || Error::QubitIndex {
            qubits: self.qubits.to_vec(),
            n,
        };
        match self.gate.arity() {
            Arity::One => {
                if self.qubits.len() != 1 || self.qubits.get(0) >= n {
                    return Err(bad());
                }
            }
            Arity::Two => {
                if self.qubits.len() != 2
                    || self.qubits.get(0) >= n
                    || self.qubits.get(1) >= n
                    || self.qubits.get(0) == self.qubits.get(1)
                {
                    return Err(bad());
                }
            }
            Arity::Block => {
                if !self.qubits.is_empty() {
                    return Err(bad());
                }
            }
        }
        let expected = self.gate.param_count(n);
        if self.theta.len() != expected {
            return Err(Error::ParameterArity {
                gate: self.gate.name().to_string(),
                expected,
                got: self.theta.len(),
            });
        }
        Ok(())
    }

    pub fn cnot_count(&self, n: usize) -> usize {
        self.gate.cnot_count(n)
    }

    /// Every `(control, target)` pair this placement applies.
    pub fn cnot_pairs(&self, n: usize) -> Vec<(usize, usize)> {
        match self.gate {
            GateId::Cnot => vec![(self.qubits.get(0), self.qubits.get(1))],
            g => g.block_cnot_pairs(n),
        }
    }
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// `R_z(theta) = diag(e^{-i theta/2}, e^{i theta/2})`.
pub(crate) fn rz_entries<T: Real>(theta: T) -> [Complex<T>; 4] {
    let h = theta / T::lit(2.0);
    let z = Complex::new(T::zero(), T::zero());
    [Complex::from_polar(T::one(), -h), z, z, Complex::from_polar(T::one(), h)]
}

/// `R_y(theta) = [[cos, -sin], [sin, cos]]` of `theta/2`.
pub(crate) fn ry_entries<T: Real>(theta: T) -> [Complex<T>; 4] {
    let h = theta / T::lit(2.0);
    let (s, co) = (h.sin(), h.cos());
    let z = T::zero();
    [
        Complex::new(co, z),
        Complex::new(-s, z),
        Complex::new(s, z),
        Complex::new(co, z),
    ]
}

/// `R_x(pi/2) = (1/sqrt 2) [[1, -i], [-i, 1]]`.
pub(crate) fn rx_half_pi_entries<T: Real>() -> [Complex<T>; 4] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [c(r, 0.0), c(0.0, -r), c(0.0, -r), c(r, 0.0)]
}

fn cnot_local<T: Real>() -> Unitary<T> {
    let mut data = vec![c::<T>(0.0, 0.0); 16];
    for (r, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        data[r * 4 + col] = c(1.0, 0.0);
    }
    Unitary::from_raw(2, data)
}

/// Matrix of a gate.
///
/// One-qubit gates give a 2x2 matrix and CNOT a 4x4 matrix in its local
/// basis `|control target>` (control is the high bit). Blocks give the
/// full `2^n x 2^n` matrix on the width-`n` register.
pub fn gate_matrix<T: Real>(gate: GateId, theta: &[T], n: usize) -> Result<Unitary<T>> {
    let expected = gate.param_count(n);
    if theta.len() != expected {
        return Err(Error::ParameterArity {
            gate: gate.name().to_string(),
            expected,
            got: theta.len(),
        });
    }
    match gate {
        GateId::RxHalfPi => Ok(Unitary::from_raw(1, rx_half_pi_entries().to_vec())),
        GateId::Rz => Ok(Unitary::from_raw(1, rz_entries(theta[0]).to_vec())),
        GateId::Ry => Ok(Unitary::from_raw(1, ry_entries(theta[0]).to_vec())),
        GateId::Cnot => Ok(cnot_local()),
        _ => {
            let mut u = Unitary::identity(n);
            let p = GatePlacement::block(gate, theta.to_vec());
            apply::apply_left(u.as_mut_slice(), n, &p);
            Ok(u)
        }
    }
}

/// Embeds a 2x2 (or 4x4) gate acting on `qubits` into the width-`n` register.
///
/// For two-qubit gates the first listed qubit is the high bit of the
/// gate's local index, so `embed(CNOT, (c, t), n)` is the CNOT with
/// control `c` and target `t`.
pub fn embed<T: Real>(g: &Unitary<T>, qubits: &[usize], n: usize) -> Result<Unitary<T>> {
    let k = g.n();
    let bad = || Error::QubitIndex {
        qubits: qubits.to_vec(),
        n,
    };
    if !(k == 1 || k == 2) {
        return Err(Error::Dimension {
            expected: 4,
            got: g.dim(),
        });
    }
    if qubits.len() != k || qubits.iter().any(|&q| q >= n) {
        return Err(bad());
    }
    if k == 2 && qubits[0] == qubits[1] {
        return Err(bad());
    }
    let d = 1usize << n;
    let mask = qubits.iter().fold(0usize, |m, &q| m | (1 << q));
    // local index: qubits[0] is the most significant bit
    let local = |x: usize| -> usize {
        qubits
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((x >> q) & 1))
    };
    let mut data = vec![Complex::new(T::zero(), T::zero()); d * d];
    for r in 0..d {
        for col in 0..d {
            if r & !mask == col & !mask {
                data[r * d + col] = g.get(local(r), local(col));
            }
        }
    }
    Ok(Unitary::from_raw(n, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_counts() {
        assert_eq!(GateId::RxHalfPi.param_count(3), 0);
        assert_eq!(GateId::Cnot.param_count(3), 0);
        assert_eq!(GateId::Rz.param_count(3), 1);
        assert_eq!(GateId::RyBlock.param_count(5), 5);
        assert_eq!(GateId::CnotOdd.param_count(5), 0);
    }

    #[test]
    fn block_pairs_five_qubits() {
        assert_eq!(
            GateId::CnotAll.block_cnot_pairs(5),
            vec![(0, 1), (1, 2), (2, 3), (3, 4)]
        );
        assert_eq!(GateId::CnotEven.block_cnot_pairs(5), vec![(0, 1), (2, 3)]);
        assert_eq!(GateId::CnotOdd.block_cnot_pairs(5), vec![(1, 2), (3, 4)]);
        assert_eq!(
            GateId::CnotEvenBidirect.block_cnot_pairs(5),
            vec![(0, 1), (3, 2)]
        );
        assert_eq!(GateId::CnotOdd.block_cnot_pairs(2), vec![]);
    }

    #[test]
    fn gate_names_parse() {
        for g in GateId::ALL {
            assert_eq!(g.name().parse::<GateId>().unwrap(), g);
        }
        assert!(matches!("FOO".parse::<GateId>(), Err(Error::UnknownGate(_))));
    }

    #[test]
    fn rz_zero_is_identity() {
        let u = gate_matrix::<f64>(GateId::Rz, &[0.0], 1).unwrap();
        assert!(u.max_abs_diff(&Unitary::identity(1)) < 1e-15);
    }

    #[test]
    fn rx_half_pi_matrix() {
        let u = gate_matrix::<f64>(GateId::RxHalfPi, &[], 1).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect = Unitary::from_rows(
            1,
            vec![c(r, 0.0), c(0.0, -r), c(0.0, -r), c(r, 0.0)],
        )
        .unwrap();
        assert!(u.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn wrong_arity_is_rejected() {
        assert!(matches!(
            gate_matrix::<f64>(GateId::Rz, &[], 1),
            Err(Error::ParameterArity { .. })
        ));
        assert!(matches!(
            gate_matrix::<f64>(GateId::RzBlock, &[0.0; 2], 3),
            Err(Error::ParameterArity { expected: 3, .. })
        ));
    }

    #[test]
    fn embed_x_on_qubit_zero_is_i_kron_x() {
        let x = Unitary::<f64>::from_rows(1, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
            .unwrap();
        let e = embed(&x, &[0], 2).unwrap();
        let expect = Unitary::identity(1).kron(&x);
        assert!(e.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn embed_cnot_maps_01_to_11() {
        let cx = gate_matrix::<f64>(GateId::Cnot, &[], 2).unwrap();
        let e = embed(&cx, &[0, 1], 2).unwrap();
        let mut s = vec![c::<f64>(0., 0.); 4];
        s[1] = c(1., 0.); // qubit0 = 1
        let out = e.apply(&s);
        assert!((out[3].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn embed_rejects_bad_qubits() {
        let cx = gate_matrix::<f64>(GateId::Cnot, &[], 2).unwrap();
        assert!(matches!(embed(&cx, &[0, 2], 2), Err(Error::QubitIndex { .. })));
        assert!(matches!(embed(&cx, &[1, 1], 2), Err(Error::QubitIndex { .. })));
    }

    #[test]
    fn placement_validation() {
        assert!(GatePlacement::<f64>::cnot(0, 1).validate(2).is_ok());
        assert!(GatePlacement::<f64>::cnot(0, 0).validate(2).is_err());
        assert!(GatePlacement::<f64>::rz(2, 0.1).validate(2).is_err());
        assert!(GatePlacement::<f64>::block(GateId::RzBlock, vec![0.0; 3])
            .validate(3)
            .is_ok());
        let bad = GatePlacement::<f64>::new(GateId::RzBlock, Qubits::one(0), vec![0.0; 3]);
        assert!(bad.validate(3).is_err());
    }

    #[test]
    fn qubits_serde_as_list() {
        let q = Qubits::two(2, 0);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[2,0]");
        let back: Qubits = serde_json::from_str("[2,0]").unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Qubits>("[1,2,3]").is_err());
    }
}
