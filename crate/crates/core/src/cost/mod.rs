//! Hilbert-Schmidt test costs.
//!
//! The algebraic routes live here; [`hst_probability`] simulates the
//! 2n-qubit test circuit state by state and is used to cross-check them.

mod sim;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Unitary};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub use sim::{hst_probability, hst_probability_capped, HstProbabilities, DEFAULT_SIM_QUBIT_CAP};

/// Which Hilbert-Schmidt test to score with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostKind {
    /// `1 - |Tr(V^dagger U)|^2 / d^2`.
    Global,
    /// Mean over qubits of one minus the local all-zeros probability.
    Local,
}

impl CostKind {
    /// Global for up to three qubits, local beyond.
    pub fn default_for(n: usize) -> Self {
        if n <= 3 {
            CostKind::Global
        } else {
            CostKind::Local
        }
    }
}

impl std::fmt::Display for CostKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CostKind::Global => "global",
            CostKind::Local => "local",
        })
    }
}

impl std::str::FromStr for CostKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "global" => Ok(CostKind::Global),
            "local" => Ok(CostKind::Local),
            other => Err(Error::InvalidConfig(format!("unknown cost kind `{other}`"))),
        }
    }
}

/// A cost in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CostValue<T>(T);

impl<T: Real> CostValue<T> {
    /// Clamps tiny negative round-off to zero; anything more negative is an error.
    pub fn new(raw: T) -> Result<Self> {
        if raw.is_nan() {
            return Err(Error::Consistency("cost is NaN".into()));
        }
        if raw < T::zero() {
            if raw < -T::cost_clamp_tolerance() {
                return Err(Error::Consistency(format!("negative cost {raw}")));
            }
            return Ok(CostValue(T::zero()));
        }
        Ok(CostValue(raw.min(T::one())))
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }
}

fn check_dims<T: Real>(u: &Unitary<T>, v: &Unitary<T>) -> Result<()> {
    u.check_same_dim(v)
}

/// `1 - |Tr(V^dagger U)|^2 / d^2`; zero iff `U` and `V` agree up to global phase.
pub fn hst_cost<T: Real>(u: &Unitary<T>, v: &Unitary<T>) -> Result<CostValue<T>> {
    check_dims(u, v)?;
    let tr = u
        .as_slice()
        .iter()
        .zip(v.as_slice())
        .fold(Complex::new(T::zero(), T::zero()), |acc, (&a, &b)| {
            acc + b.conj() * a
        });
    let d = T::lit(u.dim() as f64);
    CostValue::new(T::one() - tr.norm_sqr() / (d * d))
}

/// Local Hilbert-Schmidt cost `(1/n) sum_i (1 - p_i)`.
pub fn lhst_cost<T: Real>(u: &Unitary<T>, v: &Unitary<T>) -> Result<CostValue<T>> {
    check_dims(u, v)?;
    let w = u.mul(&v.adjoint())?;
    let p = local_probabilities(w.as_slice(), u.n());
    let mean = p.iter().copied().sum::<T>() / T::lit(u.n() as f64);
    CostValue::new(T::one() - mean)
}

/// Probability that pair `(i, i+n)` reads `00` after the Bell-basis
/// measurement, given `W = U V^dagger` (or its adjoint; the expression is
/// symmetric under transposition of `W`'s index pairs).
///
/// With the test state written as `psi(a, b) = W[a][b] / sqrt d`:
/// `p_i = (1 / 2d) sum_{a', b' with bit i clear} |W[a'][b'] + W[a' | 2^i][b' | 2^i]|^2`.
pub(crate) fn local_probabilities<T: Real>(w: &[Complex<T>], n: usize) -> Vec<T> {
    let d = 1usize << n;
    let scale = T::one() / T::lit(2.0 * d as f64);
    (0..n)
        .map(|i| {
            let bit = 1usize << i;
            let mut acc = T::zero();
            for a in (0..d).filter(|a| a & bit == 0) {
                let row0 = &w[a * d..(a + 1) * d];
                let row1 = &w[(a | bit) * d..((a | bit) + 1) * d];
                for b in (0..d).filter(|b| b & bit == 0) {
                    acc = acc + (row0[b] + row1[b | bit]).norm_sqr();
                }
            }
            acc * scale
        })
        .collect()
}

/// Scores parameter assignments of a fixed structure against a target.
///
/// Each evaluation applies the structure to `U^dagger`, producing
/// `X = V(theta) U^dagger = W^dagger`, and reads the cost off `X`.
#[derive(Clone)]
pub struct CostEvaluator<T> {
    target_adjoint: Unitary<T>,
    kind: CostKind,
    scratch: Vec<Complex<T>>,
}

impl<T: Real> CostEvaluator<T> {
    pub fn new(target: &Unitary<T>, kind: CostKind) -> Self {
        CostEvaluator {
            target_adjoint: target.adjoint(),
            kind,
            scratch: Vec::with_capacity(target.as_slice().len()),
        }
    }

    pub fn kind(&self) -> CostKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.target_adjoint.n()
    }

    /// Cost of `structure` at the flat angle vector `theta`.
    pub fn eval(&mut self, structure: &Circuit<T>, theta: &[T]) -> Result<CostValue<T>> {
        if structure.n != self.n() {
            return Err(Error::Dimension {
                expected: self.target_adjoint.dim(),
                got: 1 << structure.n,
            });
        }
        structure.check_param_len(theta)?;
        self.scratch.clear();
        self.scratch.extend_from_slice(self.target_adjoint.as_slice());
        structure.apply_with_params(&mut self.scratch, theta);
        let n = self.n();
        let d = T::lit((1usize << n) as f64);
        let raw = match self.kind {
            CostKind::Global => {
                let dim = 1usize << n;
                let tr = (0..dim).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                    acc + self.scratch[k * dim + k]
                });
                T::one() - tr.norm_sqr() / (d * d)
            }
            CostKind::Local => {
                let p = local_probabilities(&self.scratch, n);
                T::one() - p.iter().copied().sum::<T>() / T::lit(n as f64)
            }
        };
        CostValue::new(raw)
    }
}

/// Cost of `U` against `V` under `kind`.
pub fn cost<T: Real>(u: &Unitary<T>, v: &Unitary<T>, kind: CostKind) -> Result<CostValue<T>> {
    match kind {
        CostKind::Global => hst_cost(u, v),
        CostKind::Local => lhst_cost(u, v),
    }
}
