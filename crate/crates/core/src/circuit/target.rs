use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gate::{embed, GateId, GatePlacement};
#[cfg(test)]
use super::gate::gate_matrix;
use super::unitary::Unitary;
use super::{circuit_unitary, Circuit};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A compilation target: a built-in unitary or a matrix file.
///
/// Textual names: `cs`, `ch`, `cz`, `xx3pi2`, `qft<n>`, `ccnot`, `wsp3`,
/// `identity<n>`, `layered<n>[:<seed>]`, or a path to a JSON matrix file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TargetSpec {
    /// Controlled-S, `diag(1, 1, 1, i)`.
    Cs,
    /// Controlled-Hadamard, control qubit 0, target qubit 1.
    Ch,
    Cz,
    /// `XX(3 pi / 2)` with `XX(theta) = exp(-i (theta/2) X (x) X)`.
    Xx3Pi2,
    /// Discrete Fourier transform `F[j][k] = exp(2 pi i j k / d) / sqrt d`.
    Qft(usize),
    /// Toffoli, controls 0 and 1, target 2.
    Ccnot,
    /// Unitary of the reference W-state preparation circuit ([`TargetSpec::wsp3_circuit`]).
    Wsp3,
    Identity(usize),
    /// `Rz-layer(theta') CNOT_odd CNOT_even Rz-layer(theta)` with angles drawn from `seed`.
    Layered { n: usize, seed: u64 },
    File(PathBuf),
}

impl TargetSpec {
    /// Register width, when known without reading a file.
    pub fn n(&self) -> Option<usize> {
        match self {
            TargetSpec::Cs | TargetSpec::Ch | TargetSpec::Cz | TargetSpec::Xx3Pi2 => Some(2),
            TargetSpec::Ccnot | TargetSpec::Wsp3 => Some(3),
            TargetSpec::Qft(n) | TargetSpec::Identity(n) => Some(*n),
            TargetSpec::Layered { n, .. } => Some(*n),
            TargetSpec::File(_) => None,
        }
    }

    /// Reference circuit defining WSP3; maps `|000>` to `(|001> + |010> + |100>)/sqrt 3`.
    ///
    /// Seven gates, three CNOTs, all on nearest-neighbour pairs of the line `0 - 1 - 2`.
    pub fn wsp3_circuit<T: Real>() -> Circuit<T> {
        let pi = T::PI();
        let split = T::lit(2.0) * (T::one() / T::lit(3.0).sqrt()).acos();
        let quarter = pi / T::lit(4.0);
        Circuit {
            n: 3,
            gates: vec![
                GatePlacement::ry(0, pi),
                GatePlacement::ry(1, split),
                GatePlacement::cnot(1, 0),
                GatePlacement::ry(2, quarter),
                GatePlacement::cnot(1, 2),
                GatePlacement::ry(2, -quarter),
                GatePlacement::cnot(2, 1),
            ],
        }
    }

    /// The `(theta, theta')` angle layers of a layered target.
    pub fn layered_angles(n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = std::f64::consts::TAU;
        let first = (0..n).map(|_| rng.gen_range(0.0..tau)).collect();
        let second = (0..n).map(|_| rng.gen_range(0.0..tau)).collect();
        (first, second)
    }

    pub fn layered_circuit<T: Real>(n: usize, seed: u64) -> Circuit<T> {
        let (a, b) = Self::layered_angles(n, seed);
        let lift = |v: Vec<f64>| v.into_iter().map(T::lit).collect::<Vec<T>>();
        Circuit {
            n,
            gates: vec![
                GatePlacement::block(GateId::RzBlock, lift(a)),
                GatePlacement::block(GateId::CnotEven, vec![]),
                GatePlacement::block(GateId::CnotOdd, vec![]),
                GatePlacement::block(GateId::RzBlock, lift(b)),
            ],
        }
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpec::Cs => f.write_str("cs"),
            TargetSpec::Ch => f.write_str("ch"),
            TargetSpec::Cz => f.write_str("cz"),
            TargetSpec::Xx3Pi2 => f.write_str("xx3pi2"),
            TargetSpec::Qft(n) => write!(f, "qft{n}"),
            TargetSpec::Ccnot => f.write_str("ccnot"),
            TargetSpec::Wsp3 => f.write_str("wsp3"),
            TargetSpec::Identity(n) => write!(f, "identity{n}"),
            TargetSpec::Layered { n, seed } => write!(f, "layered{n}:{seed}"),
            TargetSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

fn width_suffix(rest: &str, original: &str) -> Result<usize> {
    let n: usize = rest
        .parse()
        .map_err(|_| Error::UnknownTarget(original.to_string()))?;
    if n == 0 || n > 12 {
        return Err(Error::UnknownTarget(original.to_string()));
    }
    Ok(n)
}

impl FromStr for TargetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = s.trim();
        let lower = raw.to_ascii_lowercase();
        let spec = match lower.as_str() {
            "cs" => TargetSpec::Cs,
            "ch" => TargetSpec::Ch,
            "cz" => TargetSpec::Cz,
            "xx3pi2" | "xx" => TargetSpec::Xx3Pi2,
            "ccnot" | "toffoli" => TargetSpec::Ccnot,
            "wsp3" => TargetSpec::Wsp3,
            "identity" => TargetSpec::Identity(1),
            _ => {
                if let Some(rest) = lower.strip_prefix("qft") {
                    TargetSpec::Qft(width_suffix(rest, raw)?)
                } else if let Some(rest) = lower.strip_prefix("identity") {
                    TargetSpec::Identity(width_suffix(rest, raw)?)
                } else if let Some(rest) = lower.strip_prefix("layered") {
                    let (w, seed) = match rest.split_once(':') {
                        Some((w, s)) => (
                            w,
                            s.parse()
                                .map_err(|_| Error::UnknownTarget(raw.to_string()))?,
                        ),
                        None => (rest, 0),
                    };
                    TargetSpec::Layered {
                        n: width_suffix(w, raw)?,
                        seed,
                    }
                } else if lower.ends_with(".json") || raw.contains('/') {
                    TargetSpec::File(PathBuf::from(raw))
                } else {
                    return Err(Error::UnknownTarget(raw.to_string()));
                }
            }
        };
        Ok(spec)
    }
}

impl TryFrom<String> for TargetSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TargetSpec> for String {
    fn from(t: TargetSpec) -> String {
        t.to_string()
    }
}

fn diag<T: Real>(n: usize, entries: &[Complex<T>]) -> Unitary<T> {
    let d = 1usize << n;
    let mut data = vec![Complex::new(T::zero(), T::zero()); d * d];
    for (k, &z) in entries.iter().enumerate() {
        data[k * d + k] = z;
    }
    Unitary::from_raw(n, data)
}

/// Resolves a target to its matrix.
pub fn target_unitary<T: Real>(spec: &TargetSpec) -> Result<Unitary<T>> {
    let one = Complex::new(T::one(), T::zero());
    let r = T::one() / T::lit(2.0).sqrt();
    let u = match spec {
        TargetSpec::Cs => diag(2, &[one, one, one, Complex::new(T::zero(), T::one())]),
        TargetSpec::Cz => diag(2, &[one, one, one, -one]),
        TargetSpec::Ch => {
            let z = Complex::new(T::zero(), T::zero());
            let rr = Complex::new(r, T::zero());
            let local = Unitary::from_raw(
                2,
                vec![
                    one, z, z, z, //
                    z, one, z, z, //
                    z, z, rr, rr, //
                    z, z, rr, -rr,
                ],
            );
            embed(&local, &[0, 1], 2)?
        }
        TargetSpec::Xx3Pi2 => {
            // exp(-i a X(x)X) = cos a I - i sin a X(x)X, a = 3 pi / 4
            let a = T::lit(3.0) * T::FRAC_PI_4();
            let cz = Complex::new(a.cos(), T::zero());
            let sz = Complex::new(T::zero(), -a.sin());
            let z = Complex::new(T::zero(), T::zero());
            Unitary::from_raw(
                2,
                vec![
                    cz, z, z, sz, //
                    z, cz, sz, z, //
                    z, sz, cz, z, //
                    sz, z, z, cz,
                ],
            )
        }
        TargetSpec::Qft(n) => {
            let d = 1usize << n;
            let norm = T::one() / T::lit(d as f64).sqrt();
            let mut data = Vec::with_capacity(d * d);
            for j in 0..d {
                for k in 0..d {
                    let phase = T::TAU() * T::lit(((j * k) % d) as f64) / T::lit(d as f64);
                    data.push(Complex::from_polar(norm, phase));
                }
            }
            Unitary::from_raw(*n, data)
        }
        TargetSpec::Ccnot => {
            let mut data = Unitary::<T>::identity(3).into_vec();
            for (a, b) in [(3, 7), (7, 3)] {
                data[a * 8 + a] = Complex::new(T::zero(), T::zero());
                data[a * 8 + b] = one;
            }
            Unitary::from_raw(3, data)
        }
        TargetSpec::Wsp3 => circuit_unitary(&TargetSpec::wsp3_circuit())?,
        TargetSpec::Identity(n) => Unitary::identity(*n),
        TargetSpec::Layered { n, seed } => circuit_unitary(&TargetSpec::layered_circuit(*n, *seed))?,
        TargetSpec::File(path) => {
            let text = std::fs::read_to_string(path)?;
            Unitary::from_json(&text)?
        }
    };
    Ok(u)
}

/// `gate_matrix` of a CNOT embedded on the full register.
#[cfg(test)]
pub(crate) fn cnot_on<T: Real>(c: usize, t: usize, n: usize) -> Unitary<T> {
    embed(&gate_matrix(GateId::Cnot, &[], 2).unwrap(), &[c, t], n).unwrap()
}
