use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense `d x d` complex matrix, `d = 2^n`, stored row-major.
///
/// Basis index `k` encodes `|q_{n-1} ... q_0>` with qubit 0 as the least
/// significant bit. Every value built through the public constructors
/// satisfies `max |U^dagger U - I| < T::unitary_tolerance()`.
#[derive(Clone, PartialEq)]
pub struct Unitary<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Unitary<T> {
    pub fn identity(n: usize) -> Self {
        let d = 1usize << n;
        let mut data = vec![Complex::new(T::zero(), T::zero()); d * d];
        for k in 0..d {
            data[k * d + k] = Complex::new(T::one(), T::zero());
        }
        Unitary { n, data }
    }

    /// Checked constructor from row-major entries.
    pub fn from_rows(n: usize, data: Vec<Complex<T>>) -> Result<Self> {
        let d = 1usize << n;
        if data.len() != d * d {
            return Err(Error::Dimension {
                expected: d * d,
                got: data.len(),
            });
        }
        let u = Unitary { n, data };
        let dev = u.unitarity_deviation();
        if !(dev < T::unitary_tolerance()) {
            return Err(Error::NotUnitary {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(u)
    }

    /// Builds from separate real and imaginary `d x d` parts.
    pub fn from_parts(n: usize, re: &[Vec<T>], im: &[Vec<T>]) -> Result<Self> {
        let d = 1usize << n;
        if re.len() != d || im.len() != d {
            return Err(Error::Dimension {
                expected: d,
                got: re.len().min(im.len()),
            });
        }
        let mut data = Vec::with_capacity(d * d);
        for (rr, ir) in re.iter().zip(im) {
            if rr.len() != d || ir.len() != d {
                return Err(Error::Dimension {
                    expected: d,
                    got: rr.len().min(ir.len()),
                });
            }
            data.extend(rr.iter().zip(ir).map(|(&a, &b)| Complex::new(a, b)));
        }
        Self::from_rows(n, data)
    }

    /// Entries produced by products of unitaries; unitarity holds by construction.
    pub(crate) fn from_raw(n: usize, data: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(data.len(), 1 << (2 * n));
        Unitary { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim() + col]
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.data
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Unitary<T>) -> Result<Unitary<T>> {
        self.check_same_dim(rhs)?;
        let d = self.dim();
        let mut out = vec![Complex::new(T::zero(), T::zero()); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let row = &rhs.data[k * d..(k + 1) * d];
                for (o, &b) in out[i * d..(i + 1) * d].iter_mut().zip(row) {
                    *o = *o + a * b;
                }
            }
        }
        Ok(Unitary::from_raw(self.n, out))
    }

    pub fn adjoint(&self) -> Unitary<T> {
        let d = self.dim();
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                out.push(self.data[j * d + i].conj());
            }
        }
        Unitary::from_raw(self.n, out)
    }

    /// Entrywise complex conjugate `U*`.
    pub fn conj(&self) -> Unitary<T> {
        Unitary::from_raw(self.n, self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn trace(&self) -> Complex<T> {
        let d = self.dim();
        (0..d).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
            acc + self.data[k * d + k]
        })
    }

    /// `e^{i phi} U`.
    pub fn with_phase(&self, phi: T) -> Unitary<T> {
        let p = Complex::from_polar(T::one(), phi);
        Unitary::from_raw(self.n, self.data.iter().map(|&z| z * p).collect())
    }

    /// Kronecker product `self (x) low`; `low` occupies the low-order qubits.
    pub fn kron(&self, low: &Unitary<T>) -> Unitary<T> {
        let (da, db) = (self.dim(), low.dim());
        let d = da * db;
        let mut out = vec![Complex::new(T::zero(), T::zero()); d * d];
        for i in 0..da {
            for j in 0..da {
                let a = self.data[i * da + j];
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k) * d + (j * db + l)] = a * low.data[k * db + l];
                    }
                }
            }
        }
        Unitary::from_raw(self.n + low.n, out)
    }

    /// `max |U^dagger U - I|` over all entries.
    pub fn unitarity_deviation(&self) -> T {
        let d = self.dim();
        let mut worst = T::zero();
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..d {
                    acc = acc + self.data[k * d + i].conj() * self.data[k * d + j];
                }
                if i == j {
                    acc.re = acc.re - T::one();
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// `max |self - other|` entrywise.
    pub fn max_abs_diff(&self, other: &Unitary<T>) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub(crate) fn check_same_dim(&self, other: &Unitary<T>) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    /// Applies this matrix to a state vector.
    pub fn apply(&self, state: &[Complex<T>]) -> Vec<Complex<T>> {
        let d = self.dim();
        assert_eq!(state.len(), d, "state length must equal matrix dimension");
        (0..d)
            .map(|i| {
                self.data[i * d..(i + 1) * d]
                    .iter()
                    .zip(state)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }
}

impl<T: Real> fmt::Debug for Unitary<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        writeln!(f, "Unitary(n={}) [", self.n)?;
        for i in 0..d {
            write!(f, "  ")?;
            for j in 0..d {
                let z = self.data[i * d + j];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// On-disk form of a unitary: `{"n": int, "re": [[...]], "im": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitaryFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl<T: Real> Unitary<T> {
    pub fn to_file(&self) -> UnitaryFile {
        let d = self.dim();
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let re = (0..d)
            .map(|i| (0..d).map(|j| f(self.get(i, j).re)).collect())
            .collect();
        let im = (0..d)
            .map(|i| (0..d).map(|j| f(self.get(i, j).im)).collect())
            .collect();
        UnitaryFile { n: self.n, re, im }
    }

    pub fn from_file(file: &UnitaryFile) -> Result<Self> {
        let conv = |rows: &[Vec<f64>]| -> Vec<Vec<T>> {
            rows.iter()
                .map(|r| r.iter().map(|&x| T::lit(x)).collect())
                .collect()
        };
        Self::from_parts(file.n, &conv(&file.re), &conv(&file.im))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: UnitaryFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }
}
