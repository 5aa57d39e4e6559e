use num_complex::Complex;

use crate::circuit::Unitary;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default cap on the width `2n` of the simulated test register.
pub const DEFAULT_SIM_QUBIT_CAP: usize = 16;

/// Outcome probabilities of the simulated Hilbert-Schmidt test circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct HstProbabilities<T> {
    /// Probability that all `2n` qubits read zero.
    pub all_zeros: T,
    /// Entry `i`: probability that qubits `i` and `i + n` both read zero.
    pub local: Vec<T>,
}

impl<T: Real> HstProbabilities<T> {
    pub fn global_cost(&self) -> T {
        T::one() - self.all_zeros
    }

    pub fn local_cost(&self) -> T {
        T::one() - self.local.iter().copied().sum::<T>() / T::lit(self.local.len() as f64)
    }
}

/// Simulates the test circuit on `2n` qubits with the default size cap.
///
/// System A is qubits `0..n`, system B is qubits `n..2n`. Hadamards on A
/// and CNOTs `(i, i+n)` entangle the halves, `U` acts on A and `V*` on B,
/// then the entangler is undone and the register is read out.
pub fn hst_probability<T: Real>(u: &Unitary<T>, v: &Unitary<T>) -> Result<HstProbabilities<T>> {
    hst_probability_capped(u, v, DEFAULT_SIM_QUBIT_CAP)
}

pub fn hst_probability_capped<T: Real>(
    u: &Unitary<T>,
    v: &Unitary<T>,
    cap: usize,
) -> Result<HstProbabilities<T>> {
    u.check_same_dim(v)?;
    let n = u.n();
    if 2 * n > cap {
        return Err(Error::SizeLimit { qubits: 2 * n, cap });
    }
    let d = 1usize << n;
    let total = 2 * n;
    let mut psi = vec![Complex::new(T::zero(), T::zero()); d * d];
    psi[0] = Complex::new(T::one(), T::zero());

    for i in 0..n {
        hadamard(&mut psi, i);
    }
    for i in 0..n {
        cnot(&mut psi, i, i + n);
    }
    // U on A: amplitude index a + d*b, so each fixed b is a contiguous column of A
    let mut buf = vec![Complex::new(T::zero(), T::zero()); d];
    for b in 0..d {
        let chunk = &mut psi[b * d..(b + 1) * d];
        matvec(u, chunk, &mut buf);
        chunk.copy_from_slice(&buf);
    }
    // V* on B: stride-d gather per fixed a
    let v_conj = v.conj();
    let mut col = vec![Complex::new(T::zero(), T::zero()); d];
    for a in 0..d {
        for b in 0..d {
            col[b] = psi[a + d * b];
        }
        matvec(&v_conj, &mut col, &mut buf);
        for b in 0..d {
            psi[a + d * b] = buf[b];
        }
    }
    for i in 0..n {
        cnot(&mut psi, i, i + n);
    }
    for i in 0..n {
        hadamard(&mut psi, i);
    }

    let all_zeros = psi[0].norm_sqr();
    let local = (0..n)
        .map(|i| {
            let mask = (1usize << i) | (1usize << (i + n));
            (0..1usize << total)
                .filter(|k| k & mask == 0)
                .map(|k| psi[k].norm_sqr())
                .sum()
        })
        .collect();
    Ok(HstProbabilities { all_zeros, local })
}

fn matvec<T: Real>(m: &Unitary<T>, x: &mut [Complex<T>], out: &mut [Complex<T>]) {
    let d = m.dim();
    let data = m.as_slice();
    for (i, o) in out.iter_mut().enumerate() {
        *o = data[i * d..(i + 1) * d]
            .iter()
            .zip(x.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&a, &b)| acc + a * b);
    }
}

fn hadamard<T: Real>(psi: &mut [Complex<T>], q: usize) {
    let r = T::one() / T::lit(2.0).sqrt();
    let bit = 1usize << q;
    for k in (0..psi.len()).filter(|k| k & bit == 0) {
        let (a, b) = (psi[k], psi[k | bit]);
        psi[k] = (a + b) * r;
        psi[k | bit] = (a - b) * r;
    }
}

fn cnot<T: Real>(psi: &mut [Complex<T>], control: usize, target: usize) {
    let (cb, tb) = (1usize << control, 1usize << target);
    for k in (0..psi.len()).filter(|k| k & cb != 0 && k & tb == 0) {
        psi.swap(k, k | tb);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{target_unitary, TargetSpec};

    #[test]
    fn identical_unitaries_give_certain_zeros() {
        for name in ["cz", "qft3", "wsp3"] {
            let u = target_unitary::<f64>(&name.parse::<TargetSpec>().unwrap()).unwrap();
            let p = hst_probability(&u, &u).unwrap();
            assert!((p.all_zeros - 1.0).abs() < 1e-12);
            assert!(p.local.iter().all(|&x| (x - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn size_cap_enforced() {
        let u = Unitary::<f64>::identity(3);
        assert!(matches!(
            hst_probability_capped(&u, &u, 4),
            Err(Error::SizeLimit { qubits: 6, cap: 4 })
        ));
        assert!(hst_probability_capped(&u, &u, 6).is_ok());
    }

    #[test]
    fn dimension_mismatch() {
        let a = Unitary::<f64>::identity(1);
        let b = Unitary::<f64>::identity(2);
        assert!(matches!(hst_probability(&a, &b), Err(Error::Dimension { .. })));
    }
}
