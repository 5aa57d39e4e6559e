//! In-place left multiplication of a row-major `2^n x cols` buffer by gates.

use num_complex::Complex;

use super::gate::{rx_half_pi_entries, ry_entries, rz_entries, GateId, GatePlacement, Qubits};
use crate::scalar::Real;

#[inline]
fn apply_1q<T: Real>(m: &mut [Complex<T>], n: usize, q: usize, g: &[Complex<T>; 4]) {
    let d = 1usize << n;
    let cols = m.len() / d;
    let bit = 1usize << q;
    for r0 in (0..d).filter(|r| r & bit == 0) {
        let r1 = r0 | bit;
        let (lo, hi) = m.split_at_mut(r1 * cols);
        let row0 = &mut lo[r0 * cols..(r0 + 1) * cols];
        let row1 = &mut hi[..cols];
        for (a, b) in row0.iter_mut().zip(row1.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = g[0] * x + g[1] * y;
            *b = g[2] * x + g[3] * y;
        }
    }
}

#[inline]
fn apply_diag<T: Real>(m: &mut [Complex<T>], n: usize, q: usize, p0: Complex<T>, p1: Complex<T>) {
    let d = 1usize << n;
    let cols = m.len() / d;
    let bit = 1usize << q;
    for (r, row) in m.chunks_exact_mut(cols).enumerate() {
        let p = if r & bit == 0 { p0 } else { p1 };
        for z in row {
            *z = *z * p;
        }
    }
}

#[inline]
fn apply_cnot<T: Real>(m: &mut [Complex<T>], n: usize, control: usize, target: usize) {
    let d = 1usize << n;
    let cols = m.len() / d;
    let (cb, tb) = (1usize << control, 1usize << target);
    for r0 in (0..d).filter(|r| r & cb != 0 && r & tb == 0) {
        let r1 = r0 | tb;
        let (lo, hi) = m.split_at_mut(r1 * cols);
        lo[r0 * cols..(r0 + 1) * cols].swap_with_slice(&mut hi[..cols]);
    }
}

/// Applies `gate` with the given angles: `m <- G m`.
pub(crate) fn apply_gate<T: Real>(
    m: &mut [Complex<T>],
    n: usize,
    gate: GateId,
    qubits: Qubits,
    theta: &[T],
) {
    match gate {
        GateId::RxHalfPi => apply_1q(m, n, qubits.get(0), &rx_half_pi_entries()),
        GateId::Ry => apply_1q(m, n, qubits.get(0), &ry_entries(theta[0])),
        GateId::Rz => {
            let e = rz_entries(theta[0]);
            apply_diag(m, n, qubits.get(0), e[0], e[3]);
        }
        GateId::Cnot => apply_cnot(m, n, qubits.get(0), qubits.get(1)),
        GateId::RzBlock => {
            for (q, &t) in theta.iter().enumerate() {
                let e = rz_entries(t);
                apply_diag(m, n, q, e[0], e[3]);
            }
        }
        GateId::RyBlock => {
            for (q, &t) in theta.iter().enumerate() {
                apply_1q(m, n, q, &ry_entries(t));
            }
        }
        GateId::CnotAll | GateId::CnotEven | GateId::CnotOdd | GateId::CnotEvenBidirect => {
            for (c, t) in gate.block_cnot_pairs(n) {
                apply_cnot(m, n, c, t);
            }
        }
    }
}

pub(crate) fn apply_left<T: Real>(m: &mut [Complex<T>], n: usize, p: &GatePlacement<T>) {
    apply_gate(m, n, p.gate, p.qubits, &p.theta);
}
