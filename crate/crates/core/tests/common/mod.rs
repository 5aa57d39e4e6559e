//! Dense-matrix oracle written without the crate's own kernels.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::Rng;
use vqc_core::Unitary;

#[derive(Clone, Debug)]
pub struct Mat {
    pub d: usize,
    pub a: Vec<C>,
}

impl Mat {
    pub fn eye(d: usize) -> Mat {
        let mut a = vec![C::new(0.0, 0.0); d * d];
        for i in 0..d {
            a[i * d + i] = C::new(1.0, 0.0);
        }
        Mat { d, a }
    }

    pub fn from2(e: [[C; 2]; 2]) -> Mat {
        Mat {
            d: 2,
            a: vec![e[0][0], e[0][1], e[1][0], e[1][1]],
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let d = self.d;
        let mut a = vec![C::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let x = self.a[i * d + k];
                for j in 0..d {
                    a[i * d + j] += x * o.a[k * d + j];
                }
            }
        }
        Mat { d, a }
    }

    /// `self` on the high bits, `low` on the low bits.
    pub fn kron(&self, low: &Mat) -> Mat {
        let d = self.d * low.d;
        let mut a = vec![C::new(0.0, 0.0); d * d];
        for i in 0..self.d {
            for j in 0..self.d {
                for k in 0..low.d {
                    for l in 0..low.d {
                        a[(i * low.d + k) * d + j * low.d + l] =
                            self.a[i * self.d + j] * low.a[k * low.d + l];
                    }
                }
            }
        }
        Mat { d, a }
    }

    pub fn max_diff(&self, u: &Unitary<f64>) -> f64 {
        self.a
            .iter()
            .zip(u.as_slice())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_unitary(&self) -> Unitary<f64> {
        Unitary::from_rows(self.d.trailing_zeros() as usize, self.a.clone()).unwrap()
    }
}

pub fn rz(t: f64) -> Mat {
    let z = C::new(0.0, 0.0);
    Mat::from2([[C::from_polar(1.0, -t / 2.0), z], [z, C::from_polar(1.0, t / 2.0)]])
}

pub fn ry(t: f64) -> Mat {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    Mat::from2([[C::new(c, 0.0), C::new(-s, 0.0)], [C::new(s, 0.0), C::new(c, 0.0)]])
}

pub fn rx90() -> Mat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Mat::from2([[C::new(h, 0.0), C::new(0.0, -h)], [C::new(0.0, -h), C::new(h, 0.0)]])
}

/// `g` on qubit `q` of an `n`-qubit register, built as a Kronecker chain.
pub fn on_qubit(g: &Mat, q: usize, n: usize) -> Mat {
    let id = Mat::eye(2);
    (0..n)
        .rev()
        .fold(Mat::eye(1), |acc, k| acc.kron(if k == q { g } else { &id }))
}

/// CNOT from its truth table on basis states.
pub fn cnot(c: usize, t: usize, n: usize) -> Mat {
    let d = 1 << n;
    let mut a = vec![C::new(0.0, 0.0); d * d];
    for x in 0..d {
        let y = if (x >> c) & 1 == 1 { x ^ (1 << t) } else { x };
        a[y * d + x] = C::new(1.0, 0.0);
    }
    Mat { d, a }
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> Unitary<f64> {
    let d = 1 << n;
    let mut cols: Vec<Vec<C>> = Vec::with_capacity(d);
    for _ in 0..d {
        let mut v: Vec<C> = (0..d).map(|_| C::new(gaussian(rng), gaussian(rng))).collect();
        for u in &cols {
            let dot: C = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    let mut a = vec![C::new(0.0, 0.0); d * d];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            a[i * d + j] = *x;
        }
    }
    Unitary::from_rows(n, a).unwrap()
}
