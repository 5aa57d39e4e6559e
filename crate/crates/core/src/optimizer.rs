//! Angle fitting for a fixed circuit structure: parameter-shift gradients
//! inside gradient descent with random restarts.
//!
//! A step that raises the cost is rejected and the step size halved; an
//! accepted step doubles it (up to 32x the configured size). The recorded
//! cost therefore never increases within a descent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Unitary};
use crate::cost::{CostEvaluator, CostKind, CostValue};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Starting point of each descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitStrategy {
    /// Every angle uniform in `[0, 2 pi)`.
    #[serde(rename = "RANDOM_UNIFORM_0_2PI")]
    RandomUniform,
    /// First restart from all-zero angles, later restarts uniform in `[0, 2 pi)`.
    #[serde(rename = "ZEROS")]
    Zeros,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerSettings {
    pub step_size: f64,
    /// Gradient evaluations per descent.
    pub max_iterations: usize,
    /// A descent stops once an accepted step improves the cost by less than this.
    pub tolerance: f64,
    pub restarts: usize,
    pub init: InitStrategy,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            step_size: 0.1,
            max_iterations: 500,
            tolerance: 1e-8,
            restarts: 4,
            init: InitStrategy::RandomUniform,
        }
    }
}

impl OptimizerSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_size > 0.0) || !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(
                "step_size and tolerance must be positive".into(),
            ));
        }
        if self.restarts == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "restarts and max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Best result over all restarts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct OptimizationOutcome<T> {
    pub theta: Vec<T>,
    pub cost: CostValue<T>,
    pub iterations_used: usize,
    pub restart_index: usize,
}

/// Cap on the step after repeated doubling, as a multiple of `step_size`.
const MAX_STEP_GROWTH: f64 = 32.0;

struct Objective<'a, T> {
    structure: &'a Circuit<T>,
    eval: CostEvaluator<T>,
}

impl<'a, T: Real> Objective<'a, T> {
    fn new(structure: &'a Circuit<T>, target: &Unitary<T>, kind: CostKind) -> Result<Self> {
        structure.validate()?;
        if structure.n != target.n() {
            return Err(Error::Dimension {
                expected: target.dim(),
                got: 1 << structure.n,
            });
        }
        Ok(Objective {
            structure,
            eval: CostEvaluator::new(target, kind),
        })
    }

    fn cost(&mut self, theta: &[T]) -> Result<T> {
        Ok(self.eval.eval(self.structure, theta)?.value())
    }

    /// `g_l = (C(theta + pi/2 e_l) - C(theta - pi/2 e_l)) / 2`; exactly `2P` evaluations.
    fn gradient(&mut self, theta: &mut [T], grad: &mut [T]) -> Result<()> {
        let shift = T::FRAC_PI_2();
        let half = T::lit(0.5);
        for l in 0..theta.len() {
            let orig = theta[l];
            theta[l] = orig + shift;
            let plus = self.cost(theta)?;
            theta[l] = orig - shift;
            let minus = self.cost(theta)?;
            theta[l] = orig;
            grad[l] = half * (plus - minus);
        }
        Ok(())
    }

    fn descend(&mut self, mut theta: Vec<T>, settings: &OptimizerSettings) -> Result<(Vec<T>, T, usize)> {
        let mut cost = self.cost(&theta)?;
        let base = T::lit(settings.step_size);
        let mut step = base;
        let min_step = base * T::lit(1e-6);
        let max_step = base * T::lit(MAX_STEP_GROWTH);
        let tol = T::lit(settings.tolerance);
        let mut grad = vec![T::zero(); theta.len()];
        let mut trial = theta.clone();
        let mut iterations = 0;
        'outer: while iterations < settings.max_iterations {
            self.gradient(&mut theta, &mut grad)?;
            iterations += 1;
            if grad.iter().all(|g| *g == T::zero()) {
                break;
            }
            let accepted = loop {
                for ((t, &x), &g) in trial.iter_mut().zip(&theta).zip(&grad) {
                    *t = x - step * g;
                }
                let c = self.cost(&trial)?;
                if c <= cost {
                    break c;
                }
                step = step * T::lit(0.5);
                if step < min_step {
                    break 'outer;
                }
            };
            let improvement = cost - accepted;
            std::mem::swap(&mut theta, &mut trial);
            cost = accepted;
            step = (step * T::lit(2.0)).min(max_step);
            if improvement < tol {
                break;
            }
        }
        Ok((theta, cost, iterations))
    }
}

/// Parameter-shift gradient of the cost of `structure` at `theta`.
pub fn shift_gradient<T: Real>(
    structure: &Circuit<T>,
    target: &Unitary<T>,
    kind: CostKind,
    theta: &[T],
) -> Result<Vec<T>> {
    structure.check_param_len(theta)?;
    let mut obj = Objective::new(structure, target, kind)?;
    let mut theta = theta.to_vec();
    let mut grad = vec![T::zero(); theta.len()];
    obj.gradient(&mut theta, &mut grad)?;
    Ok(grad)
}

/// Fits the angles of `structure` to `target`.
///
/// Runs `settings.restarts` independent descents, each seeded from one
/// draw of `rng`, and keeps the lowest cost (earliest restart on ties).
/// The returned cost is the evaluation at the returned angles.
pub fn optimize<T: Real, R: Rng + ?Sized>(
    structure: &Circuit<T>,
    target: &Unitary<T>,
    kind: CostKind,
    settings: &OptimizerSettings,
    rng: &mut R,
) -> Result<OptimizationOutcome<T>> {
    settings.validate()?;
    let mut obj = Objective::new(structure, target, kind)?;
    let p = structure.param_count();
    if p == 0 {
        return Ok(OptimizationOutcome {
            theta: Vec::new(),
            cost: CostValue::new(obj.cost(&[])?)?,
            iterations_used: 0,
            restart_index: 0,
        });
    }
    let seeds: Vec<u64> = (0..settings.restarts).map(|_| rng.gen()).collect();
    let mut best: Option<OptimizationOutcome<T>> = None;
    for (restart, seed) in seeds.into_iter().enumerate() {
        let mut local = ChaCha8Rng::seed_from_u64(seed);
        let start: Vec<T> = if settings.init == InitStrategy::Zeros && restart == 0 {
            vec![T::zero(); p]
        } else {
            (0..p)
                .map(|_| T::lit(local.gen_range(0.0..std::f64::consts::TAU)))
                .collect()
        };
        let (theta, cost, iterations_used) = obj.descend(start, settings)?;
        let cost = CostValue::new(cost)?;
        if best.as_ref().is_none_or(|b| cost.value() < b.cost.value()) {
            best = Some(OptimizationOutcome {
                theta,
                cost,
                iterations_used,
                restart_index: restart,
            });
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Wraps an angle into `[0, 2 pi)` for display.
pub fn wrap_angle<T: Real>(x: T) -> T {
    let tau = T::TAU();
    let r = x % tau;
    if r < T::zero() {
        r + tau
    } else {
        r
    }
}
