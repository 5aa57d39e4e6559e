use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::SearchConfig;
use super::mdp::{ActionId, ActionSpace, AgentState};
use super::policy::select_action;
use super::qtable::{QSnapshot, QTablePair};
use super::replay::ReplayEntry;
use super::reward::terminal_reward;
use super::update::double_q_update;
use crate::circuit::{target_unitary, Circuit, Unitary};
use crate::cost::CostValue;
use crate::error::{Error, Result};
use crate::optimizer::optimize;

/// One generated circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub episode: usize,
    pub epsilon: f64,
    pub structure: Vec<ActionId>,
    pub cost: f64,
    pub reward: f64,
    pub n_cnot: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    /// Best circuit with its optimized angles.
    pub best_circuit: Circuit<f64>,
    pub best_cost: CostValue<f64>,
    pub best_reward: f64,
    pub episode_log: Vec<EpisodeRecord>,
    pub replay: Vec<ReplayEntry>,
    pub q_snapshot: QSnapshot,
    /// Default table value from the random-structure average.
    pub q0: f64,
    pub episodes_run: usize,
    pub stopped_early: bool,
}

/// Scores structures against the target.
struct Environment<'a> {
    config: &'a SearchConfig,
    target: Unitary<f64>,
    space: ActionSpace,
}

struct Scored {
    circuit: Circuit<f64>,
    cost: CostValue<f64>,
    reward: f64,
}

impl<'a> Environment<'a> {
    fn new(config: &'a SearchConfig) -> Result<Self> {
        config.validate()?;
        let target = target_unitary::<f64>(&config.target)?;
        if target.n() != config.topology.n {
            return Err(Error::InvalidConfig(format!(
                "target acts on {} qubits but topology has {}",
                target.n(),
                config.topology.n
            )));
        }
        let space = ActionSpace::new(&config.alphabet, &config.topology, config.max_gates);
        if space.all().is_empty() {
            return Err(Error::InvalidConfig(
                "no gate in the alphabet fits the topology".into(),
            ));
        }
        Ok(Environment {
            config,
            target,
            space,
        })
    }

    /// Fits the angles of `actions`; the optimizer draws its restart seeds from `rng`.
    fn score<R: Rng + ?Sized>(&self, actions: &[ActionId], rng: &mut R) -> Result<Scored> {
        let structure = self.space.structure(actions);
        let out = optimize(
            &structure,
            &self.target,
            self.config.cost_kind,
            &self.config.optimizer,
            rng,
        )?;
        let circuit = structure.with_params(&out.theta)?;
        let reward = terminal_reward(out.cost.value(), &circuit, self.config.lambda);
        Ok(Scored {
            circuit,
            cost: out.cost,
            reward,
        })
    }

    fn random_structure<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<ActionId> {
        let all = self.space.all();
        (0..self.config.max_gates)
            .map(|_| all[rng.gen_range(0..all.len())])
            .collect()
    }

    fn init_q<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        let samples = self.config.q_init_samples;
        let mut total = 0.0;
        for _ in 0..samples {
            let s = self.random_structure(rng);
            total += self.score(&s, rng)?.reward;
        }
        Ok(total / samples as f64)
    }
}

/// Mean terminal reward of `q_init_samples` uniformly random `L`-gate
/// structures, each with optimized angles.
pub fn init_q<R: Rng + ?Sized>(config: &SearchConfig, rng: &mut R) -> Result<f64> {
    Environment::new(config)?.init_q(rng)
}

/// Runs the full search; see [`run_search_with`].
pub fn run_search(config: &SearchConfig) -> Result<SearchResult> {
    run_search_with(config, |_| {})
}

/// Double Q-learning structure search.
///
/// Per episode: build an `L`-gate structure epsilon-greedily, fit its
/// angles, score it, store it in replay memory, then replay `K` entries
/// sampled uniformly with replacement through [`double_q_update`].
/// `observer` sees every episode record as it is produced. Deterministic
/// for a given config.
pub fn run_search_with<F: FnMut(&EpisodeRecord)>(
    config: &SearchConfig,
    mut observer: F,
) -> Result<SearchResult> {
    let env = Environment::new(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let q0 = env.init_q(&mut rng)?;
    let mut q = QTablePair::new(q0);
    let mut replay: Vec<ReplayEntry> = Vec::with_capacity(config.schedule.total_episodes());
    let mut log = Vec::with_capacity(config.schedule.total_episodes());
    let mut best: Option<(Circuit<f64>, CostValue<f64>, f64)> = None;
    let mut stopped_early = false;
    let mut episode = 0usize;

    'stages: for stage in &config.schedule.stages {
        for _ in 0..stage.episodes {
            let mut s = AgentState::Start;
            let mut actions = Vec::with_capacity(config.max_gates);
            while !env.space.actions(&s)?.is_empty() {
                let a = select_action(&s, &env.space, &q, stage.epsilon, &mut rng)?;
                actions.push(a);
                s = s.next(a)?;
            }
            let scored = env.score(&actions, &mut rng)?;
            let record = EpisodeRecord {
                episode,
                epsilon: stage.epsilon,
                structure: actions.clone(),
                cost: scored.cost.value(),
                reward: scored.reward,
                n_cnot: scored.circuit.cnot_count(),
            };
            observer(&record);
            log.push(record);
            replay.push(ReplayEntry::from_actions(&actions, scored.reward)?);
            if best.as_ref().is_none_or(|b| scored.reward > b.2) {
                best = Some((scored.circuit, scored.cost, scored.reward));
            }
            for _ in 0..config.batch_size {
                let entry = &replay[rng.gen_range(0..replay.len())];
                double_q_update(
                    &mut q,
                    entry,
                    config.alpha,
                    config.gamma,
                    &env.space,
                    config.reward_shaping,
                    &mut rng,
                )?;
            }
            episode += 1;
            if let (Some(limit), Some(b)) = (config.early_stop_cost, best.as_ref()) {
                if b.1.value() < limit {
                    stopped_early = true;
                    break 'stages;
                }
            }
        }
    }

    let (best_circuit, best_cost, best_reward) = best.ok_or_else(|| {
        Error::InvalidConfig("schedule produced no episodes".into())
    })?;
    Ok(SearchResult {
        best_circuit,
        best_cost,
        best_reward,
        episode_log: log,
        replay,
        q_snapshot: q.snapshot(),
        q0,
        episodes_run: episode,
        stopped_early,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{GateId, TargetSpec};
    use crate::rl::config::{alphabet_preset, EpsilonSchedule};

    fn identity_config() -> SearchConfig {
        let mut c = SearchConfig::new(TargetSpec::Identity(1), 1, vec![GateId::Rz], 1);
        c.schedule = "1.0:3".parse().unwrap();
        c.q_init_samples = 4;
        c
    }

    #[test]
    fn identity_is_found_in_one_episode() {
        let r = run_search(&identity_config()).unwrap();
        assert!(r.best_cost.value() < 1e-8);
        assert!(r.episode_log[0].cost < 1e-8);
        assert!((r.q0 - 1.0).abs() < 1e-8);
        assert_eq!(r.replay.len(), 3);
    }

    #[test]
    fn single_sample_q0_is_that_reward() {
        let mut c = SearchConfig::new(TargetSpec::Cz, 2, alphabet_preset("ibm2q").unwrap(), 3);
        c.q_init_samples = 1;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q0 = init_q(&c, &mut rng).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let env = Environment::new(&c).unwrap();
        let s = env.random_structure(&mut rng);
        assert_eq!(env.score(&s, &mut rng).unwrap().reward, q0);
    }

    #[test]
    fn small_run_is_reproducible_and_consistent() {
        let mut c = SearchConfig::new(TargetSpec::Cz, 2, alphabet_preset("ibm2q").unwrap(), 3);
        c.schedule = EpsilonSchedule::table1().scaled_down(50);
        c.q_init_samples = 5;
        c.seed = 11;
        let a = run_search(&c).unwrap();
        let b = run_search(&c).unwrap();
        assert_eq!(a.best_cost.value().to_bits(), b.best_cost.value().to_bits());
        assert_eq!(a.episode_log, b.episode_log);
        assert_eq!(a.q_snapshot, b.q_snapshot);
        let max = a.episode_log.iter().map(|e| e.reward).fold(f64::MIN, f64::max);
        assert_eq!(a.best_reward, max);
        assert_eq!(a.replay.len(), a.episodes_run);
        for e in &a.replay {
            e.validate(3).unwrap();
        }
    }

    #[test]
    fn mismatched_topology_is_rejected() {
        let mut c = identity_config();
        c.topology = crate::circuit::Topology::full(2);
        assert!(matches!(run_search(&c), Err(Error::InvalidConfig(_))));
    }
}
