use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::reward::RewardShaping;
use crate::circuit::{GateId, TargetSpec, Topology};
use crate::cost::CostKind;
use crate::error::{Error, Result};
use crate::optimizer::OptimizerSettings;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonStage {
    pub epsilon: f64,
    pub episodes: usize,
}

/// Staged exploration: `episodes` structures generated at each `epsilon`, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EpsilonSchedule {
    pub stages: Vec<EpsilonStage>,
}

const EPSILONS: [f64; 10] = [1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1];

impl EpsilonSchedule {
    pub fn new(stages: Vec<EpsilonStage>) -> Result<Self> {
        let s = EpsilonSchedule { stages };
        s.validate()?;
        Ok(s)
    }

    fn from_counts(counts: [usize; 10]) -> Self {
        EpsilonSchedule {
            stages: EPSILONS
                .iter()
                .zip(counts)
                .map(|(&epsilon, episodes)| EpsilonStage { epsilon, episodes })
                .collect(),
        }
    }

    /// Two-qubit schedule, 2700 episodes.
    pub fn table1() -> Self {
        Self::from_counts([1500, 100, 100, 100, 150, 150, 150, 150, 150, 150])
    }

    /// Three-qubit schedule, 5400 episodes.
    pub fn table3() -> Self {
        Self::from_counts([3000, 200, 200, 200, 300, 300, 300, 300, 300, 300])
    }

    /// Same epsilons with every count divided by `factor` (at least one each).
    pub fn scaled_down(&self, factor: usize) -> Self {
        EpsilonSchedule {
            stages: self
                .stages
                .iter()
                .map(|s| EpsilonStage {
                    epsilon: s.epsilon,
                    episodes: (s.episodes / factor.max(1)).max(1),
                })
                .collect(),
        }
    }

    /// `table1`, `table3`, or `eps:count,eps:count,...`.
    pub fn preset(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "table1" => Ok(Self::table1()),
            "table3" => Ok(Self::table3()),
            other => other.parse(),
        }
    }

    pub fn total_episodes(&self) -> usize {
        self.stages.iter().map(|s| s.episodes).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::InvalidConfig("schedule has no stages".into()));
        }
        if let Some(s) = self.stages.iter().find(|s| !(0.0..=1.0).contains(&s.epsilon)) {
            return Err(Error::InvalidConfig(format!(
                "epsilon {} outside [0, 1]",
                s.epsilon
            )));
        }
        if self.total_episodes() == 0 {
            return Err(Error::InvalidConfig("schedule has no episodes".into()));
        }
        Ok(())
    }
}

impl FromStr for EpsilonSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("bad schedule '{s}', expected eps:count,..."));
        let stages = s
            .split(',')
            .map(|part| {
                let (e, c) = part.trim().split_once(':').ok_or_else(bad)?;
                Ok(EpsilonStage {
                    epsilon: e.trim().parse().map_err(|_| bad())?,
                    episodes: c.trim().parse().map_err(|_| bad())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        EpsilonSchedule::new(stages)
    }
}

impl fmt::Display for EpsilonSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .stages
            .iter()
            .map(|s| format!("{}:{}", s.epsilon, s.episodes))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// `(alpha, gamma, K)` presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperPreset {
    /// alpha 0.02, gamma 0.9, K 128.
    SmallN,
    /// alpha 0.2, gamma 1, K 128.
    LargeN,
}

impl HyperPreset {
    pub fn values(self) -> (f64, f64, usize) {
        match self {
            HyperPreset::SmallN => (0.02, 0.9, 128),
            HyperPreset::LargeN => (0.2, 1.0, 128),
        }
    }

    pub fn for_width(n: usize) -> Self {
        if n <= 3 {
            HyperPreset::SmallN
        } else {
            HyperPreset::LargeN
        }
    }
}

/// Named gate alphabets, or a comma-separated list of gate names.
///
/// * `ibm2q`: `RX_HALF_PI, RZ, CNOT`
/// * `ibm3q`: `RZ, RY, CNOT`
/// * `blocks`: the six layer blocks
/// * `blocks_plus`: the blocks followed by `RZ, RY, CNOT`
/// * `rz_only`: `RZ`
pub fn alphabet_preset(name: &str) -> Result<Vec<GateId>> {
    use GateId::*;
    const BLOCKS: [GateId; 6] = [RzBlock, RyBlock, CnotAll, CnotEven, CnotOdd, CnotEvenBidirect];
    let list = match name.trim().to_ascii_lowercase().as_str() {
        "ibm2q" => vec![RxHalfPi, Rz, Cnot],
        "ibm3q" => vec![Rz, Ry, Cnot],
        "blocks" => BLOCKS.to_vec(),
        "blocks_plus" => {
            let mut v = BLOCKS.to_vec();
            v.extend([Rz, Ry, Cnot]);
            v
        }
        "rz_only" => vec![Rz],
        other => other
            .split(',')
            .map(|g| g.trim().parse::<GateId>())
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidConfig(format!("unknown alphabet '{name}'")))?,
    };
    Ok(list)
}

/// Everything that determines a search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub target: TargetSpec,
    pub alphabet: Vec<GateId>,
    pub topology: Topology,
    /// Gates per generated circuit (`L`).
    pub max_gates: usize,
    pub alpha: f64,
    pub gamma: f64,
    /// Replay entries sampled per episode (`K`).
    pub batch_size: usize,
    /// CNOT-penalty weight; 0 disables.
    pub lambda: f64,
    pub schedule: EpsilonSchedule,
    pub optimizer: OptimizerSettings,
    pub cost_kind: CostKind,
    pub q_init_samples: usize,
    pub seed: u64,
    #[serde(default)]
    pub reward_shaping: RewardShaping,
    /// Stop once the best cost drops below this.
    #[serde(default)]
    pub early_stop_cost: Option<f64>,
}

pub const DEFAULT_Q_INIT_SAMPLES: usize = 100;

impl SearchConfig {
    /// Defaults keyed on the target width: full topology, the matching
    /// hyperparameter preset, `table1` for `n <= 2` and `table3` above,
    /// global cost for `n <= 3` and local above.
    pub fn new(target: TargetSpec, n: usize, alphabet: Vec<GateId>, max_gates: usize) -> Self {
        let (alpha, gamma, batch_size) = HyperPreset::for_width(n).values();
        SearchConfig {
            target,
            alphabet,
            topology: Topology::full(n),
            max_gates,
            alpha,
            gamma,
            batch_size,
            lambda: 0.0,
            schedule: if n <= 2 {
                EpsilonSchedule::table1()
            } else {
                EpsilonSchedule::table3()
            },
            optimizer: OptimizerSettings::default(),
            cost_kind: CostKind::default_for(n),
            q_init_samples: DEFAULT_Q_INIT_SAMPLES,
            seed: 0,
            reward_shaping: RewardShaping::default(),
            early_stop_cost: None,
        }
    }

    pub fn with_hyper(mut self, preset: HyperPreset) -> Self {
        let (a, g, k) = preset.values();
        self.alpha = a;
        self.gamma = g;
        self.batch_size = k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad(format!("alpha {} outside [0, 1]", self.alpha));
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return bad(format!("gamma {} outside [0, 1]", self.gamma));
        }
        if self.batch_size == 0 {
            return bad("batch_size must be at least 1".into());
        }
        if self.max_gates == 0 {
            return bad("max_gates must be at least 1".into());
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return bad(format!("lambda {} must be a finite non-negative number", self.lambda));
        }
        if self.q_init_samples == 0 {
            return bad("q_init_samples must be at least 1".into());
        }
        if self.alphabet.is_empty() {
            return bad("empty alphabet".into());
        }
        if let Some(c) = self.early_stop_cost {
            if !(c > 0.0) {
                return bad(format!("early_stop_cost {c} must be positive"));
            }
        }
        self.topology.validate()?;
        self.schedule.validate()?;
        self.optimizer.validate()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_presets() {
        assert_eq!(EpsilonSchedule::table1().total_episodes(), 2700);
        assert_eq!(EpsilonSchedule::table3().total_episodes(), 5400);
        assert_eq!(EpsilonSchedule::table3().stages[9].epsilon, 0.1);
        let s: EpsilonSchedule = "1.0:5, 0.5:2".parse().unwrap();
        assert_eq!(s.total_episodes(), 7);
        assert_eq!(s.to_string().parse::<EpsilonSchedule>().unwrap(), s);
        assert!("1.5:3".parse::<EpsilonSchedule>().is_err());
        assert!("".parse::<EpsilonSchedule>().is_err());
        assert!(EpsilonSchedule::new(vec![]).is_err());
    }

    #[test]
    fn alphabets() {
        assert_eq!(alphabet_preset("ibm2q").unwrap().len(), 3);
        assert_eq!(alphabet_preset("blocks").unwrap().len(), 6);
        assert_eq!(alphabet_preset("rz,cnot").unwrap(), vec![GateId::Rz, GateId::Cnot]);
        assert!(alphabet_preset("bogus").is_err());
    }

    #[test]
    fn config_validation_and_serde() {
        let c = SearchConfig::new(TargetSpec::Cz, 2, alphabet_preset("ibm2q").unwrap(), 5);
        c.validate().unwrap();
        assert_eq!((c.alpha, c.gamma, c.batch_size), (0.02, 0.9, 128));
        let text = serde_json::to_string(&c).unwrap();
        let back: SearchConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);

        let mut bad = c.clone();
        bad.alpha = 1.5;
        assert!(bad.validate().is_err());
        let mut bad = c.clone();
        bad.batch_size = 0;
        assert!(bad.validate().is_err());
        let mut bad = c;
        bad.lambda = -0.1;
        assert!(bad.validate().is_err());

        let big = SearchConfig::new(TargetSpec::Layered { n: 4, seed: 0 }, 4, vec![GateId::RzBlock], 4);
        assert_eq!((big.alpha, big.gamma), (0.2, 1.0));
        assert_eq!(big.cost_kind, CostKind::Local);
    }
}
