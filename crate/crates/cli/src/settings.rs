//! Resolution of a [`SearchConfig`] from defaults, a settings file and flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use vqc_core::circuit::{target_unitary, GateId, TargetSpec, Topology};
use vqc_core::rl::{alphabet_preset, EpsilonSchedule, EpsilonStage, HyperPreset, RewardShaping, SearchConfig};
use vqc_core::{CostKind, InitStrategy};

use crate::args::{CostArg, HyperArg, SearchArgs, ShapingArg};
use crate::error::{CliError, CliResult};

/// Settings file contents (TOML). Every key is optional and named after
/// the [`SearchConfig`] field it sets.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileSettings {
    pub target: Option<String>,
    pub alphabet: Option<AlphabetField>,
    pub topology: Option<TopologyField>,
    pub max_gates: Option<usize>,
    pub schedule: Option<ScheduleField>,
    pub hyper: Option<HyperPreset>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub batch_size: Option<usize>,
    pub lambda: Option<f64>,
    pub cost_kind: Option<CostKind>,
    pub q_init_samples: Option<usize>,
    pub seed: Option<u64>,
    pub reward_shaping: Option<RewardShaping>,
    pub early_stop_cost: Option<f64>,
    pub optimizer: Option<OptimizerFields>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum AlphabetField {
    Name(String),
    Gates(Vec<GateId>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TopologyField {
    Name(String),
    Pairs { allowed_pairs: Vec<(usize, usize)> },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ScheduleField {
    Name(String),
    Stages(Vec<EpsilonStage>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerFields {
    pub step_size: Option<f64>,
    pub max_iterations: Option<usize>,
    pub tolerance: Option<f64>,
    pub restarts: Option<usize>,
    pub init: Option<InitStrategy>,
}

enum Base {
    Full(Box<SearchConfig>),
    Partial(FileSettings),
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_base(path: &Path) -> CliResult<Base> {
    let text = read(path)?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        let mut v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        if let Some(cfg) = v.get_mut("config") {
            v = cfg.take();
        }
        let cfg: SearchConfig = serde_json::from_value(v)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Ok(Base::Full(Box::new(cfg)))
    } else {
        let fs: FileSettings =
            toml::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Ok(Base::Partial(fs))
    }
}

/// Alphabet used when none is given.
pub fn default_alphabet(n: usize) -> Vec<GateId> {
    let name = match n {
        0..=2 => "ibm2q",
        3 => "ibm3q",
        _ => "blocks",
    };
    alphabet_preset(name).expect("built-in preset")
}

pub fn parse_target(s: &str) -> CliResult<(TargetSpec, usize)> {
    let spec: TargetSpec = s.parse()?;
    let n = match spec.n() {
        Some(n) => n,
        None => target_unitary::<f64>(&spec)?.n(),
    };
    Ok((spec, n))
}

pub fn parse_alphabet(s: &str) -> CliResult<Vec<GateId>> {
    if let Ok(a) = alphabet_preset(s) {
        return Ok(a);
    }
    let path = PathBuf::from(s);
    if !path.exists() {
        return Err(CliError::Config(format!("unknown alphabet `{s}`")));
    }
    let text = read(&path)?;
    if let Ok(list) = serde_json::from_str::<Vec<GateId>>(&text) {
        return Ok(list);
    }
    let joined = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect::<Vec<_>>()
        .join(",");
    alphabet_preset(&joined).map_err(|_| CliError::Config(format!("bad alphabet file {s}")))
}

pub fn parse_topology(s: &str, n: usize) -> CliResult<Topology> {
    if let Ok(t) = Topology::preset(s, n) {
        return Ok(t);
    }
    let path = PathBuf::from(s);
    if !path.exists() {
        return Err(CliError::Config(format!("unknown topology `{s}`")));
    }
    let t: Topology = serde_json::from_str(&read(&path)?)
        .map_err(|e| CliError::Parse(format!("{s}: {e}")))?;
    t.validate()?;
    Ok(t)
}

pub fn parse_schedule(s: &str) -> CliResult<EpsilonSchedule> {
    if let Ok(sch) = EpsilonSchedule::preset(s) {
        return Ok(sch);
    }
    let path = PathBuf::from(s);
    if !path.exists() {
        return Err(CliError::Config(format!("unknown schedule `{s}`")));
    }
    let text = read(&path)?;
    let sch = match serde_json::from_str::<EpsilonSchedule>(&text) {
        Ok(s) => s,
        Err(_) => text.trim().parse()?,
    };
    sch.validate()?;
    Ok(sch)
}

impl From<CostArg> for CostKind {
    fn from(c: CostArg) -> Self {
        match c {
            CostArg::Global => CostKind::Global,
            CostArg::Local => CostKind::Local,
        }
    }
}

impl From<HyperArg> for HyperPreset {
    fn from(h: HyperArg) -> Self {
        match h {
            HyperArg::SmallN => HyperPreset::SmallN,
            HyperArg::LargeN => HyperPreset::LargeN,
        }
    }
}

impl From<ShapingArg> for RewardShaping {
    fn from(s: ShapingArg) -> Self {
        match s {
            ShapingArg::TerminalFull => RewardShaping::TerminalFull,
            ShapingArg::Uniform => RewardShaping::Uniform,
        }
    }
}

fn apply_file(cfg: &mut SearchConfig, fs: &FileSettings, n: usize) -> CliResult<()> {
    if let Some(a) = &fs.alphabet {
        cfg.alphabet = match a {
            AlphabetField::Name(s) => parse_alphabet(s)?,
            AlphabetField::Gates(g) => g.clone(),
        };
    }
    if let Some(t) = &fs.topology {
        cfg.topology = match t {
            TopologyField::Name(s) => parse_topology(s, n)?,
            TopologyField::Pairs { allowed_pairs } => {
                Topology::from_pairs(n, allowed_pairs.iter().copied())?
            }
        };
    }
    if let Some(s) = &fs.schedule {
        cfg.schedule = match s {
            ScheduleField::Name(s) => parse_schedule(s)?,
            ScheduleField::Stages(st) => EpsilonSchedule::new(st.clone())?,
        };
    }
    if let Some(h) = fs.hyper {
        *cfg = cfg.clone().with_hyper(h);
    }
    set(&mut cfg.alpha, fs.alpha);
    set(&mut cfg.gamma, fs.gamma);
    set(&mut cfg.batch_size, fs.batch_size);
    set(&mut cfg.lambda, fs.lambda);
    set(&mut cfg.cost_kind, fs.cost_kind);
    set(&mut cfg.q_init_samples, fs.q_init_samples);
    set(&mut cfg.seed, fs.seed);
    set(&mut cfg.reward_shaping, fs.reward_shaping);
    if fs.early_stop_cost.is_some() {
        cfg.early_stop_cost = fs.early_stop_cost;
    }
    if let Some(o) = &fs.optimizer {
        set(&mut cfg.optimizer.step_size, o.step_size);
        set(&mut cfg.optimizer.max_iterations, o.max_iterations);
        set(&mut cfg.optimizer.tolerance, o.tolerance);
        set(&mut cfg.optimizer.restarts, o.restarts);
        set(&mut cfg.optimizer.init, o.init);
    }
    Ok(())
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn apply_flags(cfg: &mut SearchConfig, a: &SearchArgs, n: usize) -> CliResult<()> {
    if let Some(s) = &a.alphabet {
        cfg.alphabet = parse_alphabet(s)?;
    }
    if let Some(s) = &a.topology {
        cfg.topology = parse_topology(s, n)?;
    }
    if let Some(s) = &a.schedule {
        cfg.schedule = parse_schedule(s)?;
    }
    if let Some(h) = a.hyper {
        *cfg = cfg.clone().with_hyper(h.into());
    }
    set(&mut cfg.alpha, a.alpha);
    set(&mut cfg.gamma, a.gamma);
    set(&mut cfg.batch_size, a.batch_size);
    set(&mut cfg.lambda, a.lambda);
    set(&mut cfg.cost_kind, a.cost.map(Into::into));
    set(&mut cfg.seed, a.seed);
    set(&mut cfg.q_init_samples, a.q_init_samples);
    set(&mut cfg.optimizer.restarts, a.restarts);
    set(&mut cfg.optimizer.max_iterations, a.max_iterations);
    set(&mut cfg.reward_shaping, a.reward_shaping.map(Into::into));
    if a.early_stop_cost.is_some() {
        cfg.early_stop_cost = a.early_stop_cost;
    }
    Ok(())
}

/// Builds the fully resolved config: defaults for the target width, then
/// the settings file (or a previous run's config), then flags.
pub fn resolve(a: &SearchArgs) -> CliResult<SearchConfig> {
    let base = a.config.as_deref().map(load_base).transpose()?;
    let target_name = a.target.clone().or_else(|| match &base {
        Some(Base::Partial(fs)) => fs.target.clone(),
        _ => None,
    });
    let mut cfg = match (base, target_name) {
        (Some(Base::Full(cfg)), None) => {
            let mut cfg = *cfg;
            set(&mut cfg.max_gates, a.max_gates);
            cfg
        }
        (Some(Base::Full(cfg)), Some(t)) => {
            let (spec, n) = parse_target(&t)?;
            let mut cfg = *cfg;
            if cfg.topology.n != n {
                cfg.topology = Topology::full(n);
            }
            cfg.target = spec;
            set(&mut cfg.max_gates, a.max_gates);
            cfg
        }
        (base, target) => {
            let fs = match base {
                Some(Base::Partial(fs)) => fs,
                _ => FileSettings::default(),
            };
            let t = target.ok_or_else(|| CliError::Config("no target given".into()))?;
            let (spec, n) = parse_target(&t)?;
            let max_gates = a
                .max_gates
                .or(fs.max_gates)
                .ok_or_else(|| CliError::Config("no --max-gates given".into()))?;
            let mut cfg = SearchConfig::new(spec, n, default_alphabet(n), max_gates);
            apply_file(&mut cfg, &fs, n)?;
            cfg
        }
    };
    let n = cfg.topology.n;
    apply_flags(&mut cfg, a, n)?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(target: &str, l: usize) -> SearchArgs {
        SearchArgs {
            target: Some(target.into()),
            max_gates: Some(l),
            ..Default::default()
        }
    }

    #[test]
    fn width_defaults() {
        let c = resolve(&args("cz", 5)).unwrap();
        assert_eq!(c.alphabet, alphabet_preset("ibm2q").unwrap());
        assert_eq!(c.schedule, EpsilonSchedule::table1());
        assert_eq!(c.cost_kind, CostKind::Global);
        let c = resolve(&args("wsp3", 7)).unwrap();
        assert_eq!(c.schedule, EpsilonSchedule::table3());
        assert_eq!(c.alphabet, alphabet_preset("ibm3q").unwrap());
        let c = resolve(&args("layered4:1", 4)).unwrap();
        assert_eq!(c.cost_kind, CostKind::Local);
        assert_eq!((c.alpha, c.gamma), (0.2, 1.0));
    }

    #[test]
    fn flags_override() {
        let mut a = args("ccnot", 9);
        a.topology = Some("ibmq_ourense".into());
        a.lambda = Some(0.1);
        a.schedule = Some("1.0:4,0.1:2".into());
        a.cost = Some(CostArg::Local);
        let c = resolve(&a).unwrap();
        assert!(!c.topology.allows(0, 2));
        assert_eq!(c.lambda, 0.1);
        assert_eq!(c.schedule.total_episodes(), 6);
        assert_eq!(c.cost_kind, CostKind::Local);
    }

    #[test]
    fn missing_or_bad_values() {
        assert!(matches!(resolve(&SearchArgs::default()), Err(CliError::Config(_))));
        assert_eq!(resolve(&args("nope", 3)).unwrap_err().exit_code(), 2);
        let mut a = args("cz", 3);
        a.alphabet = Some("nope".into());
        assert_eq!(resolve(&a).unwrap_err().exit_code(), 2);
        let mut a = args("cz", 3);
        a.alpha = Some(2.0);
        assert_eq!(resolve(&a).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn toml_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.toml");
        std::fs::write(
            &p,
            r#"
target = "cs"
max_gates = 5
alphabet = ["RX_HALF_PI", "RZ", "CNOT"]
topology = { allowed_pairs = [[0, 1]] }
schedule = [{ epsilon = 1.0, episodes = 10 }, { epsilon = 0.5, episodes = 5 }]
seed = 3
cost_kind = "local"

[optimizer]
restarts = 2
"#,
        )
        .unwrap();
        let a = SearchArgs {
            config: Some(p),
            seed: Some(4),
            ..Default::default()
        };
        let c = resolve(&a).unwrap();
        assert_eq!(c.target, TargetSpec::Cs);
        assert!(c.topology.allows(0, 1) && !c.topology.allows(1, 0));
        assert_eq!(c.schedule.total_episodes(), 15);
        assert_eq!(c.optimizer.restarts, 2);
        assert_eq!(c.seed, 4);
        assert_eq!(c.cost_kind, CostKind::Local);
    }

    #[test]
    fn unknown_toml_key_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.toml");
        std::fs::write(&p, "target = \"cz\"\nmax_gates = 2\nfoo = 1\n").unwrap();
        let a = SearchArgs {
            config: Some(p),
            ..Default::default()
        };
        assert_eq!(resolve(&a).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn full_config_json_round_trip() {
        let c = resolve(&args("xx3pi2", 4)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cfg.json");
        std::fs::write(&p, serde_json::to_string(&serde_json::json!({ "config": c })).unwrap()).unwrap();
        let back = resolve(&SearchArgs {
            config: Some(p),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(back, c);
    }
}
