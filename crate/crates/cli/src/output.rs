//! Files written by `compile` and `sweep`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use vqc_core::rl::SearchResult;

use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;

pub const CIRCUIT_FILE: &str = "circuit.json";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const REPLAY_FILE: &str = "replay.jsonl";
pub const QTABLE_FILE: &str = "qtable.json";
pub const EPISODES_FILE: &str = "episodes.csv";
pub const SWEEP_FILE: &str = "sweep.csv";
pub const SWEEP_PLOT_FILE: &str = "sweep_plot.json";

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Output {
        path: dir.to_path_buf(),
        source,
    })?;
    // create_dir_all succeeds on an existing read-only directory
    let probe = dir.join(".vqc-write-probe");
    std::fs::write(&probe, b"")
        .and_then(|_| std::fs::remove_file(&probe))
        .map_err(|source| CliError::Output {
            path: dir.to_path_buf(),
            source,
        })
}

pub fn write_file(path: PathBuf, contents: &str) -> CliResult<()> {
    std::fs::write(&path, contents).map_err(|source| CliError::Output { path, source })
}

pub fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(vqc_core::Error::from)?;
    s.push('\n');
    Ok(s)
}

pub fn replay_jsonl(r: &SearchResult) -> CliResult<String> {
    let mut out = String::new();
    for e in &r.replay {
        out.push_str(&serde_json::to_string(e).map_err(vqc_core::Error::from)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn episodes_csv(r: &SearchResult) -> String {
    let mut out = String::from("episode,epsilon,cost,reward,n_cnot,structure\n");
    for e in &r.episode_log {
        let s: Vec<String> = e.structure.iter().map(|a| a.to_string()).collect();
        let _ = writeln!(
            out,
            "{},{},{:e},{},{},\"{}\"",
            e.episode,
            e.epsilon,
            e.cost,
            e.reward,
            e.n_cnot,
            s.join(" ")
        );
    }
    out
}

/// circuit.json, manifest.json, replay.jsonl, qtable.json and episodes.csv.
pub fn write_run(dir: &Path, r: &SearchResult, manifest: &RunManifest) -> CliResult<()> {
    ensure_dir(dir)?;
    write_file(dir.join(CIRCUIT_FILE), &to_json(&r.best_circuit)?)?;
    write_file(dir.join(MANIFEST_FILE), &to_json(manifest)?)?;
    write_file(dir.join(REPLAY_FILE), &replay_jsonl(r)?)?;
    write_file(dir.join(QTABLE_FILE), &to_json(&r.q_snapshot)?)?;
    write_file(dir.join(EPISODES_FILE), &episodes_csv(r))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "L")]
    pub l: usize,
    pub best_cost: f64,
    pub best_reward: f64,
    pub n_cnot: usize,
    pub episodes: usize,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("L,best_cost,best_reward,n_cnot,episodes\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:e},{},{},{}",
            r.l, r.best_cost, r.best_reward, r.n_cnot, r.episodes
        );
    }
    out
}

/// Data behind a cost-versus-gate-count plot.
#[derive(Debug, Serialize)]
pub struct SweepPlot<'a> {
    pub target: String,
    pub cost_kind: String,
    pub x_label: &'static str,
    pub y_label: &'static str,
    pub points: &'a [SweepRow],
}
