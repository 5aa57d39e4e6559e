use std::io::Write;
use std::path::Path;
use std::time::Instant;

use vqc_core::circuit::Circuit;
use vqc_core::rl::{run_search_with, SearchConfig, SearchResult};
use vqc_core::{CostKind, OptimizerSettings};

use crate::args::{CompileArgs, OracleArgs, RenderArgs, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;
use crate::oracle::{run_oracle, OracleReport, OracleSettings};
use crate::output::{self, SweepPlot, SweepRow};
use crate::render::{render, Style};
use crate::settings::{parse_alphabet, parse_target, parse_topology, resolve};

fn io_err(e: std::io::Error) -> CliError {
    CliError::Output {
        path: "<stdout>".into(),
        source: e,
    }
}

/// Runs one search, printing a line per epsilon stage to stderr when `verbose`.
pub fn search(cfg: &SearchConfig, verbose: bool) -> CliResult<(SearchResult, f64)> {
    let start = Instant::now();
    let mut stage_end = 0usize;
    let mut stage = 0usize;
    let mut best = f64::INFINITY;
    let stages = &cfg.schedule.stages;
    let result = run_search_with(cfg, |e| {
        best = best.min(e.cost);
        while stage < stages.len() && e.episode + 1 > stage_end + stages[stage].episodes {
            stage_end += stages[stage].episodes;
            stage += 1;
        }
        if verbose && stage < stages.len() && e.episode + 1 == stage_end + stages[stage].episodes {
            eprintln!(
                "epsilon {:.2}: {} episodes, best cost {best:.3e}",
                e.epsilon,
                e.episode + 1
            );
        }
    })?;
    Ok((result, start.elapsed().as_secs_f64()))
}

pub fn compile(args: &CompileArgs, out: &mut dyn Write) -> CliResult<RunManifest> {
    let cfg = resolve(&args.search)?;
    output::ensure_dir(&args.out)?;
    let (result, secs) = search(&cfg, args.verbose)?;
    let manifest = RunManifest::new(cfg, &result, secs);
    output::write_run(&args.out, &result, &manifest)?;
    writeln!(
        out,
        "best cost {:.6e} with {} gates ({} CNOT) after {} episodes; wrote {}",
        manifest.result.best_cost,
        manifest.result.gates,
        manifest.result.n_cnot,
        manifest.result.episodes_run,
        args.out.display()
    )
    .map_err(io_err)?;
    Ok(manifest)
}

pub fn parse_range(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Config(format!("bad range `{s}`, expected lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Every gate count uses the same seed, so a one-point sweep equals `compile`.
pub fn sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult<Vec<SweepRow>> {
    let (lo, hi) = parse_range(&args.range)?;
    let mut search_args = args.search.clone();
    search_args.max_gates = Some(lo);
    let base = resolve(&search_args)?;
    output::ensure_dir(&args.out)?;
    let circuits = args.out.join("circuits");
    output::ensure_dir(&circuits)?;
    let mut rows = Vec::with_capacity(hi - lo + 1);
    for l in lo..=hi {
        let mut cfg = base.clone();
        cfg.max_gates = l;
        let (r, _) = search(&cfg, args.verbose)?;
        output::write_file(circuits.join(format!("L{l}.json")), &output::to_json(&r.best_circuit)?)?;
        let row = SweepRow {
            l,
            best_cost: r.best_cost.value(),
            best_reward: r.best_reward,
            n_cnot: r.best_circuit.cnot_count(),
            episodes: r.episodes_run,
        };
        writeln!(out, "L={l:<3} best cost {:.6e}  CNOT {}", row.best_cost, row.n_cnot).map_err(io_err)?;
        rows.push(row);
    }
    output::write_file(args.out.join(output::SWEEP_FILE), &output::sweep_csv(&rows))?;
    let plot = SweepPlot {
        target: base.target.to_string(),
        cost_kind: base.cost_kind.to_string(),
        x_label: "gates",
        y_label: "minimum cost",
        points: &rows,
    };
    output::write_file(args.out.join(output::SWEEP_PLOT_FILE), &output::to_json(&plot)?)?;
    Ok(rows)
}

pub fn oracle(args: &OracleArgs, out: &mut dyn Write) -> CliResult<OracleReport> {
    let (target, n) = parse_target(&args.target)?;
    if n > args.qubit_cap {
        return Err(CliError::Config(format!(
            "oracle is capped at {} qubits, target has {n} (raise --qubit-cap)",
            args.qubit_cap
        )));
    }
    if args.max_len > args.length_cap {
        return Err(CliError::Config(format!(
            "--max {} exceeds --length-cap {}",
            args.max_len, args.length_cap
        )));
    }
    let settings = OracleSettings {
        alphabet: parse_alphabet(&args.alphabet)?,
        topology: parse_topology(&args.topology, n)?,
        max_len: args.max_len,
        threshold: args.threshold,
        cost_kind: args.cost.map(Into::into).unwrap_or(CostKind::default_for(n)),
        optimizer: OptimizerSettings {
            restarts: args.restarts,
            ..OptimizerSettings::default()
        },
        seed: args.seed,
    };
    settings.optimizer.validate()?;
    let mut lines = Vec::new();
    let report = run_oracle(&target, &settings, |l| {
        lines.push(format!(
            "length {}: {} structures, best cost {:.3e}",
            l.length, l.structures, l.best_cost
        ))
    })?;
    for l in &lines {
        writeln!(out, "{l}").map_err(io_err)?;
    }
    match (&report.minimal_length, &report.witness) {
        (Some(len), Some(w)) => {
            writeln!(out, "minimal length {len}").map_err(io_err)?;
            write!(out, "{}", render(w, Style::Unicode, 4)).map_err(io_err)?;
        }
        _ => writeln!(
            out,
            "no structure up to length {} reaches {:e}",
            args.max_len, args.threshold
        )
        .map_err(io_err)?,
    }
    if let Some(p) = &args.out {
        if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
            output::ensure_dir(parent)?;
        }
        output::write_file(p.clone(), &output::to_json(&report)?)?;
    }
    Ok(report)
}

pub fn load_circuit(path: &Path) -> CliResult<Circuit<f64>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })?;
    Circuit::from_json(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn render_cmd(args: &RenderArgs, out: &mut dyn Write) -> CliResult<()> {
    let c = load_circuit(&args.circuit)?;
    let style = if args.ascii { Style::Ascii } else { Style::Unicode };
    write!(out, "{}", render(&c, style, args.precision)).map_err(io_err)
}
