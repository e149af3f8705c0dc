// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! `spon` command-line driver.

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use spon::network::write_binary_trace;
use spon::par::Parallelism;

use args::{ArrayFlags, Cli, Command, Global};
use config::{
    AbsorbStats, Energy, Experiment, ExperimentConfig, Floorplan, Power, Simulate, SndTransfer, SpikeProb,
    ThresholdScan,
};
use error::{CliError, CliResult};

const OUT_DIR_ENV: &str = "SPON_OUT_DIR";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            if code != 0 {
                eprintln!("{}", CliError::Config(e.kind().to_string()).record());
            }
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if let Command::Info = cli.command {
        return info();
    }
    let mut cfg = resolve(&cli.global, &cli.command)?;
    let path = output_path(&cli.global, &cfg);
    let mode = if cli.global.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    };
    let out = commands::run(&cfg, mode)?;

    let Some(path) = path else {
        if !out.traces.is_empty() {
            return Err(CliError::Config("binary traces need an output file".into()));
        }
        let stdout = io::stdout();
        return out.table.write(cfg.format, stdout.lock());
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
    }
    let file = create(&path)?;
    out.table.write(cfg.format, BufWriter::new(file))?;
    for (k, trace) in out.traces.iter().enumerate() {
        let p = trace_path(&path, k, out.traces.len());
        let mut w = BufWriter::new(create(&p)?);
        write_binary_trace(&mut w, trace)
            .and_then(|_| w.flush())
            .map_err(|e| CliError::io(format!("writing {}", p.display()), e))?;
    }

    cfg.output = Some(path.clone());
    cfg.spon_version = Some(env!("CARGO_PKG_VERSION").to_string());
    let record = path.with_extension("run.json");
    let text = serde_json::to_string_pretty(&cfg).expect("config serializes") + "\n";
    std::fs::write(&record, text).map_err(|e| CliError::io(format!("writing {}", record.display()), e))
}

fn create(path: &Path) -> CliResult<File> {
    File::create(path).map_err(|e| CliError::io(format!("creating {}", path.display()), e))
}

fn trace_path(out: &Path, k: usize, n: usize) -> PathBuf {
    if n == 1 {
        out.with_extension("trace.bin")
    } else {
        out.with_extension(format!("trace{k}.bin"))
    }
}

/// `--out`, then `--out-dir`, then the document, then SPON_OUT_DIR, then stdout.
fn output_path(g: &Global, cfg: &ExperimentConfig) -> Option<PathBuf> {
    let in_dir = |dir: PathBuf| dir.join(format!("{}.{}", cfg.experiment.command(), cfg.format.extension()));
    g.out
        .clone()
        .or_else(|| g.out_dir.clone().map(in_dir))
        .or_else(|| cfg.output.clone())
        .or_else(|| std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(|v| in_dir(v.into())))
}

fn default_experiment(cmd: &Command) -> Experiment {
    match cmd {
        Command::SpikeProb { .. } => Experiment::SpikeProb(SpikeProb::default()),
        Command::ThresholdScan { .. } => Experiment::ThresholdScan(ThresholdScan::default()),
        Command::SndTransfer { .. } => Experiment::SndTransfer(SndTransfer::default()),
        Command::Energy { .. } => Experiment::Energy(Energy::default()),
        Command::AbsorbStats { .. } => Experiment::AbsorbStats(AbsorbStats::default()),
        Command::Floorplan { .. } => Experiment::Floorplan(Floorplan::default()),
        Command::Power { preset } => Experiment::Power(preset.map(Power::preset).unwrap_or_default()),
        Command::Simulate { .. } => Experiment::Simulate(Simulate::default()),
        Command::Info => unreachable!("info has no experiment"),
    }
}

fn resolve(g: &Global, cmd: &Command) -> CliResult<ExperimentConfig> {
    let mut cfg = match &g.config {
        Some(path) => {
            let cfg = config::load(path)?;
            if cfg.experiment.command() != cmd.name() {
                return Err(CliError::Config(format!(
                    "{} describes a {} experiment, not {}",
                    path.display(),
                    cfg.experiment.command(),
                    cmd.name()
                )));
            }
            cfg
        }
        None => ExperimentConfig {
            seed: 0,
            format: Default::default(),
            output: None,
            spon_version: None,
            experiment: default_experiment(cmd),
        },
    };
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(f) = g.format {
        cfg.format = f;
    }
    apply_overrides(&mut cfg.experiment, cmd);
    Ok(cfg)
}

fn set<T: Clone>(dst: &mut T, src: &Option<T>) {
    if let Some(v) = src {
        *dst = v.clone();
    }
}

fn apply_array(array: &mut spon::detector::PndArray, trials: &mut u64, f: &ArrayFlags) {
    set(&mut array.n_wires, &f.n_wires);
    set(&mut array.alpha, &f.alpha);
    set(&mut array.n_passes, &f.passes);
    set(trials, &f.trials);
}

fn apply_overrides(exp: &mut Experiment, cmd: &Command) {
    match (exp, cmd) {
        (Experiment::SpikeProb(p), Command::SpikeProb { array, bias, photons }) => {
            apply_array(&mut p.array, &mut p.trials, array);
            set(&mut p.bias_fractions, bias);
            set(&mut p.photons, photons);
        }
        (Experiment::ThresholdScan(p), Command::ThresholdScan { array, bias, cap }) => {
            apply_array(&mut p.array, &mut p.trials, array);
            set(&mut p.bias_fractions, bias);
            if cap.is_some() {
                p.cap = *cap;
            }
        }
        (
            Experiment::SndTransfer(p),
            Command::SndTransfer {
                efficiency,
                bias_fraction,
                pulse_ns,
                trials,
            },
        ) => {
            set(&mut p.led.efficiency, efficiency);
            set(&mut p.bias_fraction, bias_fraction);
            set(&mut p.pulse_ns, pulse_ns);
            set(&mut p.trials, trials);
        }
        (
            Experiment::Energy(p),
            Command::Energy {
                efficiency,
                cooling,
                photons,
            },
        ) => {
            set(&mut p.model.led.efficiency, efficiency);
            set(&mut p.cooling, cooling);
            set(&mut p.photons, photons);
        }
        (Experiment::AbsorbStats(p), Command::AbsorbStats { array, incident }) => {
            apply_array(&mut p.array, &mut p.trials, array);
            set(&mut p.incident, incident);
        }
        (Experiment::Floorplan(p), Command::Floorplan { n_conn, n_wg }) => {
            set(&mut p.n_conn, n_conn);
            set(&mut p.n_wg, n_wg);
        }
        (Experiment::Power(p), Command::Power { preset: Some(preset) }) => *p = Power::preset(*preset),
        (
            Experiment::Simulate(p),
            Command::Simulate {
                until,
                sweep,
                binary_trace,
            },
        ) => {
            set(&mut p.until_ns, until);
            set(&mut p.sweep, sweep);
            p.binary_trace |= binary_trace;
        }
        _ => {}
    }
}

fn info() -> CliResult<()> {
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "parallel": Parallelism::available(),
        "defaults": {
            "spike-prob": SpikeProb::default(),
            "threshold-scan": ThresholdScan::default(),
            "snd-transfer": SndTransfer::default(),
            "energy": Energy::default(),
            "absorb-stats": AbsorbStats::default(),
            "floorplan": Floorplan::default(),
            "power": Power::default(),
            "simulate": Simulate::default(),
        },
    });
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &doc).expect("defaults serialize");
    writeln!(out).map_err(|e| CliError::io("writing stdout", e))
}
