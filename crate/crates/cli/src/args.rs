// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line surface. Every flag is optional and overrides the matching
//! field of the experiment document.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Format, PowerPreset};

#[derive(Debug, Parser)]
#[command(name = "spon", version, about = "Superconducting optoelectronic network simulator")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Experiment document (JSON). Its experiment must match the subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Master seed; every trial derives its own stream from it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output encoding; both write floats with nine significant digits.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file. Takes precedence over every other output setting.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for `<command>.<ext>`. Falls back to SPON_OUT_DIR.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Args, Default)]
pub struct ArrayFlags {
    #[arg(long)]
    pub n_wires: Option<u32>,
    /// Single-pass absorption per wire.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub passes: Option<u32>,
    #[arg(long)]
    pub trials: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spike probability over bias and photon number.
    SpikeProb {
        #[command(flatten)]
        array: ArrayFlags,
        /// Bias points as fractions of the array critical current.
        #[arg(long, value_delimiter = ',')]
        bias: Option<Vec<f64>>,
        /// Photon numbers to sample.
        #[arg(long, value_delimiter = ',')]
        photons: Option<Vec<u64>>,
    },
    /// Threshold count and half-probability photon number per bias.
    ThresholdScan {
        #[command(flatten)]
        array: ArrayFlags,
        #[arg(long, value_delimiter = ',')]
        bias: Option<Vec<f64>>,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Photons out against photons in for a single-wire detector driving an LED.
    SndTransfer {
        #[arg(long)]
        efficiency: Option<f64>,
        #[arg(long)]
        bias_fraction: Option<f64>,
        #[arg(long)]
        pulse_ns: Option<f64>,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Energy per synaptic event against photons per event.
    Energy {
        #[arg(long)]
        efficiency: Option<f64>,
        /// Wall watts per cold watt.
        #[arg(long)]
        cooling: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        photons: Option<Vec<u64>>,
    },
    /// Statistics of photons absorbed per wire.
    AbsorbStats {
        #[command(flatten)]
        array: ArrayFlags,
        #[arg(long, value_delimiter = ',')]
        incident: Option<Vec<u64>>,
    },
    /// Layer geometry and neuron density.
    Floorplan {
        #[arg(long, value_delimiter = ',')]
        n_conn: Option<Vec<u64>>,
        #[arg(long, value_delimiter = ',')]
        n_wg: Option<Vec<u64>>,
    },
    /// System power and throughput per watt.
    Power {
        #[arg(long, value_enum)]
        preset: Option<PowerPreset>,
    },
    /// Event-driven network run.
    Simulate {
        /// End time in nanoseconds.
        #[arg(long)]
        until: Option<f64>,
        /// Independent runs with consecutive seeds.
        #[arg(long)]
        sweep: Option<u32>,
        /// Also write binary traces next to the output file.
        #[arg(long)]
        binary_trace: bool,
    },
    /// Version, build features and default documents.
    Info,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SpikeProb { .. } => "spike-prob",
            Command::ThresholdScan { .. } => "threshold-scan",
            Command::SndTransfer { .. } => "snd-transfer",
            Command::Energy { .. } => "energy",
            Command::AbsorbStats { .. } => "absorb-stats",
            Command::Floorplan { .. } => "floorplan",
            Command::Power { .. } => "power",
            Command::Simulate { .. } => "simulate",
            Command::Info => "info",
        }
    }
}
