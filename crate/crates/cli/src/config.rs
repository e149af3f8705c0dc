// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Experiment documents. A document carries every parameter of a run, so the
//! run record written next to an output file replays it exactly.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use spon::detector::{PhotonCounting, PndArray, SndWire};
use spon::emitter::LedJunction;
use spon::energy::EnergyModel;
use spon::floorplan::{BrainParams, FloorplanParams, PowerParams};
use spon::network::{CortexConfig, MlpConfig, NetworkDoc, RandomConfig, Stimulus};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub format: Format,
    /// Data file; `None` writes to stdout.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Version that wrote the record. Informational only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spon_version: Option<String>,
    pub experiment: Experiment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Experiment {
    SpikeProb(SpikeProb),
    ThresholdScan(ThresholdScan),
    SndTransfer(SndTransfer),
    Energy(Energy),
    AbsorbStats(AbsorbStats),
    Floorplan(Floorplan),
    Power(Power),
    Simulate(Simulate),
}

impl Experiment {
    pub fn command(&self) -> &'static str {
        match self {
            Experiment::SpikeProb(_) => "spike-prob",
            Experiment::ThresholdScan(_) => "threshold-scan",
            Experiment::SndTransfer(_) => "snd-transfer",
            Experiment::Energy(_) => "energy",
            Experiment::AbsorbStats(_) => "absorb-stats",
            Experiment::Floorplan(_) => "floorplan",
            Experiment::Power(_) => "power",
            Experiment::Simulate(_) => "simulate",
        }
    }
}

fn fractions(lo: u32, hi: u32, step: u32) -> Vec<f64> {
    (lo..=hi).step_by(step as usize).map(|k| f64::from(k) / 100.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpikeProb {
    pub array: PndArray,
    pub bias_fractions: Vec<f64>,
    pub photons: Vec<u64>,
    pub trials: u64,
}

impl Default for SpikeProb {
    fn default() -> Self {
        SpikeProb {
            array: PndArray::default(),
            bias_fractions: fractions(5, 95, 5),
            photons: (0..=1000).step_by(10).collect(),
            trials: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdScan {
    pub array: PndArray,
    pub bias_fractions: Vec<f64>,
    pub trials: u64,
    pub counting: PhotonCounting,
    /// Largest photon number searched; `None` uses the array default.
    pub cap: Option<u64>,
}

impl Default for ThresholdScan {
    fn default() -> Self {
        ThresholdScan {
            array: PndArray::default(),
            bias_fractions: fractions(1, 99, 1),
            trials: 1000,
            counting: PhotonCounting::default(),
            cap: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SndTransfer {
    pub wire: SndWire,
    pub led: LedJunction,
    pub bias_fraction: f64,
    pub photons_in: Vec<u64>,
    pub pulse_ns: f64,
    pub trials: u64,
}

impl Default for SndTransfer {
    fn default() -> Self {
        SndTransfer {
            wire: SndWire::default(),
            led: LedJunction::with_efficiency(0.01),
            bias_fraction: 0.7,
            photons_in: (0..=10_000).step_by(50).collect(),
            pulse_ns: 50.0,
            trials: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Energy {
    pub model: EnergyModel,
    pub photons: Vec<u64>,
    /// Wall watts per cold watt.
    pub cooling: f64,
}

impl Default for Energy {
    fn default() -> Self {
        Energy {
            model: EnergyModel::with_efficiency(0.01),
            photons: vec![1, 10, 100, 1_000, 10_000, 100_000],
            cooling: 1000.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AbsorbStats {
    pub array: PndArray,
    pub incident: Vec<u64>,
    pub trials: u64,
}

impl Default for AbsorbStats {
    fn default() -> Self {
        AbsorbStats {
            array: PndArray::default(),
            incident: (10..=1000).step_by(10).collect(),
            trials: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Floorplan {
    /// Lengths, pitch and die size; neuron and plane counts come from the
    /// sweep lists.
    pub layout: FloorplanParams,
    pub n_conn: Vec<u64>,
    pub n_wg: Vec<u64>,
}

impl Default for Floorplan {
    fn default() -> Self {
        Floorplan {
            layout: FloorplanParams::default(),
            n_conn: vec![10, 30, 100, 300, 1000, 3000, 10_000],
            n_wg: vec![1, 10],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PowerPreset {
    /// 7e9 neurons with 700 synapses each at 20 kHz and 20 aJ per event.
    #[serde(rename = "paper-1m3")]
    #[value(name = "paper-1m3")]
    Paper1m3,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Power {
    pub system: PowerParams,
    pub brain: BrainParams,
}

impl Power {
    pub fn preset(p: PowerPreset) -> Self {
        match p {
            PowerPreset::Paper1m3 => Power {
                system: PowerParams::paper_1m3(),
                brain: BrainParams::default(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Topology {
    Doc(NetworkDoc),
    Mlp(MlpConfig),
    Cortex(CortexConfig),
    Random(RandomConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Simulate {
    pub network: Topology,
    /// Stimuli added on top of any in the topology.
    pub stimuli: Vec<Stimulus>,
    /// Couplings written over the built network, in synapse order.
    pub weights: Option<Vec<f64>>,
    pub until_ns: f64,
    /// Independent runs with seeds `seed, seed + 1, ...`.
    pub sweep: u32,
    /// Also write the 16-byte binary trace next to the output file.
    pub binary_trace: bool,
}

impl Default for Simulate {
    fn default() -> Self {
        Simulate {
            network: Topology::Random(RandomConfig::default()),
            stimuli: Vec::new(),
            weights: None,
            until_ns: 1000.0,
            sweep: 1,
            binary_trace: false,
        }
    }
}

pub fn load(path: &Path) -> CliResult<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
