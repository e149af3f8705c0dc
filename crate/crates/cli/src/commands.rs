// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! One function per experiment, each producing a [`Table`].

use serde_json::{json, Value};

use spon::detector::{
    absorption_statistics_with, spike_probability_surface, threshold_at_half, threshold_count, HalfThreshold,
};
use spon::emitter::snd_transfer_curve;
use spon::energy::{energy_per_event, wall_energy};
use spon::floorplan::{brain_events_per_s_per_w, neuron_density, system_power, FloorplanParams, FullyConnectedWidth};
use spon::metrics::dynamic_range;
use spon::network::{build_mlp, build_random, build_visual_cortex, simulate_sweep, Network, TraceRecord};
use spon::par::Parallelism;
use spon::SponError;

use crate::config::{
    AbsorbStats, Energy, Experiment, ExperimentConfig, Floorplan, Power, Simulate, SndTransfer, SpikeProb,
    ThresholdScan, Topology,
};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

/// Result of a run: the table plus one binary trace per simulated run.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub table: Table,
    pub traces: Vec<Vec<TraceRecord>>,
}

pub fn run(cfg: &ExperimentConfig, mode: Parallelism) -> CliResult<RunOutput> {
    let seed = cfg.seed;
    let table = match &cfg.experiment {
        Experiment::SpikeProb(p) => spike_prob(p, seed, mode)?,
        Experiment::ThresholdScan(p) => threshold_scan(p, seed, mode)?,
        Experiment::SndTransfer(p) => snd_transfer(p, seed, mode)?,
        Experiment::Energy(p) => energy(p)?,
        Experiment::AbsorbStats(p) => absorb_stats(p, seed, mode)?,
        Experiment::Floorplan(p) => floorplan(p)?,
        Experiment::Power(p) => power(p)?,
        Experiment::Simulate(p) => return simulate(p, seed, mode),
    };
    Ok(RunOutput {
        table,
        traces: Vec::new(),
    })
}

fn spike_prob(p: &SpikeProb, seed: u64, mode: Parallelism) -> CliResult<Table> {
    let surface = spike_probability_surface(&p.array, &p.bias_fractions, &p.photons, p.trials, seed, mode)?;
    let mut t = Table::new(&["bias_fraction", "n_photons", "probability"]);
    for pt in surface {
        t.push(vec![pt.bias_fraction.into(), pt.n_photons.into(), pt.probability.into()]);
    }
    Ok(t)
}

fn threshold_scan(p: &ThresholdScan, seed: u64, mode: Parallelism) -> CliResult<Table> {
    let mut opts = HalfThreshold::new(p.trials, seed).counting(p.counting);
    opts.mode = mode;
    if let Some(cap) = p.cap {
        opts = opts.cap(cap);
    }
    let mut t = Table::new(&["bias_fraction", "bias_ua", "n_c", "threshold_photons"]);
    for &f in &p.bias_fractions {
        let bias = p.array.bias(f);
        let nc = threshold_count(&p.array, &bias)?;
        let half = threshold_at_half(&p.array, &bias, &opts)?;
        t.push(vec![f.into(), bias.i_bias_ua.into(), nc.into(), half.into()]);
    }
    Ok(t)
}

fn snd_transfer(p: &SndTransfer, seed: u64, mode: Parallelism) -> CliResult<Table> {
    let bias = spon::detector::BiasPoint::from_fraction(p.bias_fraction, p.wire.i_c_ua);
    let curve = snd_transfer_curve(&p.wire, &p.led, &bias, &p.photons_in, p.pulse_ns, p.trials, seed, mode)?;
    let mut t = Table::new(&["photons_in", "mean_resistance_kohm", "mean_photons_out"]);
    for pt in &curve {
        t.push(vec![pt.photons_in.into(), pt.mean_resistance_kohm.into(), pt.mean_photons_out.into()]);
    }
    let pts: Vec<(f64, f64)> = curve.iter().map(|c| (c.photons_in as f64, c.mean_photons_out)).collect();
    let dr = match dynamic_range(&pts) {
        Ok(d) => serde_json::to_value(d).expect("plain struct"),
        Err(SponError::UndefinedRange) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    t.summary.insert("dynamic_range".into(), dr);
    Ok(t)
}

fn energy(p: &Energy) -> CliResult<Table> {
    let mut t = Table::new(&[
        "n_photons",
        "inductive_aj",
        "capacitive_aj",
        "photonic_aj",
        "total_aj",
        "per_photon_aj",
        "wall_per_photon_aj",
    ]);
    for &n in &p.photons {
        let e = energy_per_event(&p.model, n)?;
        let wall = wall_energy(e.per_photon_aj(), p.cooling)?;
        t.push(vec![
            n.into(),
            e.inductive_aj.into(),
            e.capacitive_aj.into(),
            e.photonic_aj.into(),
            e.total_aj.into(),
            e.per_photon_aj().into(),
            wall.into(),
        ]);
    }
    Ok(t)
}

fn absorb_stats(p: &AbsorbStats, seed: u64, mode: Parallelism) -> CliResult<Table> {
    let mut t = Table::new(&["n_incident", "mean_of_means", "mean_of_stds", "std_of_stds"]);
    for &n in &p.incident {
        let s = absorption_statistics_with(&p.array, n, p.trials, seed, mode)?;
        t.push(vec![n.into(), s.mean_of_means.into(), s.mean_of_stds.into(), s.std_of_stds.into()]);
    }
    Ok(t)
}

fn floorplan(p: &Floorplan) -> CliResult<Table> {
    let mut t = Table::new(&["n_conn", "n_wg", "L_l_um", "W_l_um", "density_per_cm2"]);
    for &nwg in &p.n_wg {
        for &nc in &p.n_conn {
            let params = FloorplanParams {
                n_neurons: nc,
                n_wg_planes: nwg,
                ..p.layout.clone()
            };
            let g = neuron_density(&params, &FullyConnectedWidth)?;
            t.push(vec![
                nc.into(),
                nwg.into(),
                g.length.0.into(),
                g.width.0.into(),
                g.density_per_cm2.into(),
            ]);
        }
    }
    Ok(t)
}

fn power(p: &Power) -> CliResult<Table> {
    let r = system_power(&p.system)?;
    let brain = brain_events_per_s_per_w(&p.brain)?;
    let mut t = Table::new(&[
        "device_w",
        "wall_w",
        "synapse_events_per_s",
        "events_per_s_per_w_device",
        "events_per_s_per_w_wall",
        "brain_events_per_s_per_w",
    ]);
    t.push(vec![
        r.device_w.into(),
        r.wall_w.into(),
        r.synapse_events_per_s.into(),
        r.events_per_s_per_w_device.into(),
        r.events_per_s_per_w_wall.into(),
        brain.into(),
    ]);
    t.summary.insert(
        "advantage_over_brain_at_wall".into(),
        json!(r.events_per_s_per_w_wall / brain),
    );
    Ok(t)
}

fn build_network(p: &Simulate) -> CliResult<Network> {
    let mut net = match &p.network {
        Topology::Doc(doc) => doc.build()?,
        Topology::Mlp(cfg) => build_mlp(cfg)?,
        Topology::Cortex(cfg) => build_visual_cortex(cfg)?.0,
        Topology::Random(cfg) => build_random(cfg)?,
    };
    for &s in &p.stimuli {
        net.add_stimulus(s);
    }
    if let Some(w) = &p.weights {
        net.set_weights(w)?;
    }
    net.validate()?;
    Ok(net)
}

fn simulate(p: &Simulate, seed: u64, mode: Parallelism) -> CliResult<RunOutput> {
    if p.sweep == 0 {
        return Err(CliError::Config("sweep must be at least 1".into()));
    }
    if !(p.until_ns >= 0.0 && p.until_ns.is_finite()) {
        return Err(CliError::Config(format!("until_ns must be finite and nonnegative, got {}", p.until_ns)));
    }
    let net = build_network(p)?;
    let seeds: Vec<u64> = (0..u64::from(p.sweep)).map(|k| seed.wrapping_add(k)).collect();
    let traces = simulate_sweep(&net, p.until_ns, &seeds, mode)?;
    let mut t = Table::new(&["run", "seed", "t_ns", "neuron_id", "photons_out"]);
    for (run, (trace, &s)) in traces.iter().zip(&seeds).enumerate() {
        for r in trace {
            t.push(vec![
                Cell::Int(run as u64),
                s.into(),
                r.t_ns.into(),
                r.neuron_id.into(),
                r.photons_out.into(),
            ]);
        }
    }
    t.summary.insert(
        "network".into(),
        json!({
            "neurons": net.n_neurons(),
            "inputs": net.n_inputs(),
            "synapses": net.n_synapses(),
        }),
    );
    Ok(RunOutput {
        table: t,
        traces: if p.binary_trace { traces } else { Vec::new() },
    })
}
