// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Event-driven simulation of networks of optoelectronic neurons.
//!
//! A run is a single sequential pass over an [`EventQueue`]. Every random
//! draw is seeded from the run seed, the neuron and the event's insertion
//! number, so a run is a pure function of (network, stimuli, seed).
//! Independent runs are what gets parallelised, see [`simulate_sweep`].

mod builders;
mod queue;
mod synapse;
mod trace;

pub use builders::{build_mlp, build_random, build_visual_cortex, CortexConfig, MlpConfig, RandomConfig};
pub use queue::{Event, EventKind, EventQueue, Target};
pub use synapse::{delay_for_path_um, stdp_update, Synapse, SynapseClass, SynapseStore};
pub use trace::{read_binary_trace, write_binary_trace, TraceRecord, TRACE_RECORD_BYTES};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SponError};
use crate::neuron::{FiringEvent, NeuronSpec, NeuronState, Port, Variant};
use crate::par::{self, Parallelism};
use crate::rounding::largest_remainder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// External input channel (not a neuron).
    Input(u32),
    Neuron(u32),
}

/// External photons injected at a neuron port or into an input channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stimulus {
    pub t_ns: f64,
    pub target: Source,
    #[serde(default)]
    pub port: Port,
    pub photons: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Network {
    neurons: Vec<NeuronSpec>,
    n_inputs: u32,
    classes: Vec<SynapseClass>,
    synapses: SynapseStore,
    stimuli: Vec<Stimulus>,
    series: Vec<(u32, u32)>,
}

impl Network {
    pub fn new() -> Self {
        Network::default()
    }

    pub fn add_neuron(&mut self, spec: NeuronSpec) -> u32 {
        self.neurons.push(spec);
        (self.neurons.len() - 1) as u32
    }

    /// Adds `n` input channels and returns the index of the first.
    pub fn add_inputs(&mut self, n: u32) -> u32 {
        let first = self.n_inputs;
        self.n_inputs += n;
        first
    }

    pub fn add_class(&mut self, class: SynapseClass) -> u16 {
        self.classes.push(class);
        (self.classes.len() - 1) as u16
    }

    pub fn connect(&mut self, src: Source, dst: u32, port: Port, class: u16, coupling: f64) -> Result<u32> {
        let valid_src = match src {
            Source::Input(i) => i < self.n_inputs,
            Source::Neuron(n) => (n as usize) < self.neurons.len(),
        };
        if !valid_src || dst as usize >= self.neurons.len() {
            return Err(SponError::config(format!("synapse {src:?} -> {dst} references a missing node")));
        }
        let cls = self
            .classes
            .get(class as usize)
            .ok_or_else(|| SponError::config(format!("unknown synapse class {class}")))?;
        if !(cls.c_min..=1.0).contains(&coupling) {
            return Err(SponError::config(format!("coupling {coupling} outside [{}, 1]", cls.c_min)));
        }
        let c = cls.quantize(coupling);
        Ok(self.synapses.push(src, dst, port, class, c))
    }

    pub fn add_stimulus(&mut self, s: Stimulus) {
        self.stimuli.push(s);
    }

    pub fn clear_stimuli(&mut self) {
        self.stimuli.clear();
    }

    /// Puts `upper` and `lower` on one bias line: firing of `upper` starves
    /// `lower` for the length of its refractory window.
    pub fn add_series_pair(&mut self, upper: u32, lower: u32) {
        self.series.push((upper, lower));
    }

    pub fn n_neurons(&self) -> u32 {
        self.neurons.len() as u32
    }

    pub fn n_inputs(&self) -> u32 {
        self.n_inputs
    }

    pub fn n_synapses(&self) -> usize {
        self.synapses.len()
    }

    pub fn neuron(&self, id: u32) -> &NeuronSpec {
        &self.neurons[id as usize]
    }

    pub fn neuron_mut(&mut self, id: u32) -> &mut NeuronSpec {
        &mut self.neurons[id as usize]
    }

    pub fn classes(&self) -> &[SynapseClass] {
        &self.classes
    }

    pub fn synapses(&self) -> &SynapseStore {
        &self.synapses
    }

    pub fn stimuli(&self) -> &[Stimulus] {
        &self.stimuli
    }

    pub fn series_pairs(&self) -> &[(u32, u32)] {
        &self.series
    }

    pub fn synapse(&self, s: u32) -> Synapse {
        self.synapses.get(s, &self.classes[self.synapses.class_of(s) as usize])
    }

    /// Overwrites every coupling, in synapse order, as an external training
    /// step would. Values are clamped to `[c_min, 1]` and the update rate
    /// limit restarts.
    pub fn set_weights(&mut self, couplings: &[f64]) -> Result<()> {
        if couplings.len() != self.synapses.len() {
            return Err(SponError::config(format!(
                "expected {} weights, got {}",
                self.synapses.len(),
                couplings.len()
            )));
        }
        if let Some(bad) = couplings.iter().find(|c| !c.is_finite()) {
            return Err(SponError::config(format!("weight {bad} is not finite")));
        }
        for (s, &c) in couplings.iter().enumerate() {
            let s = s as u32;
            let class = &self.classes[self.synapses.class_of(s) as usize];
            self.synapses.set_coupling(s, c.clamp(class.c_min, 1.0), class)?;
            self.synapses.clear_last_update(s);
        }
        Ok(())
    }

    pub fn set_weight(&mut self, s: u32, coupling: f64) -> Result<()> {
        if s as usize >= self.synapses.len() {
            return Err(SponError::config(format!("no synapse {s}")));
        }
        let class = &self.classes[self.synapses.class_of(s) as usize];
        self.synapses.set_coupling(s, coupling, class)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, n) in self.neurons.iter().enumerate() {
            n.validate().map_err(|e| SponError::config(format!("neuron {i}: {e}")))?;
        }
        for c in &self.classes {
            c.validate()?;
        }
        for s in &self.stimuli {
            if !(s.t_ns >= 0.0 && s.t_ns.is_finite()) {
                return Err(SponError::config("stimulus times must be finite and nonnegative"));
            }
            let ok = match s.target {
                Source::Input(i) => i < self.n_inputs,
                Source::Neuron(n) => n < self.n_neurons(),
            };
            if !ok {
                return Err(SponError::config(format!("stimulus targets missing node {:?}", s.target)));
            }
        }
        for &(u, l) in &self.series {
            if u >= self.n_neurons() || l >= self.n_neurons() || u == l {
                return Err(SponError::config(format!("invalid series pair ({u}, {l})")));
            }
        }
        Ok(())
    }
}

/// Serializable form of a [`Network`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkDoc {
    pub neurons: Vec<NeuronSpec>,
    pub n_inputs: u32,
    pub classes: Vec<SynapseClass>,
    pub synapses: Vec<SynapseDoc>,
    pub stimuli: Vec<Stimulus>,
    pub series: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynapseDoc {
    pub src: Source,
    pub dst: u32,
    #[serde(default)]
    pub port: Port,
    #[serde(default)]
    pub class: u16,
    pub coupling: f64,
}

impl NetworkDoc {
    pub fn build(&self) -> Result<Network> {
        let mut net = Network::new();
        for n in &self.neurons {
            net.add_neuron(n.clone());
        }
        net.add_inputs(self.n_inputs);
        for c in &self.classes {
            net.add_class(c.clone());
        }
        if net.classes.is_empty() {
            net.add_class(SynapseClass::default());
        }
        for s in &self.synapses {
            net.connect(s.src, s.dst, s.port, s.class, s.coupling)?;
        }
        for &st in &self.stimuli {
            net.add_stimulus(st);
        }
        for &(u, l) in &self.series {
            net.add_series_pair(u, l);
        }
        net.validate()?;
        Ok(net)
    }

    pub fn from_network(net: &Network) -> Self {
        let st = &net.synapses;
        NetworkDoc {
            neurons: net.neurons.clone(),
            n_inputs: net.n_inputs,
            classes: net.classes.clone(),
            synapses: (0..st.len() as u32)
                .map(|s| SynapseDoc {
                    src: st.source(s),
                    dst: st.target(s),
                    port: st.port(s),
                    class: st.class_of(s),
                    coupling: st.coupling(s),
                })
                .collect(),
            stimuli: net.stimuli.clone(),
            series: net.series.clone(),
        }
    }
}

/// Accounting of one fan-out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FanOutRecord {
    pub source: Source,
    pub photons_out: u64,
    pub tap_self: u64,
    pub tap_upstream: u64,
    /// Photons that reached synapse targets.
    pub delivered: u64,
    /// Photons lost in the couplers.
    pub lost: u64,
}

/// Compressed-row index of synapses grouped by a key.
#[derive(Debug, Clone, Default)]
struct Csr {
    offsets: Vec<u64>,
    /// Synapse ids in key order; `None` when storage order already is.
    order: Option<Vec<u32>>,
}

impl Csr {
    fn build(n_keys: usize, items: impl Iterator<Item = (u32, u32)> + Clone) -> Csr {
        let mut counts = vec![0u64; n_keys + 1];
        let mut sorted = true;
        let mut prev = 0u32;
        let mut expected_id = 0u32;
        for (k, id) in items.clone() {
            counts[k as usize + 1] += 1;
            sorted &= k >= prev && id == expected_id;
            prev = k;
            expected_id = id.wrapping_add(1);
        }
        for i in 0..n_keys {
            counts[i + 1] += counts[i];
        }
        if sorted {
            return Csr {
                offsets: counts,
                order: None,
            };
        }
        let total = counts[n_keys] as usize;
        let mut next = counts.clone();
        let mut order = vec![0u32; total];
        for (k, id) in items {
            let slot = &mut next[k as usize];
            order[*slot as usize] = id;
            *slot += 1;
        }
        Csr {
            offsets: counts,
            order: Some(order),
        }
    }

    fn row(&self, key: u32) -> impl Iterator<Item = u32> + '_ {
        let (a, b) = (self.offsets[key as usize], self.offsets[key as usize + 1]);
        (a..b).map(move |i| match &self.order {
            Some(o) => o[i as usize],
            None => i as u32,
        })
    }
}

/// One simulation run.
#[derive(Debug)]
pub struct Simulation {
    net: Network,
    states: Vec<NeuronState>,
    queue: EventQueue,
    seed: u64,
    outgoing: Csr,
    plastic_incoming: Csr,
    last_fire: Vec<Option<f64>>,
    series_lower: Vec<Vec<u32>>,
    clock: f64,
    trace: Vec<TraceRecord>,
    fan_outs: Option<Vec<FanOutRecord>>,
}

impl Simulation {
    pub fn new(net: Network, seed: u64) -> Result<Self> {
        net.validate()?;
        let n = net.n_neurons();
        let st = &net.synapses;
        let outgoing = Csr::build(
            (n + net.n_inputs) as usize,
            (0..st.len() as u32).map(|s| (st.source_key(s, n), s)),
        );
        let classes = &net.classes;
        let plastic = move |s: &u32| {
            classes[st.class_of(*s) as usize].is_plastic()
                && st.port(*s) == Port::Excite
                && matches!(st.source(*s), Source::Neuron(_))
        };
        let plastic_incoming = Csr::build(n as usize, (0..st.len() as u32).filter(plastic).map(|s| (st.target(s), s)));
        let mut series_lower = vec![Vec::new(); n as usize];
        for &(u, l) in &net.series {
            series_lower[u as usize].push(l);
        }
        let states = net.neurons.iter().map(NeuronState::new).collect();
        let mut queue = EventQueue::new();
        for s in &net.stimuli {
            let (target, source) = match s.target {
                Source::Input(i) => (Target::Input(i), n + i),
                Source::Neuron(id) => (Target::Neuron { id, port: s.port }, id),
            };
            queue.push(s.t_ns, source, EventKind::PhotonArrival { target, photons: s.photons })?;
        }
        for (id, spec) in net.neurons.iter().enumerate() {
            if spec.variant == Variant::IntegrateAndStop {
                let id = id as u32;
                queue.push(0.0, id, EventKind::RefractoryEnd { neuron: id })?;
            }
        }
        Ok(Simulation {
            last_fire: vec![None; n as usize],
            states,
            queue,
            seed,
            outgoing,
            plastic_incoming,
            series_lower,
            clock: 0.0,
            trace: Vec::new(),
            fan_outs: None,
            net,
        })
    }

    /// Records every fan-out for later accounting.
    pub fn log_fan_outs(mut self) -> Self {
        self.fan_outs = Some(Vec::new());
        self
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn into_network(self) -> Network {
        self.net
    }

    pub fn state(&self, id: u32) -> &NeuronState {
        &self.states[id as usize]
    }

    /// Time the simulation has been run up to.
    pub fn now(&self) -> f64 {
        self.clock
    }

    pub fn trace(&self) -> &[TraceRecord] {
        &self.trace
    }

    pub fn fan_outs(&self) -> &[FanOutRecord] {
        self.fan_outs.as_deref().unwrap_or(&[])
    }

    /// Injects photons at time `t` (not earlier than the current time).
    pub fn inject(&mut self, s: Stimulus) -> Result<()> {
        let n = self.net.n_neurons();
        let (target, source) = match s.target {
            Source::Input(i) => (Target::Input(i), n + i),
            Source::Neuron(id) => (Target::Neuron { id, port: s.port }, id),
        };
        self.queue.push(s.t_ns, source, EventKind::PhotonArrival { target, photons: s.photons })
    }

    /// Brings a neuron's leaky state up to time `t`.
    pub fn schedule_checkpoint(&mut self, neuron: u32, t: f64) -> Result<()> {
        self.queue.push(t, neuron, EventKind::DecayCheckpoint { neuron })
    }

    /// Processes every event up to and including `until`.
    pub fn run_until(&mut self, until: f64) -> Result<&[TraceRecord]> {
        if until < self.clock {
            return Err(SponError::Scheduling {
                t_ns: until,
                now_ns: self.clock,
            });
        }
        self.clock = until;
        while self.queue.peek_time().is_some_and(|t| t <= until) {
            let e = self.queue.pop().expect("peeked");
            self.process(e)?;
        }
        Ok(&self.trace)
    }

    fn event_seed(&self, neuron: u32, seq: u64) -> u64 {
        par::mix_seed(&[self.seed, u64::from(neuron), seq])
    }

    fn process(&mut self, e: Event) -> Result<()> {
        let seq = self.queue.next_seq();
        match e.kind {
            EventKind::RefractoryEnd { neuron } => self.try_fire(neuron, e.t, seq),
            EventKind::DecayCheckpoint { neuron } => {
                let spec = &self.net.neurons[neuron as usize];
                self.states[neuron as usize].receive_in_place(spec, 0, Port::Excite, e.t, 0);
                Ok(())
            }
            EventKind::PhotonArrival { target, photons } => match target {
                Target::Neuron { id, port } => {
                    let seed = self.event_seed(id, seq);
                    let spec = &self.net.neurons[id as usize];
                    self.states[id as usize].receive_in_place(spec, photons, port, e.t, seed);
                    self.try_fire(id, e.t, seq)
                }
                Target::Input(i) => {
                    let key = self.net.n_neurons() + i;
                    let record = FanOutRecord {
                        source: Source::Input(i),
                        photons_out: photons,
                        tap_self: 0,
                        tap_upstream: 0,
                        delivered: 0,
                        lost: 0,
                    };
                    self.fan_out(key, photons, e.t, record)
                }
            },
            EventKind::WeightUpdate { synapse, t_pre } => {
                let class = &self.net.classes[self.net.synapses.class_of(synapse) as usize];
                let before = self.net.synapses.get(synapse, class);
                let after = stdp_update(&before, class, t_pre, e.t);
                if after != before {
                    self.net.synapses.store_plastic(synapse, &after);
                }
                Ok(())
            }
        }
    }

    fn try_fire(&mut self, id: u32, t: f64, seq: u64) -> Result<()> {
        let seed = par::mix_seed(&[self.event_seed(id, seq), 1]);
        let spec = &self.net.neurons[id as usize];
        let before = self.states[id as usize].refractory_until;
        match self.states[id as usize].fire_in_place(spec, t, seed)? {
            Some(ev) => self.handle_fire(id, ev),
            None => {
                // a switch that produced no light still ends in a refractory window
                let until = self.states[id as usize].refractory_until;
                if until != before {
                    self.queue.push(until, id, EventKind::RefractoryEnd { neuron: id })?;
                }
                Ok(())
            }
        }
    }

    fn handle_fire(&mut self, id: u32, ev: FiringEvent) -> Result<()> {
        self.trace.push(TraceRecord {
            t_ns: ev.t,
            neuron_id: id,
            photons_out: ev.photons_out,
        });
        self.queue.push(ev.t_end, id, EventKind::RefractoryEnd { neuron: id })?;
        for &lower in &self.series_lower[id as usize] {
            self.states[lower as usize].apply_series_deficit(ev.drive_ua, ev.t_end);
            // the starved neuron gets another chance once its bias returns
            self.queue.push(ev.t_end, lower, EventKind::RefractoryEnd { neuron: lower })?;
        }
        let record = FanOutRecord {
            source: Source::Neuron(id),
            photons_out: ev.photons_out,
            tap_self: ev.tap_self,
            tap_upstream: ev.tap_upstream,
            delivered: 0,
            lost: 0,
        };
        self.fan_out(id, ev.downstream, ev.t, record)?;

        let incoming: Vec<u32> = self.plastic_incoming.row(id).collect();
        for s in incoming {
            let Source::Neuron(pre) = self.net.synapses.source(s) else {
                continue;
            };
            if pre == id {
                continue;
            }
            if let Some(t_pre) = self.last_fire[pre as usize] {
                let window = self.net.classes[self.net.synapses.class_of(s) as usize].stdp_window_ns;
                let dt = ev.t - t_pre;
                if dt > 0.0 && dt <= window {
                    self.queue.push(ev.t, s, EventKind::WeightUpdate { synapse: s, t_pre })?;
                }
            }
        }
        self.last_fire[id as usize] = Some(ev.t);
        Ok(())
    }

    /// Splits `budget` photons over the outgoing synapses of `key` in
    /// proportion to their couplings; the remainder is coupler loss.
    fn fan_out(&mut self, key: u32, budget: u64, t: f64, mut record: FanOutRecord) -> Result<()> {
        let syns: Vec<u32> = self.outgoing.row(key).collect();
        let st = &self.net.synapses;
        let mut weights: Vec<f64> = syns.iter().map(|&s| st.coupling(s)).collect();
        let loss: f64 = weights.iter().map(|c| 1.0 - c).sum();
        weights.push(loss);
        let parts = if syns.is_empty() {
            vec![budget]
        } else {
            largest_remainder(budget, &weights)
        };
        for (&s, &count) in syns.iter().zip(&parts) {
            if count == 0 {
                continue;
            }
            let delay = self.net.classes[st.class_of(s) as usize].delay_ns;
            let target = Target::Neuron {
                id: st.target(s),
                port: st.port(s),
            };
            self.queue.push(t + delay, key, EventKind::PhotonArrival { target, photons: count })?;
            record.delivered += count;
        }
        record.lost = *parts.last().expect("loss bucket");
        if let Some(log) = &mut self.fan_outs {
            log.push(record);
        }
        Ok(())
    }
}

/// Runs `net` from time 0 to `until` and returns the firing trace.
pub fn simulate(net: &Network, until: f64, seed: u64) -> Result<Vec<TraceRecord>> {
    let mut sim = Simulation::new(net.clone(), seed)?;
    sim.run_until(until)?;
    Ok(sim.trace)
}

/// Independent runs of the same network, one per seed, in seed order.
pub fn simulate_sweep(net: &Network, until: f64, seeds: &[u64], mode: Parallelism) -> Result<Vec<Vec<TraceRecord>>> {
    par::map_items(seeds, mode, |&s| simulate(net, until, s)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::PndArray;

    fn sure_neuron() -> NeuronSpec {
        let mut spec = NeuronSpec {
            integration_time_ns: None,
            ..NeuronSpec::pnd(PndArray::new(10, 4.0, 1.0, 1).unwrap(), 0.5)
        };
        spec.emitter.efficiency = 1e-5;
        spec
    }

    fn chain(coupling: f64) -> Network {
        let mut net = Network::new();
        let a = net.add_neuron(sure_neuron());
        let b = net.add_neuron(sure_neuron());
        let c = net.add_class(SynapseClass::default());
        net.connect(Source::Neuron(a), b, Port::Excite, c, coupling).unwrap();
        net.add_stimulus(Stimulus {
            t_ns: 0.0,
            target: Source::Neuron(a),
            port: Port::Excite,
            photons: 10,
        });
        net
    }

    #[test]
    fn empty_network_has_empty_trace() {
        assert!(simulate(&Network::new(), 1000.0, 1).unwrap().is_empty());
    }

    #[test]
    fn chain_fires_downstream_once() {
        let trace = simulate(&chain(1.0), 1000.0, 1).unwrap();
        let ids: Vec<u32> = trace.iter().map(|r| r.neuron_id).collect();
        assert_eq!(ids, vec![0, 1]);
        assert!(trace[1].t_ns > trace[0].t_ns);
    }

    #[test]
    fn weak_coupling_stays_silent() {
        // 62 photons out against a threshold of 5: 6 delivered fire, 3 do not
        let trace = simulate(&chain(0.1), 1000.0, 1).unwrap();
        assert_eq!(trace.len(), 2);
        let trace = simulate(&chain(0.05), 1000.0, 1).unwrap();
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn conservation_at_fan_out() {
        let mut sim = Simulation::new(chain(0.3), 4).unwrap().log_fan_outs();
        sim.run_until(1000.0).unwrap();
        for r in sim.fan_outs() {
            assert_eq!(r.delivered + r.lost + r.tap_self + r.tap_upstream, r.photons_out);
        }
        assert!(!sim.fan_outs().is_empty());
    }

    #[test]
    fn stdp_potentiates_causal_synapse() {
        let mut net = chain(0.5);
        net.classes[0] = SynapseClass {
            update_interval_min_ns: 0.0,
            ..SynapseClass::plastic(100.0, 0.5)
        };
        net.set_weight(0, 0.5).unwrap();
        let mut sim = Simulation::new(net, 1).unwrap();
        sim.run_until(1000.0).unwrap();
        assert_eq!(sim.trace().len(), 2);
        assert!(sim.network().synapses().coupling(0) > 0.5);
    }

    #[test]
    fn series_pair_silences_lower() {
        let mut net = Network::new();
        let up = net.add_neuron(sure_neuron());
        let low = net.add_neuron(sure_neuron());
        net.add_series_pair(up, low);
        for (t, id) in [(0.0, up), (1.0, low)] {
            net.add_stimulus(Stimulus {
                t_ns: t,
                target: Source::Neuron(id),
                port: Port::Excite,
                photons: 10,
            });
        }
        let trace = simulate(&net, 40.0, 0).unwrap();
        assert_eq!(trace.iter().map(|r| r.neuron_id).collect::<Vec<_>>(), vec![up]);
        let trace = simulate(&net, 100.0, 0).unwrap();
        assert_eq!(trace.iter().map(|r| r.neuron_id).collect::<Vec<_>>(), vec![up, low]);
    }

    #[test]
    fn rejects_scheduling_in_the_past() {
        let mut sim = Simulation::new(chain(1.0), 0).unwrap();
        sim.run_until(500.0).unwrap();
        assert!(sim.run_until(100.0).is_err());
    }

    #[test]
    fn doc_roundtrip() {
        let net = chain(0.4);
        let doc = NetworkDoc::from_network(&net);
        let json = serde_json::to_string(&doc).unwrap();
        let back: NetworkDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), net);
    }

    #[test]
    fn sweep_matches_individual_runs() {
        let net = chain(0.3);
        let seeds = [1, 2, 3];
        let s = simulate_sweep(&net, 500.0, &seeds, Parallelism::Sequential).unwrap();
        let p = simulate_sweep(&net, 500.0, &seeds, Parallelism::Parallel).unwrap();
        assert_eq!(s, p);
    }

    fn fan(class: SynapseClass) -> Network {
        let mut net = Network::new();
        let a = net.add_neuron(sure_neuron());
        let c = net.add_class(class);
        for k in 0..40 {
            let b = net.add_neuron(sure_neuron());
            net.connect(Source::Neuron(a), b, Port::Excite, c, 0.3 + 0.01 * f64::from(k)).unwrap();
        }
        net
    }

    #[test]
    fn weight_writes() {
        let mut net = fan(SynapseClass {
            c_min: 0.2,
            ..SynapseClass::default()
        });
        let before = net.clone();
        net.set_weights(before.synapses().couplings()).unwrap();
        assert_eq!(net, before);

        net.set_weights(&vec![0.0; 40]).unwrap();
        assert!(net.synapses().couplings().iter().all(|&c| c == 0.2));
        assert!(net.set_weights(&[0.5]).is_err());
        assert!(net.set_weights(&vec![f64::NAN; 40]).is_err());

        let mut q = fan(SynapseClass {
            quant_bits: Some(3),
            ..SynapseClass::default()
        });
        let w: Vec<f64> = (0..40).map(|k| f64::from(k) / 39.0).collect();
        q.set_weights(&w).unwrap();
        let distinct: std::collections::BTreeSet<u64> = q.synapses().couplings().iter().map(|c| c.to_bits()).collect();
        assert!(distinct.len() <= 8);
    }
}
