// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Single-photon optoelectronic neurons.
//!
//! A neuron is a receiver (PND or SND), an optional nTron current switch and
//! an LED. Absorbed photons leak away with the integration time. When the
//! receiver switches, the drive current is diverted into the LED for one
//! refractory window and the emitted photons are split between an optional
//! self-feedback tap, an optional upstream tap and the downstream synapses.
//!
//! State transitions are pure: [`receive`] and [`maybe_fire`] take the old
//! state by reference and return a new one.

use serde::{Deserialize, Serialize};

use crate::consts::{ELEMENTARY_CHARGE, HOTSPOT_RELAXATION_FLOOR_NS};
use crate::detector::{threshold_count, BiasPoint, PndArray, SndWire, WireStates};
use crate::emitter::{self, EmissionMode, LedJunction};
use crate::energy::{energy_per_event, EnergyBreakdown, EnergyModel};
use crate::error::{Result, SponError};
use crate::par;
use crate::rounding::largest_remainder;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Receiver {
    Pnd(PndArray),
    Snd(SndWire),
}

impl Receiver {
    /// Critical current the bias is expressed against, uA.
    pub fn critical_current_ua(&self) -> f64 {
        match self {
            Receiver::Pnd(a) => a.critical_current_ua(),
            Receiver::Snd(w) => w.i_c_ua,
        }
    }

    /// Critical current of one element, uA.
    fn element_current_ua(&self) -> f64 {
        match self {
            Receiver::Pnd(a) => a.i_c_wire_ua,
            Receiver::Snd(w) => w.i_c_ua,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Receiver::Pnd(a) => a.validate(),
            Receiver::Snd(w) => w.validate(),
        }
    }
}

/// Ideal current switch: once the gate current reaches the threshold, the
/// drive current flows into the LED.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NTron {
    pub gate_threshold_ua: f64,
    pub drive_ua: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    PndStep,
    SndContinuous,
    Gain,
    IntegrateAndStop,
    DualPort,
    SeriesInhibited,
    SelfFeedback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Port {
    #[default]
    Excite,
    Inhibit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NeuronSpec {
    pub receiver: Receiver,
    /// Receiver bias `I_1`.
    pub bias: BiasPoint,
    pub ntron: Option<NTron>,
    pub emitter: LedJunction,
    pub emission: EmissionMode,
    pub variant: Variant,
    pub inhibitory_receiver: Option<PndArray>,
    pub feedback_tap_fraction: f64,
    pub upstream_tap_fraction: f64,
    /// Leak time constant, ns. `None` never forgets (trapped flux).
    pub integration_time_ns: Option<f64>,
    pub refractory_ns: f64,
    /// Self-feedback photons held in the feedback receiver that quench the
    /// bias. `None` disables quenching.
    pub feedback_quench_photons: Option<f64>,
}

impl Default for NeuronSpec {
    fn default() -> Self {
        let array = PndArray::default();
        NeuronSpec {
            bias: array.bias(0.7),
            receiver: Receiver::Pnd(array),
            ntron: None,
            emitter: LedJunction::default(),
            emission: EmissionMode::Deterministic,
            variant: Variant::PndStep,
            inhibitory_receiver: None,
            feedback_tap_fraction: 0.0,
            upstream_tap_fraction: 0.0,
            integration_time_ns: Some(1.0),
            refractory_ns: 50.0,
            feedback_quench_photons: None,
        }
    }
}

impl NeuronSpec {
    pub fn pnd(array: PndArray, bias_fraction: f64) -> Self {
        NeuronSpec {
            bias: array.bias(bias_fraction),
            receiver: Receiver::Pnd(array),
            ..NeuronSpec::default()
        }
    }

    pub fn snd(wire: SndWire, bias_fraction: f64) -> Self {
        NeuronSpec {
            bias: BiasPoint::from_fraction(bias_fraction, wire.i_c_ua),
            receiver: Receiver::Snd(wire),
            variant: Variant::SndContinuous,
            ..NeuronSpec::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.receiver.validate()?;
        self.emitter.validate()?;
        let ic = self.receiver.critical_current_ua();
        if !(self.bias.i_bias_ua > 0.0 && self.bias.i_bias_ua < ic) {
            return Err(SponError::config(format!(
                "bias {} uA must lie in (0, {ic}) uA",
                self.bias.i_bias_ua
            )));
        }
        for (name, f) in [
            ("feedback_tap_fraction", self.feedback_tap_fraction),
            ("upstream_tap_fraction", self.upstream_tap_fraction),
        ] {
            if !(0.0..1.0).contains(&f) {
                return Err(SponError::config(format!("{name} must lie in [0, 1), got {f}")));
            }
        }
        if self.feedback_tap_fraction + self.upstream_tap_fraction >= 1.0 {
            return Err(SponError::config("tap fractions must sum to less than 1"));
        }
        if let Some(tau) = self.integration_time_ns {
            if !(tau >= HOTSPOT_RELAXATION_FLOOR_NS) {
                return Err(SponError::config(format!(
                    "integration time {tau} ns is below the {HOTSPOT_RELAXATION_FLOOR_NS} ns hotspot relaxation floor"
                )));
            }
        }
        if !(self.refractory_ns > 0.0 && self.refractory_ns.is_finite()) {
            return Err(SponError::config("refractory period must be positive"));
        }
        let snd = matches!(self.receiver, Receiver::Snd(_));
        if snd != (self.variant == Variant::SndContinuous) {
            return Err(SponError::config(
                "snd_continuous is the only variant with a series-wire receiver",
            ));
        }
        match self.variant {
            Variant::Gain if self.ntron.is_none() => {
                return Err(SponError::config("gain variant needs an nTron"));
            }
            Variant::DualPort if self.inhibitory_receiver.is_none() => {
                return Err(SponError::config("dual_port variant needs an inhibitory receiver"));
            }
            _ => {}
        }
        if let Some(inh) = &self.inhibitory_receiver {
            inh.validate()?;
        }
        if let Some(q) = self.feedback_quench_photons {
            if !(q > 0.0) {
                return Err(SponError::config("feedback_quench_photons must be positive"));
            }
        }
        Ok(())
    }

    /// Fractions of each firing sent to [self, upstream, downstream].
    fn tap_weights(&self) -> [f64; 3] {
        let (s, u) = (self.feedback_tap_fraction, self.upstream_tap_fraction);
        [s, u, 1.0 - s - u]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReceiverState {
    Pnd(WireStates),
    Snd(SndWire),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeuronState {
    /// Leaky tally of absorbed excitatory photons.
    pub absorbed_count: f64,
    pub receiver: ReceiverState,
    /// Leaky tally of photons absorbed at the inhibitory port.
    pub inhibit_count: f64,
    pub inhibit_wires: WireStates,
    /// Leaky tally of self-feedback photons.
    pub feedback_count: f64,
    pub refractory_until: f64,
    /// Time of the last update, ns.
    pub t_last: f64,
    /// Integrate-and-stop output enable.
    pub emitting: bool,
    /// Bias removed by a series partner, uA, and until when.
    pub series_deficit_ua: f64,
    pub series_deficit_until: f64,
}

impl NeuronState {
    pub fn new(spec: &NeuronSpec) -> Self {
        let receiver = match &spec.receiver {
            Receiver::Pnd(a) => ReceiverState::Pnd(WireStates::new(a.n_wires)),
            Receiver::Snd(w) => {
                let mut w = w.clone();
                w.clear();
                ReceiverState::Snd(w)
            }
        };
        NeuronState {
            absorbed_count: 0.0,
            receiver,
            inhibit_count: 0.0,
            inhibit_wires: WireStates::new(spec.inhibitory_receiver.as_ref().map_or(0, |a| a.n_wires)),
            feedback_count: 0.0,
            refractory_until: 0.0,
            t_last: 0.0,
            emitting: true,
            series_deficit_ua: 0.0,
            series_deficit_until: 0.0,
        }
    }

    /// Photon-driven normal elements of the main receiver.
    pub fn normal_count(&self) -> u32 {
        match &self.receiver {
            ReceiverState::Pnd(w) => w.normal_count(),
            ReceiverState::Snd(w) => w.occupied_count(),
        }
    }

    /// Bias removed by inhibitory-port hotspots, uA.
    pub fn inhibition_level_ua(&self, spec: &NeuronSpec) -> f64 {
        f64::from(self.inhibit_wires.normal_count()) * spec.receiver.element_current_ua()
    }

    fn decay_to(&mut self, spec: &NeuronSpec, t: f64) {
        let dt = t - self.t_last;
        if dt > 0.0 {
            if let Some(tau) = spec.integration_time_ns {
                let k = (-dt / tau).exp();
                self.absorbed_count *= k;
                self.inhibit_count *= k;
                self.feedback_count *= k;
                let keep = self.absorbed_count.floor() as u32;
                match &mut self.receiver {
                    ReceiverState::Pnd(w) => w.relax_to(keep),
                    ReceiverState::Snd(w) => w.relax_to(keep),
                }
                self.inhibit_wires.relax_to(self.inhibit_count.floor() as u32);
            }
            self.t_last = t;
        }
    }

    fn reset_receiver(&mut self) {
        self.absorbed_count = 0.0;
        match &mut self.receiver {
            ReceiverState::Pnd(w) => w.reset(),
            ReceiverState::Snd(w) => w.clear(),
        }
    }

    pub(crate) fn receive_in_place(&mut self, spec: &NeuronSpec, n_photons: u64, port: Port, t: f64, seed: u64) {
        self.decay_to(spec, t);
        let mut rng = par::trial_rng(seed, 0);
        match port {
            Port::Excite => {
                let absorbed = match (&spec.receiver, &mut self.receiver) {
                    (Receiver::Pnd(a), ReceiverState::Pnd(w)) => w.absorb_pulse(a, n_photons, None, &mut rng),
                    (_, ReceiverState::Snd(w)) => w.absorb(n_photons, &mut rng).absorbed,
                    (Receiver::Snd(_), ReceiverState::Pnd(_)) => 0,
                };
                self.absorbed_count += absorbed as f64;
            }
            Port::Inhibit => {
                // no inhibitory receiver: the light is lost
                if let Some(inh) = &spec.inhibitory_receiver {
                    let absorbed = self.inhibit_wires.absorb_pulse(inh, n_photons, None, &mut rng);
                    self.inhibit_count += absorbed as f64;
                }
            }
        }
    }

    pub(crate) fn add_feedback(&mut self, photons: u64) {
        self.feedback_count += photons as f64;
    }

    pub(crate) fn apply_series_deficit(&mut self, deficit_ua: f64, until: f64) {
        self.series_deficit_ua = deficit_ua;
        self.series_deficit_until = self.series_deficit_until.max(until);
    }
}

/// Receiver bias after inhibition, series loading and feedback quench, uA.
pub fn effective_bias_ua(spec: &NeuronSpec, state: &NeuronState, t: f64) -> f64 {
    if let Some(q) = spec.feedback_quench_photons {
        if state.feedback_count >= q {
            return 0.0;
        }
    }
    let mut i = spec.bias.i_bias_ua - state.inhibition_level_ua(spec);
    if t < state.series_deficit_until {
        i -= state.series_deficit_ua;
    }
    i
}

/// Photon-driven normal wires currently needed to fire, or `None` if the
/// neuron cannot fire at its present bias.
pub fn current_threshold(spec: &NeuronSpec, state: &NeuronState, t: f64) -> Option<u32> {
    let Receiver::Pnd(array) = &spec.receiver else {
        return None;
    };
    let i = effective_bias_ua(spec, state, t);
    if i <= 0.0 {
        return None;
    }
    threshold_count(array, &BiasPoint::from_current(i, array.critical_current_ua())).ok()
}

/// Output of one firing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiringEvent {
    pub t: f64,
    pub photons_out: u64,
    pub tap_self: u64,
    pub tap_upstream: u64,
    pub downstream: u64,
    /// End of the refractory window.
    pub t_end: f64,
    /// Current that drove the LED, uA.
    pub drive_ua: f64,
}

impl FiringEvent {
    /// Energy of this event. Events without photons cost nothing.
    pub fn energy(&self, m: &EnergyModel) -> Result<Option<EnergyBreakdown>> {
        if self.photons_out == 0 {
            return Ok(None);
        }
        energy_per_event(m, self.photons_out).map(Some)
    }
}

/// Absorbs `n_photons` at `port` at time `t`, after leaking since the last
/// update. Photons arriving during the refractory window are absorbed too;
/// they only count once the window has ended.
pub fn receive(spec: &NeuronSpec, state: &NeuronState, n_photons: u64, port: Port, t: f64, seed: u64) -> NeuronState {
    let mut s = state.clone();
    s.receive_in_place(spec, n_photons, port, t, seed);
    s
}

fn emitted(spec: &NeuronSpec, drive_ua: f64, seed: u64) -> u64 {
    let expected = spec.emitter.efficiency * drive_ua * 1e-6 * spec.refractory_ns * 1e-9 / ELEMENTARY_CHARGE;
    spec.emission.count(expected, &mut par::trial_rng(seed, 1))
}

/// LED drive current at firing, or `None` if the nTron does not switch.
fn drive_current(spec: &NeuronSpec, gate_ua: f64) -> Option<f64> {
    match spec.ntron {
        Some(nt) if gate_ua >= nt.gate_threshold_ua => Some(nt.drive_ua),
        Some(_) => None,
        None => Some(gate_ua),
    }
}

/// Fires if the threshold is met and the neuron is not refractory.
pub fn maybe_fire(spec: &NeuronSpec, state: &NeuronState, t: f64, seed: u64) -> Result<(NeuronState, Option<FiringEvent>)> {
    let mut s = state.clone();
    let ev = s.fire_in_place(spec, t, seed)?;
    Ok((s, ev))
}

impl NeuronState {
    pub(crate) fn fire_in_place(&mut self, spec: &NeuronSpec, t: f64, seed: u64) -> Result<Option<FiringEvent>> {
        if t < self.refractory_until {
            return Ok(None);
        }
        self.decay_to(spec, t);
        let i_eff = effective_bias_ua(spec, self, t);

        let (drive, photons) = match spec.variant {
            Variant::SndContinuous => {
                let ReceiverState::Snd(wire) = &self.receiver else {
                    return Ok(None);
                };
                if i_eff <= 0.0 || wire.occupied_count() == 0 {
                    return Ok(None);
                }
                let bias = BiasPoint::from_current(i_eff, wire.i_c_ua);
                let op = emitter::snd_led_operating_point(wire, &spec.emitter, &bias)?;
                let n = emitted(spec, op.i_led_ua, seed);
                if n == 0 {
                    return Ok(None);
                }
                (op.i_led_ua, n)
            }
            Variant::IntegrateAndStop => {
                if !self.emitting {
                    return Ok(None);
                }
                let switched = current_threshold(spec, self, t).is_some_and(|nc| self.normal_count() >= nc);
                if switched {
                    // the switched receiver cuts the supply for good
                    self.emitting = false;
                    self.reset_receiver();
                    return Ok(None);
                }
                if i_eff <= 0.0 {
                    return Ok(None);
                }
                let Some(drive) = drive_current(spec, i_eff) else {
                    return Ok(None);
                };
                (drive, emitted(spec, drive, seed))
            }
            _ => {
                let Some(nc) = current_threshold(spec, self, t) else {
                    return Ok(None);
                };
                if self.normal_count() < nc {
                    return Ok(None);
                }
                self.reset_receiver();
                self.refractory_until = t + spec.refractory_ns;
                let Some(drive) = drive_current(spec, i_eff) else {
                    return Ok(None);
                };
                (drive, emitted(spec, drive, seed))
            }
        };

        if spec.variant == Variant::SndContinuous {
            self.reset_receiver();
        }
        self.refractory_until = t + spec.refractory_ns;
        let parts = largest_remainder(photons, &spec.tap_weights());
        self.add_feedback(parts[0]);
        Ok(Some(FiringEvent {
            t,
            photons_out: photons,
            tap_self: parts[0],
            tap_upstream: parts[1],
            downstream: parts[2],
            t_end: self.refractory_until,
            drive_ua: drive,
        }))
    }
}

/// One step of two neurons on a shared bias line: if the upper neuron fires,
/// its drive current is taken from the lower neuron until the upper's
/// refractory window ends. The upper neuron is evaluated first.
pub fn series_pair_step(
    upper: (&NeuronSpec, &NeuronState),
    lower: (&NeuronSpec, &NeuronState),
    t: f64,
    seed: u64,
) -> Result<(NeuronState, NeuronState, [Option<FiringEvent>; 2])> {
    let (up_state, up_ev) = maybe_fire(upper.0, upper.1, t, par::mix_seed(&[seed, 0]))?;
    let mut low = lower.1.clone();
    if let Some(ev) = &up_ev {
        low.apply_series_deficit(ev.drive_ua, ev.t_end);
    }
    let low_ev = low.fire_in_place(lower.0, t, par::mix_seed(&[seed, 1]))?;
    Ok((up_state, low, [up_ev, low_ev]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Every passing photon is absorbed: absorbed count equals min(photons, free wires).
    fn sure_array(n: u32) -> PndArray {
        PndArray::new(n, 4.0, 1.0, 1).unwrap()
    }

    fn step_spec() -> NeuronSpec {
        NeuronSpec {
            integration_time_ns: None,
            ..NeuronSpec::pnd(sure_array(10), 0.5)
        }
    }

    #[test]
    fn validation() {
        assert!(NeuronSpec::default().validate().is_ok());
        let taps = NeuronSpec {
            feedback_tap_fraction: 0.6,
            upstream_tap_fraction: 0.4,
            ..NeuronSpec::default()
        };
        assert!(taps.validate().is_err());
        let gain = NeuronSpec {
            variant: Variant::Gain,
            ..NeuronSpec::default()
        };
        assert!(gain.validate().is_err());
        let dual = NeuronSpec {
            variant: Variant::DualPort,
            ..NeuronSpec::default()
        };
        assert!(dual.validate().is_err());
        let fast = NeuronSpec {
            integration_time_ns: Some(0.1),
            ..NeuronSpec::default()
        };
        assert!(fast.validate().is_err());
        assert!(NeuronSpec::snd(SndWire::default(), 0.7).validate().is_ok());
    }

    #[test]
    fn zero_photons_is_pure_decay() {
        let spec = NeuronSpec {
            integration_time_ns: Some(10.0),
            ..NeuronSpec::pnd(sure_array(10), 0.5)
        };
        let s0 = receive(&spec, &NeuronState::new(&spec), 4, Port::Excite, 0.0, 1);
        let s1 = receive(&spec, &s0, 0, Port::Excite, 10.0, 2);
        assert!((s1.absorbed_count - 4.0 * (-1.0f64).exp()).abs() < 1e-12);
        assert_eq!(s1.normal_count(), 1);
    }

    #[test]
    fn trapped_flux_accumulates() {
        let spec = step_spec();
        let mut s = NeuronState::new(&spec);
        let mut last = 0.0;
        for k in 0..4u32 {
            s = receive(&spec, &s, 1, Port::Excite, 1000.0 * f64::from(k), k.into());
            assert!(s.absorbed_count > last);
            last = s.absorbed_count;
        }
    }

    #[test]
    fn fires_at_threshold_with_step_output() {
        let spec = step_spec();
        let s = receive(&spec, &NeuronState::new(&spec), 4, Port::Excite, 0.0, 1);
        assert!(maybe_fire(&spec, &s, 0.0, 0).unwrap().1.is_none());
        let mut outputs = Vec::new();
        for extra in 1..=6 {
            let s = receive(&spec, &NeuronState::new(&spec), 4 + extra, Port::Excite, 0.0, 1);
            let (after, ev) = maybe_fire(&spec, &s, 0.0, 0).unwrap();
            let ev = ev.unwrap();
            assert_eq!(after.normal_count(), 0);
            assert_eq!(ev.t_end, 50.0);
            outputs.push(ev.photons_out);
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]));
        // 0.01 * 20 uA * 50 ns / e
        assert_eq!(outputs[0], (0.01 * 20e-6 * 50e-9 / ELEMENTARY_CHARGE) as u64);
    }

    #[test]
    fn refractory_blocks_firing_but_not_absorption() {
        let spec = step_spec();
        let s = receive(&spec, &NeuronState::new(&spec), 10, Port::Excite, 0.0, 1);
        let (s, ev) = maybe_fire(&spec, &s, 0.0, 0).unwrap();
        assert!(ev.is_some());
        let s = receive(&spec, &s, 10, Port::Excite, 10.0, 2);
        assert_eq!(s.normal_count(), 10);
        assert!(maybe_fire(&spec, &s, 10.0, 0).unwrap().1.is_none());
        assert!(maybe_fire(&spec, &s, 50.0, 0).unwrap().1.is_some());
    }

    #[test]
    fn ntron_decouples_output_from_bias() {
        let spec = NeuronSpec {
            variant: Variant::Gain,
            ntron: Some(NTron {
                gate_threshold_ua: 5.0,
                drive_ua: 100.0,
            }),
            ..step_spec()
        };
        let s = receive(&spec, &NeuronState::new(&spec), 5, Port::Excite, 0.0, 1);
        let ev = maybe_fire(&spec, &s, 0.0, 0).unwrap().1.unwrap();
        assert_eq!(ev.drive_ua, 100.0);
        let weak_gate = NeuronSpec {
            ntron: Some(NTron {
                gate_threshold_ua: 25.0,
                drive_ua: 100.0,
            }),
            ..spec
        };
        let (after, ev) = maybe_fire(&weak_gate, &s, 0.0, 0).unwrap();
        assert!(ev.is_none());
        assert_eq!(after.normal_count(), 0);
    }

    #[test]
    fn inhibition_raises_threshold() {
        let spec = NeuronSpec {
            variant: Variant::DualPort,
            inhibitory_receiver: Some(sure_array(10)),
            ..step_spec()
        };
        let s0 = NeuronState::new(&spec);
        let base = current_threshold(&spec, &s0, 0.0).unwrap();
        let s1 = receive(&spec, &s0, 2, Port::Inhibit, 0.0, 1);
        let raised = current_threshold(&spec, &s1, 0.0).unwrap();
        assert!(raised > base, "{base} -> {raised}");
        // five inhibit hotspots remove the whole 20 uA bias
        let s2 = receive(&spec, &s1, 3, Port::Inhibit, 0.0, 2);
        assert_eq!(current_threshold(&spec, &s2, 0.0), None);
    }

    #[test]
    fn inhibit_without_receiver_is_dropped() {
        let spec = step_spec();
        let s = receive(&spec, &NeuronState::new(&spec), 5, Port::Inhibit, 0.0, 1);
        assert_eq!(s, {
            let mut z = NeuronState::new(&spec);
            z.t_last = 0.0;
            z
        });
    }

    #[test]
    fn integrate_and_stop_runs_inverted() {
        let spec = NeuronSpec {
            variant: Variant::IntegrateAndStop,
            ..step_spec()
        };
        let s = NeuronState::new(&spec);
        let (s, ev) = maybe_fire(&spec, &s, 0.0, 0).unwrap();
        assert!(ev.is_some());
        let (s, ev) = maybe_fire(&spec, &s, 50.0, 0).unwrap();
        assert!(ev.is_some());
        let s = receive(&spec, &s, 5, Port::Excite, 60.0, 1);
        let (s, ev) = maybe_fire(&spec, &s, 100.0, 0).unwrap();
        assert!(ev.is_none());
        assert!(!s.emitting);
        assert!(maybe_fire(&spec, &s, 1000.0, 0).unwrap().1.is_none());
    }

    #[test]
    fn self_feedback_quenches() {
        let spec = NeuronSpec {
            variant: Variant::SelfFeedback,
            feedback_tap_fraction: 0.5,
            feedback_quench_photons: Some(100.0),
            integration_time_ns: Some(200.0),
            ..NeuronSpec::pnd(sure_array(10), 0.5)
        };
        let mut s = NeuronState::new(&spec);
        let mut fired = 0;
        for k in 0..20u32 {
            let t = 50.0 * f64::from(k);
            s = receive(&spec, &s, 10, Port::Excite, t, k.into());
            let (next, ev) = maybe_fire(&spec, &s, t, 0).unwrap();
            s = next;
            if let Some(ev) = ev {
                fired += 1;
                assert_eq!(ev.tap_self + ev.tap_upstream + ev.downstream, ev.photons_out);
            }
        }
        assert!(fired > 0 && fired < 20, "fired {fired}");
    }

    #[test]
    fn snd_neuron_output_grows_with_input() {
        let spec = NeuronSpec {
            integration_time_ns: None,
            ..NeuronSpec::snd(SndWire::default(), 0.7)
        };
        let out = |n| {
            let s = receive(&spec, &NeuronState::new(&spec), n, Port::Excite, 0.0, 3);
            maybe_fire(&spec, &s, 0.0, 0).unwrap().1.map_or(0, |e| e.photons_out)
        };
        assert_eq!(out(0), 0);
        assert!(out(3000) > out(1000));
    }

    #[test]
    fn series_pair() {
        let spec = step_spec();
        let primed = receive(&spec, &NeuronState::new(&spec), 10, Port::Excite, 0.0, 1);
        let idle = NeuronState::new(&spec);
        // upper idle: lower behaves as if alone
        let (_, _, evs) = series_pair_step((&spec, &idle), (&spec, &primed), 0.0, 5).unwrap();
        assert!(evs[0].is_none() && evs[1].is_some());
        // upper fires: its 20 uA drive silences the lower neuron
        let (_, low, evs) = series_pair_step((&spec, &primed), (&spec, &primed), 0.0, 5).unwrap();
        assert!(evs[0].is_some() && evs[1].is_none());
        assert!(maybe_fire(&spec, &low, 49.0, 0).unwrap().1.is_none());
        assert!(maybe_fire(&spec, &low, 50.0, 0).unwrap().1.is_some());
    }

    #[test]
    fn energy_hook() {
        let spec = step_spec();
        let m = EnergyModel::with_efficiency(spec.emitter.efficiency);
        let mut s = NeuronState::new(&spec);
        let mut events = Vec::new();
        for k in 0..5u64 {
            let t = 100.0 * k as f64;
            s = receive(&spec, &s, 10, Port::Excite, t, k);
            let (next, ev) = maybe_fire(&spec, &s, t, 0).unwrap();
            s = next;
            events.extend(ev);
        }
        let total: f64 = events.iter().map(|e| e.energy(&m).unwrap().unwrap().total_aj).sum();
        let one = events[0].energy(&m).unwrap().unwrap().total_aj;
        assert_eq!(events.len(), 5);
        assert!((total - 5.0 * one).abs() < 1e-9 * total);
    }

    proptest! {
        #[test]
        fn step_output_has_zero_variance(extra in 0u64..1000, frac in 0.05f64..0.95) {
            let spec = NeuronSpec { integration_time_ns: None, ..NeuronSpec::pnd(sure_array(10), frac) };
            let reference = {
                let s = receive(&spec, &NeuronState::new(&spec), 10, Port::Excite, 0.0, 0);
                maybe_fire(&spec, &s, 0.0, 0).unwrap().1.unwrap().photons_out
            };
            let s = receive(&spec, &NeuronState::new(&spec), 10 + extra, Port::Excite, 0.0, extra);
            let ev = maybe_fire(&spec, &s, 0.0, extra).unwrap().1.unwrap();
            prop_assert_eq!(ev.photons_out, reference);
        }

        #[test]
        fn events_respect_refractory(arrivals in prop::collection::vec((0.0f64..2000.0, 0u64..15), 1..60)) {
            let spec = NeuronSpec { integration_time_ns: Some(20.0), ..NeuronSpec::pnd(sure_array(10), 0.5) };
            let mut arrivals = arrivals;
            arrivals.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut s = NeuronState::new(&spec);
            let mut times: Vec<f64> = Vec::new();
            for (k, (t, n)) in arrivals.into_iter().enumerate() {
                s = receive(&spec, &s, n, Port::Excite, t, k as u64);
                let (next, ev) = maybe_fire(&spec, &s, t, 0).unwrap();
                s = next;
                times.extend(ev.map(|e| e.t));
            }
            for w in times.windows(2) {
                prop_assert!(w[1] - w[0] >= spec.refractory_ns);
            }
        }

        #[test]
        fn inhibit_photons_never_lower_threshold(shots in prop::collection::vec(0u64..4, 1..10)) {
            let spec = NeuronSpec {
                variant: Variant::DualPort,
                inhibitory_receiver: Some(PndArray::new(10, 4.0, 0.05, 20).unwrap()),
                ..step_spec()
            };
            let mut s = NeuronState::new(&spec);
            let mut last = current_threshold(&spec, &s, 0.0).map_or(u32::MAX, |x| x);
            for (k, n) in shots.into_iter().enumerate() {
                s = receive(&spec, &s, n, Port::Inhibit, 0.0, k as u64);
                let now = current_threshold(&spec, &s, 0.0).map_or(u32::MAX, |x| x);
                prop_assert!(now >= last);
                last = now;
            }
        }
    }
}
