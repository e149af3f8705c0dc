// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! MEMS-coupler synapses.
//!
//! A synapse delivers a fraction `coupling` of the photons routed to it.
//! Charge on the coupler's capacitor pulls the waveguides together, so the
//! coupling grows with charge and saturates at 1:
//!
//! `coupling = c_min + (1 - c_min) * (1 - exp(-charge / q_scale))`.
//!
//! Charge is only ever added, by causal pre-before-post pairings. Explicit
//! writes through [`SynapseStore::set_coupling`] are the only way down.
//!
//! Storage is struct-of-arrays so that very large layers stay compact;
//! plastic state is kept only for synapses that have been touched.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::consts::{SI_WAVEGUIDE_GROUP_INDEX, SPEED_OF_LIGHT};
use crate::error::{Result, SponError};
use crate::neuron::Port;

/// Shared parameters of a group of synapses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynapseClass {
    pub c_min: f64,
    /// Charge scale of the coupling map, arbitrary units.
    pub q_scale: f64,
    /// Pairing window, ns. Zero disables plasticity.
    pub stdp_window_ns: f64,
    /// Charge added per causal pairing.
    pub delta_q_pot: f64,
    /// Shortest time between two applied updates, ns.
    pub update_interval_min_ns: f64,
    /// Propagation delay, ns.
    pub delay_ns: f64,
    /// Quantize couplings to this many bits over `[c_min, 1]`.
    pub quant_bits: Option<u8>,
}

impl Default for SynapseClass {
    fn default() -> Self {
        SynapseClass {
            c_min: 0.0,
            q_scale: 1.0,
            stdp_window_ns: 0.0,
            delta_q_pot: 0.1,
            update_interval_min_ns: 1000.0,
            delay_ns: delay_for_path_um(100.0),
            quant_bits: None,
        }
    }
}

/// Time of flight along `path_um` of waveguide, ns.
pub fn delay_for_path_um(path_um: f64) -> f64 {
    path_um * 1e-6 * SI_WAVEGUIDE_GROUP_INDEX / SPEED_OF_LIGHT * 1e9
}

impl SynapseClass {
    pub fn plastic(stdp_window_ns: f64, delta_q_pot: f64) -> Self {
        SynapseClass {
            stdp_window_ns,
            delta_q_pot,
            ..SynapseClass::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.c_min) {
            return Err(SponError::config("c_min must lie in [0, 1]"));
        }
        if !(self.q_scale > 0.0 && self.q_scale.is_finite()) {
            return Err(SponError::config("q_scale must be positive"));
        }
        for (name, v) in [
            ("stdp_window_ns", self.stdp_window_ns),
            ("delta_q_pot", self.delta_q_pot),
            ("update_interval_min_ns", self.update_interval_min_ns),
            ("delay_ns", self.delay_ns),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(SponError::config(format!("{name} must be nonnegative, got {v}")));
            }
        }
        if self.quant_bits.is_some_and(|b| b == 0 || b > 32) {
            return Err(SponError::config("quant_bits must lie in 1..=32"));
        }
        Ok(())
    }

    pub fn is_plastic(&self) -> bool {
        self.stdp_window_ns > 0.0 && self.delta_q_pot > 0.0
    }

    /// Coupling for a given accumulated charge.
    pub fn coupling_for_charge(&self, charge: f64) -> f64 {
        let c = self.c_min + (1.0 - self.c_min) * -(-charge / self.q_scale).exp_m1();
        self.quantize(c.clamp(self.c_min, 1.0))
    }

    /// Charge that produces `coupling` (inverse of the map, before
    /// quantization). Infinite at full coupling.
    pub fn charge_for_coupling(&self, coupling: f64) -> f64 {
        if self.c_min >= 1.0 {
            return 0.0;
        }
        let x = ((coupling - self.c_min) / (1.0 - self.c_min)).clamp(0.0, 1.0);
        -self.q_scale * (-x).ln_1p()
    }

    pub fn quantize(&self, c: f64) -> f64 {
        match self.quant_bits {
            None => c,
            Some(b) => {
                let levels = ((1u64 << b) - 1) as f64;
                let span = 1.0 - self.c_min;
                if span <= 0.0 {
                    return c;
                }
                let k = ((c - self.c_min) / span * levels).round();
                (self.c_min + k / levels * span).clamp(self.c_min, 1.0)
            }
        }
    }
}

/// One synapse with its plastic state, as a value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Synapse {
    pub src: super::Source,
    pub dst: u32,
    pub dst_port: Port,
    pub coupling: f64,
    pub charge: f64,
    /// Time of the last applied weight update, ns.
    pub last_update: Option<f64>,
}

/// Applies one pre/post pairing. Only causal pairs inside the window add
/// charge, and updates closer together than the class interval are dropped.
pub fn stdp_update(s: &Synapse, class: &SynapseClass, t_pre: f64, t_post: f64) -> Synapse {
    let mut out = s.clone();
    let dt = t_post - t_pre;
    if !(dt > 0.0 && dt <= class.stdp_window_ns) || s.dst_port == Port::Inhibit {
        return out;
    }
    if let Some(last) = s.last_update {
        if t_post - last < class.update_interval_min_ns {
            return out;
        }
    }
    out.charge += class.delta_q_pot;
    out.coupling = class.coupling_for_charge(out.charge).max(s.coupling);
    out.last_update = Some(t_post);
    out
}

const FLAG_INHIBIT: u8 = 1;
const FLAG_INPUT: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Plastic {
    pub charge: f64,
    pub last_update: Option<f64>,
}

/// Struct-of-arrays synapse table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SynapseStore {
    src: Vec<u32>,
    dst: Vec<u32>,
    flags: Vec<u8>,
    class: Vec<u16>,
    coupling: Vec<f64>,
    plastic: HashMap<u32, Plastic>,
}

impl SynapseStore {
    pub fn with_capacity(n: usize) -> Self {
        SynapseStore {
            src: Vec::with_capacity(n),
            dst: Vec::with_capacity(n),
            flags: Vec::with_capacity(n),
            class: Vec::with_capacity(n),
            coupling: Vec::with_capacity(n),
            plastic: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.src.len()
    }

    pub fn is_empty(&self) -> bool {
        self.src.is_empty()
    }

    pub(crate) fn push(&mut self, src: super::Source, dst: u32, port: Port, class: u16, coupling: f64) -> u32 {
        let (id, input) = match src {
            super::Source::Neuron(n) => (n, 0),
            super::Source::Input(i) => (i, FLAG_INPUT),
        };
        let inhibit = if port == Port::Inhibit { FLAG_INHIBIT } else { 0 };
        self.src.push(id);
        self.dst.push(dst);
        self.flags.push(input | inhibit);
        self.class.push(class);
        self.coupling.push(coupling);
        (self.src.len() - 1) as u32
    }

    pub fn source(&self, s: u32) -> super::Source {
        let i = s as usize;
        if self.flags[i] & FLAG_INPUT != 0 {
            super::Source::Input(self.src[i])
        } else {
            super::Source::Neuron(self.src[i])
        }
    }

    pub fn target(&self, s: u32) -> u32 {
        self.dst[s as usize]
    }

    pub fn port(&self, s: u32) -> Port {
        if self.flags[s as usize] & FLAG_INHIBIT != 0 {
            Port::Inhibit
        } else {
            Port::Excite
        }
    }

    pub fn class_of(&self, s: u32) -> u16 {
        self.class[s as usize]
    }

    pub fn coupling(&self, s: u32) -> f64 {
        self.coupling[s as usize]
    }

    pub fn couplings(&self) -> &[f64] {
        &self.coupling
    }

    /// Synapse `s` as a value.
    pub fn get(&self, s: u32, class: &SynapseClass) -> Synapse {
        let p = self.plastic.get(&s).copied();
        let coupling = self.coupling(s);
        Synapse {
            src: self.source(s),
            dst: self.target(s),
            dst_port: self.port(s),
            coupling,
            charge: p.map_or_else(|| class.charge_for_coupling(coupling), |p| p.charge),
            last_update: p.and_then(|p| p.last_update),
        }
    }

    pub(crate) fn store_plastic(&mut self, s: u32, syn: &Synapse) {
        self.coupling[s as usize] = syn.coupling;
        self.plastic.insert(
            s,
            Plastic {
                charge: syn.charge,
                last_update: syn.last_update,
            },
        );
    }

    /// Writes a coupling directly. Plastic synapses get the charge that
    /// reproduces it, capped so that full coupling stays finite.
    pub fn set_coupling(&mut self, s: u32, coupling: f64, class: &SynapseClass) -> Result<()> {
        if !(class.c_min..=1.0).contains(&coupling) {
            return Err(SponError::config(format!(
                "coupling {coupling} of synapse {s} outside [{}, 1]",
                class.c_min
            )));
        }
        let c = class.quantize(coupling);
        self.coupling[s as usize] = c;
        if class.is_plastic() {
            let charge = class.charge_for_coupling(c).min(50.0 * class.q_scale);
            let last_update = self.plastic.get(&s).and_then(|p| p.last_update);
            self.plastic.insert(s, Plastic { charge, last_update });
        }
        Ok(())
    }

    pub(crate) fn clear_last_update(&mut self, s: u32) {
        if let Some(p) = self.plastic.get_mut(&s) {
            p.last_update = None;
        }
    }

    /// Key grouping synapses by source: neurons first, then input channels.
    pub(crate) fn source_key(&self, s: u32, n_neurons: u32) -> u32 {
        let i = s as usize;
        if self.flags[i] & FLAG_INPUT != 0 {
            n_neurons + self.src[i]
        } else {
            self.src[i]
        }
    }
}
