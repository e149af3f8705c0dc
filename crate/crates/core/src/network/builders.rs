// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Topology builders.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Network, Source, Stimulus, SynapseClass};
use crate::detector::PndArray;
use crate::error::{Result, SponError};
use crate::neuron::{NeuronSpec, Port, Variant};
use crate::par;

/// Initial couplings of a built network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightInit {
    Uniform(f64),
    /// Uniform random couplings in `[lo, hi]`.
    Random { lo: f64, hi: f64, seed: u64 },
}

impl Default for WeightInit {
    fn default() -> Self {
        WeightInit::Uniform(1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MlpConfig {
    pub n_inputs: u32,
    pub n_per_layer: u32,
    pub n_layers: u32,
    pub weights: WeightInit,
    pub neuron: NeuronSpec,
    pub synapse: SynapseClass,
}

impl Default for MlpConfig {
    fn default() -> Self {
        MlpConfig {
            n_inputs: 700,
            n_per_layer: 700,
            n_layers: 100,
            weights: WeightInit::default(),
            neuron: NeuronSpec::default(),
            synapse: SynapseClass::default(),
        }
    }
}

impl MlpConfig {
    pub fn new(n_inputs: u32, n_per_layer: u32, n_layers: u32) -> Self {
        MlpConfig {
            n_inputs,
            n_per_layer,
            n_layers,
            ..MlpConfig::default()
        }
    }

    /// Synapses in the built network.
    pub fn synapse_count(&self) -> u64 {
        let (i, n, l) = (u64::from(self.n_inputs), u64::from(self.n_per_layer), u64::from(self.n_layers));
        i * n + n * n * (l - 1)
    }
}

/// Neuron id of neuron `j` in layer `layer` of an MLP.
pub fn mlp_neuron_id(cfg: &MlpConfig, layer: u32, j: u32) -> u32 {
    layer * cfg.n_per_layer + j
}

/// Fully connected feed-forward layers. Input channels feed the first layer;
/// neuron ids run layer by layer.
pub fn build_mlp(cfg: &MlpConfig) -> Result<Network> {
    if cfg.n_inputs == 0 || cfg.n_per_layer == 0 || cfg.n_layers == 0 {
        return Err(SponError::config("MLP counts must be at least 1"));
    }
    let total = u64::from(cfg.n_per_layer) * u64::from(cfg.n_layers);
    if total > u64::from(u32::MAX) || cfg.synapse_count() > u64::from(u32::MAX) {
        return Err(SponError::config("MLP too large for 32-bit ids"));
    }
    cfg.neuron.validate()?;
    cfg.synapse.validate()?;
    let mut net = Network::new();
    net.neurons = vec![cfg.neuron.clone(); total as usize];
    net.add_inputs(cfg.n_inputs);
    let class = net.add_class(cfg.synapse.clone());
    net.synapses = super::SynapseStore::with_capacity(cfg.synapse_count() as usize);

    let mut rng = match cfg.weights {
        WeightInit::Random { seed, .. } => Some(par::trial_rng(seed, 0)),
        WeightInit::Uniform(_) => None,
    };
    let mut weight = || match (cfg.weights, rng.as_mut()) {
        (WeightInit::Random { lo, hi, .. }, Some(r)) => r.random_range(lo..=hi),
        (WeightInit::Uniform(c), _) => c,
        _ => unreachable!("random init always has an rng"),
    };
    // neuron sources first, then inputs: storage order matches the fan-out index
    for layer in 0..cfg.n_layers - 1 {
        for j in 0..cfg.n_per_layer {
            let src = mlp_neuron_id(cfg, layer, j);
            for k in 0..cfg.n_per_layer {
                let dst = mlp_neuron_id(cfg, layer + 1, k);
                net.connect(Source::Neuron(src), dst, Port::Excite, class, weight())?;
            }
        }
    }
    for i in 0..cfg.n_inputs {
        for k in 0..cfg.n_per_layer {
            net.connect(Source::Input(i), mlp_neuron_id(cfg, 0, k), Port::Excite, class, weight())?;
        }
    }
    Ok(net)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CortexConfig {
    pub pixels: u32,
    /// Thalamic relay neurons; `None` uses a quarter of the pixels.
    pub n_thalamus: Option<u32>,
    pub n_granular: u32,
    pub n_supragranular: u32,
    /// Thalamic targets per pixel.
    pub pixel_fanout: u32,
    /// Fraction of pixel synapses onto the inhibitory port.
    pub pixel_inhibit_fraction: f64,
    /// Granular targets per thalamic neuron.
    pub thalamus_fanout: u32,
    /// Thalamic targets per granular neuron (feedback).
    pub granular_feedback_fanout: u32,
    /// Supragranular targets per granular neuron.
    pub granular_fanout: u32,
    /// Supragranular targets per supragranular neuron.
    pub supra_recurrent_fanout: u32,
    /// Granular targets per supragranular neuron (feedback).
    pub supra_feedback_fanout: u32,
    pub coupling: f64,
    pub neuron: NeuronSpec,
    pub synapse: SynapseClass,
    pub seed: u64,
}

impl Default for CortexConfig {
    fn default() -> Self {
        CortexConfig {
            pixels: 64,
            n_thalamus: None,
            n_granular: 32,
            n_supragranular: 32,
            pixel_fanout: 2,
            pixel_inhibit_fraction: 0.25,
            thalamus_fanout: 8,
            granular_feedback_fanout: 2,
            granular_fanout: 12,
            supra_recurrent_fanout: 12,
            supra_feedback_fanout: 2,
            coupling: 0.5,
            neuron: NeuronSpec::default(),
            synapse: SynapseClass::default(),
            seed: 0,
        }
    }
}

/// Neuron id ranges of a built cortex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CortexLayout {
    pub thalamus: std::ops::Range<u32>,
    pub granular: std::ops::Range<u32>,
    pub supragranular: std::ops::Range<u32>,
}

/// Retina-to-cortex preset: pixels are input channels driving a thalamic
/// relay layer without recurrence, which feeds a granular layer that sends
/// feedback back to the thalamus. The granular layer drives a heavily
/// recurrent supragranular layer that feeds back onto the granular layer.
pub fn build_visual_cortex(cfg: &CortexConfig) -> Result<(Network, CortexLayout)> {
    let n_thal = cfg.n_thalamus.unwrap_or((cfg.pixels / 4).max(1));
    if cfg.pixels == 0 || n_thal == 0 || cfg.n_granular == 0 || cfg.n_supragranular == 0 {
        return Err(SponError::config("cortex layer sizes must be at least 1"));
    }
    if !(0.0..=1.0).contains(&cfg.pixel_inhibit_fraction) {
        return Err(SponError::config("pixel_inhibit_fraction must lie in [0, 1]"));
    }
    let mut net = Network::new();
    let thal_spec = NeuronSpec {
        variant: Variant::DualPort,
        inhibitory_receiver: Some(match &cfg.neuron.receiver {
            crate::neuron::Receiver::Pnd(a) => a.clone(),
            crate::neuron::Receiver::Snd(_) => PndArray::default(),
        }),
        ..cfg.neuron.clone()
    };
    let start = net.n_neurons();
    for _ in 0..n_thal {
        net.add_neuron(thal_spec.clone());
    }
    let thalamus = start..net.n_neurons();
    let start = net.n_neurons();
    for _ in 0..cfg.n_granular {
        net.add_neuron(cfg.neuron.clone());
    }
    let granular = start..net.n_neurons();
    let start = net.n_neurons();
    for _ in 0..cfg.n_supragranular {
        net.add_neuron(cfg.neuron.clone());
    }
    let supragranular = start..net.n_neurons();
    net.add_inputs(cfg.pixels);
    let class = net.add_class(cfg.synapse.clone());
    let mut rng = par::trial_rng(cfg.seed, 0);

    let wire = |net: &mut Network,
                    rng: &mut par::TrialRng,
                    src: Source,
                    to: &std::ops::Range<u32>,
                    fanout: u32,
                    inhibit_fraction: f64,
                    exclude: Option<u32>|
     -> Result<()> {
        let candidates: Vec<u32> = to.clone().filter(|&d| Some(d) != exclude).collect();
        let k = (fanout as usize).min(candidates.len());
        for i in index::sample(rng, candidates.len(), k) {
            let port = if rng.random::<f64>() < inhibit_fraction {
                Port::Inhibit
            } else {
                Port::Excite
            };
            net.connect(src, candidates[i], port, class, cfg.coupling)?;
        }
        Ok(())
    };

    for p in 0..cfg.pixels {
        wire(&mut net, &mut rng, Source::Input(p), &thalamus, cfg.pixel_fanout, cfg.pixel_inhibit_fraction, None)?;
    }
    for t in thalamus.clone() {
        wire(&mut net, &mut rng, Source::Neuron(t), &granular, cfg.thalamus_fanout, 0.0, None)?;
    }
    for g in granular.clone() {
        wire(&mut net, &mut rng, Source::Neuron(g), &thalamus, cfg.granular_feedback_fanout, 0.0, None)?;
        wire(&mut net, &mut rng, Source::Neuron(g), &supragranular, cfg.granular_fanout, 0.0, None)?;
    }
    for s in supragranular.clone() {
        wire(&mut net, &mut rng, Source::Neuron(s), &supragranular, cfg.supra_recurrent_fanout, 0.0, Some(s))?;
        wire(&mut net, &mut rng, Source::Neuron(s), &granular, cfg.supra_feedback_fanout, 0.0, None)?;
    }
    net.validate()?;
    Ok((
        net,
        CortexLayout {
            thalamus,
            granular,
            supragranular,
        },
    ))
}

/// Random small networks for property tests and benchmarks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RandomConfig {
    pub max_neurons: u32,
    pub connect_probability: f64,
    pub n_stimuli: u32,
    pub horizon_ns: f64,
    pub seed: u64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            max_neurons: 50,
            connect_probability: 0.15,
            n_stimuli: 20,
            horizon_ns: 2000.0,
            seed: 0,
        }
    }
}

/// Random neurons (PND step, dual-port, gain and self-feedback variants with
/// random arrays, biases, leaks and taps), random synapses and random
/// stimuli, all drawn from `cfg.seed`.
pub fn build_random(cfg: &RandomConfig) -> Result<Network> {
    let mut rng = par::trial_rng(cfg.seed, 0);
    let n = rng.random_range(1..=cfg.max_neurons.max(1));
    let mut net = Network::new();
    for _ in 0..n {
        let array = PndArray::new(
            rng.random_range(1..=12),
            4.0,
            rng.random_range(0.05..=1.0),
            rng.random_range(1..=20),
        )?;
        let mut spec = NeuronSpec::pnd(array.clone(), rng.random_range(0.05..0.95));
        spec.integration_time_ns = if rng.random_bool(0.2) {
            None
        } else {
            Some(rng.random_range(1.0..200.0))
        };
        spec.refractory_ns = rng.random_range(10.0..100.0);
        spec.feedback_tap_fraction = rng.random_range(0.0..0.2);
        spec.upstream_tap_fraction = rng.random_range(0.0..0.2);
        spec.emitter.efficiency = rng.random_range(0.005..0.05);
        match rng.random_range(0..4) {
            1 => {
                spec.variant = Variant::DualPort;
                spec.inhibitory_receiver = Some(array);
            }
            2 => {
                spec.variant = Variant::Gain;
                spec.ntron = Some(crate::neuron::NTron {
                    gate_threshold_ua: rng.random_range(0.0..spec.bias.i_bias_ua),
                    drive_ua: rng.random_range(5.0..100.0),
                });
            }
            3 => {
                spec.variant = Variant::SelfFeedback;
                spec.feedback_quench_photons = Some(rng.random_range(5.0..100.0));
            }
            _ => {}
        }
        net.add_neuron(spec);
    }
    let n_inputs = rng.random_range(0..=4);
    net.add_inputs(n_inputs);
    let class = net.add_class(SynapseClass {
        delay_ns: rng.random_range(0.0..5.0),
        ..SynapseClass::plastic(rng.random_range(1.0..50.0), 0.2)
    });
    for src in 0..n {
        for dst in 0..n {
            if rng.random_bool(cfg.connect_probability) {
                let port = if rng.random_bool(0.2) { Port::Inhibit } else { Port::Excite };
                net.connect(Source::Neuron(src), dst, port, class, rng.random_range(0.0..=1.0))?;
            }
        }
    }
    for i in 0..n_inputs {
        for dst in 0..n {
            if rng.random_bool(cfg.connect_probability) {
                net.connect(Source::Input(i), dst, Port::Excite, class, rng.random_range(0.0..=1.0))?;
            }
        }
    }
    for _ in 0..cfg.n_stimuli {
        let target = if n_inputs > 0 && rng.random_bool(0.3) {
            Source::Input(rng.random_range(0..n_inputs))
        } else {
            Source::Neuron(rng.random_range(0..n))
        };
        net.add_stimulus(Stimulus {
            t_ns: rng.random_range(0.0..cfg.horizon_ns),
            target,
            port: if rng.random_bool(0.1) { Port::Inhibit } else { Port::Excite },
            photons: rng.random_range(0..200),
        });
    }
    net.validate()?;
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::simulate;

    fn sure_neuron() -> NeuronSpec {
        NeuronSpec::pnd(PndArray::new(10, 4.0, 1.0, 1).unwrap(), 0.5)
    }

    #[test]
    fn single_neuron_mlp() {
        let net = build_mlp(&MlpConfig::new(5, 1, 1)).unwrap();
        assert_eq!(net.n_neurons(), 1);
        assert_eq!(net.n_synapses(), 5);
    }

    #[test]
    fn mlp_synapse_count() {
        let cfg = MlpConfig::new(7, 5, 4);
        let net = build_mlp(&cfg).unwrap();
        assert_eq!(net.n_synapses() as u64, cfg.synapse_count());
        assert_eq!(cfg.synapse_count(), 7 * 5 + 25 * 3);
        assert_eq!(MlpConfig::new(700, 700, 100).synapse_count(), 49_000_000);
    }

    #[test]
    fn uniform_mlp_layers_fire_together() {
        let cfg = MlpConfig {
            neuron: sure_neuron(),
            ..MlpConfig::new(4, 6, 3)
        };
        let mut net = build_mlp(&cfg).unwrap();
        for i in 0..4 {
            net.add_stimulus(Stimulus {
                t_ns: 0.0,
                target: Source::Input(i),
                port: Port::Excite,
                photons: 60,
            });
        }
        let trace = simulate(&net, 1000.0, 3).unwrap();
        for layer in 0..3 {
            let times: Vec<f64> = trace
                .iter()
                .filter(|r| r.neuron_id / 6 == layer)
                .map(|r| r.t_ns)
                .collect();
            assert_eq!(times.len(), 6, "layer {layer}: {trace:?}");
            assert!(times.iter().all(|&t| t == times[0]));
        }
    }

    #[test]
    fn cortex_topology() {
        let (net, layout) = build_visual_cortex(&CortexConfig::default()).unwrap();
        assert_eq!(layout.thalamus.len(), 16);
        let st = net.synapses();
        let within = |s: u32, r: &std::ops::Range<u32>| {
            matches!(st.source(s), Source::Neuron(a) if r.contains(&a)) && r.contains(&st.target(s))
        };
        let all: Vec<u32> = (0..net.n_synapses() as u32).collect();
        assert!(!all.iter().any(|&s| within(s, &layout.thalamus)));
        assert!(all.iter().any(|&s| within(s, &layout.supragranular)));
        assert!(all.iter().any(|&s| {
            matches!(st.source(s), Source::Neuron(a) if layout.granular.contains(&a))
                && layout.thalamus.contains(&st.target(s))
        }));
        assert!(all.iter().any(|&s| st.port(s) == Port::Inhibit));
    }

    #[test]
    fn dark_cortex_stays_silent() {
        let (mut net, _) = build_visual_cortex(&CortexConfig::default()).unwrap();
        for p in 0..64 {
            net.add_stimulus(Stimulus {
                t_ns: 0.0,
                target: Source::Input(p),
                port: Port::Excite,
                photons: 0,
            });
        }
        assert!(simulate(&net, 10_000.0, 0).unwrap().is_empty());
    }

    #[test]
    fn random_networks_are_reproducible() {
        let cfg = RandomConfig {
            seed: 9,
            ..RandomConfig::default()
        };
        assert_eq!(build_random(&cfg).unwrap(), build_random(&cfg).unwrap());
    }
}
