// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

use spon::detector::PndArray;
use spon::network::{
    build_mlp, build_visual_cortex, read_binary_trace, simulate, simulate_sweep, write_binary_trace, CortexConfig,
    MlpConfig, Network, NetworkDoc, Simulation, Source, Stimulus, SynapseClass,
};
use spon::neuron::{NeuronSpec, Port};
use spon::par::Parallelism;

fn pulse(target: Source, t_ns: f64, photons: u64) -> Stimulus {
    Stimulus {
        t_ns,
        target,
        port: Port::Excite,
        photons,
    }
}

#[test]
fn full_size_mlp_builds() {
    let cfg = MlpConfig::new(700, 700, 100);
    let net = build_mlp(&cfg).unwrap();
    assert_eq!(net.n_neurons(), 70_000);
    assert_eq!(net.n_synapses(), 49_000_000);
    assert_eq!(net.synapses().target(0), 700);
    assert_eq!(net.synapses().source(48_999_999), Source::Input(699));
}

#[test]
fn input_rate_saturates_at_refractory_limit() {
    let mut net = Network::new();
    let id = net.add_neuron(NeuronSpec::pnd(PndArray::new(10, 4.0, 1.0, 1).unwrap(), 0.5));
    for k in 0..1000 {
        net.add_stimulus(pulse(Source::Neuron(id), f64::from(k), 20));
    }
    let trace = simulate(&net, 999.0, 0).unwrap();
    // 50 ns windows over 1 us: 20 MHz
    assert_eq!(trace.len(), 20);
    for w in trace.windows(2) {
        assert_eq!(w[1].t_ns - w[0].t_ns, 50.0);
    }
}

#[test]
fn signal_crosses_every_mlp_layer() {
    let cfg = MlpConfig {
        neuron: NeuronSpec::pnd(PndArray::new(10, 4.0, 1.0, 1).unwrap(), 0.5),
        synapse: SynapseClass {
            delay_ns: 2.0,
            ..SynapseClass::default()
        },
        ..MlpConfig::new(8, 8, 12)
    };
    let mut net = build_mlp(&cfg).unwrap();
    net.add_stimulus(pulse(Source::Input(0), 0.0, 400));
    let trace = simulate(&net, 500.0, 0).unwrap();
    let last_layer = trace.iter().filter(|r| r.neuron_id >= 11 * 8).count();
    assert_eq!(last_layer, 8);
    let t_last = trace.iter().map(|r| r.t_ns).fold(0.0, f64::max);
    assert!((t_last - 24.0).abs() < 1e-9, "{t_last}");
}

#[test]
fn cortex_responds_to_light_and_is_reproducible() {
    let cfg = CortexConfig {
        neuron: NeuronSpec::pnd(PndArray::new(10, 4.0, 0.3, 4).unwrap(), 0.6),
        ..CortexConfig::default()
    };
    let (mut net, layout) = build_visual_cortex(&cfg).unwrap();
    for p in 0..cfg.pixels {
        net.add_stimulus(pulse(Source::Input(p), f64::from(p % 8), 5000));
    }
    let runs = simulate_sweep(&net, 2000.0, &[4, 4], Parallelism::Parallel).unwrap();
    assert_eq!(runs[0], runs[1]);
    let layer_of = |id: u32| {
        if layout.thalamus.contains(&id) {
            0
        } else if layout.granular.contains(&id) {
            1
        } else {
            2
        }
    };
    let mut seen = [false; 3];
    for r in &runs[0] {
        seen[layer_of(r.neuron_id)] = true;
    }
    assert_eq!(seen, [true, true, true], "{:?}", runs[0]);
}

#[test]
fn trace_survives_binary_and_doc_roundtrips() {
    let cfg = MlpConfig {
        neuron: NeuronSpec::pnd(PndArray::new(10, 4.0, 1.0, 1).unwrap(), 0.5),
        ..MlpConfig::new(3, 4, 3)
    };
    let mut net = build_mlp(&cfg).unwrap();
    net.add_stimulus(pulse(Source::Input(1), 0.25, 300));
    let doc = NetworkDoc::from_network(&net);
    let rebuilt = doc.build().unwrap();
    assert_eq!(rebuilt, net);

    let mut sim = Simulation::new(rebuilt, 11).unwrap();
    let trace = sim.run_until(400.0).unwrap().to_vec();
    assert!(!trace.is_empty());
    let mut bytes = Vec::new();
    write_binary_trace(&mut bytes, &trace).unwrap();
    let back = read_binary_trace(&bytes[..]).unwrap();
    assert_eq!(back.len(), trace.len());
    for (a, b) in back.iter().zip(&trace) {
        assert_eq!((a.neuron_id, a.photons_out), (b.neuron_id, b.photons_out));
        assert!((a.t_ns - b.t_ns).abs() <= 5e-4);
    }
}
