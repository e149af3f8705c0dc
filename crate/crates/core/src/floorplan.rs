// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Geometry of fully connected layers, neuron density, and system power.

use serde::{Deserialize, Serialize};

use crate::consts::AJ;
use crate::error::{Result, SponError};
use crate::units::{Hertz, Joules, Micrometers, SquareCentimeters, Watts};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FloorplanParams {
    /// Tap length, um.
    pub l_tap_um: f64,
    /// Gap between taps, um.
    pub l_gap_um: f64,
    /// Waveguide crossing length, um.
    pub l_cross_um: f64,
    /// Interlayer transition length, um.
    pub l_interlayer_um: f64,
    /// Gap between neighbouring waveguides, nm.
    pub wg_pitch_nm: f64,
    pub n_neurons: u64,
    pub n_wg_planes: u64,
    pub die_edge_cm: f64,
}

impl Default for FloorplanParams {
    fn default() -> Self {
        FloorplanParams {
            l_tap_um: 10.0,
            l_gap_um: 5.0,
            l_cross_um: 3.0,
            l_interlayer_um: 10.0,
            wg_pitch_nm: 600.0,
            n_neurons: 700,
            n_wg_planes: 10,
            die_edge_cm: 10.0,
        }
    }
}

impl FloorplanParams {
    pub fn with_layer(n_neurons: u64, n_wg_planes: u64) -> Self {
        FloorplanParams {
            n_neurons,
            n_wg_planes,
            ..FloorplanParams::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("l_tap_um", self.l_tap_um),
            ("l_gap_um", self.l_gap_um),
            ("l_cross_um", self.l_cross_um),
            ("l_interlayer_um", self.l_interlayer_um),
            ("wg_pitch_nm", self.wg_pitch_nm),
            ("die_edge_cm", self.die_edge_cm),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SponError::config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.n_neurons == 0 || self.n_wg_planes == 0 {
            return Err(SponError::config("n_neurons and n_wg_planes must be at least 1"));
        }
        Ok(())
    }

    fn pitch(&self) -> Micrometers {
        Micrometers::from_nm(self.wg_pitch_nm)
    }
}

/// Length of one fully connected layer.
pub fn layer_length(p: &FloorplanParams) -> Result<Micrometers> {
    p.validate()?;
    let nn = p.n_neurons as f64;
    let nwg = p.n_wg_planes as f64;
    let per_neuron = Micrometers(p.l_tap_um + p.l_gap_um + p.l_cross_um);
    let neuron_row = p.pitch() * nn;
    Ok(per_neuron * (nn / nwg) + Micrometers(p.l_interlayer_um) * (2.0 * nwg) + neuron_row)
}

/// Layer width as a function of the layer parameters.
pub trait WidthModel {
    fn layer_width(&self, p: &FloorplanParams) -> Micrometers;
}

/// Each neuron receives one waveguide from every neuron of the previous
/// layer at the minimum pitch, shared across the waveguide planes:
/// `W = pitch * N^2 / N_wg`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FullyConnectedWidth;

impl WidthModel for FullyConnectedWidth {
    fn layer_width(&self, p: &FloorplanParams) -> Micrometers {
        let nn = p.n_neurons as f64;
        p.pitch() * (nn * nn / p.n_wg_planes as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LayerGeometry {
    pub n_neurons: u64,
    pub n_wg_planes: u64,
    pub length: Micrometers,
    pub width: Micrometers,
    pub area: SquareCentimeters,
    pub density_per_cm2: f64,
}

/// Neurons per cm^2 of a fully connected layer (fan-in = `n_neurons`).
pub fn neuron_density(p: &FloorplanParams, width: &dyn WidthModel) -> Result<LayerGeometry> {
    let length = layer_length(p)?;
    let w = width.layer_width(p);
    let area = (length * w).to_cm2();
    Ok(LayerGeometry {
        n_neurons: p.n_neurons,
        n_wg_planes: p.n_wg_planes,
        length,
        width: w,
        area,
        density_per_cm2: p.n_neurons as f64 / area.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowerParams {
    /// Energy per synapse event, aJ.
    pub e_synapse_aj: f64,
    /// Synapses per neuron.
    pub n_conn: f64,
    /// Firing rate, Hz.
    pub rate_hz: f64,
    pub n_units: f64,
    /// Wall watts per watt dissipated cold.
    pub cooling: f64,
}

impl Default for PowerParams {
    fn default() -> Self {
        PowerParams::paper_1m3()
    }
}

impl PowerParams {
    /// 7e9 neurons in a cubic metre, 700 synapses each, firing at 20 kHz.
    pub fn paper_1m3() -> Self {
        PowerParams {
            e_synapse_aj: 20.0,
            n_conn: 700.0,
            rate_hz: 2.0e4,
            n_units: 7.0e9,
            cooling: 1000.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("e_synapse_aj", self.e_synapse_aj),
            ("n_conn", self.n_conn),
            ("rate_hz", self.rate_hz),
            ("n_units", self.n_units),
            ("cooling", self.cooling),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SponError::config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.cooling < 1.0 {
            return Err(SponError::config("cooling must be at least 1 W/W"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerReport {
    pub device_w: f64,
    pub wall_w: f64,
    pub synapse_events_per_s: f64,
    pub events_per_s_per_w_device: f64,
    pub events_per_s_per_w_wall: f64,
}

pub fn system_power(p: &PowerParams) -> Result<PowerReport> {
    p.validate()?;
    let event_rate = Hertz(p.n_units * p.n_conn * p.rate_hz);
    let device: Watts = Joules::from_aj(p.e_synapse_aj) * event_rate;
    let wall = device * p.cooling;
    Ok(PowerReport {
        device_w: device.0,
        wall_w: wall.0,
        synapse_events_per_s: event_rate.0,
        events_per_s_per_w_device: event_rate.0 / device.0,
        events_per_s_per_w_wall: event_rate.0 / wall.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BrainParams {
    pub neurons: f64,
    pub synapses_per_neuron: f64,
    pub rate_hz: f64,
    pub power_w: f64,
}

impl Default for BrainParams {
    fn default() -> Self {
        BrainParams {
            neurons: 1.0e11,
            synapses_per_neuron: 7.0e3,
            rate_hz: 1.0,
            power_w: 100.0,
        }
    }
}

/// Synapse events per second per watt of a biological reference system.
pub fn brain_events_per_s_per_w(b: &BrainParams) -> Result<f64> {
    if !(b.power_w > 0.0) {
        return Err(SponError::config("power_w must be positive"));
    }
    Ok(b.neurons * b.synapses_per_neuron * b.rate_hz / b.power_w)
}

/// Energy per synapse event implied by a device throughput, aJ.
pub fn energy_per_event_aj(events_per_s_per_w: f64) -> f64 {
    1.0 / events_per_s_per_w / AJ
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_neuron_layer() {
        let p = FloorplanParams::with_layer(1, 1);
        // 18 + 20 + 0.6
        assert!((layer_length(&p).unwrap().0 - 38.6).abs() < 1e-12);
    }

    #[test]
    fn hand_expanded_length() {
        for (nn, nwg) in [(700u64, 10u64), (10, 1), (1000, 10), (37, 3)] {
            let p = FloorplanParams::with_layer(nn, nwg);
            let (n, w) = (nn as f64, nwg as f64);
            let expected = 18.0 * n / w + 20.0 * w + 0.6 * n;
            assert!((layer_length(&p).unwrap().0 - expected).abs() < 1e-9 * expected);
        }
        let l = layer_length(&FloorplanParams::with_layer(700, 10)).unwrap().0;
        assert!((l - 1880.0).abs() < 1e-9);
    }

    #[test]
    fn density_hand_values() {
        let g = neuron_density(&FloorplanParams::with_layer(10, 1), &FullyConnectedWidth).unwrap();
        assert!((g.length.0 - 206.0).abs() < 1e-9);
        assert!((g.width.0 - 60.0).abs() < 1e-9);
        assert!((g.density_per_cm2 - 10.0 / (206.0 * 60.0 * 1e-8)).abs() < 1e-6);
    }

    #[test]
    fn power_presets() {
        let r = system_power(&PowerParams::paper_1m3()).unwrap();
        assert!((r.device_w - 1.96).abs() < 1e-12);
        assert!((r.events_per_s_per_w_device - 5.0e16).abs() < 1e3);
        assert!((r.wall_w - 1960.0).abs() < 1e-9);
        assert!((brain_events_per_s_per_w(&BrainParams::default()).unwrap() - 7.0e12).abs() < 1.0);
        assert!((energy_per_event_aj(r.events_per_s_per_w_device) - 20.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_zero_planes() {
        assert!(layer_length(&FloorplanParams::with_layer(10, 0)).is_err());
    }

    proptest! {
        #[test]
        fn power_linear_in_each_factor(k in 0.1f64..10.0, which in 0usize..4) {
            let base = PowerParams::paper_1m3();
            let mut scaled = base.clone();
            match which {
                0 => scaled.e_synapse_aj *= k,
                1 => scaled.n_conn *= k,
                2 => scaled.rate_hz *= k,
                _ => scaled.n_units *= k,
            }
            let a = system_power(&base).unwrap().device_w;
            let b = system_power(&scaled).unwrap().device_w;
            prop_assert!((b / a - k).abs() < 1e-12 * k);
        }

        #[test]
        fn length_convex_in_planes(nn in 1u64..5000, nwg in 2u64..200) {
            let l = |w| layer_length(&FloorplanParams::with_layer(nn, w)).unwrap().0;
            prop_assert!(l(nwg - 1) + l(nwg + 1) >= 2.0 * l(nwg) - 1e-9 * l(nwg));
        }
    }
}
