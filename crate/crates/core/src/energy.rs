// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Energy of a firing event.
//!
//! Three contributions: the kinetic inductance of the receiver (a fixed
//! series section plus one element per photon), charging the LED junction
//! capacitance, and the band-gap energy of every electron that has to cross
//! the junction per emitted photon.

use serde::{Deserialize, Serialize};

use crate::consts::{self, AJ, ELEMENTARY_CHARGE, SI_BAND_GAP_EV};
use crate::emitter::{self, LedJunction};
use crate::error::{Result, SponError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergyModel {
    /// pH per square.
    pub sheet_inductance_ph: f64,
    pub squares_per_element: f64,
    pub series_squares: f64,
    /// Energy spent per electron converted into a photon, aJ.
    pub eg_aj: f64,
    pub efficiency: f64,
    /// Current through each inductive element, uA.
    pub i_wire_ua: f64,
    pub led: LedJunction,
    /// Emission window used to find the LED drive current, ns.
    pub window_ns: f64,
    /// Fixed LED voltage. `None` solves the junction law for the current
    /// that emits the requested photons within the window.
    pub v_led: Option<f64>,
}

impl Default for EnergyModel {
    fn default() -> Self {
        EnergyModel {
            sheet_inductance_ph: 400.0,
            squares_per_element: 500.0,
            series_squares: 5000.0,
            eg_aj: SI_BAND_GAP_EV * ELEMENTARY_CHARGE / AJ,
            efficiency: 1.0,
            i_wire_ua: 4.0,
            led: LedJunction::default(),
            window_ns: 50.0,
            v_led: None,
        }
    }
}

impl EnergyModel {
    pub fn with_efficiency(efficiency: f64) -> Self {
        EnergyModel {
            efficiency,
            ..EnergyModel::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("sheet_inductance_ph", self.sheet_inductance_ph),
            ("squares_per_element", self.squares_per_element),
            ("series_squares", self.series_squares),
            ("eg_aj", self.eg_aj),
            ("efficiency", self.efficiency),
            ("i_wire_ua", self.i_wire_ua),
            ("window_ns", self.window_ns),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SponError::config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.efficiency > 1.0 {
            return Err(SponError::config("efficiency must not exceed 1"));
        }
        self.led.validate()
    }

    /// LED voltage while emitting `n_photons` in the window.
    pub fn led_voltage(&self, n_photons: u64) -> Result<f64> {
        if let Some(v) = self.v_led {
            return Ok(v);
        }
        let i_a = n_photons as f64 * ELEMENTARY_CHARGE / (self.efficiency * self.window_ns * 1e-9);
        emitter::voltage_for_current(&self.led, i_a * 1e6)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    pub n_photons: u64,
    pub inductive_aj: f64,
    pub capacitive_aj: f64,
    pub photonic_aj: f64,
    pub total_aj: f64,
}

impl EnergyBreakdown {
    pub fn per_photon_aj(&self) -> f64 {
        self.total_aj / self.n_photons as f64
    }
}

/// Energy to produce one firing event that emits `n_photons`.
pub fn energy_per_event(m: &EnergyModel, n_photons: u64) -> Result<EnergyBreakdown> {
    m.validate()?;
    if n_photons == 0 {
        return Err(SponError::domain("an event emits at least one photon"));
    }
    let n = n_photons as f64;
    let squares = m.series_squares + n * m.squares_per_element;
    let i = m.i_wire_ua * 1e-6;
    let inductive = 0.5 * squares * m.sheet_inductance_ph * 1e-12 * i * i / AJ;
    let v = m.led_voltage(n_photons)?;
    let capacitive = 0.5 * emitter::junction_capacitance(&m.led) * v * v / AJ;
    let photonic = m.eg_aj * n / m.efficiency;
    Ok(EnergyBreakdown {
        n_photons,
        inductive_aj: inductive,
        capacitive_aj: capacitive,
        photonic_aj: photonic,
        total_aj: inductive + capacitive + photonic,
    })
}

/// Wall-plug energy of `device_aj` spent at low temperature, aJ.
pub fn wall_energy(device_aj: f64, cooling_w_per_w: f64) -> Result<f64> {
    if !(cooling_w_per_w >= 1.0) {
        return Err(SponError::domain(format!(
            "cooling overhead must be at least 1 W/W, got {cooling_w_per_w}"
        )));
    }
    Ok(device_aj * cooling_w_per_w)
}

/// Wall-plug energy per synapse event (one photon per synapse), aJ.
pub fn wall_power(m: &EnergyModel, n_photons: u64, cooling_w_per_w: f64) -> Result<f64> {
    wall_energy(energy_per_event(m, n_photons)?.per_photon_aj(), cooling_w_per_w)
}

/// Energy of one signal photon, aJ.
pub fn photon_energy_aj() -> f64 {
    consts::signal_photon_energy_j() / AJ
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn components_sum_to_total() {
        let m = EnergyModel::with_efficiency(0.01);
        for n in [1, 10, 1000, 100_000] {
            let e = energy_per_event(&m, n).unwrap();
            assert_eq!(e.total_aj, e.inductive_aj + e.capacitive_aj + e.photonic_aj);
        }
    }

    #[test]
    fn inductive_term_hand_values() {
        let m = EnergyModel::default();
        let e1 = energy_per_event(&m, 1).unwrap();
        let e2 = energy_per_event(&m, 2).unwrap();
        // 0.5 * 400 pH * (4 uA)^2 = 3.2e-21 J per square
        assert!((e1.inductive_aj - 5500.0 * 3.2e-3).abs() < 1e-9);
        assert!((e2.inductive_aj - e1.inductive_aj - 1.6).abs() < 1e-9);
        assert!((e2.photonic_aj - 2.0 * e1.photonic_aj).abs() < 1e-15);
    }

    #[test]
    fn fixed_voltage_capacitive_term() {
        let m = EnergyModel {
            v_led: Some(1.0),
            ..EnergyModel::default()
        };
        let e = energy_per_event(&m, 5).unwrap();
        let c = emitter::junction_capacitance(&m.led);
        assert!((e.capacitive_aj - 0.5 * c / AJ).abs() < 1e-9);
    }

    #[test]
    fn wall_conversion() {
        assert_eq!(wall_energy(20.0, 1000.0).unwrap(), 20_000.0);
        assert_eq!(wall_energy(100.0, 1000.0).unwrap(), 100_000.0);
        assert_eq!(wall_energy(7.5, 1.0).unwrap(), 7.5);
        assert!(wall_energy(1.0, 0.5).is_err());
    }

    #[test]
    fn photon_quantum() {
        assert!((photon_energy_aj() - 0.1628).abs() < 1e-3);
    }

    #[test]
    fn zero_photons_rejected() {
        assert!(energy_per_event(&EnergyModel::default(), 0).is_err());
    }

    proptest! {
        #[test]
        fn per_photon_energy_above_quantum_and_decreasing(eta in 0.001f64..=1.0, n in 1u64..200_000) {
            let m = EnergyModel::with_efficiency(eta);
            let a = energy_per_event(&m, n).unwrap();
            let b = energy_per_event(&m, n + 1).unwrap();
            prop_assert!(a.per_photon_aj() > photon_energy_aj());
            prop_assert!(b.per_photon_aj() <= a.per_photon_aj());
        }
    }
}
