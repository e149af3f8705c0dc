// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Silicon p-n junction LED driven by a series nanowire detector.
//!
//! The SND and the LED sit in parallel across the bias source. While the
//! wire is superconducting it shorts the LED. Each hotspot adds resistance,
//! pushing more of the bias through the junction, so the emitted photon
//! number follows the absorbed photon number until every slot is normal.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::consts::{self, ELEMENTARY_CHARGE, SI_INTRINSIC_DENSITY_CM3, VACUUM_PERMITTIVITY};
use crate::detector::{BiasPoint, SndWire};
use crate::error::{Result, SponError};
use crate::par::{self, Parallelism};
use crate::units::{Micrometers, SquareMicrometers};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LedJunction {
    /// Electron mobility, cm^2/(V s).
    pub mobility_n: f64,
    /// Hole mobility, cm^2/(V s).
    pub mobility_p: f64,
    /// Electron lifetime, ns.
    pub lifetime_n_ns: f64,
    /// Hole lifetime, ns.
    pub lifetime_p_ns: f64,
    /// Donor density on the n side, cm^-3.
    pub doping_n: f64,
    /// Acceptor density on the p side, cm^-3.
    pub doping_p: f64,
    pub area_um2: f64,
    pub temperature_k: f64,
    /// Photons emitted per electron.
    pub efficiency: f64,
    pub cap_epsilon_rel: f64,
    pub cap_area_um2: f64,
    pub cap_gap_nm: f64,
    /// Forward voltage beyond which the exponential is refused, V.
    pub voltage_clamp_v: f64,
}

impl Default for LedJunction {
    fn default() -> Self {
        let plate = Micrometers(10.0) * Micrometers::from_nm(100.0);
        LedJunction {
            mobility_n: 100.0,
            mobility_p: 100.0,
            lifetime_n_ns: 40.0,
            lifetime_p_ns: 40.0,
            doping_n: 1.0e19,
            doping_p: 1.0e19,
            area_um2: plate.0,
            temperature_k: 300.0,
            efficiency: 0.01,
            cap_epsilon_rel: 12.0,
            cap_area_um2: plate.0,
            cap_gap_nm: 300.0,
            voltage_clamp_v: 1.5,
        }
    }
}

impl LedJunction {
    pub fn with_efficiency(efficiency: f64) -> Self {
        LedJunction {
            efficiency,
            ..LedJunction::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mobility_n", self.mobility_n),
            ("mobility_p", self.mobility_p),
            ("lifetime_n_ns", self.lifetime_n_ns),
            ("lifetime_p_ns", self.lifetime_p_ns),
            ("doping_n", self.doping_n),
            ("doping_p", self.doping_p),
            ("area_um2", self.area_um2),
            ("temperature_k", self.temperature_k),
            ("efficiency", self.efficiency),
            ("cap_epsilon_rel", self.cap_epsilon_rel),
            ("cap_area_um2", self.cap_area_um2),
            ("cap_gap_nm", self.cap_gap_nm),
            ("voltage_clamp_v", self.voltage_clamp_v),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SponError::config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.efficiency > 1.0 {
            return Err(SponError::config("efficiency must not exceed 1"));
        }
        Ok(())
    }

    fn thermal_voltage(&self) -> f64 {
        consts::thermal_voltage(self.temperature_k)
    }

    /// Electron and hole diffusivities `D = mu kT / e`, cm^2/s.
    pub fn diffusivities(&self) -> (f64, f64) {
        let vt = self.thermal_voltage();
        (self.mobility_n * vt, self.mobility_p * vt)
    }

    /// Reverse saturation current, A.
    pub fn saturation_current_a(&self) -> f64 {
        let (d_n, d_p) = self.diffusivities();
        let ni2 = SI_INTRINSIC_DENSITY_CM3 * SI_INTRINSIC_DENSITY_CM3;
        let p_n = ni2 / self.doping_n;
        let n_p = ni2 / self.doping_p;
        let area_cm2 = SquareMicrometers(self.area_um2).to_cm2().0;
        let flux = (d_p / (self.lifetime_p_ns * 1e-9)).sqrt() * p_n
            + (d_n / (self.lifetime_n_ns * 1e-9)).sqrt() * n_p;
        ELEMENTARY_CHARGE * area_cm2 * flux
    }

    fn check_voltage(&self, v: f64) -> Result<()> {
        if !v.is_finite() {
            return Err(SponError::domain(format!("voltage must be finite, got {v}")));
        }
        if v > self.voltage_clamp_v {
            return Err(SponError::VoltageClamp {
                v,
                clamp: self.voltage_clamp_v,
            });
        }
        Ok(())
    }

    fn current_a(&self, v: f64) -> f64 {
        self.saturation_current_a() * (v / self.thermal_voltage()).exp_m1()
    }
}

/// Junction current at forward voltage `v`, uA.
pub fn diode_current(j: &LedJunction, v: f64) -> Result<f64> {
    j.check_voltage(v)?;
    Ok(j.current_a(v) * 1e6)
}

/// Photons per second emitted at forward voltage `v`.
pub fn photon_current(j: &LedJunction, v: f64) -> Result<f64> {
    j.check_voltage(v)?;
    Ok(j.efficiency * j.current_a(v) / ELEMENTARY_CHARGE)
}

/// Forward voltage at which the junction carries `i_ua`.
pub fn voltage_for_current(j: &LedJunction, i_ua: f64) -> Result<f64> {
    if !(i_ua >= 0.0) {
        return Err(SponError::domain(format!("current must be nonnegative, got {i_ua}")));
    }
    let v = j.thermal_voltage() * (i_ua * 1e-6 / j.saturation_current_a()).ln_1p();
    j.check_voltage(v)?;
    Ok(v)
}

/// Parallel-plate junction capacitance, F.
pub fn junction_capacitance(j: &LedJunction) -> f64 {
    let area_m2 = j.cap_area_um2 * 1e-12;
    j.cap_epsilon_rel * VACUUM_PERMITTIVITY * area_m2 / (j.cap_gap_nm * 1e-9)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatingPoint {
    pub v: f64,
    pub i_led_ua: f64,
}

/// Splits `i_bias_ua` between a resistor `r_ohm` and the LED. `r_ohm` may be
/// infinite.
pub fn led_operating_point(r_ohm: f64, j: &LedJunction, i_bias_ua: f64) -> Result<OperatingPoint> {
    if !(r_ohm >= 0.0) {
        return Err(SponError::domain(format!("resistance must be nonnegative, got {r_ohm}")));
    }
    if !(i_bias_ua > 0.0 && i_bias_ua.is_finite()) {
        return Err(SponError::domain(format!("bias must be positive, got {i_bias_ua} uA")));
    }
    if r_ohm == 0.0 {
        return Ok(OperatingPoint { v: 0.0, i_led_ua: 0.0 });
    }
    let ib = i_bias_ua * 1e-6;
    let residual = |v: f64| v / r_ohm + j.current_a(v) - ib;
    let tol = 1e-6 * ib;

    // bisect to full precision on a bracket that does not depend on r_ohm,
    // so the returned voltage is exactly monotone in the resistance
    let (mut lo, mut hi) = (0.0f64, j.voltage_clamp_v);
    if residual(hi) <= 0.0 {
        return Err(SponError::NoConvergence {
            residual_ua: residual(hi) * 1e6,
        });
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let v = hi;
    let r = residual(v);
    if r.abs() >= tol {
        return Err(SponError::NoConvergence { residual_ua: r * 1e6 });
    }
    Ok(OperatingPoint {
        v,
        i_led_ua: j.current_a(v) * 1e6,
    })
}

/// Operating point of an SND in parallel with the LED, `bias` referring to
/// the wire critical current.
pub fn snd_led_operating_point(wire: &SndWire, j: &LedJunction, bias: &BiasPoint) -> Result<OperatingPoint> {
    led_operating_point(wire.resistance_kohm() * 1e3, j, bias.i_bias_ua)
}

/// How an expected photon number becomes an emitted count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmissionMode {
    /// Floor of the expectation.
    #[default]
    Deterministic,
    /// Poisson draw around the expectation.
    Poisson,
}

impl EmissionMode {
    pub fn count<R: Rng + ?Sized>(self, expected: f64, rng: &mut R) -> u64 {
        match self {
            EmissionMode::Deterministic => expected.max(0.0).floor() as u64,
            EmissionMode::Poisson => match Poisson::new(expected) {
                Ok(d) => d.sample(rng) as u64,
                Err(_) => 0,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Emission {
    /// Expected photon number.
    pub expected: f64,
    /// Floor of the expectation.
    pub count: u64,
}

/// Photons emitted during `pulse_ns` at the SND/LED operating point.
pub fn photons_emitted(wire: &SndWire, j: &LedJunction, bias: &BiasPoint, pulse_ns: f64) -> Result<Emission> {
    if !(pulse_ns > 0.0 && pulse_ns.is_finite()) {
        return Err(SponError::domain(format!("pulse duration must be positive, got {pulse_ns} ns")));
    }
    let op = snd_led_operating_point(wire, j, bias)?;
    let expected = photon_current(j, op.v)? * pulse_ns * 1e-9;
    Ok(Emission {
        expected,
        count: expected.max(0.0).floor() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferPoint {
    pub photons_in: u64,
    pub mean_resistance_kohm: f64,
    pub mean_photons_out: f64,
}

/// Photons out versus photons in, averaged over `n_trials` wires.
///
/// Each trial grows one wire through the sorted input counts, so every trial
/// curve is nondecreasing.
pub fn snd_transfer_curve(
    wire: &SndWire,
    j: &LedJunction,
    bias: &BiasPoint,
    photons_in: &[u64],
    pulse_ns: f64,
    n_trials: u64,
    seed: u64,
    mode: Parallelism,
) -> Result<Vec<TransferPoint>> {
    wire.validate()?;
    j.validate()?;
    if n_trials == 0 {
        return Err(SponError::domain("n_trials must be at least 1"));
    }
    let mut order: Vec<usize> = (0..photons_in.len()).collect();
    order.sort_by_key(|&i| photons_in[i]);

    let trials = par::map_trials(n_trials, seed, mode, |_, rng| -> Result<Vec<(f64, f64)>> {
        let mut w = wire.clone();
        w.clear();
        let mut sent = 0;
        let mut out = vec![(0.0, 0.0); photons_in.len()];
        for &i in &order {
            w.absorb(photons_in[i] - sent, rng);
            sent = photons_in[i];
            let e = photons_emitted(&w, j, bias, pulse_ns)?;
            out[i] = (w.resistance_kohm(), e.expected);
        }
        Ok(out)
    });

    let mut sums = vec![(0.0, 0.0); photons_in.len()];
    for t in trials {
        for (s, p) in sums.iter_mut().zip(t?) {
            s.0 += p.0;
            s.1 += p.1;
        }
    }
    let n = n_trials as f64;
    Ok(photons_in
        .iter()
        .zip(sums)
        .map(|(&p, s)| TransferPoint {
            photons_in: p,
            mean_resistance_kohm: s.0 / n,
            mean_photons_out: s.1 / n,
        })
        .collect())
}
