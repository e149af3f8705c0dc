// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical constants (SI) and material defaults.

/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Planck constant, J s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Silicon band gap at 300 K, eV.
pub const SI_BAND_GAP_EV: f64 = 1.12;
/// Intrinsic carrier density of silicon at 300 K, cm^-3.
pub const SI_INTRINSIC_DENSITY_CM3: f64 = 1.0e10;
/// Group index used to turn waveguide path length into delay.
pub const SI_WAVEGUIDE_GROUP_INDEX: f64 = 4.2;

/// Signal wavelength, m.
pub const SIGNAL_WAVELENGTH_M: f64 = 1.22e-6;

/// Shortest hotspot relaxation time among common nanowire materials
/// (NbN), ns. Integration times below this are not physical.
pub const HOTSPOT_RELAXATION_FLOOR_NS: f64 = 0.2;

/// Joules per attojoule.
pub const AJ: f64 = 1.0e-18;

/// Energy of one signal photon, J.
pub fn signal_photon_energy_j() -> f64 {
    PLANCK * SPEED_OF_LIGHT / SIGNAL_WAVELENGTH_M
}

/// Thermal voltage kT/e at temperature `t_k`, V.
pub fn thermal_voltage(t_k: f64) -> f64 {
    BOLTZMANN * t_k / ELEMENTARY_CHARGE
}
