// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Parallel nanowire detector (PND).
//!
//! `N` identical wires share the bias `I_b`. Each photon-driven normal wire
//! pushes its current onto the others; once the per-wire current reaches the
//! single-wire critical current `i_c` the whole array switches and the
//! current is diverted into the emitter.
//!
//! Photon transport follows the spiral receiver: a short pulse passes the
//! wires in order, `n_passes` times. Each pass of a still-superconducting
//! wire absorbs a given photon with probability `alpha`; an absorbing wire
//! goes normal and absorbs nothing more within the pulse. Photons are
//! followed one at a time, and photon `j` of trial `t` consumes exactly the
//! `j`-th uniform draw of stream `t`. Adding photons therefore never removes
//! an absorption, which makes the estimated firing probability exactly
//! monotone in photon number for a fixed seed.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{interactions_until_absorbed, BiasPoint};
use crate::error::{Result, SponError};
use crate::par::{self, Parallelism, TrialRng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PndArray {
    pub n_wires: u32,
    /// Critical current of one wire, uA.
    pub i_c_wire_ua: f64,
    /// Absorption probability per wire per pass.
    pub alpha: f64,
    /// Number of times the pulse passes each wire.
    pub n_passes: u32,
}

impl Default for PndArray {
    fn default() -> Self {
        PndArray {
            n_wires: 10,
            i_c_wire_ua: 4.0,
            alpha: 0.01,
            n_passes: 100,
        }
    }
}

impl PndArray {
    pub fn new(n_wires: u32, i_c_wire_ua: f64, alpha: f64, n_passes: u32) -> Result<Self> {
        let a = PndArray {
            n_wires,
            i_c_wire_ua,
            alpha,
            n_passes,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_wires == 0 {
            return Err(SponError::config("PND needs at least one wire"));
        }
        if !(self.i_c_wire_ua > 0.0 && self.i_c_wire_ua.is_finite()) {
            return Err(SponError::config("wire critical current must be positive"));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(SponError::config("alpha must lie in [0, 1]"));
        }
        if self.n_passes == 0 {
            return Err(SponError::config("n_passes must be at least 1"));
        }
        Ok(())
    }

    /// Array critical current `I_c = N * i_c`, uA.
    pub fn critical_current_ua(&self) -> f64 {
        f64::from(self.n_wires) * self.i_c_wire_ua
    }

    pub fn bias(&self, fraction_of_ic: f64) -> BiasPoint {
        BiasPoint::from_fraction(fraction_of_ic, self.critical_current_ua())
    }

    /// Probability that one photon is absorbed somewhere while passing
    /// `n_superconducting` wires `n_passes` times.
    pub fn single_photon_absorption(&self, n_superconducting: u32) -> f64 {
        let visits = f64::from(self.n_passes) * f64::from(n_superconducting);
        1.0 - (1.0 - self.alpha).powf(visits)
    }

    /// Default photon cap for the 50% threshold search:
    /// `100 * N / (alpha * n_passes)`.
    pub fn default_photon_cap(&self) -> u64 {
        let cap = 100.0 * f64::from(self.n_wires) / (self.alpha * f64::from(self.n_passes));
        if cap.is_finite() {
            cap.ceil().max(1.0) as u64
        } else {
            u64::MAX / 2
        }
    }
}

/// Hotspot state of each wire (true = normal).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WireStates {
    normal: Vec<bool>,
    n_normal: u32,
}

impl WireStates {
    pub fn new(n_wires: u32) -> Self {
        WireStates {
            normal: vec![false; n_wires as usize],
            n_normal: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.normal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normal.is_empty()
    }

    pub fn normal_count(&self) -> u32 {
        self.n_normal
    }

    pub fn superconducting_count(&self) -> u32 {
        self.normal.len() as u32 - self.n_normal
    }

    pub fn is_normal(&self, wire: usize) -> bool {
        self.normal[wire]
    }

    pub fn reset(&mut self) {
        self.normal.iter_mut().for_each(|w| *w = false);
        self.n_normal = 0;
    }

    /// Returns wires to the superconducting state, highest index first,
    /// until at most `count` remain normal.
    pub fn relax_to(&mut self, count: u32) {
        for w in self.normal.iter_mut().rev() {
            if self.n_normal <= count {
                break;
            }
            if *w {
                *w = false;
                self.n_normal -= 1;
            }
        }
    }

    /// Marks the `k`-th superconducting wire (in wire order) normal.
    fn drive_kth_superconducting(&mut self, k: usize) {
        let wire = self
            .normal
            .iter()
            .enumerate()
            .filter(|(_, n)| !**n)
            .nth(k)
            .map(|(i, _)| i)
            .expect("k is below the superconducting count");
        self.normal[wire] = true;
        self.n_normal += 1;
    }

    /// Sends one photon through the array using the uniform draw `u`.
    /// Returns true if it was absorbed.
    pub(crate) fn absorb_one(&mut self, array: &PndArray, u: f64) -> bool {
        let sc = self.superconducting_count();
        if sc == 0 {
            return false;
        }
        let Some(k) = interactions_until_absorbed(u, array.alpha) else {
            return false;
        };
        let visits = f64::from(array.n_passes) * f64::from(sc);
        if k >= visits {
            return false;
        }
        self.drive_kth_superconducting((k as u64 % u64::from(sc)) as usize);
        true
    }

    /// Sends a pulse of `n_photons` through the array. Stops early once
    /// `stop_at` wires are normal. Returns the number absorbed.
    pub fn absorb_pulse<R: Rng + ?Sized>(
        &mut self,
        array: &PndArray,
        n_photons: u64,
        stop_at: Option<u32>,
        rng: &mut R,
    ) -> u64 {
        let mut absorbed = 0;
        for _ in 0..n_photons {
            if stop_at.is_some_and(|s| self.n_normal >= s) || self.superconducting_count() == 0 {
                break;
            }
            let u: f64 = rng.random();
            if self.absorb_one(array, u) {
                absorbed += 1;
            }
        }
        absorbed
    }
}

/// Critical number of photon-driven normal wires, `ceil(N - I_b / i_c)`.
///
/// A per-wire current exactly equal to `i_c` counts as switching, so integer
/// values of `N - I_b / i_c` are returned unchanged.
pub fn threshold_count(array: &PndArray, bias: &BiasPoint) -> Result<u32> {
    array.validate()?;
    let ib = bias.i_bias_ua;
    if !(ib > 0.0) {
        return Err(SponError::domain(format!("bias must be positive, got {ib} uA")));
    }
    let critical = array.critical_current_ua();
    if ib >= critical {
        return Err(SponError::AlwaysFires {
            bias_ua: ib,
            critical_ua: critical,
        });
    }
    let n = f64::from(array.n_wires);
    let x = n - ib / array.i_c_wire_ua;
    // snap values that are integers up to rounding in I_b / i_c
    let nearest = x.round();
    let nc = if (x - nearest).abs() <= 1e-9 * n.max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    Ok(nc.clamp(1.0, n) as u32)
}

/// Which photon count the 50% threshold is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhotonCounting {
    /// Photons absorbed, i.e. wires driven normal.
    #[default]
    Absorbed,
    /// Photons incident on the receiver (Monte Carlo).
    Incident,
}

/// Monte Carlo estimate of the probability that a pulse of `n_photons`
/// incident photons fires the array.
pub fn spike_probability(
    array: &PndArray,
    n_photons: u64,
    bias: &BiasPoint,
    n_trials: u64,
    seed: u64,
) -> Result<f64> {
    spike_probability_with(array, n_photons, bias, n_trials, seed, Parallelism::default())
}

pub fn spike_probability_with(
    array: &PndArray,
    n_photons: u64,
    bias: &BiasPoint,
    n_trials: u64,
    seed: u64,
    mode: Parallelism,
) -> Result<f64> {
    if n_trials == 0 {
        return Err(SponError::domain("n_trials must be at least 1"));
    }
    let nc = threshold_count(array, bias)?;
    if n_photons < u64::from(nc) {
        // fewer photons than wires that must switch
        return Ok(0.0);
    }
    let fired = par::count_trials(n_trials, seed, mode, |rng| {
        let mut wires = WireStates::new(array.n_wires);
        wires.absorb_pulse(array, n_photons, Some(nc), rng);
        wires.normal_count() >= nc
    });
    Ok(fired as f64 / n_trials as f64)
}

/// Firing probability given exactly `n_absorbed` photon-driven normal wires.
/// With one hotspot per wire this is an indicator on the critical count.
pub fn spike_probability_absorbed(array: &PndArray, n_absorbed: u64, bias: &BiasPoint) -> Result<f64> {
    let nc = threshold_count(array, bias)?;
    Ok(if n_absorbed >= u64::from(nc) { 1.0 } else { 0.0 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfThreshold {
    pub n_trials: u64,
    pub seed: u64,
    pub counting: PhotonCounting,
    /// Largest photon number searched; `None` uses
    /// [`PndArray::default_photon_cap`].
    pub cap: Option<u64>,
    pub mode: Parallelism,
}

impl HalfThreshold {
    pub fn new(n_trials: u64, seed: u64) -> Self {
        HalfThreshold {
            n_trials,
            seed,
            counting: PhotonCounting::default(),
            cap: None,
            mode: Parallelism::default(),
        }
    }

    pub fn counting(mut self, counting: PhotonCounting) -> Self {
        self.counting = counting;
        self
    }

    pub fn cap(mut self, cap: u64) -> Self {
        self.cap = Some(cap);
        self
    }
}

/// Smallest photon number whose firing probability is at least 0.5.
///
/// Bisection over photon number; valid because the estimate is monotone in
/// photon number for a fixed seed.
pub fn threshold_at_half(array: &PndArray, bias: &BiasPoint, opts: &HalfThreshold) -> Result<u64> {
    let cap = opts.cap.unwrap_or_else(|| array.default_photon_cap());
    let prob = |n: u64| -> Result<f64> {
        match opts.counting {
            PhotonCounting::Absorbed => spike_probability_absorbed(array, n, bias),
            PhotonCounting::Incident => {
                spike_probability_with(array, n, bias, opts.n_trials, opts.seed, opts.mode)
            }
        }
    };
    if prob(cap)? < 0.5 {
        return Err(SponError::CapExceeded { cap });
    }
    // invariant: prob(lo) < 0.5 <= prob(hi)
    let (mut lo, mut hi) = (0u64, cap);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if prob(mid)? >= 0.5 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// For one trial, the number of incident photons needed to drive `k` wires
/// normal, for `k = 1..=N` (index `k - 1`). `None` if not reached within
/// `cap` photons. Uses the same draws as [`spike_probability`].
pub fn fill_profile(array: &PndArray, cap: u64, rng: &mut TrialRng) -> Vec<Option<u64>> {
    let mut wires = WireStates::new(array.n_wires);
    let mut needed = vec![None; array.n_wires as usize];
    let mut photons = 0u64;
    while photons < cap && wires.superconducting_count() > 0 {
        let u: f64 = rng.random();
        photons += 1;
        if wires.absorb_one(array, u) {
            needed[wires.normal_count() as usize - 1] = Some(photons);
        }
    }
    needed
}

/// One cell of a spike-probability surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub bias_fraction: f64,
    pub n_photons: u64,
    pub probability: f64,
}

/// Spike probability over a grid of bias fractions and incident photon
/// numbers. Each trial is simulated once up to the largest photon number and
/// reused for every cell, so every cell equals the corresponding
/// [`spike_probability`] call with the same seed.
pub fn spike_probability_surface(
    array: &PndArray,
    bias_fractions: &[f64],
    photon_counts: &[u64],
    n_trials: u64,
    seed: u64,
    mode: Parallelism,
) -> Result<Vec<SurfacePoint>> {
    if n_trials == 0 {
        return Err(SponError::domain("n_trials must be at least 1"));
    }
    let thresholds = bias_fractions
        .iter()
        .map(|&f| threshold_count(array, &array.bias(f)))
        .collect::<Result<Vec<_>>>()?;
    let cap = photon_counts.iter().copied().max().unwrap_or(0);
    let profiles = par::map_trials(n_trials, seed, mode, |_, rng| fill_profile(array, cap, rng));

    let mut out = Vec::with_capacity(bias_fractions.len() * photon_counts.len());
    for (&f, &nc) in bias_fractions.iter().zip(&thresholds) {
        // sorted photons-to-fire over trials; None never fires within cap
        let mut needed: Vec<u64> = profiles
            .iter()
            .filter_map(|p| p[nc as usize - 1])
            .collect();
        needed.sort_unstable();
        for &n in photon_counts {
            let fired = needed.partition_point(|&x| x <= n);
            out.push(SurfacePoint {
                bias_fraction: f,
                n_photons: n,
                probability: fired as f64 / n_trials as f64,
            });
        }
    }
    Ok(out)
}
