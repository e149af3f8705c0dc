// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Photon receivers: parallel nanowire arrays (step response) and series
//! nanowires (continuous response).

mod pnd;
mod snd;
mod stats;

pub use pnd::{
    fill_profile, spike_probability, spike_probability_absorbed, spike_probability_surface,
    spike_probability_with, threshold_at_half, threshold_count, HalfThreshold, PhotonCounting,
    PndArray, SurfacePoint, WireStates,
};
pub use snd::{snd_absorb, snd_resistance, SndAbsorption, SndWire};
pub use stats::{absorption_statistics, absorption_statistics_with, AbsorptionStats};

use serde::{Deserialize, Serialize};

/// Operating bias of a receiver.
///
/// `i_bias_ua = fraction_of_ic * critical current` of whatever the bias
/// refers to (a whole PND array, or a single SND wire).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiasPoint {
    pub i_bias_ua: f64,
    pub fraction_of_ic: f64,
}

impl BiasPoint {
    pub fn from_fraction(fraction_of_ic: f64, critical_ua: f64) -> Self {
        BiasPoint {
            i_bias_ua: fraction_of_ic * critical_ua,
            fraction_of_ic,
        }
    }

    pub fn from_current(i_bias_ua: f64, critical_ua: f64) -> Self {
        BiasPoint {
            i_bias_ua,
            fraction_of_ic: i_bias_ua / critical_ua,
        }
    }

    /// Same bias with `deficit_ua` removed from the current.
    pub fn reduced_by(&self, deficit_ua: f64) -> Self {
        let i = self.i_bias_ua - deficit_ua;
        BiasPoint {
            i_bias_ua: i,
            fraction_of_ic: if self.i_bias_ua != 0.0 {
                self.fraction_of_ic * i / self.i_bias_ua
            } else {
                0.0
            },
        }
    }
}

/// Number of pulse/wire interactions until a photon is absorbed, given one
/// uniform draw `u` in `[0, 1)` and a per-interaction probability `alpha`.
///
/// Inverse CDF of the geometric distribution counting failures before the
/// first success. Returns `None` for `alpha == 0` (never absorbed).
pub(crate) fn interactions_until_absorbed(u: f64, alpha: f64) -> Option<f64> {
    if alpha <= 0.0 {
        return None;
    }
    if alpha >= 1.0 {
        return Some(0.0);
    }
    let survival = 1.0 - u; // in (0, 1]
    Some((survival.ln() / (-alpha).ln_1p()).floor())
}
