// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Spread of absorbed photons across the wires of a PND.
//!
//! Here a wire keeps absorbing after its first photon, so the per-wire
//! counts measure how evenly a pulse is shared out.

use rand::Rng;
use serde::Serialize;

use super::{interactions_until_absorbed, PndArray};
use crate::error::{Result, SponError};
use crate::par::{self, Parallelism};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbsorptionStats {
    /// Grand mean over trials of the per-wire mean photon count.
    pub mean_of_means: f64,
    /// Mean over trials of the per-wire standard deviation.
    pub mean_of_stds: f64,
    /// Standard deviation over trials of the per-wire standard deviation.
    pub std_of_stds: f64,
}

/// Per-wire absorbed-photon counts for one pulse.
fn wire_counts<R: Rng + ?Sized>(array: &PndArray, n_incident: u64, rng: &mut R) -> Vec<u32> {
    let n = u64::from(array.n_wires);
    let visits = f64::from(array.n_passes) * n as f64;
    let mut counts = vec![0u32; array.n_wires as usize];
    for _ in 0..n_incident {
        let u: f64 = rng.random();
        if let Some(k) = interactions_until_absorbed(u, array.alpha) {
            if k < visits {
                counts[(k as u64 % n) as usize] += 1;
            }
        }
    }
    counts
}

/// Mean and (population) standard deviation of the per-wire counts.
fn mean_std(counts: &[u32]) -> (f64, f64) {
    let n = counts.len() as f64;
    let mean = counts.iter().map(|&c| f64::from(c)).sum::<f64>() / n;
    let var = counts.iter().map(|&c| (f64::from(c) - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub fn absorption_statistics(
    array: &PndArray,
    n_incident: u64,
    n_trials: u64,
    seed: u64,
) -> Result<AbsorptionStats> {
    absorption_statistics_with(array, n_incident, n_trials, seed, Parallelism::default())
}

pub fn absorption_statistics_with(
    array: &PndArray,
    n_incident: u64,
    n_trials: u64,
    seed: u64,
    mode: Parallelism,
) -> Result<AbsorptionStats> {
    array.validate()?;
    if n_trials < 2 {
        return Err(SponError::domain("absorption statistics need at least 2 trials"));
    }
    let per_trial = par::map_trials(n_trials, seed, mode, |_, rng| {
        mean_std(&wire_counts(array, n_incident, rng))
    });
    let t = n_trials as f64;
    let mean_of_means = per_trial.iter().map(|p| p.0).sum::<f64>() / t;
    let mean_of_stds = per_trial.iter().map(|p| p.1).sum::<f64>() / t;
    let var = per_trial
        .iter()
        .map(|p| (p.1 - mean_of_stds).powi(2))
        .sum::<f64>()
        / (t - 1.0);
    Ok(AbsorptionStats {
        mean_of_means,
        mean_of_stds,
        std_of_stds: var.sqrt(),
    })
}
