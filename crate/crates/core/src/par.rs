// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Trial-level parallelism with a sequential fallback.
//!
//! Trial `t` of a run seeded with `seed` always draws from ChaCha8 stream `t`
//! of that seed, so the set of per-trial results is the same whichever
//! executor runs them. Reductions here are either integer sums or ordered
//! collects, which keeps aggregate outputs bit-identical too.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub type TrialRng = ChaCha8Rng;

/// RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Mixes several words into one seed (splitmix64 finalizer over a running
/// xor). Used to derive per-event seeds inside a simulation.
pub fn mix_seed(parts: &[u64]) -> u64 {
    let mut h = 0x9E37_79B9_7F4A_7C15u64;
    for &p in parts {
        h ^= p;
        h = h.wrapping_add(0x9E37_79B9_7F4A_7C15);
        h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h ^= h >> 31;
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parallelism {
    Sequential,
    /// Rayon work-stealing over trials. Without the `parallel` feature this
    /// runs sequentially.
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether this build can actually run trials concurrently.
    pub fn available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Number of trials in `0..n_trials` for which `trial` returns true.
pub fn count_trials<F>(n_trials: u64, seed: u64, mode: Parallelism, trial: F) -> u64
where
    F: Fn(&mut TrialRng) -> bool + Sync + Send,
{
    let run = |t: u64| {
        let mut rng = trial_rng(seed, t);
        u64::from(trial(&mut rng))
    };
    match mode {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => (0..n_trials).into_par_iter().map(run).sum(),
        _ => (0..n_trials).map(run).sum(),
    }
}

/// Per-trial results in trial order.
pub fn map_trials<T, F>(n_trials: u64, seed: u64, mode: Parallelism, trial: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut TrialRng) -> T + Sync + Send,
{
    let run = |t: u64| {
        let mut rng = trial_rng(seed, t);
        trial(t, &mut rng)
    };
    match mode {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => (0..n_trials).into_par_iter().map(run).collect(),
        _ => (0..n_trials).map(run).collect(),
    }
}

/// Applies `f` to every item, in parallel when enabled. Output order matches
/// input order.
pub fn map_items<I, T, F>(items: &[I], mode: Parallelism, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}
