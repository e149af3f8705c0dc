// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, SponError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SponError {
    /// Bias at or above the array critical current: the array is normal
    /// without any photons.
    #[error("bias {bias_ua} uA is at or above the array critical current {critical_ua} uA; the array always fires")]
    AlwaysFires { bias_ua: f64, critical_ua: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("50% threshold not reached within {cap} photons")]
    CapExceeded { cap: u64 },

    #[error("voltage {v} V exceeds the diode clamp {clamp} V")]
    VoltageClamp { v: f64, clamp: f64 },

    #[error("operating-point solve did not converge (residual {residual_ua} uA)")]
    NoConvergence { residual_ua: f64 },

    #[error("event at t={t_ns} ns precedes current time {now_ns} ns")]
    Scheduling { t_ns: f64, now_ns: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("transfer curve is flat; dynamic range is undefined")]
    UndefinedRange,

    #[error("histogram is empty")]
    EmptyHistogram,
}

impl SponError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        SponError::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        SponError::Config(msg.into())
    }

    /// True for errors caused by an invalid configuration rather than by
    /// numerics.
    pub fn is_config(&self) -> bool {
        matches!(self, SponError::Config(_))
    }
}
