// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical models of superconducting optoelectronic spiking neurons.
//!
//! The crate is split along the physical signal path:
//!
//! * [`detector`] : parallel (PND) and series (SND) nanowire receivers,
//!   their firing thresholds and the photon-absorption Monte Carlo.
//! * [`emitter`] : the p-n junction LED and the SND/LED operating point.
//! * [`energy`] : energy per firing event and wall-plug accounting.
//! * [`neuron`] : receiver + nTron + LED compositions and their state machine.
//! * [`network`] : event-driven simulation, MEMS-coupler synapses with STDP,
//!   and topology builders.
//! * [`floorplan`] : MLP layer geometry, neuron density and system power.
//! * [`metrics`] : mutual information and dynamic range.
//!
//! Every Monte Carlo entry point takes an explicit seed. Trial `t` draws from
//! its own ChaCha stream derived from `(seed, t)` and aggregation is exact, so
//! results do not depend on the `parallel` feature or the worker count.

pub mod consts;
pub mod detector;
pub mod emitter;
pub mod energy;
pub mod error;
pub mod floorplan;
pub mod metrics;
pub mod network;
pub mod neuron;
pub mod par;
pub mod rounding;
pub mod units;

pub use error::{Result, SponError};
