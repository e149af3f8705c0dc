// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Time-ordered event queue with a total order on ties.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Result, SponError};
use crate::neuron::Port;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Neuron { id: u32, port: Port },
    Input(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventKind {
    RefractoryEnd { neuron: u32 },
    DecayCheckpoint { neuron: u32 },
    PhotonArrival { target: Target, photons: u64 },
    WeightUpdate { synapse: u32, t_pre: f64 },
}

impl EventKind {
    /// Processing order among events at the same time.
    pub fn rank(&self) -> u8 {
        match self {
            EventKind::RefractoryEnd { .. } => 0,
            EventKind::DecayCheckpoint { .. } => 1,
            EventKind::PhotonArrival { .. } => 2,
            EventKind::WeightUpdate { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub t: f64,
    pub kind: EventKind,
    /// Neuron, input channel or synapse that caused the event.
    pub source: u32,
    seq: u64,
}

impl Event {
    fn key(&self) -> (f64, u8, u32, u64) {
        (self.t, self.kind.rank(), self.source, self.seq)
    }
}

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.key(), other.key());
        a.0.total_cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
            .then(a.3.cmp(&b.3))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Min-queue ordered by (time, kind rank, source, insertion order).
#[derive(Debug, Default, Clone)]
pub struct EventQueue {
    heap: BinaryHeap<std::cmp::Reverse<Event>>,
    now: f64,
    next_seq: u64,
}

impl EventQueue {
    pub fn new() -> Self {
        EventQueue::default()
    }

    /// Time of the last popped event.
    pub fn now(&self) -> f64 {
        self.now
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn push(&mut self, t: f64, source: u32, kind: EventKind) -> Result<()> {
        if !(t >= self.now) {
            return Err(SponError::Scheduling { t_ns: t, now_ns: self.now });
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(std::cmp::Reverse(Event { t, kind, source, seq }));
        Ok(())
    }

    pub fn peek_time(&self) -> Option<f64> {
        self.heap.peek().map(|e| e.0.t)
    }

    pub fn pop(&mut self) -> Option<Event> {
        let e = self.heap.pop()?.0;
        self.now = e.t;
        Some(e)
    }

    /// Sequence number of the next pushed event.
    pub fn next_seq(&self) -> u64 {
        self.next_seq
    }
}
