// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Firing traces and their compact binary framing.
//!
//! Each binary record is 16 bytes, little-endian: `u64` time in
//! picoseconds, `u32` neuron id, `u32` photon count.

use std::io::{self, Read, Write};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub t_ns: f64,
    pub neuron_id: u32,
    pub photons_out: u64,
}

pub const TRACE_RECORD_BYTES: usize = 16;

pub fn write_binary_trace<W: Write>(mut w: W, records: &[TraceRecord]) -> io::Result<()> {
    for r in records {
        let ps = (r.t_ns * 1e3).round();
        if !(0.0..=u64::MAX as f64).contains(&ps) {
            return Err(io::Error::new(io::ErrorKind::InvalidData, format!("time {} ns not representable", r.t_ns)));
        }
        let count = u32::try_from(r.photons_out)
            .map_err(|_| io::Error::new(io::ErrorKind::InvalidData, "photon count exceeds u32"))?;
        let mut buf = [0u8; TRACE_RECORD_BYTES];
        buf[..8].copy_from_slice(&(ps as u64).to_le_bytes());
        buf[8..12].copy_from_slice(&r.neuron_id.to_le_bytes());
        buf[12..].copy_from_slice(&count.to_le_bytes());
        w.write_all(&buf)?;
    }
    Ok(())
}

pub fn read_binary_trace<R: Read>(mut r: R) -> io::Result<Vec<TraceRecord>> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() % TRACE_RECORD_BYTES != 0 {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "truncated trace record"));
    }
    Ok(bytes
        .chunks_exact(TRACE_RECORD_BYTES)
        .map(|c| TraceRecord {
            t_ns: u64::from_le_bytes(c[..8].try_into().expect("8 bytes")) as f64 / 1e3,
            neuron_id: u32::from_le_bytes(c[8..12].try_into().expect("4 bytes")),
            photons_out: u64::from(u32::from_le_bytes(c[12..].try_into().expect("4 bytes"))),
        })
        .collect())
}
