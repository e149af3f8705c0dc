// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Series nanowire detector (SND).
//!
//! One long wire divided into hotspot-sized slots. Every absorbed photon
//! turns its slot normal and adds one hotspot resistance; a second photon in
//! an already-normal slot adds nothing, so resistance saturates at
//! `slot_count * hotspot_resistance`.
//!
//! Absorption positions follow the out-and-back geometry: the light travels
//! along the wire out to the turnaround and back along the return strand, so
//! the optical path coordinate equals the wire coordinate. Path lengths are
//! exponential with the attenuation length; photons that would travel past
//! the end of the wire leave unabsorbed.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SponError};
use crate::par;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SndWire {
    pub wire_length_um: f64,
    pub hotspot_length_nm: f64,
    pub hotspot_resistance_kohm: f64,
    pub attenuation_length_um: f64,
    pub i_c_ua: f64,
    #[serde(skip)]
    slots: Vec<bool>,
    #[serde(skip)]
    occupied: u32,
}

impl Default for SndWire {
    fn default() -> Self {
        SndWire {
            wire_length_um: 100.0,
            hotspot_length_nm: 100.0,
            hotspot_resistance_kohm: 1.0,
            attenuation_length_um: 100.0,
            i_c_ua: 4.0,
            slots: Vec::new(),
            occupied: 0,
        }
    }
}

/// Outcome of sending photons into an SND.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SndAbsorption {
    /// Photons absorbed in the wire (including ones landing on an occupied slot).
    pub absorbed: u64,
    /// Photons that left the wire without being absorbed.
    pub transmitted: u64,
    /// Slots that became normal.
    pub new_slots: u32,
}

impl SndWire {
    pub fn new(wire_length_um: f64, i_c_ua: f64) -> Result<Self> {
        let w = SndWire {
            wire_length_um,
            i_c_ua,
            ..SndWire::default()
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wire_length_um", self.wire_length_um),
            ("hotspot_length_nm", self.hotspot_length_nm),
            ("hotspot_resistance_kohm", self.hotspot_resistance_kohm),
            ("attenuation_length_um", self.attenuation_length_um),
            ("i_c_ua", self.i_c_ua),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SponError::config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.slot_count() == 0 {
            return Err(SponError::config("wire is shorter than one hotspot"));
        }
        Ok(())
    }

    pub fn slot_count(&self) -> u32 {
        let n = self.wire_length_um * 1.0e3 / self.hotspot_length_nm;
        (n + 1e-9).floor() as u32
    }

    pub fn occupied_count(&self) -> u32 {
        self.occupied
    }

    pub fn occupied_slots(&self) -> impl Iterator<Item = u32> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, o)| **o)
            .map(|(i, _)| i as u32)
    }

    pub fn is_occupied(&self, slot: u32) -> bool {
        self.slots.get(slot as usize).copied().unwrap_or(false)
    }

    /// Series resistance from the occupied slots, kOhm.
    pub fn resistance_kohm(&self) -> f64 {
        f64::from(self.occupied) * self.hotspot_resistance_kohm
    }

    /// Resistance with every slot normal, kOhm.
    pub fn max_resistance_kohm(&self) -> f64 {
        f64::from(self.slot_count()) * self.hotspot_resistance_kohm
    }

    pub fn is_saturated(&self) -> bool {
        self.occupied == self.slot_count()
    }

    pub fn clear(&mut self) {
        self.slots.clear();
        self.occupied = 0;
    }

    /// Marks `slot` normal. Returns true if it was superconducting.
    pub fn occupy(&mut self, slot: u32) -> bool {
        let n = self.slot_count() as usize;
        if self.slots.len() != n {
            self.slots.resize(n, false);
        }
        let s = slot as usize;
        if s >= n || self.slots[s] {
            return false;
        }
        self.slots[s] = true;
        self.occupied += 1;
        true
    }

    /// Returns slots to the superconducting state, furthest from the input
    /// first, until at most `count` remain occupied.
    pub fn relax_to(&mut self, count: u32) {
        for s in self.slots.iter_mut().rev() {
            if self.occupied <= count {
                break;
            }
            if *s {
                *s = false;
                self.occupied -= 1;
            }
        }
    }

    /// Slot hit by a photon with uniform draw `u`, or `None` if transmitted.
    pub fn place_photon(&self, u: f64) -> Option<u32> {
        let path_um = -self.attenuation_length_um * (-u).ln_1p();
        if path_um >= self.wire_length_um {
            return None;
        }
        let slot = (path_um * 1.0e3 / self.hotspot_length_nm).floor() as u32;
        Some(slot.min(self.slot_count() - 1))
    }

    /// Sends `n_photons` into the wire, one uniform draw per photon.
    pub fn absorb<R: Rng + ?Sized>(&mut self, n_photons: u64, rng: &mut R) -> SndAbsorption {
        let mut out = SndAbsorption::default();
        for _ in 0..n_photons {
            match self.place_photon(rng.random()) {
                Some(slot) => {
                    out.absorbed += 1;
                    if self.occupy(slot) {
                        out.new_slots += 1;
                    }
                }
                None => out.transmitted += 1,
            }
        }
        out
    }
}

/// Returns `wire` after absorbing `n_photons` photons drawn from `seed`.
pub fn snd_absorb(wire: &SndWire, n_photons: u64, seed: u64) -> SndWire {
    let mut w = wire.clone();
    let mut rng = par::trial_rng(seed, 0);
    w.absorb(n_photons, &mut rng);
    w
}

/// Series resistance of the wire, kOhm.
pub fn snd_resistance(wire: &SndWire) -> f64 {
    wire.resistance_kohm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;

    #[test]
    fn default_geometry() {
        let w = SndWire::default();
        assert_eq!(w.slot_count(), 1000);
        assert_eq!(w.max_resistance_kohm(), 1000.0);
        assert_eq!(snd_resistance(&w), 0.0);
    }

    #[test]
    fn zero_photons_leave_wire_untouched() {
        let w = SndWire::default();
        assert_eq!(snd_absorb(&w, 0, 9), w);
    }

    #[test]
    fn resistance_counts_distinct_slots() {
        let mut w = SndWire::default();
        w.occupy(3);
        w.occupy(10);
        w.occupy(500);
        assert_eq!(snd_resistance(&w), 3.0);
        let mut v = SndWire::default();
        assert!(v.occupy(42));
        assert!(!v.occupy(42));
        assert_eq!(snd_resistance(&v), 1.0);
    }

    #[test]
    fn floods_saturate_at_one_megaohm() {
        let w = snd_absorb(&SndWire::default(), 200_000, 1);
        assert!(w.is_saturated());
        assert_eq!(snd_resistance(&w), 1000.0);
    }

    #[test]
    fn photons_past_the_wire_are_transmitted() {
        let w = SndWire::default();
        // path = -L ln(1-u) >= 100 um  <=>  u >= 1 - 1/e
        assert_eq!(w.place_photon(0.0), Some(0));
        assert!(w.place_photon(0.63).is_some());
        assert_eq!(w.place_photon(0.64), None);
    }

    #[test]
    fn concave_growth() {
        // mean occupancy over several wires, increments shrink with photon number
        let mut totals = [0.0f64; 5];
        for seed in 0..8 {
            let mut w = SndWire::default();
            let mut rng = par::trial_rng(seed, 0);
            for t in totals.iter_mut() {
                w.absorb(1000, &mut rng);
                *t += f64::from(w.occupied_count());
            }
        }
        let incr: Vec<f64> = std::iter::once(totals[0])
            .chain(totals.windows(2).map(|p| p[1] - p[0]))
            .collect();
        for p in incr.windows(2) {
            assert!(p[1] < p[0], "{incr:?}");
        }
    }

    #[test]
    fn relax_keeps_lowest_slots() {
        let mut w = SndWire::default();
        for s in [1, 5, 9] {
            w.occupy(s);
        }
        w.relax_to(1);
        assert_eq!(w.occupied_slots().collect::<Vec<_>>(), vec![1]);
    }

    proptest! {
        #[test]
        fn occupied_set_is_order_independent(draws in prop::collection::vec(0.0f64..1.0, 0..400), shuffle_seed in any::<u64>()) {
            let mut a = SndWire::default();
            for &u in &draws {
                if let Some(s) = a.place_photon(u) { a.occupy(s); }
            }
            let mut permuted = draws.clone();
            permuted.shuffle(&mut par::trial_rng(shuffle_seed, 0));
            let mut b = SndWire::default();
            for &u in &permuted {
                if let Some(s) = b.place_photon(u) { b.occupy(s); }
            }
            prop_assert_eq!(a.occupied_slots().collect::<Vec<_>>(), b.occupied_slots().collect::<Vec<_>>());
            prop_assert_eq!(snd_resistance(&a), f64::from(a.occupied_count()) * a.hotspot_resistance_kohm);
        }

        #[test]
        fn resistance_nondecreasing_and_bounded(n1 in 0u64..3000, n2 in 0u64..3000, seed in any::<u64>()) {
            let mut w = SndWire::default();
            let mut rng = par::trial_rng(seed, 0);
            w.absorb(n1, &mut rng);
            let r1 = snd_resistance(&w);
            w.absorb(n2, &mut rng);
            let r2 = snd_resistance(&w);
            prop_assert!(r2 >= r1);
            prop_assert!(r2 <= w.max_resistance_kohm());
        }
    }
}
