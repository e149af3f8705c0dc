// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Mutual information between stimuli and responses, and dynamic range of a
//! transfer curve.

use serde::Serialize;

use crate::error::{Result, SponError};

/// Joint counts of (stimulus bin, response bin).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointHistogram {
    n_stimulus: usize,
    n_response: usize,
    /// Row-major: `counts[s * n_response + r]`.
    counts: Vec<u64>,
}

impl JointHistogram {
    pub fn new(n_stimulus: usize, n_response: usize) -> Self {
        JointHistogram {
            n_stimulus,
            n_response,
            counts: vec![0; n_stimulus * n_response],
        }
    }

    /// Builds a histogram from a rectangular table of rows (one per stimulus).
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let n_response = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_response) {
            return Err(SponError::domain("histogram rows differ in length"));
        }
        Ok(JointHistogram {
            n_stimulus: rows.len(),
            n_response,
            counts: rows.concat(),
        })
    }

    /// Bins `(stimulus, response)` samples. Values outside the edges fall into
    /// the first or last bin.
    pub fn from_samples(samples: &[(f64, f64)], stimulus_edges: &[f64], response_edges: &[f64]) -> Result<Self> {
        if stimulus_edges.len() < 2 || response_edges.len() < 2 {
            return Err(SponError::domain("binning needs at least two edges"));
        }
        let mut h = JointHistogram::new(stimulus_edges.len() - 1, response_edges.len() - 1);
        for &(s, r) in samples {
            h.add(bin_index(s, stimulus_edges), bin_index(r, response_edges), 1);
        }
        Ok(h)
    }

    pub fn add(&mut self, s: usize, r: usize, count: u64) {
        self.counts[s * self.n_response + r] += count;
    }

    pub fn count(&self, s: usize, r: usize) -> u64 {
        self.counts[s * self.n_response + r]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn stimulus_marginal(&self) -> Vec<u64> {
        self.counts
            .chunks(self.n_response.max(1))
            .map(|row| row.iter().sum())
            .collect()
    }

    pub fn response_marginal(&self) -> Vec<u64> {
        (0..self.n_response)
            .map(|r| (0..self.n_stimulus).map(|s| self.count(s, r)).sum())
            .collect()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_stimulus, self.n_response)
    }
}

/// `n + 1` equally spaced edges covering `[lo, hi]`.
pub fn uniform_edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

fn bin_index(x: f64, edges: &[f64]) -> usize {
    let last = edges.len() - 2;
    edges[1..=last].partition_point(|&e| e <= x).min(last)
}

fn entropy_bits(counts: &[u64]) -> f64 {
    let n = counts.iter().sum::<u64>() as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Plug-in mutual information, bits.
///
/// Each cell contributes `n_sr / N * log2(n_sr * N / (n_s * n_r))`, with the
/// ratio formed from exact integer products. Independent tables therefore
/// give exactly zero.
pub fn mutual_information(h: &JointHistogram) -> Result<f64> {
    let total = h.total();
    if total == 0 {
        return Err(SponError::EmptyHistogram);
    }
    let ps = h.stimulus_marginal();
    let pr = h.response_marginal();
    let mut acc = 0.0;
    for (s, &n_s) in ps.iter().enumerate() {
        for (r, &n_r) in pr.iter().enumerate() {
            let n_sr = h.count(s, r);
            if n_sr == 0 {
                continue;
            }
            let num = u128::from(n_sr) * u128::from(total);
            let den = u128::from(n_s) * u128::from(n_r);
            let ratio = if num == den { 1.0 } else { num as f64 / den as f64 };
            acc += n_sr as f64 * ratio.log2();
        }
    }
    Ok((acc / total as f64).max(0.0))
}

/// Stimulus and response entropies, bits.
pub fn marginal_entropies(h: &JointHistogram) -> Result<(f64, f64)> {
    if h.total() == 0 {
        return Err(SponError::EmptyHistogram);
    }
    Ok((entropy_bits(&h.stimulus_marginal()), entropy_bits(&h.response_marginal())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DynamicRange {
    pub turn_on: f64,
    pub saturation: f64,
    pub bits: f64,
}

/// Dynamic range of a transfer curve given as `(input, output)` samples.
///
/// Turn-on and saturation are the first sampled inputs whose output reaches
/// 5% and 95% of the output span. Coinciding points give 0 bits.
pub fn dynamic_range(curve: &[(f64, f64)]) -> Result<DynamicRange> {
    let mut pts: Vec<(f64, f64)> = curve.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let lo = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let hi = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if pts.len() < 2 || !(hi > lo) {
        return Err(SponError::UndefinedRange);
    }
    let crossing = |frac: f64| {
        let level = lo + frac * (hi - lo);
        pts.iter().find(|p| p.1 >= level).map(|p| p.0)
    };
    let (Some(turn_on), Some(saturation)) = (crossing(0.05), crossing(0.95)) else {
        return Err(SponError::UndefinedRange);
    };
    let span = saturation - turn_on;
    let bits = if span > 0.0 { span.log2() } else { 0.0 };
    Ok(DynamicRange {
        turn_on,
        saturation,
        bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct probability-space evaluation of the double sum.
    fn mi_oracle(rows: &[Vec<u64>]) -> f64 {
        let n: f64 = rows.iter().flatten().sum::<u64>() as f64;
        let ps: Vec<f64> = rows.iter().map(|r| r.iter().sum::<u64>() as f64 / n).collect();
        let pr: Vec<f64> = (0..rows[0].len())
            .map(|j| rows.iter().map(|r| r[j]).sum::<u64>() as f64 / n)
            .collect();
        let mut i = 0.0;
        for (s, row) in rows.iter().enumerate() {
            let row_n: f64 = row.iter().sum::<u64>() as f64;
            for (r, &c) in row.iter().enumerate() {
                if c > 0 {
                    let cond = c as f64 / row_n;
                    i += ps[s] * cond * (cond / pr[r]).log2();
                }
            }
        }
        i
    }

    #[test]
    fn two_by_two_regression() {
        let rows = vec![vec![3, 1], vec![1, 3]];
        let h = JointHistogram::from_rows(&rows).unwrap();
        let i = mutual_information(&h).unwrap();
        assert!((i - 0.188_721_875_540_867_17).abs() < 1e-15);
        assert!((i - mi_oracle(&rows)).abs() < 1e-15);
    }

    #[test]
    fn independent_and_bijective() {
        let h = JointHistogram::from_rows(&[vec![2, 4, 6], vec![1, 2, 3]]).unwrap();
        assert_eq!(mutual_information(&h).unwrap(), 0.0);
        for n in 1..=16usize {
            let rows: Vec<Vec<u64>> = (0..n)
                .map(|s| (0..n).map(|r| if (s + 3) % n == r { 7 } else { 0 }).collect())
                .collect();
            let h = JointHistogram::from_rows(&rows).unwrap();
            assert!((mutual_information(&h).unwrap() - (n as f64).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(
            mutual_information(&JointHistogram::new(2, 2)),
            Err(SponError::EmptyHistogram)
        );
    }

    #[test]
    fn binning_samples() {
        let edges = uniform_edges(0.0, 4.0, 4);
        let h = JointHistogram::from_samples(&[(0.5, 0.5), (3.9, 3.9), (9.0, -1.0)], &edges, &edges).unwrap();
        assert_eq!(h.count(0, 0), 1);
        assert_eq!(h.count(3, 3), 1);
        assert_eq!(h.count(3, 0), 1);
    }

    #[test]
    fn dynamic_range_conventions() {
        let step: Vec<(f64, f64)> = (0..100).map(|x| (x as f64, if x < 40 { 0.0 } else { 1.0 })).collect();
        assert_eq!(dynamic_range(&step).unwrap().bits, 0.0);
        let flat: Vec<(f64, f64)> = (0..10).map(|x| (x as f64, 3.0)).collect();
        assert_eq!(dynamic_range(&flat), Err(SponError::UndefinedRange));
        let ramp: Vec<(f64, f64)> = (0..=1024).map(|x| (x as f64, x as f64)).collect();
        let d = dynamic_range(&ramp).unwrap();
        // 5% and 95% of a ramp are 0.9 of its length apart
        assert_eq!((d.turn_on, d.saturation), (52.0, 973.0));
    }

    proptest! {
        #[test]
        fn entropy_bounds(rows in prop::collection::vec(prop::collection::vec(0u64..50, 4), 1..6)) {
            let h = JointHistogram::from_rows(&rows).unwrap();
            prop_assume!(h.total() > 0);
            let i = mutual_information(&h).unwrap();
            let (hs, hr) = marginal_entropies(&h).unwrap();
            prop_assert!(i >= 0.0);
            prop_assert!(i <= hs.min(hr) + 1e-12);
            prop_assert!((i - mi_oracle(&rows).max(0.0)).abs() < 1e-9);
        }
    }
}
