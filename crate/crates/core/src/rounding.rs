// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Integer apportionment.

/// Splits `total` into integer parts proportional to `weights` using the
/// largest-remainder method. The parts always sum to `total` (when at least
/// one weight is positive). Ties go to the lower index.
pub fn largest_remainder(total: u64, weights: &[f64]) -> Vec<u64> {
    let sum: f64 = weights.iter().filter(|w| **w > 0.0).sum();
    let mut parts = vec![0u64; weights.len()];
    if total == 0 || sum <= 0.0 {
        return parts;
    }
    let mut remainders = Vec::with_capacity(weights.len());
    let mut assigned = 0u64;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        let quota = total as f64 * (w / sum);
        let floor = quota.floor();
        // quota can round up past total for a single dominant weight
        let base = (floor as u64).min(total - assigned);
        parts[i] = base;
        assigned += base;
        remainders.push((i, quota - floor));
    }
    let mut left = total - assigned;
    remainders.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    // one pass normally suffices; loop guards against float drift in the quotas
    while left > 0 {
        for &(i, _) in &remainders {
            if left == 0 {
                break;
            }
            parts[i] += 1;
            left -= 1;
        }
    }
    parts
}
