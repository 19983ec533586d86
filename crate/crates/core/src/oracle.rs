// SPDX-License-Identifier: Apache-2.0

//! Brute-force fractional scoring through per-paper percentile intervals.
//!
//! Each citation group occupies the interval `[n/N, (n+g)/N]` where `n`
//! papers have fewer citations and `g` papers share the group's count.
//! Class weights are plain interval overlaps. Nothing here touches the
//! threshold machinery in [`crate::indicator`], so the two can check
//! each other.

use serde::Serialize;

use crate::histogram::CitationHistogram;
use crate::indicator::ClassShares;
use crate::scheme::PercentileScheme;
use crate::share::Share;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperInterval {
    pub lower: Share,
    pub upper: Share,
}

impl PaperInterval {
    pub fn width(&self) -> Share {
        &self.upper - &self.lower
    }

    pub fn overlap(&self, lower: &Share, upper: &Share) -> Share {
        let lo = if self.lower > *lower { &self.lower } else { lower };
        let hi = if self.upper < *upper { &self.upper } else { upper };
        if hi > lo {
            hi - lo
        } else {
            Share::zero()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInterval {
    pub citations: u64,
    pub count: u64,
    pub interval: PaperInterval,
}

/// Percentile intervals of every citation group, ascending by citations.
pub fn paper_intervals(h: &CitationHistogram) -> Vec<GroupInterval> {
    let n = Share::integer(h.total());
    let mut before = 0u64;
    let mut out = Vec::with_capacity(h.bin_count());
    for (citations, count) in h.bins() {
        let lower = Share::integer(before) / &n;
        before += count;
        let upper = Share::integer(before) / &n;
        out.push(GroupInterval {
            citations,
            count,
            interval: PaperInterval { lower, upper },
        });
    }
    out
}

/// Class weights of one interval: overlap with each class over its width.
pub fn interval_weights(interval: &PaperInterval, scheme: &PercentileScheme) -> Vec<Share> {
    let width = interval.width();
    (0..scheme.class_count())
        .map(|k| {
            let (lower, upper) = scheme.class_bounds(k);
            interval.overlap(&lower, &upper) / &width
        })
        .collect()
}

pub fn oracle_class_shares(h: &CitationHistogram, scheme: &PercentileScheme) -> ClassShares {
    let mut masses = vec![Share::zero(); scheme.class_count()];
    for group in paper_intervals(h) {
        let count = Share::integer(group.count);
        for (mass, weight) in masses.iter_mut().zip(interval_weights(&group.interval, scheme)) {
            *mass = &*mass + &count * weight;
        }
    }
    ClassShares::from_masses(masses, h.total(), scheme)
}
