// SPDX-License-Identifier: Apache-2.0

//! Threshold resolution and per-rule percentile values.
//!
//! All percentile values are shares of one: `percentile_l(h, c) = 9/10`
//! means 90%. Percentiles start at zero citations, so high percentiles
//! belong to highly cited papers.

use serde::Serialize;

use crate::histogram::CitationHistogram;
use crate::share::Share;

/// Resolution of one border against a histogram.
///
/// The threshold `T` is the smallest citation value whose cumulative
/// share (papers with at most `T` citations) strictly exceeds the border,
/// so `share_below <= border < share_below + share_tie` and the tie group
/// is never empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdInfo {
    pub border: Share,
    pub threshold_citations: u64,
    pub n_below: u64,
    pub n_tie: u64,
    pub n_above: u64,
    pub share_below: Share,
    pub share_tie: Share,
    pub share_above: Share,
}

impl ThresholdInfo {
    pub fn total(&self) -> u64 {
        self.n_below + self.n_tie + self.n_above
    }

    /// Cumulative share up to and including the tie group.
    pub fn share_at_most(&self) -> Share {
        &self.share_below + &self.share_tie
    }
}

/// How a tie group divides across its border.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TieFraction {
    pub below_fraction: Share,
    pub above_fraction: Share,
}

/// Side of the border a tie group lands on under rule C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Below,
    Above,
}

pub fn find_threshold(h: &CitationHistogram, border: &Share) -> ThresholdInfo {
    let n = h.total();
    let mut cumulative = 0u64;
    for (citations, count) in h.bins() {
        if h.share_of(cumulative + count) > *border {
            let n_above = n - cumulative - count;
            return ThresholdInfo {
                border: border.clone(),
                threshold_citations: citations,
                n_below: cumulative,
                n_tie: count,
                n_above,
                share_below: h.share_of(cumulative),
                share_tie: h.share_of(count),
                share_above: h.share_of(n_above),
            };
        }
        cumulative += count;
    }
    unreachable!("border {border:?} must lie below 1")
}

/// Split of the tie group so that exactly `border` lies below.
pub fn tie_fraction(t: &ThresholdInfo) -> TieFraction {
    let above_fraction = (t.share_at_most() - &t.border) / &t.share_tie;
    TieFraction {
        below_fraction: Share::one() - &above_fraction,
        above_fraction,
    }
}

/// Rule C side decision: above iff the midpoint of the tie group's L and E
/// percentiles strictly exceeds the border.
pub fn c_rule_side(t: &ThresholdInfo) -> Side {
    let midpoint = (&t.share_below + t.share_at_most()) / Share::integer(2);
    if midpoint > t.border {
        Side::Above
    } else {
        Side::Below
    }
}

/// Share of papers with strictly fewer than `citations` citations.
pub fn percentile_l(h: &CitationHistogram, citations: u64) -> Share {
    h.share_of(h.count_below(citations))
}

/// Share of papers with at most `citations` citations.
pub fn percentile_e(h: &CitationHistogram, citations: u64) -> Share {
    h.share_of(h.count_at_most(citations))
}

/// Average of the L and E percentiles.
pub fn percentile_c(h: &CitationHistogram, citations: u64) -> Share {
    (percentile_l(h, citations) + percentile_e(h, citations)) / Share::integer(2)
}
