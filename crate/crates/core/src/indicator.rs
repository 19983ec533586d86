// SPDX-License-Identifier: Apache-2.0

//! Percentile rank class assignment and weighted indicators.
//!
//! Every rule is expressed through one per-border question: which fraction
//! of a paper with `c` citations lies above the border? Papers above the
//! threshold count fully, papers below not at all, and the tie group is
//! decided by the rule (L: none, E: all, C: by side, F: by tie fraction).
//! A paper's share of class `k` is then `above(k) - above(k + 1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::histogram::CitationHistogram;
use crate::percentile::{c_rule_side, find_threshold, tie_fraction, Side, ThresholdInfo, TieFraction};
use crate::scheme::{PercentileScheme, Rule};
use crate::share::Share;

/// Everything the rules need to know about one border of a reference set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorderResolution {
    pub threshold: ThresholdInfo,
    pub tie: TieFraction,
    pub c_side: Side,
}

impl BorderResolution {
    pub fn new(h: &CitationHistogram, border: &Share) -> Self {
        let threshold = find_threshold(h, border);
        BorderResolution {
            tie: tie_fraction(&threshold),
            c_side: c_rule_side(&threshold),
            threshold,
        }
    }

    /// Fraction of a paper with `citations` citations counted above this border.
    pub fn upper_fraction(&self, citations: u64, rule: Rule) -> Share {
        let t = self.threshold.threshold_citations;
        if citations > t {
            return Share::one();
        }
        if citations < t {
            return Share::zero();
        }
        match rule {
            Rule::L => Share::zero(),
            Rule::E => Share::one(),
            Rule::C => match self.c_side {
                Side::Above => Share::one(),
                Side::Below => Share::zero(),
            },
            Rule::F => self.tie.above_fraction.clone(),
        }
    }
}

pub fn resolve_borders(h: &CitationHistogram, scheme: &PercentileScheme) -> Vec<BorderResolution> {
    scheme
        .borders()
        .iter()
        .map(|b| BorderResolution::new(h, b))
        .collect()
}

/// Class fractions of a paper with `citations` citations, bottom class first.
pub fn class_membership(resolutions: &[BorderResolution], citations: u64, rule: Rule) -> Vec<Share> {
    let mut above: Vec<Share> = Vec::with_capacity(resolutions.len() + 2);
    above.push(Share::one());
    above.extend(resolutions.iter().map(|r| r.upper_fraction(citations, rule)));
    above.push(Share::zero());
    above.windows(2).map(|w| &w[0] - &w[1]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentRow {
    pub citations: u64,
    pub count: u64,
    pub fractions: Vec<Share>,
}

/// Per-bin class membership of a histogram under one rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentMatrix {
    pub rule: Rule,
    pub scheme: PercentileScheme,
    pub rows: Vec<AssignmentRow>,
}

impl AssignmentMatrix {
    pub fn row(&self, citations: u64) -> Option<&AssignmentRow> {
        self.rows.iter().find(|r| r.citations == citations)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassShares {
    pub shares: Vec<Share>,
    pub indicator_value: Share,
}

impl ClassShares {
    pub(crate) fn from_masses(masses: Vec<Share>, total: u64, scheme: &PercentileScheme) -> Self {
        let n = Share::integer(total);
        let shares: Vec<Share> = masses.into_iter().map(|m| m / &n).collect();
        let indicator_value = shares.iter().zip(scheme.weights()).map(|(s, w)| s * w).sum();
        ClassShares {
            shares,
            indicator_value,
        }
    }

    pub fn top_share(&self) -> &Share {
        self.shares.last().expect("at least one class")
    }

    pub fn bottom_share(&self) -> &Share {
        &self.shares[0]
    }
}

pub fn assign_classes(h: &CitationHistogram, scheme: &PercentileScheme, rule: Rule) -> AssignmentMatrix {
    let resolutions = resolve_borders(h, scheme);
    assign_against(&resolutions, h, scheme, rule)
}

/// Assigns the bins of `h` using borders resolved on a (possibly different)
/// reference set.
pub(crate) fn assign_against(
    resolutions: &[BorderResolution],
    h: &CitationHistogram,
    scheme: &PercentileScheme,
    rule: Rule,
) -> AssignmentMatrix {
    let rows = h
        .bins()
        .map(|(citations, count)| AssignmentRow {
            citations,
            count,
            fractions: class_membership(resolutions, citations, rule),
        })
        .collect();
    AssignmentMatrix {
        rule,
        scheme: scheme.clone(),
        rows,
    }
}

pub fn shares_from_matrix(m: &AssignmentMatrix, total: u64) -> ClassShares {
    let mut masses = vec![Share::zero(); m.scheme.class_count()];
    for row in &m.rows {
        let count = Share::integer(row.count);
        for (mass, fraction) in masses.iter_mut().zip(&row.fractions) {
            if !fraction.is_zero() {
                *mass = &*mass + &count * fraction;
            }
        }
    }
    ClassShares::from_masses(masses, total, &m.scheme)
}

pub fn class_shares(h: &CitationHistogram, scheme: &PercentileScheme, rule: Rule) -> ClassShares {
    shares_from_matrix(&assign_classes(h, scheme, rule), h.total())
}

/// Range of top-class shares between rule L (low) and rule E (high).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UncertaintyInterval {
    pub low: Share,
    pub high: Share,
}

impl UncertaintyInterval {
    pub fn width(&self) -> Share {
        &self.high - &self.low
    }
}

pub fn uncertainty_interval(h: &CitationHistogram, border: &Share) -> UncertaintyInterval {
    let t = find_threshold(h, border);
    UncertaintyInterval {
        high: &t.share_above + &t.share_tie,
        low: t.share_above,
    }
}

/// Mean over histograms of (top-class share - (1 - border)) for the two
/// class scheme split at `border`. Exactly zero for rule F.
pub fn border_deviation_stats(
    histograms: &[CitationHistogram],
    border: &Share,
    rule: Rule,
) -> Result<Share> {
    if histograms.is_empty() {
        return Err(Error::EmptyPanel);
    }
    let scheme = PercentileScheme::single_border(border.clone());
    let target = Share::one() - border;
    let sum: Share = histograms
        .iter()
        .map(|h| class_shares(h, &scheme, rule).top_share() - &target)
        .sum();
    Ok(sum / Share::integer(histograms.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percentile::{percentile_e, percentile_l};
    use proptest::prelude::*;

    fn hist(pairs: &[(u64, u64)]) -> CitationHistogram {
        CitationHistogram::from_bins(pairs.iter().copied()).unwrap()
    }

    fn ref_2010() -> CitationHistogram {
        hist(&[(0, 60000), (3, 40000), (6, 30801), (7, 3390), (8, 10000), (40, 3703)])
    }

    fn ref_1994() -> CitationHistogram {
        hist(&[(0, 87324), (47, 316), (48, 268), (49, 9474)])
    }

    #[test]
    fn f_splits_threshold_bin_2010() {
        let m = assign_classes(&ref_2010(), &PercentileScheme::hcp(), Rule::F);
        let row = m.row(7).unwrap();
        assert_eq!(row.fractions[0].render_decimal(2), "0.68");
        assert_eq!(row.fractions[1].render_decimal(2), "0.32");
        assert_eq!(m.row(6).unwrap().fractions, vec![Share::one(), Share::zero()]);
        assert_eq!(m.row(8).unwrap().fractions, vec![Share::zero(), Share::one()]);
    }

    #[test]
    fn uncited_group_spans_five_lowest_classes() {
        // 5% uncited out of 1000 papers
        let h = hist(&[(0, 50), (1, 300), (2, 650)]);
        let m = assign_classes(&h, &PercentileScheme::r100(), Rule::F);
        let row = m.row(0).unwrap();
        for k in 0..5 {
            assert_eq!(row.fractions[k], Share::ratio(1, 5), "class {k}");
        }
        assert!(row.fractions[5..].iter().all(Share::is_zero));
    }

    #[test]
    fn single_bin_under_l_is_bottom() {
        let m = assign_classes(&hist(&[(5, 10)]), &PercentileScheme::hcp(), Rule::L);
        assert_eq!(m.rows[0].fractions, vec![Share::one(), Share::zero()]);
    }

    #[test]
    fn shares_1994() {
        let h = ref_1994();
        let hcp = PercentileScheme::hcp();
        let l = class_shares(&h, &hcp, Rule::L);
        assert_eq!(*l.top_share(), Share::ratio(9474, 97382));
        assert_eq!(l.top_share().to_string(), "9.73");
        assert_eq!(l.indicator_value, *l.top_share());
        let e = class_shares(&h, &hcp, Rule::E);
        assert_eq!(*e.top_share(), Share::ratio(9742, 97382));
        assert_eq!(e.top_share().to_string(), "10.00");
        assert_eq!(class_shares(&h, &hcp, Rule::C).top_share(), e.top_share());
        assert_eq!(*class_shares(&h, &hcp, Rule::F).top_share(), Share::percent(10));
    }

    #[test]
    fn uncertainty_examples() {
        let u = uncertainty_interval(&ref_2010(), &Share::percent(90));
        assert_eq!(u.low, Share::ratio(13703, 147894));
        assert_eq!(u.high, Share::ratio(13703 + 3390, 147894));
        assert_eq!(u.low.to_string(), "9.27");
        assert_eq!(u.high.to_string(), "11.56");
        assert_eq!(u.width().to_string(), "2.29");

        let u = uncertainty_interval(&ref_1994(), &Share::percent(90));
        assert_eq!((u.low.to_string(), u.high.to_string()), ("9.73".into(), "10.00".into()));
        assert_eq!(u.width().to_string(), "0.28");
        assert_eq!(u.width(), Share::ratio(268, 97382));

        let u = uncertainty_interval(&hist(&[(5, 10)]), &Share::percent(90));
        assert_eq!((u.low, u.high), (Share::zero(), Share::one()));
    }

    #[test]
    fn deviation_stats() {
        let b = Share::percent(90);
        let hs = vec![ref_1994(), ref_2010(), hist(&[(5, 10)])];
        assert_eq!(border_deviation_stats(&hs, &b, Rule::F).unwrap(), Share::zero());
        let l = border_deviation_stats(&[ref_1994()], &b, Rule::L).unwrap();
        assert_eq!(l.render_percent(2), "-0.27");
        let e = border_deviation_stats(&[hist(&[(5, 10)])], &b, Rule::E).unwrap();
        assert_eq!(e, Share::percent(90));
        assert_eq!(border_deviation_stats(&[], &b, Rule::L), Err(Error::EmptyPanel));
    }

    #[test]
    fn e_rule_empties_bottom_class_with_many_uncited() {
        let h = hist(&[(0, 30), (1, 500), (4, 470)]);
        let s = class_shares(&h, &PercentileScheme::r100(), Rule::E);
        assert!(s.bottom_share().is_zero());
        assert_eq!(s.shares.iter().cloned().sum::<Share>(), Share::one());
    }

    #[test]
    fn l_rule_empties_top_class_with_many_tied_at_maximum() {
        let h = hist(&[(0, 500), (3, 480), (9, 20)]);
        let s = class_shares(&h, &PercentileScheme::r100(), Rule::L);
        assert!(s.top_share().is_zero());
    }

    #[test]
    fn cumulative_hit_exactly_at_border() {
        // 90% have zero citations: the 1-citation bin is the tie group and F puts it all above.
        let h = hist(&[(0, 9), (1, 1)]);
        let hcp = PercentileScheme::hcp();
        assert!(class_shares(&h, &hcp, Rule::L).top_share().is_zero());
        assert_eq!(*class_shares(&h, &hcp, Rule::E).top_share(), Share::percent(10));
        assert_eq!(*class_shares(&h, &hcp, Rule::F).top_share(), Share::percent(10));
    }

    fn arb_hist() -> impl Strategy<Value = CitationHistogram> {
        prop::collection::btree_map(0u64..60, 1u64..2000, 1..25)
            .prop_map(|m| CitationHistogram::from_bins(m).unwrap())
    }

    fn arb_scheme() -> impl Strategy<Value = PercentileScheme> {
        prop::collection::btree_set(1u64..400, 1..12).prop_map(|set| {
            let borders: Vec<Share> = set.into_iter().map(|b| Share::ratio(b, 400)).collect();
            let weights = (0..=borders.len() as u64).map(Share::integer).collect();
            PercentileScheme::new(borders, weights).unwrap()
        })
    }

    /// Crisp class from a percentile value with (lower, upper] classes, bottom closed.
    fn crisp_class(scheme: &PercentileScheme, p: &Share) -> usize {
        scheme.borders().iter().filter(|b| p > *b).count()
    }

    proptest! {
        #[test]
        fn rows_are_stochastic(h in arb_hist(), s in arb_scheme()) {
            for rule in Rule::ALL {
                let m = assign_classes(&h, &s, rule);
                for row in &m.rows {
                    prop_assert_eq!(row.fractions.iter().sum::<Share>(), Share::one());
                    prop_assert!(row.fractions.iter().all(|f| !f.is_negative()));
                    if rule != Rule::F {
                        prop_assert!(row.fractions.iter().all(|f| f.is_zero() || *f == Share::one()));
                    }
                }
            }
        }

        #[test]
        fn f_hits_every_class_width(h in arb_hist(), s in arb_scheme()) {
            let f = class_shares(&h, &s, Rule::F);
            for k in 0..s.class_count() {
                prop_assert_eq!(&f.shares[k], &s.class_width(k));
            }
        }

        #[test]
        fn top_share_ordering(h in arb_hist(), s in arb_scheme()) {
            let top = |r| class_shares(&h, &s, r).top_share().clone();
            let (l, e, c, f) = (top(Rule::L), top(Rule::E), top(Rule::C), top(Rule::F));
            prop_assert!(l <= f && f <= e);
            prop_assert!(c == l || c == e);
        }

        #[test]
        fn crisp_rules_match_percentile_classes(h in arb_hist(), s in arb_scheme()) {
            let l = assign_classes(&h, &s, Rule::L);
            let e = assign_classes(&h, &s, Rule::E);
            for (lr, er) in l.rows.iter().zip(&e.rows) {
                let kl = crisp_class(&s, &percentile_l(&h, lr.citations));
                let ke = crisp_class(&s, &percentile_e(&h, er.citations));
                prop_assert_eq!(&lr.fractions[kl], &Share::one());
                prop_assert_eq!(&er.fractions[ke], &Share::one());
            }
        }

        #[test]
        fn shares_invariant_under_duplication(h in arb_hist(), s in arb_scheme(), m in 2u64..20) {
            let scaled = h.scaled(m).unwrap();
            for rule in Rule::ALL {
                prop_assert_eq!(class_shares(&h, &s, rule), class_shares(&scaled, &s, rule));
            }
        }
    }
}
