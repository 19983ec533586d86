// SPDX-License-Identifier: Apache-2.0

//! Judging an example set against the thresholds of a reference set.
//!
//! Thresholds, tie fractions and C-rule sides all come from the reference
//! set. The example's own distribution only decides how many of its papers
//! sit below, at, or above each reference threshold.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::histogram::CitationHistogram;
use crate::indicator::{assign_against, resolve_borders, shares_from_matrix, BorderResolution, ClassShares};
use crate::scheme::{PercentileScheme, Rule};
use crate::share::Share;

pub fn evaluate_example(
    reference: &CitationHistogram,
    example: &CitationHistogram,
    scheme: &PercentileScheme,
    rule: Rule,
) -> ClassShares {
    let resolutions = resolve_borders(reference, scheme);
    shares_against(&resolutions, example, scheme, rule)
}

fn shares_against(
    resolutions: &[BorderResolution],
    example: &CitationHistogram,
    scheme: &PercentileScheme,
    rule: Rule,
) -> ClassShares {
    let matrix = assign_against(resolutions, example, scheme, rule);
    shares_from_matrix(&matrix, example.total())
}

/// Example papers relative to one reference threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExamplePartition {
    pub n_below: u64,
    pub n_tie: u64,
    pub n_above: u64,
    pub share_below: Share,
    pub share_tie: Share,
    pub share_above: Share,
}

impl ExamplePartition {
    pub fn new(example: &CitationHistogram, threshold_citations: u64) -> Self {
        let n_below = example.count_below(threshold_citations);
        let n_tie = example.count_at(threshold_citations);
        let n_above = example.total() - n_below - n_tie;
        ExamplePartition {
            n_below,
            n_tie,
            n_above,
            share_below: example.share_of(n_below),
            share_tie: example.share_of(n_tie),
            share_above: example.share_of(n_above),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorderEvaluation {
    pub reference: BorderResolution,
    pub example: ExamplePartition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluationReport {
    pub year: Option<i32>,
    pub borders: Vec<BorderEvaluation>,
    /// Reference set class shares, per requested rule.
    pub reference: BTreeMap<Rule, ClassShares>,
    /// Example set class shares, per requested rule.
    pub example: BTreeMap<Rule, ClassShares>,
    /// Example top-class share under L (low) and E (high).
    pub uncertainty_low: Share,
    pub uncertainty_high: Share,
    /// `X/F - 1` of the example top-class shares; `None` when F is zero.
    pub deviations: Option<BTreeMap<Rule, Share>>,
}

impl EvaluationReport {
    pub fn example_top(&self, rule: Rule) -> Option<&Share> {
        self.example.get(&rule).map(ClassShares::top_share)
    }

    pub fn reference_top(&self, rule: Rule) -> Option<&Share> {
        self.reference.get(&rule).map(ClassShares::top_share)
    }
}

/// Full report for one (reference, example) pair. Uncertainty and
/// deviations are always derived from all four rules; `rules` only selects
/// which class shares are kept.
pub fn evaluate(
    reference: &CitationHistogram,
    example: &CitationHistogram,
    scheme: &PercentileScheme,
    rules: &[Rule],
    year: Option<i32>,
) -> EvaluationReport {
    let resolutions = resolve_borders(reference, scheme);
    let all: BTreeMap<Rule, (ClassShares, ClassShares)> = Rule::ALL
        .iter()
        .map(|&rule| {
            let ref_shares = shares_against(&resolutions, reference, scheme, rule);
            let ex_shares = shares_against(&resolutions, example, scheme, rule);
            (rule, (ref_shares, ex_shares))
        })
        .collect();
    let tops: BTreeMap<Rule, Share> = all
        .iter()
        .map(|(&rule, (_, ex))| (rule, ex.top_share().clone()))
        .collect();
    let deviations = deviation_from_f(&tops).ok();
    let borders = resolutions
        .into_iter()
        .map(|r| BorderEvaluation {
            example: ExamplePartition::new(example, r.threshold.threshold_citations),
            reference: r,
        })
        .collect();
    let mut reference_map = BTreeMap::new();
    let mut example_map = BTreeMap::new();
    for (rule, (r, e)) in all {
        if rules.contains(&rule) {
            reference_map.insert(rule, r);
            example_map.insert(rule, e);
        }
    }
    EvaluationReport {
        year,
        borders,
        reference: reference_map,
        example: example_map,
        uncertainty_low: tops[&Rule::L].clone(),
        uncertainty_high: tops[&Rule::E].clone(),
        deviations,
    }
}

/// `X/F - 1` for every rule other than F present in `values`.
pub fn deviation_from_f(values: &BTreeMap<Rule, Share>) -> Result<BTreeMap<Rule, Share>> {
    let f = values.get(&Rule::F).ok_or(Error::UndefinedDeviation)?;
    if f.is_zero() {
        return Err(Error::UndefinedDeviation);
    }
    Ok(values
        .iter()
        .filter(|(rule, _)| **rule != Rule::F)
        .map(|(&rule, x)| (rule, x / f - Share::one()))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PanelReport {
    pub reports: Vec<EvaluationReport>,
    /// Per border: papers tied at the reference threshold over all papers.
    pub reference_tie_share: Vec<Share>,
    /// Per border: example papers at the reference threshold over all example papers.
    pub example_tie_share: Vec<Share>,
}

/// One report per year, sorted by year.
pub fn multi_year_report(
    pairs: &[(i32, CitationHistogram, CitationHistogram)],
    scheme: &PercentileScheme,
    rules: &[Rule],
) -> Result<PanelReport> {
    if pairs.is_empty() {
        return Err(Error::EmptyPanel);
    }
    let mut order: Vec<&(i32, CitationHistogram, CitationHistogram)> = pairs.iter().collect();
    order.sort_by_key(|p| p.0);
    if let Some(w) = order.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Year {
            year: w[0].0,
            source: Box::new(Error::DuplicateYear),
        });
    }
    let reports: Vec<EvaluationReport> = order
        .iter()
        .map(|(year, reference, example)| evaluate(reference, example, scheme, rules, Some(*year)))
        .collect();

    let borders = scheme.borders().len();
    let ref_papers: u64 = order.iter().map(|p| p.1.total()).sum();
    let ex_papers: u64 = order.iter().map(|p| p.2.total()).sum();
    let tie_share = |papers: u64, pick: &dyn Fn(&BorderEvaluation) -> u64| {
        (0..borders)
            .map(|k| {
                let tied: u64 = reports.iter().map(|r| pick(&r.borders[k])).sum();
                Share::ratio(tied, papers)
            })
            .collect::<Vec<_>>()
    };
    let reference_tie_share = tie_share(ref_papers, &|b| b.reference.threshold.n_tie);
    let example_tie_share = tie_share(ex_papers, &|b| b.example.n_tie);
    Ok(PanelReport {
        reports,
        reference_tie_share,
        example_tie_share,
    })
}
