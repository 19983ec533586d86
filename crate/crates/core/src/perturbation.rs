// SPDX-License-Identifier: Apache-2.0

//! Small reference-set modifications and their effect on each rule.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evaluator::evaluate_example;
use crate::histogram::CitationHistogram;
use crate::percentile::{find_threshold, ThresholdInfo};
use crate::scheme::{PercentileScheme, Rule};
use crate::share::Share;

/// Moves `k` papers from the threshold bin at `border` one citation down.
pub fn decrement_at_threshold(
    reference: &CitationHistogram,
    border: &Share,
    k: u64,
) -> Result<CitationHistogram> {
    if k == 0 {
        return Err(Error::InvalidDecrement);
    }
    let t = find_threshold(reference, border);
    if t.threshold_citations == 0 {
        return Err(Error::CannotDecrementZero);
    }
    if k > t.n_tie {
        return Err(Error::InsufficientTiedPapers {
            requested: k,
            available: t.n_tie,
        });
    }
    let at = t.threshold_citations;
    Ok(reference.move_papers(at, at - 1, k))
}

pub type RuleValues = BTreeMap<Rule, Share>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerturbationResult {
    pub border: Share,
    pub decrement: u64,
    pub original: ThresholdInfo,
    pub modified: ThresholdInfo,
    pub reference_before: RuleValues,
    pub reference_after: RuleValues,
    pub example_before: RuleValues,
    pub example_after: RuleValues,
}

impl PerturbationResult {
    pub const ROW_LABELS: [&'static str; 4] = [
        "reference set",
        "modified reference set",
        "example set",
        "example, mod.ref.",
    ];

    /// Rows in table order, each with the four rule values.
    pub fn rows(&self) -> [(&'static str, &RuleValues); 4] {
        [
            (Self::ROW_LABELS[0], &self.reference_before),
            (Self::ROW_LABELS[1], &self.reference_after),
            (Self::ROW_LABELS[2], &self.example_before),
            (Self::ROW_LABELS[3], &self.example_after),
        ]
    }
}

/// Top-class shares of the two-class split at `border`, all four rules, for
/// the reference and the example set, before and after moving `k` tied
/// reference papers down one citation.
pub fn sensitivity_experiment(
    reference: &CitationHistogram,
    example: &CitationHistogram,
    border: &Share,
    k: u64,
) -> Result<PerturbationResult> {
    let modified_ref = decrement_at_threshold(reference, border, k)?;
    let scheme = PercentileScheme::single_border(border.clone());
    let values = |r: &CitationHistogram, x: &CitationHistogram| -> RuleValues {
        Rule::ALL
            .iter()
            .map(|&rule| (rule, evaluate_example(r, x, &scheme, rule).top_share().clone()))
            .collect()
    };
    Ok(PerturbationResult {
        border: border.clone(),
        decrement: k,
        original: find_threshold(reference, border),
        modified: find_threshold(&modified_ref, border),
        reference_before: values(reference, reference),
        reference_after: values(&modified_ref, &modified_ref),
        example_before: values(reference, example),
        example_after: values(&modified_ref, example),
    })
}
