// SPDX-License-Identifier: Apache-2.0

//! Percentile-based citation indicators under four tie-handling counting
//! rules.
//!
//! A reference set of citation counts defines percentile rank classes
//! (for example the bottom 90% and the top 10%). Papers tied at a class
//! border can be counted below it (rule L), above it (rule E), on the side
//! of their average percentile (rule C), or split fractionally so that
//! every class receives exactly its nominal share (rule F). All arithmetic
//! is exact; decimals appear only when a report is rendered.
//!
//! ```
//! use prc_core::{class_shares, CitationHistogram, PercentileScheme, Rule, Share};
//!
//! let h = CitationHistogram::from_bins([(0, 60), (3, 25), (7, 10), (20, 5)]).unwrap();
//! let top = class_shares(&h, &PercentileScheme::hcp(), Rule::F);
//! assert_eq!(*top.top_share(), Share::percent(10));
//! ```

pub mod cli;
pub mod corpus;
pub mod dataset;
pub mod error;
pub mod evaluator;
pub mod figures;
pub mod histogram;
pub mod indicator;
pub mod oracle;
pub mod percentile;
pub mod perturbation;
pub mod report;
pub mod scheme;
pub mod share;

pub use error::{Error, Result};
pub use evaluator::{deviation_from_f, evaluate, evaluate_example, multi_year_report, EvaluationReport, PanelReport};
pub use histogram::CitationHistogram;
pub use indicator::{
    assign_classes, border_deviation_stats, class_shares, uncertainty_interval, AssignmentMatrix, ClassShares,
};
pub use oracle::{oracle_class_shares, paper_intervals, PaperInterval};
pub use percentile::{
    c_rule_side, find_threshold, percentile_c, percentile_e, percentile_l, tie_fraction, Side, ThresholdInfo,
    TieFraction,
};
pub use perturbation::{decrement_at_threshold, sensitivity_experiment, PerturbationResult};
pub use scheme::{PercentileScheme, Rule};
pub use share::Share;
