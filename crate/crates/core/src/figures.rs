// SPDX-License-Identifier: Apache-2.0

//! Plot-ready data for the below/tie/above stacked bars and the deviation
//! plot. No plotting happens here.

use crate::evaluator::EvaluationReport;
use crate::report::{Cell, Table};
use crate::scheme::Rule;
use crate::share::Share;

/// Stacked shares around one threshold. `tie_below + tie_above = tie`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackRow {
    pub year: Option<i32>,
    pub threshold: u64,
    pub below: Share,
    pub tie: Share,
    pub tie_below: Share,
    pub tie_above: Share,
    pub above: Share,
}

impl StackRow {
    /// Position of the F split line, measured from the bottom.
    pub fn f_line(&self) -> Share {
        &self.below + &self.tie_below
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationRow {
    pub year: Option<i32>,
    /// `X/F - 1` for L, E and C; `None` where F is zero.
    pub deviations: Option<[Share; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureData {
    pub reference: Vec<StackRow>,
    pub example: Vec<StackRow>,
    pub deviations: Vec<DeviationRow>,
}

/// Figure data for the border at `border_index`, rows sorted by year.
pub fn emit_figure_data(reports: &[EvaluationReport], border_index: usize) -> FigureData {
    let mut sorted: Vec<&EvaluationReport> = reports.iter().collect();
    sorted.sort_by_key(|r| r.year);
    let mut data = FigureData {
        reference: Vec::new(),
        example: Vec::new(),
        deviations: Vec::new(),
    };
    for report in sorted {
        let border = &report.borders[border_index];
        let t = &border.reference.threshold;
        let tie = &border.reference.tie;
        data.reference.push(StackRow {
            year: report.year,
            threshold: t.threshold_citations,
            below: t.share_below.clone(),
            tie: t.share_tie.clone(),
            tie_below: &t.share_tie * &tie.below_fraction,
            tie_above: &t.share_tie * &tie.above_fraction,
            above: t.share_above.clone(),
        });
        let ex = &border.example;
        data.example.push(StackRow {
            year: report.year,
            threshold: t.threshold_citations,
            below: ex.share_below.clone(),
            tie: ex.share_tie.clone(),
            tie_below: &ex.share_tie * &tie.below_fraction,
            tie_above: &ex.share_tie * &tie.above_fraction,
            above: ex.share_above.clone(),
        });
        data.deviations.push(DeviationRow {
            year: report.year,
            deviations: report.deviations.as_ref().map(|d| {
                [d[&Rule::L].clone(), d[&Rule::E].clone(), d[&Rule::C].clone()]
            }),
        });
    }
    data
}

fn year_cell(year: Option<i32>) -> Cell {
    match year {
        Some(y) => Cell::int(y),
        None => Cell::text("-"),
    }
}

pub const STACK_COLUMNS: [&str; 8] = [
    "year",
    "threshold",
    "below",
    "tie",
    "tie_below",
    "tie_above",
    "above",
    "f_line",
];

pub fn stack_table(title: &str, rows: &[StackRow]) -> Table {
    let mut table = Table::new(title, &STACK_COLUMNS);
    for r in rows {
        table.push(vec![
            year_cell(r.year),
            Cell::int(r.threshold),
            Cell::Percent(r.below.clone()),
            Cell::Percent(r.tie.clone()),
            Cell::Percent(r.tie_below.clone()),
            Cell::Percent(r.tie_above.clone()),
            Cell::Percent(r.above.clone()),
            Cell::Percent(r.f_line()),
        ]);
    }
    table
}

pub fn deviation_table(title: &str, rows: &[DeviationRow]) -> Table {
    let mut table = Table::new(title, &["year", "L/F-1", "E/F-1", "C/F-1"]);
    for r in rows {
        let mut row = vec![year_cell(r.year)];
        match &r.deviations {
            Some(d) => row.extend(d.iter().cloned().map(Cell::Percent)),
            None => row.extend((0..3).map(|_| Cell::Missing("undefined".into()))),
        }
        table.push(row);
    }
    table
}

impl FigureData {
    pub fn tables(&self) -> Vec<Table> {
        vec![
            stack_table("fig1: reference set around the threshold", &self.reference),
            stack_table("fig2: example set around the reference threshold", &self.example),
            deviation_table("fig3: deviations from F (percent)", &self.deviations),
        ]
    }
}
