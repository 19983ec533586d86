// SPDX-License-Identifier: Apache-2.0

//! Dataset files.
//!
//! - `histogram-csv`: `citations,count` rows
//! - `raw-list`: one citation count per line
//! - `panel-csv`: `year,citations,count` rows covering several years
//!
//! Blank lines and `#` comments are ignored. Duplicate citation keys within
//! a year are summed. A first line whose first field is not a number is a
//! header, provided data follows it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::histogram::CitationHistogram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    HistogramCsv,
    RawList,
    PanelCsv,
}

impl FromStr for DatasetFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "histogram-csv" => Ok(DatasetFormat::HistogramCsv),
            "raw-list" => Ok(DatasetFormat::RawList),
            "panel-csv" => Ok(DatasetFormat::PanelCsv),
            other => Err(format!(
                "unknown dataset format {other:?} (expected histogram-csv, raw-list or panel-csv)"
            )),
        }
    }
}

/// Histograms keyed by year; unlabeled inputs use `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    pub years: BTreeMap<Option<i32>, CitationHistogram>,
}

impl Dataset {
    pub fn single(h: CitationHistogram) -> Self {
        let mut years = BTreeMap::new();
        years.insert(None, h);
        Dataset { years }
    }

    pub fn is_panel(&self) -> bool {
        self.years.keys().any(Option::is_some)
    }
}

pub fn read_dataset(path: &Path, format: Option<DatasetFormat>) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_dataset(&text, format)
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: FromStr>(line: usize, text: &str, what: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| parse_error(line, format!("invalid {what}: {:?}", text.trim())))
}

pub fn parse_dataset(text: &str, format: Option<DatasetFormat>) -> Result<Dataset> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split(',').map(str::trim).collect()))
        .collect();
    let mut data: &[(usize, Vec<&str>)] = &lines;
    if data.len() > 1 && data[0].1[0].parse::<i64>().is_err() {
        data = &data[1..];
    }
    let Some(first) = data.first() else {
        return Err(Error::EmptyDataset);
    };
    let format = match format {
        Some(f) => f,
        None => match first.1.len() {
            1 => DatasetFormat::RawList,
            2 => DatasetFormat::HistogramCsv,
            3 => DatasetFormat::PanelCsv,
            n => return Err(parse_error(first.0, format!("expected 1 to 3 fields, found {n}"))),
        },
    };
    let width = match format {
        DatasetFormat::RawList => 1,
        DatasetFormat::HistogramCsv => 2,
        DatasetFormat::PanelCsv => 3,
    };

    let mut per_year: BTreeMap<Option<i32>, Vec<(u64, u64)>> = BTreeMap::new();
    for (line, fields) in data {
        let line = *line;
        if fields.len() != width {
            return Err(parse_error(
                line,
                format!("expected {width} fields, found {}", fields.len()),
            ));
        }
        let (year, citations, count) = match format {
            DatasetFormat::RawList => (None, fields[0], "1"),
            DatasetFormat::HistogramCsv => (None, fields[0], fields[1]),
            DatasetFormat::PanelCsv => (Some(field::<i32>(line, fields[0], "year")?), fields[1], fields[2]),
        };
        let citations: u64 = field(line, citations, "citation count")?;
        let count: u64 = field(line, count, "paper count")?;
        if count == 0 {
            return Err(parse_error(line, "paper count must be positive"));
        }
        per_year.entry(year).or_default().push((citations, count));
    }
    let years = per_year
        .into_iter()
        .map(|(year, pairs)| Ok((year, CitationHistogram::from_bins(pairs)?)))
        .collect::<Result<_>>()?;
    Ok(Dataset { years })
}

pub fn write_histogram_csv(h: &CitationHistogram) -> String {
    let mut out = String::from("citations,count\n");
    for (c, n) in h.bins() {
        let _ = writeln!(out, "{c},{n}");
    }
    out
}

pub fn write_panel_csv(years: &BTreeMap<i32, CitationHistogram>) -> String {
    let mut out = String::from("year,citations,count\n");
    for (year, h) in years {
        for (c, n) in h.bins() {
            let _ = writeln!(out, "{year},{c},{n}");
        }
    }
    out
}
