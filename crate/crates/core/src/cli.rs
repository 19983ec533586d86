// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error (or a failed
//! `verify`).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::corpus::{random_corpus, random_scheme, CorpusLimits};
use crate::dataset::{read_dataset, Dataset, DatasetFormat};
use crate::error::Error;
use crate::evaluator::{evaluate, multi_year_report, EvaluationReport};
use crate::figures::emit_figure_data;
use crate::histogram::CitationHistogram;
use crate::indicator::{class_shares, resolve_borders, ClassShares};
use crate::oracle::oracle_class_shares;
use crate::percentile::{tie_fraction, Side};
use crate::perturbation::sensitivity_experiment;
use crate::report::{Cell, Document, OutputFormat, Table};
use crate::scheme::{PercentileScheme, Rule};
use crate::share::Share;

#[derive(Debug, Parser)]
#[command(name = "prc", version, about = "Percentile rank class indicators under the L, E, C and F counting rules")]
pub struct Cli {
    /// Output format: text, csv or json.
    #[arg(long, global = true, default_value = "text")]
    pub format: OutputFormat,

    /// Decimals shown for rendered percentages.
    #[arg(long, global = true, default_value_t = 2)]
    pub precision: usize,

    /// Input format; detected from the field count when omitted.
    #[arg(long, global = true)]
    pub input_format: Option<DatasetFormat>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SchemeArg {
    /// hcp, deciles, r100, or a path to a custom scheme file.
    #[arg(long, default_value = "hcp")]
    pub scheme: String,
}

#[derive(Debug, Args)]
pub struct RulesArg {
    /// Comma separated counting rules.
    #[arg(long, default_value = "L,E,C,F")]
    pub rules: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Threshold citation counts and below/tie/above partitions.
    Thresholds {
        input: PathBuf,
        #[command(flatten)]
        scheme: SchemeArg,
    },
    /// Class shares and indicator values of a dataset.
    Compute {
        input: PathBuf,
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        rules: RulesArg,
    },
    /// Evaluate an example set against reference thresholds.
    Evaluate {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        example: PathBuf,
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        rules: RulesArg,
    },
    /// Move tied reference papers one citation down and compare.
    Perturb {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        example: Option<PathBuf>,
        /// Border in percent.
        #[arg(long, default_value = "90")]
        border: String,
        /// Number of tied papers to move.
        #[arg(long)]
        decrement: u64,
        /// Year to use from a panel file.
        #[arg(long)]
        year: Option<i32>,
    },
    /// Plot-ready below/tie/above and deviation tables.
    Figures {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        example: Option<PathBuf>,
        /// Border in percent; must be one of the scheme's borders.
        #[arg(long, default_value = "90")]
        border: String,
        #[command(flatten)]
        scheme: SchemeArg,
    },
    /// Check rule F against the interval oracle.
    Verify {
        /// Dataset to check; a seeded random corpus is used when omitted.
        input: Option<PathBuf>,
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases (corpus size, or extra random schemes per input year).
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

enum Failure {
    Usage(String),
    Data(Error),
    Verify(Document),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            let _ = out.write_all(doc.render(cli.format, cli.precision).as_bytes());
            0
        }
        Err(Failure::Verify(doc)) => {
            let _ = out.write_all(doc.render(cli.format, cli.precision).as_bytes());
            2
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Document, Failure> {
    let fmt = cli.input_format;
    match &cli.command {
        Command::Thresholds { input, scheme } => {
            let scheme = load_scheme(&scheme.scheme)?;
            let data = read_dataset(input, fmt)?;
            Ok(Document::new(vec![thresholds_table(&data, &scheme)]))
        }
        Command::Compute { input, scheme, rules } => {
            let scheme = load_scheme(&scheme.scheme)?;
            let rules = parse_rules(&rules.rules)?;
            let data = read_dataset(input, fmt)?;
            let results: Vec<(Option<i32>, Rule, ClassShares)> = data
                .years
                .iter()
                .flat_map(|(&year, h)| rules.iter().map(move |&rule| (year, rule, h)))
                .map(|(year, rule, h)| (year, rule, class_shares(h, &scheme, rule)))
                .collect();
            Ok(Document::new(vec![
                indicator_table("indicator", &results),
                class_table("class shares", &scheme, &results),
            ]))
        }
        Command::Evaluate {
            reference,
            example,
            scheme,
            rules,
        } => {
            let scheme = load_scheme(&scheme.scheme)?;
            let rules = parse_rules(&rules.rules)?;
            let reference = read_dataset(reference, fmt)?;
            let example = read_dataset(example, fmt)?;
            let pairs = pair_years(&reference, &example)?;
            let (reports, aggregate) = if reference.is_panel() {
                let labeled: Vec<_> = pairs
                    .into_iter()
                    .map(|(y, r, x)| (y.expect("panel year"), r.clone(), x.clone()))
                    .collect();
                let panel = multi_year_report(&labeled, &scheme, &rules)?;
                let mut agg = Table::new("aggregate tie shares", &["border", "reference", "example"]);
                for (k, b) in scheme.borders().iter().enumerate() {
                    agg.push(vec![
                        Cell::Percent(b.clone()),
                        Cell::Percent(panel.reference_tie_share[k].clone()),
                        Cell::Percent(panel.example_tie_share[k].clone()),
                    ]);
                }
                (panel.reports, Some(agg))
            } else {
                let (y, r, x) = pairs[0];
                (vec![evaluate(r, x, &scheme, &rules, y)], None)
            };
            let mut tables = evaluation_tables(&reports, &scheme);
            tables.extend(aggregate);
            Ok(Document::new(tables))
        }
        Command::Perturb {
            reference,
            example,
            border,
            decrement,
            year,
        } => {
            let border = parse_border(border)?;
            let reference = read_dataset(reference, fmt)?;
            let reference_h = pick_year(&reference, *year)?;
            let example_h = match example {
                Some(path) => Some(pick_year(&read_dataset(path, fmt)?, *year)?),
                None => None,
            };
            let ex = example_h.as_ref().unwrap_or(&reference_h);
            let result = sensitivity_experiment(&reference_h, ex, &border, *decrement)?;
            let title = format!(
                "top share above {}%, {} papers moved from {} to {} citations",
                border.render_percent(2),
                decrement,
                result.original.threshold_citations,
                result.original.threshold_citations - 1
            );
            let mut table = Table::new(title, &["set", "L", "E", "C", "F"]);
            let rows = if example_h.is_some() { 4 } else { 2 };
            for (label, values) in result.rows().into_iter().take(rows) {
                let mut row = vec![Cell::text(label)];
                row.extend(Rule::ALL.iter().map(|r| Cell::Percent(values[r].clone())));
                table.push(row);
            }
            let mut thresholds = Table::new(
                "reference thresholds",
                &["state", "threshold", "n_below", "n_tie", "n_above", "tie_above_fraction"],
            );
            for (label, t) in [("original", &result.original), ("modified", &result.modified)] {
                let above = tie_fraction(t).above_fraction;
                thresholds.push(vec![
                    Cell::text(label),
                    Cell::int(t.threshold_citations),
                    Cell::int(t.n_below),
                    Cell::int(t.n_tie),
                    Cell::int(t.n_above),
                    Cell::Decimal(above),
                ]);
            }
            Ok(Document::new(vec![table, thresholds]))
        }
        Command::Figures {
            reference,
            example,
            border,
            scheme,
        } => {
            let scheme = load_scheme(&scheme.scheme)?;
            let border = parse_border(border)?;
            let index = scheme
                .borders()
                .iter()
                .position(|b| *b == border)
                .ok_or_else(|| Failure::Usage(format!("{}% is not a border of the scheme", border.render_percent(4))))?;
            let reference = read_dataset(reference, fmt)?;
            let example_data = match example {
                Some(path) => Some(read_dataset(path, fmt)?),
                None => None,
            };
            let example = example_data.as_ref().unwrap_or(&reference);
            let reports: Vec<EvaluationReport> = pair_years(&reference, example)?
                .into_iter()
                .map(|(y, r, x)| evaluate(r, x, &scheme, &Rule::ALL, y))
                .collect();
            let mut tables = emit_figure_data(&reports, index).tables();
            if example_data.is_none() {
                tables.truncate(1);
            }
            Ok(Document::new(tables))
        }
        Command::Verify {
            input,
            scheme,
            seed,
            cases,
        } => verify(input.as_deref(), &scheme.scheme, *seed, *cases, fmt),
    }
}

fn verify(
    input: Option<&Path>,
    scheme_name: &str,
    seed: u64,
    cases: usize,
    fmt: Option<DatasetFormat>,
) -> Result<Document, Failure> {
    use rand::SeedableRng;

    let limits = CorpusLimits::default();
    let mut table = Table::new("oracle equivalence", &["source", "cases", "mismatches"]);
    let mut mismatches_total = 0usize;
    let check = |h: &CitationHistogram, s: &PercentileScheme| class_shares(h, s, Rule::F) != oracle_class_shares(h, s);
    match input {
        Some(path) => {
            let scheme = load_scheme(scheme_name)?;
            let data = read_dataset(path, fmt)?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for (year, h) in &data.years {
                let mut schemes = vec![scheme.clone()];
                schemes.extend((0..cases).map(|_| random_scheme(&mut rng, h, &limits)));
                let bad = schemes.iter().filter(|s| check(h, s)).count();
                mismatches_total += bad;
                let source = year.map_or_else(|| path.display().to_string(), |y| format!("{} year {y}", path.display()));
                table.push(vec![Cell::text(source), Cell::int(schemes.len() as i128), Cell::int(bad as i128)]);
            }
        }
        None => {
            let corpus = random_corpus(seed, cases, &limits);
            let bad = corpus.iter().filter(|(h, s)| check(h, s)).count();
            mismatches_total += bad;
            table.push(vec![
                Cell::text(format!("random corpus, seed {seed}")),
                Cell::int(cases as i128),
                Cell::int(bad as i128),
            ]);
        }
    }
    let verdict = if mismatches_total == 0 { "PASS" } else { "FAIL" };
    let doc = Document::new(vec![table]).with_note(format!("oracle equivalence: {verdict}"));
    if mismatches_total == 0 {
        Ok(doc)
    } else {
        Err(Failure::Verify(doc))
    }
}

fn parse_rules(text: &str) -> Result<Vec<Rule>, Failure> {
    Rule::parse_list(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_border(text: &str) -> Result<Share, Failure> {
    let border = Share::parse_percent(text).map_err(|_| Failure::Usage(format!("invalid border {text:?}")))?;
    if border <= Share::zero() || border >= Share::one() {
        return Err(Failure::Usage(format!("border {text} must lie strictly between 0 and 100")));
    }
    Ok(border)
}

/// Built-in scheme name or custom scheme file.
pub fn load_scheme(name: &str) -> Result<PercentileScheme, Error> {
    match name {
        "hcp" => Ok(PercentileScheme::hcp()),
        "deciles" => Ok(PercentileScheme::deciles()),
        "r100" => Ok(PercentileScheme::r100()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("scheme {path}: {e}")))?;
            parse_scheme(&text)
        }
    }
}

/// Custom scheme: one `upper_bound,weight` row per class, bottom to top,
/// upper bounds in percent and the last one equal to 100.
pub fn parse_scheme(text: &str) -> Result<PercentileScheme, Error> {
    let mut uppers = Vec::new();
    let mut weights = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse { line: i + 1, message };
        let Some((upper, weight)) = line.split_once(',') else {
            return Err(bad(format!("expected upper_bound,weight: {line:?}")));
        };
        let upper: Share = match upper.trim().parse() {
            Ok(v) => v,
            Err(_) if uppers.is_empty() && weights.is_empty() => continue, // header
            Err(_) => return Err(bad(format!("invalid upper bound {upper:?}"))),
        };
        let weight: Share = weight.trim().parse().map_err(|_| bad(format!("invalid weight {weight:?}")))?;
        uppers.push(upper);
        weights.push(weight);
    }
    match uppers.pop() {
        Some(last) if last == Share::integer(100) => PercentileScheme::from_percent_borders(&uppers, weights),
        Some(_) => Err(Error::InvalidScheme("the last class must end at 100".into())),
        None => Err(Error::InvalidScheme("no classes".into())),
    }
}

type Pair<'a> = (Option<i32>, &'a CitationHistogram, &'a CitationHistogram);

fn pair_years<'a>(reference: &'a Dataset, example: &'a Dataset) -> Result<Vec<Pair<'a>>, Failure> {
    if reference.is_panel() != example.is_panel() {
        return Err(Failure::Usage(
            "reference and example must both be single datasets or both be panels".into(),
        ));
    }
    if !reference.is_panel() {
        return Ok(vec![(None, &reference.years[&None], &example.years[&None])]);
    }
    let mut pairs = Vec::new();
    for (year, r) in &reference.years {
        match example.years.get(year) {
            Some(x) => pairs.push((*year, r, x)),
            None => {
                return Err(Failure::Data(Error::Year {
                    year: year.expect("panel year"),
                    source: Box::new(Error::EmptyDataset),
                }))
            }
        }
    }
    if let Some(extra) = example.years.keys().find(|y| !reference.years.contains_key(*y)) {
        return Err(Failure::Data(Error::Year {
            year: extra.expect("panel year"),
            source: Box::new(Error::EmptyDataset),
        }));
    }
    Ok(pairs)
}

fn pick_year(data: &Dataset, year: Option<i32>) -> Result<CitationHistogram, Failure> {
    match year {
        Some(y) => data
            .years
            .get(&Some(y))
            .cloned()
            .ok_or(Failure::Data(Error::Year { year: y, source: Box::new(Error::EmptyDataset) })),
        None if data.years.len() == 1 => Ok(data.years.values().next().cloned().expect("one year")),
        None => Err(Failure::Usage("the input holds several years; pick one with --year".into())),
    }
}

fn year_cell(year: Option<i32>) -> Cell {
    year.map_or_else(|| Cell::text("-"), Cell::int)
}

fn side_cell(side: Side) -> Cell {
    Cell::text(match side {
        Side::Below => "below",
        Side::Above => "above",
    })
}

fn thresholds_table(data: &Dataset, scheme: &PercentileScheme) -> Table {
    let mut table = Table::new(
        "thresholds",
        &[
            "year", "border", "threshold", "n_below", "n_tie", "n_above", "below", "tie", "above",
            "tie_above_fraction", "c_side",
        ],
    );
    for (&year, h) in &data.years {
        for r in resolve_borders(h, scheme) {
            let t = &r.threshold;
            table.push(vec![
                year_cell(year),
                Cell::Percent(t.border.clone()),
                Cell::int(t.threshold_citations),
                Cell::int(t.n_below),
                Cell::int(t.n_tie),
                Cell::int(t.n_above),
                Cell::Percent(t.share_below.clone()),
                Cell::Percent(t.share_tie.clone()),
                Cell::Percent(t.share_above.clone()),
                Cell::Decimal(r.tie.above_fraction.clone()),
                side_cell(r.c_side),
            ]);
        }
    }
    table
}

fn indicator_table(title: &str, results: &[(Option<i32>, Rule, ClassShares)]) -> Table {
    let mut table = Table::new(title, &["year", "rule", "top_share", "indicator"]);
    for (year, rule, shares) in results {
        table.push(vec![
            year_cell(*year),
            Cell::text(rule.to_string()),
            Cell::Percent(shares.top_share().clone()),
            Cell::Decimal(shares.indicator_value.clone()),
        ]);
    }
    table
}

fn class_table(title: &str, scheme: &PercentileScheme, results: &[(Option<i32>, Rule, ClassShares)]) -> Table {
    let mut table = Table::new(title, &["year", "rule", "class", "lower", "upper", "weight", "share"]);
    for (year, rule, shares) in results {
        for (k, share) in shares.shares.iter().enumerate() {
            let (lower, upper) = scheme.class_bounds(k);
            table.push(vec![
                year_cell(*year),
                Cell::text(rule.to_string()),
                Cell::int(k as i128 + 1),
                Cell::Percent(lower),
                Cell::Percent(upper),
                Cell::Decimal(scheme.weights()[k].clone()),
                Cell::Percent(share.clone()),
            ]);
        }
    }
    table
}

fn evaluation_tables(reports: &[EvaluationReport], scheme: &PercentileScheme) -> Vec<Table> {
    let mut thresholds = Table::new(
        "reference thresholds",
        &[
            "year", "border", "threshold", "reference_tie", "tie_above_fraction", "c_side", "example_below",
            "example_tie", "example_above",
        ],
    );
    let mut uncertainty = Table::new(
        "example uncertainty and deviations from F",
        &["year", "L_low", "E_high", "L/F-1", "E/F-1", "C/F-1"],
    );
    let mut reference_rows = Vec::new();
    let mut example_rows = Vec::new();
    for report in reports {
        for b in &report.borders {
            let t = &b.reference.threshold;
            thresholds.push(vec![
                year_cell(report.year),
                Cell::Percent(t.border.clone()),
                Cell::int(t.threshold_citations),
                Cell::Percent(t.share_tie.clone()),
                Cell::Decimal(b.reference.tie.above_fraction.clone()),
                side_cell(b.reference.c_side),
                Cell::Percent(b.example.share_below.clone()),
                Cell::Percent(b.example.share_tie.clone()),
                Cell::Percent(b.example.share_above.clone()),
            ]);
        }
        let mut row = vec![
            year_cell(report.year),
            Cell::Percent(report.uncertainty_low.clone()),
            Cell::Percent(report.uncertainty_high.clone()),
        ];
        match &report.deviations {
            Some(d) => row.extend([Rule::L, Rule::E, Rule::C].iter().map(|r| Cell::Percent(d[r].clone()))),
            None => row.extend((0..3).map(|_| Cell::Missing("undefined".into()))),
        }
        uncertainty.push(row);
        for (rule, shares) in &report.reference {
            reference_rows.push((report.year, *rule, shares.clone()));
        }
        for (rule, shares) in &report.example {
            example_rows.push((report.year, *rule, shares.clone()));
        }
    }
    vec![
        thresholds,
        indicator_table("reference indicator", &reference_rows),
        indicator_table("example indicator", &example_rows),
        uncertainty,
        class_table("example class shares", scheme, &example_rows),
    ]
}
