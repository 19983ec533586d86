// SPDX-License-Identifier: Apache-2.0

//! In-process CLI runs and helpers for reading their JSON output.

use std::path::{Path, PathBuf};

use prc_core::dataset::write_histogram_csv;
use prc_core::CitationHistogram;
use serde_json::Value;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("prc").chain(args.iter().copied());
    let code = prc_core::cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Runs with `--format json` and parses stdout; panics on a non-zero exit.
pub fn run_json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.code, 0, "prc {args:?} failed: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

pub fn write_hist(dir: &Path, name: &str, h: &CitationHistogram) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, write_histogram_csv(h)).unwrap();
    path
}

pub fn table<'a>(doc: &'a Value, title: &str) -> &'a [Value] {
    doc["tables"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["title"].as_str().is_some_and(|s| s.starts_with(title)))
        .unwrap_or_else(|| panic!("no table {title:?}"))["rows"]
        .as_array()
        .unwrap()
}

/// Rendered value of a cell: the string itself, or the `value` of a number.
pub fn cell(row: &Value, column: &str) -> String {
    match &row[column] {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Object(o) => o["value"].as_str().unwrap().to_string(),
        other => panic!("unexpected cell {other}"),
    }
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}
