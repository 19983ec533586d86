// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::share::Share;

/// Tie-handling counting rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    /// Percentile from papers with strictly fewer citations; ties fall below.
    L,
    /// Percentile from papers with equal or fewer citations; ties fall above.
    E,
    /// Tie group goes wholly to the side its average percentile lies on.
    C,
    /// Fractional scoring; tie groups are split to hit every border exactly.
    F,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::L, Rule::E, Rule::C, Rule::F];

    /// Parses a comma separated list such as `L,E,C,F`.
    pub fn parse_list(text: &str) -> Result<Vec<Rule>> {
        let mut rules = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let rule: Rule = part.parse()?;
            if !rules.contains(&rule) {
                rules.push(rule);
            }
        }
        if rules.is_empty() {
            return Err(Error::UnknownRule(text.to_string()));
        }
        rules.sort();
        Ok(rules)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::L => "L",
            Rule::E => "E",
            Rule::C => "C",
            Rule::F => "F",
        };
        f.write_str(name)
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L" => Ok(Rule::L),
            "E" => Ok(Rule::E),
            "C" => Ok(Rule::C),
            "F" => Ok(Rule::F),
            other => Err(Error::UnknownRule(other.to_string())),
        }
    }
}

/// Percentile rank classes: ordered borders and one weight per class,
/// bottom class first.
///
/// Borders are stored as shares of one (90% is `9/10`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PercentileScheme {
    borders: Vec<Share>,
    weights: Vec<Share>,
}

impl PercentileScheme {
    pub fn new(borders: Vec<Share>, weights: Vec<Share>) -> Result<Self> {
        if weights.len() != borders.len() + 1 {
            return Err(Error::InvalidScheme(format!(
                "{} borders need {} weights, got {}",
                borders.len(),
                borders.len() + 1,
                weights.len()
            )));
        }
        let (zero, one) = (Share::zero(), Share::one());
        for b in &borders {
            if *b <= zero || *b >= one {
                return Err(Error::InvalidBorder(b.render_percent(4)));
            }
        }
        if borders.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidScheme(
                "borders must be strictly increasing".into(),
            ));
        }
        Ok(PercentileScheme { borders, weights })
    }

    /// Borders given as percentages.
    pub fn from_percent_borders(borders: &[Share], weights: Vec<Share>) -> Result<Self> {
        let borders = borders.iter().map(|b| b / Share::integer(100)).collect();
        Self::new(borders, weights)
    }

    /// Bottom 90% with weight 0, top 10% with weight 1.
    pub fn hcp() -> Self {
        Self::single_border(Share::percent(90))
    }

    /// Two classes split at `border` with weights 0 and 1.
    pub fn single_border(border: Share) -> Self {
        Self::new(vec![border], vec![Share::zero(), Share::one()])
            .expect("single border scheme")
    }

    /// Ten classes, borders at 10..90, weights 1..10.
    pub fn deciles() -> Self {
        Self::evenly_spaced(10)
    }

    /// One hundred classes, borders at 1..99, weights 1..100.
    pub fn r100() -> Self {
        Self::evenly_spaced(100)
    }

    /// `classes` equal-width classes with weights 1..=classes.
    pub fn evenly_spaced(classes: u64) -> Self {
        assert!(classes >= 2, "an evenly spaced scheme needs at least two classes");
        let borders = (1..classes).map(|k| Share::ratio(k, classes)).collect();
        let weights = (1..=classes).map(Share::integer).collect();
        Self::new(borders, weights).expect("evenly spaced scheme")
    }

    pub fn borders(&self) -> &[Share] {
        &self.borders
    }

    pub fn weights(&self) -> &[Share] {
        &self.weights
    }

    pub fn class_count(&self) -> usize {
        self.weights.len()
    }

    /// Lower and upper edge of class `k` on the unit interval.
    pub fn class_bounds(&self, k: usize) -> (Share, Share) {
        let lower = if k == 0 { Share::zero() } else { self.borders[k - 1].clone() };
        let upper = self.borders.get(k).cloned().unwrap_or_else(Share::one);
        (lower, upper)
    }

    pub fn class_width(&self, k: usize) -> Share {
        let (lower, upper) = self.class_bounds(k);
        upper - lower
    }
}
