// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::share::Share;

/// Multiset of citation counts: citations -> number of papers.
///
/// Always non-empty, every stored count is at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CitationHistogram {
    bins: BTreeMap<u64, u64>,
    total: u64,
}

impl CitationHistogram {
    /// Aggregates a raw list of per-paper citation counts.
    pub fn from_citations(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut bins = BTreeMap::new();
        for &c in raw {
            let c = u64::try_from(c).map_err(|_| Error::InvalidCitationCount(c))?;
            *bins.entry(c).or_insert(0u64) += 1;
        }
        Ok(CitationHistogram {
            bins,
            total: raw.len() as u64,
        })
    }

    /// Builds from `(citations, count)` pairs; duplicate keys are summed.
    pub fn from_bins<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut bins = BTreeMap::new();
        let mut total = 0u64;
        for (citations, count) in pairs {
            if count == 0 {
                return Err(Error::InvalidPaperCount { citations, count });
            }
            let slot = bins.entry(citations).or_insert(0u64);
            *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
            total = total.checked_add(count).ok_or(Error::Overflow)?;
        }
        if total == 0 {
            return Err(Error::EmptyDataset);
        }
        Ok(CitationHistogram { bins, total })
    }

    /// Every count multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidScale);
        }
        let bins = self
            .bins
            .iter()
            .map(|(&c, &n)| n.checked_mul(factor).map(|n| (c, n)).ok_or(Error::Overflow))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let total = self.total.checked_mul(factor).ok_or(Error::Overflow)?;
        Ok(CitationHistogram { bins, total })
    }

    /// N, the number of papers.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn bins(&self) -> impl DoubleEndedIterator<Item = (u64, u64)> + ExactSizeIterator + '_ {
        self.bins.iter().map(|(&c, &n)| (c, n))
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    pub fn count_at(&self, citations: u64) -> u64 {
        self.bins.get(&citations).copied().unwrap_or(0)
    }

    /// Papers with strictly fewer than `citations` citations.
    pub fn count_below(&self, citations: u64) -> u64 {
        self.bins.range(..citations).map(|(_, &n)| n).sum()
    }

    /// Papers with at most `citations` citations.
    pub fn count_at_most(&self, citations: u64) -> u64 {
        self.bins.range(..=citations).map(|(_, &n)| n).sum()
    }

    pub fn count_above(&self, citations: u64) -> u64 {
        self.total - self.count_at_most(citations)
    }

    pub fn total_citations(&self) -> u128 {
        self.bins.iter().map(|(&c, &n)| c as u128 * n as u128).sum()
    }

    pub fn share_of(&self, papers: u64) -> Share {
        Share::ratio(papers, self.total)
    }

    /// Sorted per-paper citation list.
    pub fn expand(&self) -> Vec<u64> {
        self.bins
            .iter()
            .flat_map(|(&c, &n)| std::iter::repeat_n(c, n as usize))
            .collect()
    }

    /// Moves `papers` papers from bin `from` to bin `to`. Callers check
    /// that `from` holds enough papers.
    pub(crate) fn move_papers(&self, from: u64, to: u64, papers: u64) -> Self {
        let mut bins = self.bins.clone();
        let remaining = bins[&from] - papers;
        if remaining == 0 {
            bins.remove(&from);
        } else {
            bins.insert(from, remaining);
        }
        *bins.entry(to).or_insert(0) += papers;
        CitationHistogram {
            bins,
            total: self.total,
        }
    }
}
