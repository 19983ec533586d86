// SPDX-License-Identifier: Apache-2.0

//! Seeded random histograms and schemes for equivalence checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::histogram::CitationHistogram;
use crate::scheme::PercentileScheme;
use crate::share::Share;

#[derive(Debug, Clone, Copy)]
pub struct CorpusLimits {
    pub max_bins: usize,
    pub max_count: u64,
    pub max_citations: u64,
    pub max_borders: usize,
}

impl Default for CorpusLimits {
    fn default() -> Self {
        CorpusLimits {
            max_bins: 50,
            max_count: 10_000,
            max_citations: 500,
            max_borders: 12,
        }
    }
}

pub fn random_histogram<R: Rng>(rng: &mut R, limits: &CorpusLimits) -> CitationHistogram {
    let bins = rng.gen_range(1..=limits.max_bins);
    let mut values: Vec<u64> = (0..=limits.max_citations).collect();
    values.shuffle(rng);
    let pairs = values
        .into_iter()
        .take(bins)
        .map(|c| {
            // heavy tie groups now and then
            let count = if rng.gen_bool(0.1) {
                limits.max_count
            } else {
                rng.gen_range(1..=limits.max_count)
            };
            (c, count)
        })
        .collect::<Vec<_>>();
    CitationHistogram::from_bins(pairs).expect("non-empty random histogram")
}

/// Random valid scheme. Some borders are placed exactly on cumulative
/// shares of `h` so that bin-edge hits get exercised.
pub fn random_scheme<R: Rng>(rng: &mut R, h: &CitationHistogram, limits: &CorpusLimits) -> PercentileScheme {
    let wanted = rng.gen_range(1..=limits.max_borders);
    let mut cumulative = Vec::new();
    let mut running = 0;
    for (_, count) in h.bins() {
        running += count;
        if running < h.total() {
            cumulative.push(h.share_of(running));
        }
    }
    let mut borders: Vec<Share> = Vec::with_capacity(wanted);
    for _ in 0..wanted {
        let border = if !cumulative.is_empty() && rng.gen_bool(0.25) {
            cumulative.choose(rng).cloned().unwrap()
        } else {
            let den: u64 = rng.gen_range(2..=1000);
            Share::ratio(rng.gen_range(1..den), den)
        };
        borders.push(border);
    }
    borders.sort();
    borders.dedup();
    let weights = (0..=borders.len())
        .map(|_| Share::ratio(rng.gen_range(-50i64..=100), rng.gen_range(1u64..=10)))
        .collect();
    PercentileScheme::new(borders, weights).expect("valid random scheme")
}

/// `cases` (histogram, scheme) pairs from a fixed seed.
pub fn random_corpus(seed: u64, cases: usize, limits: &CorpusLimits) -> Vec<(CitationHistogram, PercentileScheme)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases)
        .map(|_| {
            let h = random_histogram(&mut rng, limits);
            let s = random_scheme(&mut rng, &h, limits);
            (h, s)
        })
        .collect()
}
