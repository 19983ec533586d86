// SPDX-License-Identifier: Apache-2.0

//! Reconstructed datasets and an integer-only oracle for the perturbation
//! tables.
//!
//! The oracle works on raw counts around a single 90% threshold and never
//! calls into the library, so the fixtures it derives can be used to check
//! the library.

#![allow(dead_code)]

use prc_core::CitationHistogram;

pub mod cli;

/// Reference counts around the threshold `t`: `below_prev` papers below
/// `t - 1`, `at_prev` at `t - 1`, `tie` at `t`, `above` above `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefCounts {
    pub t: u64,
    pub below_prev: u64,
    pub at_prev: u64,
    pub tie: u64,
    pub above: u64,
}

impl RefCounts {
    pub fn n(&self) -> u64 {
        self.below_prev + self.at_prev + self.tie + self.above
    }

    pub fn below(&self) -> u64 {
        self.below_prev + self.at_prev
    }

    /// Reference histogram. The mass below `t - 1` is spread over a few
    /// low citation values; the mass above `t` over a few high ones.
    pub fn histogram(&self) -> CitationHistogram {
        let mut bins = spread(self.below_prev, &[0, 1, (self.t - 1) / 2]);
        bins.extend(spread(self.above, &[self.t + 1, self.t + 5, 4 * self.t + 10]));
        if self.at_prev > 0 {
            bins.push((self.t - 1, self.at_prev));
        }
        bins.push((self.t, self.tie));
        CitationHistogram::from_bins(bins).unwrap()
    }
}

/// Example counts relative to the reference threshold `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExCounts {
    pub m: u64,
    pub at_prev: u64,
    pub tie: u64,
    pub above: u64,
}

impl ExCounts {
    pub fn histogram(&self, t: u64) -> CitationHistogram {
        let low = self.m - self.at_prev - self.tie - self.above;
        let mut bins = spread(low, &[0, 2, (t - 1) / 2]);
        bins.extend(spread(self.above, &[t + 1, 3 * t]));
        if self.at_prev > 0 {
            bins.push((t - 1, self.at_prev));
        }
        if self.tie > 0 {
            bins.push((t, self.tie));
        }
        CitationHistogram::from_bins(bins).unwrap()
    }
}

fn spread(mass: u64, values: &[u64]) -> Vec<(u64, u64)> {
    let mut values = values.to_vec();
    values.sort_unstable();
    values.dedup();
    let parts = values.len() as u64;
    let mut out = Vec::new();
    let mut left = mass;
    for (i, &v) in values.iter().enumerate() {
        let take = if i as u64 == parts - 1 { left } else { mass / parts };
        if take > 0 {
            out.push((v, take));
        }
        left -= take;
    }
    out
}

/// Rendered hundredths of a percent of `num/den`, rounding half up.
pub fn hundredths(num: u64, den: u64) -> u64 {
    ((2 * num as u128 * 10_000 + den as u128) / (2 * den as u128)) as u64
}

/// Round-half-up percentage of `num/den` with two decimals.
pub fn pct2(num: u64, den: u64) -> String {
    render(hundredths(num, den))
}

pub fn render(hundredths: u64) -> String {
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

/// A table of cells in hundredths of a percent.
pub type Cells = [[u64; 4]; 4];

/// Threshold counts (below, tie, above) of the reference after moving `k`
/// tied papers from `t` to `t - 1`, plus whether the threshold moved down.
fn after_decrement(r: &RefCounts, k: u64) -> (u64, u64, u64, bool) {
    if 10 * (r.below() + k) > 9 * r.n() {
        (r.below_prev, r.at_prev + k, r.tie - k + r.above, true)
    } else {
        (r.below() + k, r.tie - k, r.above, false)
    }
}

/// L, E, C, F top-decile shares for a threshold given by
/// (below, tie, above) counts of the reference, applied to example
/// counts (below, tie, above) relative to that threshold.
fn rule_cells(reference: (u64, u64, u64), example: (u64, u64, u64)) -> [u64; 4] {
    let (rb, rt, ra) = reference;
    let n = rb + rt + ra;
    let (xb, xt, xa) = example;
    let m = xb + xt + xa;
    let c_above = (2 * rb + rt) * 10 > 18 * n;
    let l = hundredths(xa, m);
    let e = hundredths(xa + xt, m);
    let c = if c_above { e } else { l };
    // above fraction of the tie group = (10 (rb + rt) - 9 n) / (10 rt)
    let f = hundredths(xa * 10 * rt + xt * (10 * (rb + rt) - 9 * n), m * 10 * rt);
    [l, e, c, f]
}

/// The four rows of a perturbation table, each L/E/C/F at two decimals.
pub fn table_cells(r: &RefCounts, x: &ExCounts, k: u64) -> Cells {
    let original = (r.below(), r.tie, r.above);
    let (mb, mt, ma, moved) = after_decrement(r, k);
    let modified = (mb, mt, ma);
    let x_low = x.m - x.at_prev - x.tie - x.above;
    let ex_original = (x_low + x.at_prev, x.tie, x.above);
    let ex_modified = if moved {
        (x_low, x.at_prev, x.tie + x.above)
    } else {
        ex_original
    };
    // the reference judged against itself keeps its partition
    [
        rule_cells(original, original),
        rule_cells(modified, modified),
        rule_cells(original, ex_original),
        rule_cells(modified, ex_modified),
    ]
}

pub fn paper_table(rows: [[&str; 4]; 4]) -> Cells {
    rows.map(|r| r.map(|cell| cell.replace('.', "").parse().unwrap()))
}

pub const TABLE_1: [[&str; 4]; 4] = [
    ["9.73", "10.00", "10.00", "10.00"],
    ["10.00", "10.33", "10.00", "10.00"],
    ["9.76", "10.20", "10.20", "10.19"],
    ["10.20", "10.64", "10.20", "10.20"],
];

pub const TABLE_2: [[&str; 4]; 4] = [
    ["9.62", "10.00", "10.00", "10.00"],
    ["10.00", "10.38", "10.00", "10.00"],
    ["5.45", "6.03", "6.03", "6.03"],
    ["6.03", "6.03", "6.03", "6.03"],
];

pub const TABLE_3: [[&str; 4]; 4] = [
    ["9.72", "10.28", "9.72", "10.00"],
    ["9.72", "10.27", "10.27", "10.00"],
    ["8.56", "9.42", "8.56", "8.98"],
    ["8.56", "9.42", "9.42", "8.99"],
];

/// 1994: 87640 papers below 48 (316 of them at 47), 268 at 48, 9474 above.
pub const REF_1994: RefCounts = RefCounts {
    t: 48,
    below_prev: 87324,
    at_prev: 316,
    tie: 268,
    above: 9474,
};
pub const EX_1994: ExCounts = ExCounts {
    m: 451,
    at_prev: 2,
    tie: 2,
    above: 44,
};

/// 2003: 463 papers at 38.
pub const REF_2003: RefCounts = RefCounts {
    t: 38,
    below_prev: 107344,
    at_prev: 448,
    tie: 463,
    above: 11516,
};
pub const EX_2003: ExCounts = ExCounts {
    m: 514,
    at_prev: 0,
    tie: 3,
    above: 28,
};

/// 2005: 743 papers at 31.
pub const REF_2005: RefCounts = RefCounts {
    t: 31,
    below_prev: 119309,
    at_prev: 0,
    tie: 743,
    above: 12931,
};
pub const EX_2005: ExCounts = ExCounts {
    m: 584,
    at_prev: 0,
    tie: 5,
    above: 50,
};

/// 2010 reference: 130801 below 7, 3390 at 7, 13703 above.
pub fn ref_2010() -> CitationHistogram {
    CitationHistogram::from_bins([
        (0, 32000),
        (1, 29000),
        (2, 24000),
        (3, 18000),
        (4, 12801),
        (5, 9000),
        (6, 6000),
        (7, 3390),
        (8, 3300),
        (9, 2700),
        (12, 3000),
        (20, 2903),
        (60, 1500),
        (250, 300),
    ])
    .unwrap()
}

/// Synthetic 2010 example: 477 below 7, 7 at 7, 38 above (522 papers,
/// 91.38 / 1.34 / 7.28 percent).
pub fn ex_2010() -> CitationHistogram {
    CitationHistogram::from_bins([(0, 150), (2, 200), (5, 127), (7, 7), (9, 20), (30, 18)]).unwrap()
}

/// Counts `x` with `hundredths(x, den) == want`.
fn window(want: u64, den: u64) -> impl Iterator<Item = u64> {
    // rounding interval [want - 1/2, want + 1/2) hundredths, scaled to den
    let lo = (2 * want).saturating_sub(1) * den / 20_000;
    let hi = ((2 * want + 1) * den).div_ceil(20_000);
    (lo..=hi).filter(move |&x| hundredths(x, den) == want)
}

/// Smallest example (by size) matching rows 3 and 4 of `table` for a
/// fixed reference, scanning example sizes up to `max_m`.
pub fn search_example(r: &RefCounts, k: u64, table: &Cells, max_m: u64, use_prev: bool) -> Option<ExCounts> {
    let (want_l, want_e) = (table[2][0], table[2][1]);
    for m in 1..=max_m {
        for above in window(want_l, m) {
            for top in window(want_e, m).filter(|&top| top >= above) {
                let tie = top - above;
                let max_prev = if use_prev { m - top } else { 0 };
                for at_prev in 0..=max_prev {
                    let x = ExCounts { m, at_prev, tie, above };
                    let cells = table_cells(r, &x, k);
                    if cells[2] == table[2] && cells[3] == table[3] {
                        return Some(x);
                    }
                }
            }
        }
    }
    None
}

/// Reference layouts with `tie` papers at `t` whose two reference rows
/// match `table`, in increasing order of size.
pub fn search_reference(
    t: u64,
    tie: u64,
    k: u64,
    table: &Cells,
    n_range: std::ops::Range<u64>,
    prev_range: std::ops::RangeInclusive<u64>,
) -> impl Iterator<Item = RefCounts> + '_ {
    let (want_l, want_e) = (table[0][0], table[0][1]);
    n_range.flat_map(move |n| {
        let prev_range = prev_range.clone();
        window(want_l, n)
            .filter(move |&above| hundredths(above + tie, n) == want_e)
            .flat_map(move |above| {
                prev_range.clone().filter_map(move |at_prev| {
                    let below_prev = n.checked_sub(above + tie + at_prev)?;
                    let r = RefCounts { t, below_prev, at_prev, tie, above };
                    let cells = table_cells(&r, &ExCounts { m: 1, at_prev: 0, tie: 0, above: 1 }, k);
                    (cells[0] == table[0] && cells[1] == table[1]).then_some(r)
                })
            })
    })
}
