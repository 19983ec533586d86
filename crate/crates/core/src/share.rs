// SPDX-License-Identifier: Apache-2.0

//! Exact rational quantities.
//!
//! A [`Share`] is a fraction of a whole: a share of papers, a percentile
//! position on the unit interval, or a fractional paper mass such as
//! `1086.4`. Arithmetic never rounds; decimal output happens only through
//! [`Share::render_percent`] and [`Share::render_decimal`].

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Share(BigRational);

impl Share {
    pub fn zero() -> Self {
        Share(BigRational::zero())
    }

    pub fn one() -> Self {
        Share(BigRational::one())
    }

    /// `numerator / denominator`, normalized. Panics on a zero denominator.
    pub fn ratio(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        Share(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Share(BigRational::from_integer(value.into()))
    }

    /// A percentage value, e.g. `Share::percent(90)` is the fraction 9/10.
    pub fn percent(value: impl Into<BigInt>) -> Self {
        Share::ratio(value, 100)
    }

    pub fn from_rational(value: BigRational) -> Self {
        Share(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Share {
        Share(self.0.abs())
    }

    /// Value scaled to percent (`x * 100`), still exact.
    pub fn as_percent(&self) -> Share {
        Share(&self.0 * BigInt::from(100))
    }

    /// Decimal rendering of the value times 100 with `precision` digits,
    /// rounding half away from zero.
    pub fn render_percent(&self, precision: usize) -> String {
        render_decimal(&(&self.0 * BigInt::from(100)), precision)
    }

    /// Decimal rendering of the raw value with `precision` digits.
    pub fn render_decimal(&self, precision: usize) -> String {
        render_decimal(&self.0, precision)
    }

    /// Lossy conversion for plotting or diagnostics only.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }

    /// Parses a percentage given as an integer, a decimal (`12.5`) or a
    /// fraction (`100/3`) and returns it as a share of one.
    pub fn parse_percent(text: &str) -> Result<Share, Error> {
        let value: Share = text.parse()?;
        Ok(Share(value.0 / BigInt::from(100)))
    }
}

fn render_decimal(value: &BigRational, precision: usize) -> String {
    let scale = BigInt::from(10).pow(precision as u32);
    let scaled = value.abs() * &scale;
    // round half away from zero on the magnitude
    let twice: BigInt = scaled.numer() * 2 + scaled.denom();
    let rounded = twice.div_floor(&(scaled.denom() * 2));
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if precision == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>precision$}")
    }
}

impl FromStr for Share {
    type Err = Error;

    /// Accepts `7`, `-3`, `12.25` and `1/3`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        let bad = || Error::Parse {
            line: 0,
            message: format!("not a rational number: {text:?}"),
        };
        if let Some((n, d)) = text.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Share::ratio(n, d));
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.starts_with('-');
            let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
            let magnitude: BigInt = digits.parse().map_err(|_| bad())?;
            let value = Share::ratio(magnitude, BigInt::from(10).pow(frac_part.len() as u32));
            return Ok(if negative { -value } else { value });
        }
        let n: BigInt = text.parse().map_err(|_| bad())?;
        Ok(Share::integer(n))
    }
}

impl fmt::Debug for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Renders as a percentage with two decimals.
impl fmt::Display for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_percent(f.precision().unwrap_or(2)))
    }
}

impl Serialize for Share {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Share", 2)?;
        s.serialize_field("num", &self.numer().to_string())?;
        s.serialize_field("den", &self.denom().to_string())?;
        s.end()
    }
}

impl From<u64> for Share {
    fn from(value: u64) -> Self {
        Share::integer(value)
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<Share> for Share {
            type Output = Share;
            fn $method(self, rhs: Share) -> Share {
                Share($imp::$method(self.0, rhs.0))
            }
        }
        impl<'a> $imp<&'a Share> for Share {
            type Output = Share;
            fn $method(self, rhs: &'a Share) -> Share {
                Share($imp::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $imp<Share> for &'a Share {
            type Output = Share;
            fn $method(self, rhs: Share) -> Share {
                Share($imp::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $imp<&'b Share> for &'a Share {
            type Output = Share;
            fn $method(self, rhs: &'b Share) -> Share {
                Share($imp::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Share {
    type Output = Share;
    fn neg(self) -> Share {
        Share(-self.0)
    }
}

impl Sum for Share {
    fn sum<I: Iterator<Item = Share>>(iter: I) -> Share {
        iter.fold(Share::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Share> for Share {
    fn sum<I: Iterator<Item = &'a Share>>(iter: I) -> Share {
        iter.fold(Share::zero(), |acc, x| acc + x)
    }
}
