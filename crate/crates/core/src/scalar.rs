//! Numeric scalar abstraction.
//!
//! Every engine type is generic over [`Scalar`] so the same code runs in
//! `f64` (the default), `f32`, and exact rational arithmetic. The rational
//! instance has zero tolerance, which makes it useful for checking golden
//! values without any rounding slack.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact rational volume type. Backed by `i128`, so it is meant for
/// desk-scale networks; very long pivot sequences can overflow.
pub type Rational = Ratio<i128>;

pub trait Scalar:
    Copy
    + Num
    + Signed
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Relative tolerance used on problems normalized to unit scale.
    fn tolerance() -> Self;

    /// Parses a volume written as a decimal (`"24.5"`, `"-3"`, `"1e2"`) or,
    /// for exact types, a fraction (`"49/2"`). Non-finite values are rejected.
    fn parse_volume(text: &str) -> Option<Self>;

    /// Text form that [`Scalar::parse_volume`] reads back to the same value.
    fn format_volume(&self) -> String {
        self.to_string()
    }

    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 converts to every scalar")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_count(count: usize) -> Self {
        Self::from_usize(count).expect("count fits in scalar")
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Clamps into `[lo, hi]`; `lo` wins if the interval is empty.
    fn clamp_to(self, lo: Self, hi: Self) -> Self {
        self.min_of(hi).max_of(lo)
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }

    fn parse_volume(text: &str) -> Option<Self> {
        text.trim().parse::<f64>().ok().filter(|v| v.is_finite())
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }

    fn parse_volume(text: &str) -> Option<Self> {
        text.trim().parse::<f32>().ok().filter(|v| v.is_finite())
    }
}

impl Scalar for Rational {
    fn tolerance() -> Self {
        Rational::from_integer(0)
    }

    fn parse_volume(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: i128 = num.trim().parse().ok()?;
            let den: i128 = den.trim().parse().ok()?;
            return (den != 0).then(|| Rational::new(num, den));
        }
        parse_decimal(text)
    }

    /// Terminating decimals print as decimals, everything else as `n/d`.
    fn format_volume(&self) -> String {
        decimal_digits(self).unwrap_or_else(|| self.to_string())
    }
}

fn decimal_digits(value: &Rational) -> Option<String> {
    let mut den = *value.denom();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return None;
    }
    let places = twos.max(fives);
    let scaled = value * Rational::from_integer(10i128.checked_pow(places)?);
    let digits = scaled.to_integer().unsigned_abs().to_string();
    let sign = if value.is_negative() { "-" } else { "" };
    if places == 0 {
        return Some(format!("{sign}{digits}"));
    }
    let padded = format!("{digits:0>width$}", width = places as usize + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places as usize);
    let frac_part = frac_part.trim_end_matches('0');
    Some(if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    })
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<i128>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(10);
    let scale = num_traits::checked_pow(ten, shift.unsigned_abs() as usize)?;
    value = if shift >= 0 { value * scale } else { value / scale };
    Some(if negative { -value } else { value })
}
