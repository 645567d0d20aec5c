//! Exact millisecond arithmetic.
//!
//! Every frame-timing quantity (slot and symbol durations, burst periods,
//! sweep delays) is a dyadic or decimal fraction of a millisecond, so it is
//! held as a reduced rational and only turned into a float or decimal string
//! at the edges.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

/// A duration in milliseconds, stored as an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Millis(Ratio<i128>);

impl Millis {
    pub const ZERO: Millis = Millis(Ratio::new_raw(0, 1));

    pub fn from_int(ms: i64) -> Self {
        Millis(Ratio::from_integer(ms as i128))
    }

    /// `numer / denom` milliseconds. Panics on a zero denominator.
    pub fn from_ratio(numer: i128, denom: i128) -> Self {
        Millis(Ratio::new(numer, denom))
    }

    /// Converts a float given in milliseconds to the nearest short decimal
    /// fraction (up to 9 decimal places), so that config values such as `0.8`
    /// become exactly 4/5.
    pub fn from_f64(ms: f64) -> Option<Self> {
        if !ms.is_finite() {
            return None;
        }
        const SCALE: f64 = 1e9;
        let scaled = (ms * SCALE).round();
        if scaled.abs() > 1e30 {
            return None;
        }
        Some(Millis(Ratio::new(scaled as i128, SCALE as i128)))
    }

    pub fn as_ratio(&self) -> Ratio<i128> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        *self.0.numer() > 0
    }

    /// `⌊self / other⌋`. Panics if `other` is zero.
    pub fn floor_div(&self, other: Millis) -> i128 {
        (self.0 / other.0).floor().to_integer()
    }

    /// `⌈self / other⌉`. Panics if `other` is zero.
    pub fn ceil_div(&self, other: Millis) -> i128 {
        (self.0 / other.0).ceil().to_integer()
    }

    /// Exact quotient of two durations.
    pub fn ratio_to(&self, other: Millis) -> Ratio<i128> {
        self.0 / other.0
    }

    pub fn half(&self) -> Self {
        Millis(self.0 / 2)
    }

    /// Decimal rendering: exact when the value has a terminating decimal
    /// expansion, otherwise `sig_digits` significant digits.
    pub fn to_decimal_string(&self, sig_digits: usize) -> String {
        match exact_decimal(self.0) {
            Some(s) => s,
            None => crate::format::significant(self.to_f64(), sig_digits),
        }
    }
}

fn exact_decimal(value: Ratio<i128>) -> Option<String> {
    let mut den = *value.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while den.is_even() {
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
    let scale = 10i128.checked_pow(places)?;
    let scaled = value.numer().checked_mul(scale)? / value.denom();
    let negative = scaled < 0;
    let digits = scaled.unsigned_abs().to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    let places = places as usize;
    if places == 0 {
        out.push_str(&digits);
        return Some(out);
    }
    let padded = format!("{:0>width$}", digits, width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    out.push_str(int_part);
    let frac = frac_part.trim_end_matches('0');
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    Some(out)
}

impl fmt::Display for Millis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(10))
    }
}

impl Add for Millis {
    type Output = Millis;
    fn add(self, rhs: Millis) -> Millis {
        Millis(self.0 + rhs.0)
    }
}

impl AddAssign for Millis {
    fn add_assign(&mut self, rhs: Millis) {
        self.0 += rhs.0;
    }
}

impl Sub for Millis {
    type Output = Millis;
    fn sub(self, rhs: Millis) -> Millis {
        Millis(self.0 - rhs.0)
    }
}

impl Mul<i128> for Millis {
    type Output = Millis;
    fn mul(self, rhs: i128) -> Millis {
        Millis(self.0 * rhs)
    }
}

impl Mul<Ratio<i128>> for Millis {
    type Output = Millis;
    fn mul(self, rhs: Ratio<i128>) -> Millis {
        Millis(self.0 * rhs)
    }
}

impl Div<i128> for Millis {
    type Output = Millis;
    fn div(self, rhs: i128) -> Millis {
        Millis(self.0 / rhs)
    }
}

impl Sum for Millis {
    fn sum<I: Iterator<Item = Millis>>(iter: I) -> Millis {
        iter.fold(Millis::ZERO, |acc, x| acc + x)
    }
}
