//! Exact rational time.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// A point (or length) on the real time axis, restricted to the rationals.
///
/// Stored as a reduced fraction with a positive denominator, so equality and
/// ordering are exact.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Time(Ratio<i128>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TimeParseError {
    #[error("empty time literal")]
    Empty,
    #[error("invalid time literal `{0}` (expected integer, decimal or p/q)")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("time literal `{0}` out of range")]
    Overflow(String),
}

impl Time {
    pub const ZERO: Time = Time(Ratio::new_raw(0, 1));
    pub const ONE: Time = Time(Ratio::new_raw(1, 1));

    /// Panics if `den` is zero.
    pub fn new(num: i128, den: i128) -> Time {
        Time(Ratio::new(num, den))
    }

    pub fn int(n: i128) -> Time {
        Time(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(self) -> Time {
        Time(self.0.abs())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Midpoint of two instants.
    pub fn midpoint(self, other: Time) -> Time {
        Time((self.0 + other.0) / Ratio::from_integer(2))
    }

    /// Multiply by an integer factor.
    pub fn times(self, k: i128) -> Time {
        Time(self.0 * Ratio::from_integer(k))
    }

    /// Divide by a non-zero integer.
    pub fn div_int(self, k: i128) -> Time {
        Time(self.0 / Ratio::from_integer(k))
    }

    /// Least common multiple of the denominators of `times` (1 if empty).
    pub fn common_denominator<'a>(times: impl IntoIterator<Item = &'a Time>) -> i128 {
        times.into_iter().fold(1, |acc: i128, t| acc.lcm(&t.denom()))
    }

    /// `self * scale` as an integer, if exact.
    pub fn scaled(&self, scale: i128) -> Option<i128> {
        let r = self.0 * Ratio::from_integer(scale);
        r.is_integer().then(|| r.to_integer())
    }

    /// Render as a decimal when the expansion terminates, `p/q` otherwise.
    pub fn to_decimal_string(&self) -> String {
        let mut den = self.denom();
        let mut digits = 0u32;
        for p in [2, 5] {
            while den % p == 0 {
                den /= p;
            }
        }
        if den != 1 {
            return self.to_string();
        }
        let mut scale: i128 = 1;
        while !(self.0 * Ratio::from_integer(scale)).is_integer() {
            scale *= 10;
            digits += 1;
        }
        if digits == 0 {
            return self.to_string();
        }
        let n = (self.0 * Ratio::from_integer(scale)).to_integer();
        let sign = if n < 0 { "-" } else { "" };
        let n = n.abs();
        let int_part = n / scale;
        let frac_part = n % scale;
        format!("{sign}{int_part}.{frac_part:0width$}", width = digits as usize)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Time {
    type Err = TimeParseError;

    /// Accepts `12`, `-3`, `2.75`, `5/2`, `-7/4`. Exponents and other float
    /// syntax are rejected.
    fn from_str(s: &str) -> Result<Time, TimeParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(TimeParseError::Empty);
        }
        let bad = || TimeParseError::Invalid(s.to_string());
        let overflow = || TimeParseError::Overflow(s.to_string());
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let value = if let Some((p, q)) = body.split_once('/') {
            if !digits(p) || !digits(q) {
                return Err(bad());
            }
            let p: i128 = p.parse().map_err(|_| overflow())?;
            let q: i128 = q.parse().map_err(|_| overflow())?;
            if q == 0 {
                return Err(TimeParseError::ZeroDenominator(s.to_string()));
            }
            Ratio::new(p, q)
        } else if let Some((ip, fp)) = body.split_once('.') {
            if !(digits(ip) || ip.is_empty()) || !digits(fp) || (ip.is_empty() && fp.is_empty()) {
                return Err(bad());
            }
            let ip: i128 = if ip.is_empty() { 0 } else { ip.parse().map_err(|_| overflow())? };
            let scale = 10i128.checked_pow(fp.len() as u32).ok_or_else(overflow)?;
            let fpv: i128 = fp.parse().map_err(|_| overflow())?;
            let num = ip.checked_mul(scale).and_then(|v| v.checked_add(fpv)).ok_or_else(overflow)?;
            Ratio::new(num, scale)
        } else {
            if !digits(body) {
                return Err(bad());
            }
            Ratio::from_integer(body.parse().map_err(|_| overflow())?)
        };
        Ok(Time(if neg { -value } else { value }))
    }
}

impl From<i128> for Time {
    fn from(n: i128) -> Time {
        Time::int(n)
    }
}

impl Add for Time {
    type Output = Time;
    fn add(self, rhs: Time) -> Time {
        Time(self.0 + rhs.0)
    }
}

impl Sub for Time {
    type Output = Time;
    fn sub(self, rhs: Time) -> Time {
        Time(self.0 - rhs.0)
    }
}

impl Mul for Time {
    type Output = Time;
    fn mul(self, rhs: Time) -> Time {
        Time(self.0 * rhs.0)
    }
}

impl Neg for Time {
    type Output = Time;
    fn neg(self) -> Time {
        Time(-self.0)
    }
}

impl AddAssign for Time {
    fn add_assign(&mut self, rhs: Time) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Time {
    fn sub_assign(&mut self, rhs: Time) {
        self.0 -= rhs.0;
    }
}

impl Sum for Time {
    fn sum<I: Iterator<Item = Time>>(iter: I) -> Time {
        iter.fold(Time::ZERO, |a, b| a + b)
    }
}

/// Shorthand for building times in code and tests: `t(5, 2)` is 5/2.
pub fn t(num: i128, den: i128) -> Time {
    Time::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_decimal_and_fraction() {
        assert_eq!("3".parse::<Time>().unwrap(), Time::int(3));
        assert_eq!("-3".parse::<Time>().unwrap(), Time::int(-3));
        assert_eq!("2.75".parse::<Time>().unwrap(), t(11, 4));
        assert_eq!(".5".parse::<Time>().unwrap(), t(1, 2));
        assert_eq!("10/4".parse::<Time>().unwrap(), t(5, 2));
        assert_eq!("-7/4".parse::<Time>().unwrap(), t(-7, 4));
    }

    #[test]
    fn rejects_float_syntax() {
        for s in ["1e3", "1.5e-2", "inf", "NaN", "1/", "/2", "1//2", "1.", "", "0x10", "1/0"] {
            assert!(s.parse::<Time>().is_err(), "{s} should be rejected");
        }
    }

    #[test]
    fn display_is_reduced() {
        assert_eq!(t(6, 4).to_string(), "3/2");
        assert_eq!(t(-6, 3).to_string(), "-2");
        assert_eq!(t(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(t(11, 4).to_decimal_string(), "2.75");
        assert_eq!(t(-1, 8).to_decimal_string(), "-0.125");
        assert_eq!(t(1, 3).to_decimal_string(), "1/3");
        assert_eq!(Time::int(7).to_decimal_string(), "7");
    }

    #[test]
    fn common_denominator_is_lcm() {
        let ts = [t(1, 2), t(3, 4), t(5, 6)];
        assert_eq!(Time::common_denominator(&ts), 12);
        assert_eq!(Time::common_denominator(&[]), 1);
    }
}
