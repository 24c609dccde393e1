//! Fixed-point decimal reals over big integers.
//!
//! A [`Real`] is `mantissa / 10^scale`. Arithmetic truncates toward zero at the
//! common scale, so each operation loses at most one unit in the last place.
//! Callers pick a scale with guard digits beyond what they report.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    mantissa: BigInt,
    scale: u32,
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

impl Real {
    pub fn from_int(v: impl Into<BigInt>, scale: u32) -> Self {
        Real { mantissa: v.into() * pow10(scale), scale }
    }

    /// `num / den`, truncated. Panics if `den` is zero.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, scale: u32) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Real { mantissa: num.into() * pow10(scale) / den, scale }
    }

    /// Parses a plain decimal such as `-2.4495` or `7`.
    pub fn parse(s: &str, scale: u32) -> Result<Self, String> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        let ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty()) || !ok(int_part) || !ok(frac_part) {
            return Err(format!("malformed decimal {s:?}"));
        }
        let kept: String = frac_part.chars().take(scale as usize).collect();
        let digits = format!("{}{}{}", int_part, kept, "0".repeat(scale as usize - kept.len()));
        let mut mantissa: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().unwrap() };
        if neg {
            mantissa = -mantissa;
        }
        Ok(Real { mantissa, scale })
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    fn same_scale(&self, other: &Real) {
        assert_eq!(self.scale, other.scale, "mixed-scale arithmetic");
    }

    pub fn add(&self, other: &Real) -> Real {
        self.same_scale(other);
        Real { mantissa: &self.mantissa + &other.mantissa, scale: self.scale }
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.same_scale(other);
        Real { mantissa: &self.mantissa - &other.mantissa, scale: self.scale }
    }

    pub fn mul(&self, other: &Real) -> Real {
        self.same_scale(other);
        Real { mantissa: &self.mantissa * &other.mantissa / pow10(self.scale), scale: self.scale }
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Real {
        Real { mantissa: &self.mantissa * k.into(), scale: self.scale }
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Real) -> Real {
        self.same_scale(other);
        assert!(!other.mantissa.is_zero(), "division by zero");
        Real { mantissa: &self.mantissa * pow10(self.scale) / &other.mantissa, scale: self.scale }
    }

    /// Floor square root at the working scale. Panics on negative input.
    pub fn sqrt(&self) -> Real {
        assert!(!self.mantissa.is_negative(), "square root of a negative number");
        Real { mantissa: (&self.mantissa * pow10(self.scale)).sqrt(), scale: self.scale }
    }

    pub fn abs(&self) -> Real {
        Real { mantissa: self.mantissa.abs(), scale: self.scale }
    }

    pub fn to_f64(&self) -> f64 {
        // good enough for diagnostics; exact work stays in big integers
        let s = self.to_sig_string(20);
        s.parse().unwrap_or(f64::NAN)
    }

    /// Decimal string rounded half-away-from-zero to `digits` significant digits.
    pub fn to_sig_string(&self, digits: u32) -> String {
        let digits = digits.max(1);
        let neg = self.mantissa.sign() == Sign::Minus;
        let abs = self.mantissa.abs();
        if abs.is_zero() {
            return "0".to_string();
        }
        let len = abs.to_string().len() as i64;
        let drop = len - digits as i64;
        let (q, exp) = if drop > 0 {
            let p = pow10(drop as u32);
            let q: BigInt = (abs + &p / 2) / &p;
            // rounding can carry into a new leading digit
            if q.to_string().len() > digits as usize {
                (q / 10, drop + 1 - self.scale as i64)
            } else {
                (q, drop - self.scale as i64)
            }
        } else {
            (abs, -(self.scale as i64))
        };
        let body = format_scaled(&q.to_string(), exp);
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// `digits × 10^exp` as a plain decimal.
fn format_scaled(digits: &str, exp: i64) -> String {
    if exp >= 0 {
        return format!("{digits}{}", "0".repeat(exp as usize));
    }
    let point = digits.len() as i64 + exp;
    if point > 0 {
        let (i, f) = digits.split_at(point as usize);
        format!("{i}.{f}")
    } else {
        format!("0.{}{digits}", "0".repeat((-point) as usize))
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.same_scale(other);
        self.mantissa.cmp(&other.mantissa)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sig_string(self.scale + 4))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
