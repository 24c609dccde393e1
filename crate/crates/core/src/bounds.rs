//! Closed-form bounds on `c` for sets with no long line, and the resulting
//! threshold on `n`.
//!
//! Irrational quantities are evaluated in [`Real`] fixed point with
//! [`GUARD_DIGITS`] digits beyond the requested precision. The comparison
//! `final_bound(n) < c` that decides the threshold is also available in exact
//! integer arithmetic ([`final_bound_below`]).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::real::Real;

pub const DEFAULT_DIGITS: u32 = 50;
pub const GUARD_DIGITS: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("denominator is not positive: {0}")]
    DegenerateDenominator(String),
    #[error("B = {0} is outside [√2, √6)")]
    BOutOfRange(String),
    #[error("no finite n works for c = {c}: c ≤ 3(√6 + 1)")]
    Unreachable { c: u64 },
}

fn scale_for(digits: u32) -> u32 {
    digits + GUARD_DIGITS
}

/// `λ = 5 / (2(c + 1))`.
pub fn lambda_of(c: u64) -> BigRational {
    BigRational::new(5.into(), BigInt::from(2) * (BigInt::from(c) + 1))
}

/// `(6√|L| + n) / (l − 3√l)`; needs `l > 9`.
pub fn case2_bound(n: u64, l: u64, line_count: u64, digits: u32) -> Result<Real, BoundError> {
    if l <= 9 {
        return Err(BoundError::DegenerateDenominator(format!("l = {l} ≤ 9")));
    }
    let s = scale_for(digits);
    let l_r = Real::from_int(l, s);
    let num = Real::from_int(line_count, s).sqrt().mul_int(6).add(&Real::from_int(n, s));
    let den = l_r.sub(&l_r.sqrt().mul_int(3));
    Ok(num.div(&den))
}

/// √k at the scale used for `digits`.
pub fn sqrt_int(k: u64, digits: u32) -> Real {
    Real::from_int(k, scale_for(digits)).sqrt()
}

/// Parses a decimal `B` at the working scale for `digits`.
pub fn parse_real(s: &str, digits: u32) -> Result<Real, String> {
    Real::parse(s, scale_for(digits))
}

/// `(6B + B²) / (2 − 3B√(2/n))` for `B ∈ [√2, √6)`.
///
/// `B` must be at the working scale for `digits`. The interval ends are the
/// floor square roots at that scale, so `sqrt_int(2, digits)` itself is accepted.
pub fn regime_bound(n: u64, b: &Real, digits: u32) -> Result<Real, BoundError> {
    let s = scale_for(digits);
    let b = rescale(b, s);
    if b < sqrt_int(2, digits) || b >= sqrt_int(6, digits) {
        return Err(BoundError::BOutOfRange(b.to_sig_string(digits)));
    }
    regime_expression(n, &b, digits)
}

/// The regime formula without the interval check on `B`.
pub fn regime_expression(n: u64, b: &Real, digits: u32) -> Result<Real, BoundError> {
    let s = scale_for(digits);
    let b = rescale(b, s);
    if n == 0 {
        return Err(BoundError::DegenerateDenominator("n = 0".into()));
    }
    let root = Real::from_ratio(2, n, s).sqrt();
    let den = Real::from_int(2, s).sub(&b.mul_int(3).mul(&root));
    if !den.is_positive() {
        return Err(BoundError::DegenerateDenominator(format!(
            "2 − 3B√(2/n) ≤ 0 at n = {n}"
        )));
    }
    let num = b.mul_int(6).add(&b.mul(&b));
    Ok(num.div(&den))
}

fn rescale(r: &Real, scale: u32) -> Real {
    if r.scale() == scale {
        r.clone()
    } else {
        Real::parse(&r.to_sig_string(r.scale() + 30), scale).expect("round-trips")
    }
}

/// `3(√6 + 1)`, the limit of [`final_bound`] as `n → ∞`.
pub fn limit_constant(digits: u32) -> Real {
    let s = scale_for(digits);
    sqrt_int(6, digits).add(&Real::from_int(1, s)).mul_int(3)
}

/// `3(√6 + 1) / (1 − 3√(3/n))`; needs `n > 27`.
pub fn final_bound(n: u64, digits: u32) -> Result<Real, BoundError> {
    if n <= 27 {
        return Err(BoundError::DegenerateDenominator(format!("n = {n} ≤ 27")));
    }
    let s = scale_for(digits);
    let den = Real::from_int(1, s).sub(&Real::from_ratio(3, n, s).sqrt().mul_int(3));
    Ok(limit_constant(digits).div(&den))
}

/// Sign of `a + b√d` for `d ≥ 0`, exactly.
pub fn sign_of_surd(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign_cmp();
    let sb = if d.is_zero() { Ordering::Equal } else { b.sign_cmp() };
    match (sa, sb) {
        (x, Ordering::Equal) => x,
        (Ordering::Equal, y) => y,
        (x, y) if x == y => x,
        (x, y) => match (a * a).cmp(&(b * b * d)) {
            Ordering::Greater => x,
            Ordering::Less => y,
            Ordering::Equal => Ordering::Equal,
        },
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Exact test of `3(√6 + 1) / (1 − 3√(3/n)) < c`. False for `n ≤ 27`, where the
/// denominator is not positive.
///
/// Multiplying through by `√n` gives `√n (c − 3 − 3√6) > 3c√3`. When the factor
/// `c − 3 − 3√6` is positive both sides can be squared:
/// `n((c−3)² + 54) − 27c² − 6n(c−3)√6 > 0`.
pub fn final_bound_below(n: u64, c: u64) -> bool {
    if n <= 27 {
        return false;
    }
    let c = BigInt::from(c);
    let n = BigInt::from(n);
    let six = BigInt::from(6);
    let cm3 = &c - 3;
    if sign_of_surd(&cm3, &BigInt::from(-3), &six) != Ordering::Greater {
        return false;
    }
    let a = &n * (&cm3 * &cm3 + 54) - BigInt::from(27) * &c * &c;
    let b = BigInt::from(-6) * &n * &cm3;
    sign_of_surd(&a, &b, &six) == Ordering::Greater
}

/// True when `c > 3(√6 + 1)`, exactly.
pub fn exceeds_limit(c: u64) -> bool {
    let cm3 = BigInt::from(c) - 3;
    sign_of_surd(&cm3, &BigInt::from(-3), &BigInt::from(6)) == Ordering::Greater
}

/// Smallest `n` with `final_bound(n) < c`.
pub fn threshold_n(c: u64) -> Result<u64, BoundError> {
    if !exceeds_limit(c) {
        return Err(BoundError::Unreachable { c });
    }
    let mut hi = 28u64;
    while !final_bound_below(hi, c) {
        hi *= 2;
    }
    // invariant: predicate false at lo, true at hi
    let mut lo = 27u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if final_bound_below(mid, c) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Threshold plus the evaluations either side of it.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub c: u64,
    pub threshold_n: u64,
    /// `final_bound(threshold_n)`, below `c`.
    pub bound_at_threshold: String,
    /// `final_bound(threshold_n − 1)`, at least `c`; absent when `threshold_n − 1 ≤ 27`.
    pub bound_below_threshold: Option<String>,
    /// The high-precision evaluation and the exact integer test agree on both sides.
    pub exact_confirmed: bool,
    pub precision: u32,
    pub note: String,
}

pub fn threshold_report(c: u64, digits: u32) -> Result<ThresholdReport, BoundError> {
    let t = threshold_n(c)?;
    let s = scale_for(digits);
    let c_real = Real::from_int(c, s);
    let at = final_bound(t, digits)?;
    let below = if t > 28 { Some(final_bound(t - 1, digits)?) } else { None };
    let numeric_ok = at < c_real && below.as_ref().is_none_or(|b| *b >= c_real);
    let exact_ok = final_bound_below(t, c) && !final_bound_below(t - 1, c);
    Ok(ThresholdReport {
        c,
        threshold_n: t,
        bound_at_threshold: at.to_sig_string(digits),
        bound_below_threshold: below.map(|b| b.to_sig_string(digits)),
        exact_confirmed: numeric_ok && exact_ok,
        precision: digits,
        note: format!(
            "threshold_n is the smallest n with final_bound(n) < c; the strict reading \
             \"n > {prev}\" is one step more conservative than \"n ≥ {t}\"",
            prev = t - 1
        ),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `|L| ≤ n²/6`
    SmallL,
    /// `|L| > n²/6`, parametrized by `|L| = n²/B²`
    LargeL,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundParameters {
    pub n: u64,
    pub c: Option<u64>,
    pub l: Option<u64>,
    pub line_count: Option<u64>,
    /// Decimal `B`; forces the large-`|L|` regime.
    pub b: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundInputs {
    pub n: u64,
    pub c: Option<u64>,
    pub lambda: Option<String>,
    pub l: Option<u64>,
    pub line_count: Option<u64>,
    #[serde(rename = "B")]
    pub b: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    pub case2_bound: Option<String>,
    pub regime: Regime,
    pub final_bound: String,
    /// `c` exceeds the bound, so a c-ordinary triangle must exist.
    pub triangle_forced: Option<bool>,
    pub precision: u32,
}

/// Evaluates the bound chain for the given parameters.
///
/// With `B` given, or with `line_count > n²/6` (then `B = n/√line_count`), the
/// large-`|L|` formula is used; otherwise the small-`|L|` formula.
pub fn evaluate(params: &BoundParameters, digits: u32) -> Result<BoundReport, BoundError> {
    let n = params.n;
    let case2 = match (params.l, params.line_count) {
        (Some(l), Some(lc)) => Some(case2_bound(n, l, lc, digits)?),
        _ => None,
    };
    let s = scale_for(digits);
    let b = match (&params.b, params.line_count) {
        (Some(text), _) => Some(parse_real(text, digits).map_err(BoundError::BOutOfRange)?),
        (None, Some(lc)) if u128::from(lc) * 6 > u128::from(n) * u128::from(n) => {
            Some(Real::from_int(n, s).div(&Real::from_int(lc, s).sqrt()))
        }
        _ => None,
    };
    let (regime, bound) = match &b {
        Some(b) => (Regime::LargeL, regime_bound(n, b, digits)?),
        None => (Regime::SmallL, final_bound(n, digits)?),
    };
    let forced = params.c.map(|c| match regime {
        Regime::SmallL => final_bound_below(n, c),
        Regime::LargeL => bound < Real::from_int(c, s),
    });
    Ok(BoundReport {
        inputs: BoundInputs {
            n,
            c: params.c,
            lambda: params.c.map(|c| lambda_of(c).to_string()),
            l: params.l,
            line_count: params.line_count,
            b: b.map(|b| b.to_sig_string(digits)),
        },
        case2_bound: case2.map(|v| v.to_sig_string(digits)),
        regime,
        final_bound: bound.to_sig_string(digits),
        triangle_forced: forced,
        precision: digits,
    })
}
