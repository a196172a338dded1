//! Exact arithmetic: rationals, dense polynomials, truncated power series in
//! one and two variables.
//!
//! Everything here is immutable and exact. Truncated series carry their order
//! explicitly; binary operations narrow to the smaller order and never invent
//! coefficients past it.

mod bivariate;
mod poly;
mod series;

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub use bivariate::{BiPoly, BiTruncSeries};
pub use poly::Poly;
pub use series::TruncSeries;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Decimal string form: plain integer, or `num/den` when not integral.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    // `Ratio::from_str` accepts "a/b" and "a"; it rejects zero denominators.
    Rational::from_str(s).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

pub fn coeffs_to_json(coeffs: &[Rational]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .map(|c| Value::String(format_rational(c)))
            .collect(),
    )
}

pub fn coeffs_from_json(value: &Value) -> Result<Vec<Rational>> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Parse("expected a JSON array of coefficients".into()))?;
    arr.iter()
        .map(|v| match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Parse(format!("bad coefficient {other}"))),
        })
        .collect()
}

/// Series multiplication: exact Cauchy product truncated at the smaller order.
pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    a.mul(b)
}

pub fn series_inverse(a: &TruncSeries) -> Result<TruncSeries> {
    a.inverse()
}

pub fn series_compose(outer: &TruncSeries, inner: &TruncSeries) -> Result<TruncSeries> {
    outer.compose(inner)
}

/// `(1 + c z)^alpha` to order `n` by the generalized binomial theorem.
pub fn series_binomial_power(c: &Rational, alpha: &Rational, n: usize) -> TruncSeries {
    TruncSeries::binomial_power(c, alpha, n)
}

pub fn bipoly_eval_series(p: &BiPoly, u_val: &TruncSeries, x_val: &TruncSeries) -> TruncSeries {
    p.eval_series(u_val, x_val)
}

/// Scales a coefficient vector to integers: returns the numerators over the
/// lcm of all denominators, and that lcm.
pub(crate) fn to_common_denominator(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for c in coeffs {
        if !c.denom().is_one() {
            den = den.lcm(c.denom());
        }
    }
    if den.is_one() {
        return (coeffs.iter().map(|c| c.numer().clone()).collect(), den);
    }
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (nums, den)
}

pub(crate) fn from_common_denominator(nums: Vec<BigInt>, den: &BigInt) -> Vec<Rational> {
    if den.is_one() {
        nums.into_iter().map(Rational::from_integer).collect()
    } else {
        nums.into_iter()
            .map(|n| Rational::new(n, den.clone()))
            .collect()
    }
}

/// Integer convolution truncated to `len` terms.
pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

pub(crate) fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}
