use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{coeffs_from_json, coeffs_to_json, convolve, from_common_denominator, int};
use super::{to_common_denominator, Poly, Rational};
use crate::error::{Error, Result};

/// A power series known exactly for exponents `0..=order`.
///
/// Coefficients past `order` are unknown, not zero. Every operation returns a
/// series whose order never exceeds what its inputs determine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs order >= 0");
        TruncSeries { coeffs }
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        TruncSeries::new(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::constant(Rational::one(), order)
    }

    /// The series `z` (or `0` when `order == 0`).
    pub fn var(order: usize) -> Self {
        TruncSeries::from_poly(&Poly::var(), order)
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(|k| p.coeff(k)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// Lowest index with a nonzero coefficient, `None` if zero up to order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(super::is_integral)
    }

    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.to_poly().to_bigints().map(|mut v| {
            v.resize(self.coeffs.len(), BigInt::zero());
            v
        })
    }

    pub fn scale(&self, s: &Rational) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplication by `z^k`; the order is unchanged.
    pub fn shift(&self, k: usize) -> TruncSeries {
        let mut out = TruncSeries::zero(self.order());
        for n in k..=self.order() {
            out.coeffs[n] = self.coeffs[n - k].clone();
        }
        out
    }

    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        let (a, da) = to_common_denominator(&self.coeffs[..len]);
        let (b, db) = to_common_denominator(&rhs.coeffs[..len]);
        TruncSeries {
            coeffs: from_common_denominator(convolve(&a, &b, len), &(da * db)),
        }
    }

    pub fn square(&self) -> TruncSeries {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> TruncSeries {
        let mut result = TruncSeries::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn inverse(&self) -> Result<TruncSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let (a, den) = to_common_denominator(&self.coeffs);
        // 1/self = den * (1/a) with a integral.
        let a0 = a[0].clone();
        let out: Vec<Rational> = if a0.abs().is_one() {
            // c_k = -a0 * sum_{i=1..k} a_i c_{k-i}, all integers since a0 = +-1
            let mut c: Vec<BigInt> = Vec::with_capacity(n + 1);
            c.push(a0.clone());
            for k in 1..=n {
                let mut acc = BigInt::zero();
                for i in 1..=k {
                    if !a[i].is_zero() {
                        acc += &a[i] * &c[k - i];
                    }
                }
                c.push(-(&a0 * acc));
            }
            c.into_iter()
                .map(|x| Rational::from_integer(x * &den))
                .collect()
        } else {
            let inv0 = self.coeffs[0].recip();
            let mut c: Vec<Rational> = Vec::with_capacity(n + 1);
            c.push(inv0.clone());
            for k in 1..=n {
                let mut acc = Rational::zero();
                for i in 1..=k {
                    if !self.coeffs[i].is_zero() {
                        acc += &self.coeffs[i] * &c[k - i];
                    }
                }
                c.push(-(&inv0 * acc));
            }
            c
        };
        Ok(TruncSeries { coeffs: out })
    }

    /// `self / rhs`.
    pub fn div(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// `outer(inner(z))`, requiring `inner(0) = 0`.
    ///
    /// With inner valuation `v`, coefficient `n` of the result needs outer
    /// coefficients up to `n / v`, so the result order is
    /// `min(order(inner), v * (order(outer) + 1) - 1)`.
    pub fn compose(&self, inner: &TruncSeries) -> Result<TruncSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = match inner.valuation() {
            None => inner.order(),
            Some(v) => inner.order().min(v * (self.order() + 1) - 1),
        };
        Ok(horner(&self.coeffs, &inner.truncate(order)))
    }

    /// `p(inner(z))` for a polynomial `p`; order is that of `inner`.
    pub fn compose_poly(p: &Poly, inner: &TruncSeries) -> Result<TruncSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        Ok(horner(p.coeffs(), inner))
    }

    /// `(1 + c z)^alpha` up to `z^n`.
    pub fn binomial_power(c: &Rational, alpha: &Rational, n: usize) -> TruncSeries {
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(Rational::one());
        for k in 1..=n {
            let prev: &Rational = &coeffs[k - 1];
            let next = prev * (alpha - int(k as i64 - 1)) * c / int(k as i64);
            coeffs.push(next);
        }
        TruncSeries { coeffs }
    }

    /// Partial sum `sum_{k <= order} c_k x^k`.
    pub fn eval_truncated(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_text(&self, var: &str) -> String {
        let p = self.to_poly();
        let body = if p.is_zero() {
            "0".to_string()
        } else {
            // lowest degree first reads better for series
            let mut terms = Vec::new();
            for (k, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = Poly::monomial(c.clone(), k).to_text(var);
                terms.push(t);
            }
            let mut s = terms[0].clone();
            for t in &terms[1..] {
                if let Some(rest) = t.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(rest);
                } else {
                    s.push_str(" + ");
                    s.push_str(t);
                }
            }
            s
        };
        format!("{body} + O({var}^{})", self.order() + 1)
    }
}

fn horner(outer: &[Rational], inner: &TruncSeries) -> TruncSeries {
    let order = inner.order();
    let max_deg = match inner.valuation() {
        None => 0,
        Some(v) => order / v,
    };
    let top = outer.len().saturating_sub(1).min(max_deg);
    let mut acc = TruncSeries::constant(
        outer.get(top).cloned().unwrap_or_else(Rational::zero),
        order,
    );
    for k in (0..top).rev() {
        acc = acc.mul(inner);
        acc.coeffs[0] += &outer[k];
    }
    acc
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("z"))
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        coeffs_to_json(&self.coeffs).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let coeffs = coeffs_from_json(&v).map_err(serde::de::Error::custom)?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom("empty series"));
        }
        Ok(TruncSeries { coeffs })
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        TruncSeries {
            coeffs: (0..len).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        TruncSeries {
            coeffs: (0..len).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: TruncSeries) -> TruncSeries {
        &self + &rhs
    }
}

impl Sub for TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: TruncSeries) -> TruncSeries {
        &self - &rhs
    }
}
