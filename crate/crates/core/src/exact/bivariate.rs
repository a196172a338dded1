use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, Poly, Rational, TruncSeries};
use crate::error::{Error, Result};

/// Polynomial in `X` whose coefficients are polynomials in `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    /// `coeffs[j]` is the coefficient of `X^j`; no trailing zero entries.
    coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn constant(p: Poly) -> Self {
        BiPoly::new(vec![p])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        BiPoly::new(vec![Poly::zero(), Poly::one()])
    }

    /// The polynomial `u`.
    pub fn u() -> Self {
        BiPoly::constant(Poly::var())
    }

    /// From `(coefficient, u-exponent, X-exponent)` triples.
    pub fn from_terms(terms: &[(i64, usize, usize)]) -> Self {
        let mut out = BiPoly::zero();
        for &(c, i, j) in terms {
            let mut v = vec![Poly::zero(); j + 1];
            v[j] = Poly::monomial(int(c), i);
            out = &out + &BiPoly::new(v);
        }
        out
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `u`-degree among all coefficients.
    pub fn degree_u(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(Poly::degree).max()
    }

    pub fn coeff_x(&self, j: usize) -> Poly {
        self.coeffs.get(j).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn leading_x(&self) -> Poly {
        self.coeffs.last().cloned().unwrap_or_else(Poly::zero)
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&int(j as i64)))
                .collect(),
        )
    }

    pub fn derivative_u(&self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(Poly::derivative).collect())
    }

    pub fn scale(&self, s: &Rational) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut out = BiPoly::constant(Poly::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Specializes `u`, leaving a polynomial in `X`.
    pub fn eval_u(&self, u: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.eval(u)).collect())
    }

    pub fn eval(&self, u: &Rational, x: &Rational) -> Rational {
        self.eval_u(u).eval(x)
    }

    /// `p(u_val, x_val)` with both arguments truncated series.
    pub fn eval_series(&self, u_val: &TruncSeries, x_val: &TruncSeries) -> TruncSeries {
        let order = u_val.order().min(x_val.order());
        let u_val = u_val.truncate(order);
        let x_val = x_val.truncate(order);
        let mut acc = TruncSeries::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x_val);
            acc = &acc + &eval_poly_at_series(c, &u_val);
        }
        acc
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cx = c.to_text("u");
            let xs = match j {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{j}"),
            };
            parts.push(if xs.is_empty() {
                format!("({cx})")
            } else {
                format!("({cx}){xs}")
            });
        }
        parts.join(" + ")
    }
}

/// Polynomial evaluated at an arbitrary series (no valuation requirement).
fn eval_poly_at_series(p: &Poly, s: &TruncSeries) -> TruncSeries {
    let mut acc = TruncSeries::zero(s.order());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(s);
        acc = &acc + &TruncSeries::constant(c.clone(), s.order());
    }
    acc
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|j| &self.coeff_x(j) + &rhs.coeff_x(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|j| &self.coeff_x(j) - &rhs.coeff_x(j)).collect())
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        BiPoly::new(out)
    }
}

/// Series in a marker variable `t` whose coefficients are truncated series in
/// a base variable: `sum_{k <= t_order} t^k * level_k(z)`.
///
/// All levels share one base order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiTruncSeries {
    levels: Vec<TruncSeries>,
}

impl BiTruncSeries {
    pub fn new(levels: Vec<TruncSeries>) -> Self {
        assert!(!levels.is_empty(), "need at least the t^0 level");
        let order = levels.iter().map(TruncSeries::order).min().unwrap();
        BiTruncSeries {
            levels: levels.iter().map(|l| l.truncate(order)).collect(),
        }
    }

    pub fn zero(t_order: usize, order: usize) -> Self {
        BiTruncSeries {
            levels: vec![TruncSeries::zero(order); t_order + 1],
        }
    }

    /// A series constant in `t`.
    pub fn from_base(s: &TruncSeries, t_order: usize) -> Self {
        let mut out = BiTruncSeries::zero(t_order, s.order());
        out.levels[0] = s.clone();
        out
    }

    /// `t * s(z)`.
    pub fn marker_times(s: &TruncSeries, t_order: usize) -> Self {
        let mut out = BiTruncSeries::zero(t_order, s.order());
        if t_order >= 1 {
            out.levels[1] = s.clone();
        }
        out
    }

    pub fn t_order(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn order(&self) -> usize {
        self.levels[0].order()
    }

    pub fn levels(&self) -> &[TruncSeries] {
        &self.levels
    }

    /// `[t^k]` of the series.
    pub fn level(&self, k: usize) -> &TruncSeries {
        &self.levels[k]
    }

    /// `[z^n t^k]`.
    pub fn coeff(&self, n: usize, k: usize) -> &Rational {
        self.levels[k].coeff(n)
    }

    /// Smallest base valuation across all levels.
    pub fn base_valuation(&self) -> Option<usize> {
        self.levels.iter().filter_map(TruncSeries::valuation).min()
    }

    pub fn truncate(&self, t_order: usize, order: usize) -> Self {
        BiTruncSeries {
            levels: self.levels[..=t_order]
                .iter()
                .map(|l| l.truncate(order))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        BiTruncSeries {
            levels: self.levels.iter().map(|l| l.scale(s)).collect(),
        }
    }

    /// Multiplication by `t`, keeping the t-order.
    pub fn shift_t(&self) -> Self {
        let mut out = BiTruncSeries::zero(self.t_order(), self.order());
        for k in 1..=self.t_order() {
            out.levels[k] = self.levels[k - 1].clone();
        }
        out
    }

    pub fn mul(&self, rhs: &BiTruncSeries) -> Self {
        let t_order = self.t_order().min(rhs.t_order());
        let order = self.order().min(rhs.order());
        let mut out = BiTruncSeries::zero(t_order, order);
        for i in 0..=t_order {
            if self.levels[i].is_zero() {
                continue;
            }
            for j in 0..=(t_order - i) {
                if rhs.levels[j].is_zero() {
                    continue;
                }
                let prod = self.levels[i].mul(&rhs.levels[j]);
                out.levels[i + j] = &out.levels[i + j] + &prod;
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        let b0 = self.levels[0].inverse()?;
        let mut out = vec![b0.clone()];
        for k in 1..=self.t_order() {
            let mut acc = TruncSeries::zero(self.order());
            for i in 1..=k {
                acc = &acc + &self.levels[i].mul(&out[k - i]);
            }
            out.push(-&b0.mul(&acc));
        }
        Ok(BiTruncSeries { levels: out })
    }

    pub fn div(&self, rhs: &BiTruncSeries) -> Result<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// `outer(inner(z, t))` for a univariate polynomial `outer`. The inner
    /// series must vanish at `z = 0` on every `t`-level.
    pub fn compose_poly(outer: &Poly, inner: &BiTruncSeries) -> Result<Self> {
        horner_bi(outer.coeffs(), inner)
    }

    /// As [`compose_poly`](Self::compose_poly) for a truncated outer series.
    /// The outer order must cover the inner base order.
    pub fn compose_series(outer: &TruncSeries, inner: &BiTruncSeries) -> Result<Self> {
        let v = inner.base_valuation().unwrap_or(inner.order() + 1);
        let order = inner.order().min(v * (outer.order() + 1) - 1);
        horner_bi(outer.coeffs(), &inner.truncate(inner.t_order(), order))
    }

    /// Substitutes `t = 1`, summing all levels.
    pub fn at_marker_one(&self) -> TruncSeries {
        let mut acc = TruncSeries::zero(self.order());
        for l in &self.levels {
            acc = &acc + l;
        }
        acc
    }
}

fn horner_bi(outer: &[Rational], inner: &BiTruncSeries) -> Result<BiTruncSeries> {
    if inner.levels.iter().any(|l| !l.coeff(0).is_zero()) {
        return Err(Error::NonzeroInnerConstant);
    }
    let order = inner.order();
    let max_deg = match inner.base_valuation() {
        None => 0,
        Some(v) => order / v,
    };
    let top = outer.len().saturating_sub(1).min(max_deg);
    let mut acc = BiTruncSeries::from_base(
        &TruncSeries::constant(
            outer.get(top).cloned().unwrap_or_else(Rational::zero),
            order,
        ),
        inner.t_order(),
    );
    for k in (0..top).rev() {
        acc = acc.mul(inner);
        let c = &outer[k];
        if !c.is_zero() {
            acc.levels[0] = &acc.levels[0] + &TruncSeries::constant(c.clone(), order);
        }
    }
    Ok(acc)
}

impl Add for &BiTruncSeries {
    type Output = BiTruncSeries;
    fn add(self, rhs: &BiTruncSeries) -> BiTruncSeries {
        let t = self.t_order().min(rhs.t_order());
        BiTruncSeries::new((0..=t).map(|k| &self.levels[k] + &rhs.levels[k]).collect())
    }
}

impl Sub for &BiTruncSeries {
    type Output = BiTruncSeries;
    fn sub(self, rhs: &BiTruncSeries) -> BiTruncSeries {
        let t = self.t_order().min(rhs.t_order());
        BiTruncSeries::new((0..=t).map(|k| &self.levels[k] - &rhs.levels[k]).collect())
    }
}

impl Neg for &BiTruncSeries {
    type Output = BiTruncSeries;
    fn neg(self) -> BiTruncSeries {
        BiTruncSeries {
            levels: self.levels.iter().map(|l| -l).collect(),
        }
    }
}

/// `1 - s` for a bivariate series.
pub(crate) fn one_minus(s: &BiTruncSeries) -> BiTruncSeries {
    let one = BiTruncSeries::from_base(&TruncSeries::one(s.order()), s.t_order());
    &one - s
}

impl BiTruncSeries {
    pub fn one(t_order: usize, order: usize) -> Self {
        BiTruncSeries::from_base(&TruncSeries::one(order), t_order)
    }

    pub fn one_minus(&self) -> Self {
        one_minus(self)
    }

    pub fn is_one(&self) -> bool {
        self.levels[0].coeff(0).is_one()
            && self.levels[0].coeffs()[1..].iter().all(Zero::is_zero)
            && self.levels[1..].iter().all(TruncSeries::is_zero)
    }
}
