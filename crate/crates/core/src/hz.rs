//! Matchings counted by genus through the Harer-Zagier recursion, the series
//! `C_g(z)`, and the polynomials `Q_g(z) = C_g(z) (1-4z)^{3g-1/2}`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Poly, Rational, TruncSeries};

/// `c_g(m)` for `g <= g_max`, `m <= m_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HZTable {
    c: Vec<Vec<BigInt>>,
}

impl HZTable {
    pub fn g_max(&self) -> usize {
        self.c.len() - 1
    }

    pub fn m_max(&self) -> usize {
        self.c[0].len() - 1
    }

    pub fn get(&self, g: usize, m: usize) -> &BigInt {
        &self.c[g][m]
    }

    pub fn row(&self, g: usize) -> &[BigInt] {
        &self.c[g]
    }

    /// `sum_g c_g(m)`; equals `(2m-1)!!` once `g_max >= m/2`.
    pub fn column_sum(&self, m: usize) -> BigInt {
        self.c.iter().map(|row| &row[m]).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("genus,arcs,count\n");
        for (g, row) in self.c.iter().enumerate() {
            for (m, v) in row.iter().enumerate() {
                let _ = writeln!(out, "{g},{m},{v}");
            }
        }
        out
    }

    /// JSON object with keys `c_<g>_<m>` and decimal-string values.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (g, row) in self.c.iter().enumerate() {
            for (m, v) in row.iter().enumerate() {
                map.insert(format!("c_{g}_{m}"), Value::String(v.to_string()));
            }
        }
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let map = v
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object of c_g_m entries".into()))?;
        let mut entries = Vec::new();
        for (k, v) in map {
            let bad = || Error::Parse(format!("bad table key {k:?}"));
            let rest = k.strip_prefix("c_").ok_or_else(bad)?;
            let (g, m) = rest.split_once('_').ok_or_else(bad)?;
            let g: usize = g.parse().map_err(|_| bad())?;
            let m: usize = m.parse().map_err(|_| bad())?;
            let val: BigInt = v
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad value for {k}")))?;
            entries.push((g, m, val));
        }
        let g_max = entries.iter().map(|e| e.0).max().ok_or_else(|| Error::Parse("empty table".into()))?;
        let m_max = entries.iter().map(|e| e.1).max().unwrap_or(0);
        if entries.len() != (g_max + 1) * (m_max + 1) {
            return Err(Error::Parse("incomplete c_g_m table".into()));
        }
        let mut c = vec![vec![BigInt::zero(); m_max + 1]; g_max + 1];
        for (g, m, v) in entries {
            c[g][m] = v;
        }
        Ok(HZTable { c })
    }
}

/// Fills `c_g(m)` from
/// `(m+1) c_g(m) = 2(2m-1) c_g(m-1) + (2m-1)(m-1)(2m-3) c_{g-1}(m-2)`
/// with `c_0(0) = 1`.
pub fn hz_table(g_max: usize, m_max: usize) -> Result<HZTable> {
    let mut c = vec![vec![BigInt::zero(); m_max + 1]; g_max + 1];
    c[0][0] = BigInt::one();
    for m in 1..=m_max {
        let mb = BigInt::from(m);
        for g in 0..=g_max {
            if 2 * g > m {
                continue;
            }
            let mut rhs = BigInt::from(2 * (2 * m - 1)) * &c[g][m - 1];
            if g >= 1 && m >= 2 {
                rhs += BigInt::from((2 * m - 1) * (m - 1)) * BigInt::from(2 * m as i64 - 3) * &c[g - 1][m - 2];
            }
            let (q, r) = rhs.div_rem(&(&mb + 1u32));
            if !r.is_zero() {
                return Err(Error::NonIntegralDivision(format!("c_{g}({m})")));
            }
            c[g][m] = q;
        }
    }
    Ok(HZTable { c })
}

/// `sum_m c_g(m) z^m` to order `n`.
pub fn c_series(g: usize, n: usize) -> Result<TruncSeries> {
    let t = hz_table(g, n)?;
    Ok(TruncSeries::from_bigints(t.row(g).to_vec()))
}

/// `Q_g(z) = C_g(z) (1-4z)^{3g-1/2}`, checked to be an integral polynomial
/// supported on degrees `2g..=3g-1`.
pub fn q_poly(g: usize) -> Result<Poly> {
    if g == 0 {
        return Err(Error::InvalidArgument("Q_g is defined for g >= 1".into()));
    }
    let n = 3 * g + 8;
    let c = c_series(g, n)?;
    let factor = TruncSeries::binomial_power(&int(-4), &rat(6 * g as i64 - 1, 2), n);
    let prod = c.mul(&factor);
    for h in (0..2 * g).chain(3 * g..=n) {
        if !prod.coeff(h).is_zero() {
            return Err(Error::PolynomialityViolation(format!(
                "Q_{g} has nonzero coefficient at z^{h}"
            )));
        }
    }
    let q = prod.truncate(3 * g - 1).to_poly();
    if !q.is_integral() {
        return Err(Error::NonIntegerCoefficient(format!("Q_{g}")));
    }
    if q.eval(&rat(1, 4)).is_zero() {
        return Err(Error::PolynomialityViolation(format!("Q_{g}(1/4) = 0")));
    }
    Ok(q)
}

/// `C_g(z) = Q_g(z) (1-4z)^{1/2-3g}` to order `n`; `C_0` via its own branch.
pub fn c_series_from_q(g: usize, n: usize) -> Result<TruncSeries> {
    let q = q_poly(g)?;
    let f = TruncSeries::binomial_power(&int(-4), &Rational::new((1 - 6 * g as i64).into(), 2.into()), n);
    Ok(TruncSeries::from_poly(&q, n).mul(&f))
}
