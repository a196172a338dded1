//! Generating functions of gamma-matchings and tau-canonical gamma-structures.
//!
//! `H_gamma(u)` solves `H = 1 + u H^2 + sum_{g<=gamma} I_g(u H^2 / (1 - u H^2))`
//! and is algebraic with defining polynomial
//!
//! ```text
//! P_gamma(u, X) = w^k (-1 + X - u X^2) - sum_g w^k I_g(u X^2 / w),
//! w = 1 - u X^2,  k = 6 gamma - 2.
//! ```
//!
//! Structure series are `H_gamma` composed with rational arguments built from
//! `u_tau(z) = z^{2tau-2} / (z^{2tau} - z^2 + 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, BiPoly, BiTruncSeries, Poly, Rational, TruncSeries};
use crate::shadows::ShadowPolySet;

/// `P_gamma` together with the shadow polynomials it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSystem {
    pub gamma: usize,
    pub kappa: usize,
    pub p: BiPoly,
    pub shadows: ShadowPolySet,
}

impl GammaSystem {
    /// Coefficients of `sum_{g<=gamma} I_g(y)` as integers, index = power of `y`.
    fn shadow_sum_coeffs(&self) -> Vec<BigInt> {
        self.shadows
            .sum_up_to(self.gamma)
            .to_bigints()
            .expect("shadow polynomials are integral")
    }
}

pub fn build_p(gamma: usize, shadows: &ShadowPolySet) -> Result<GammaSystem> {
    if gamma == 0 {
        return Err(Error::InvalidArgument("gamma must be at least 1".into()));
    }
    if shadows.g_max() < gamma {
        return Err(Error::ShadowSetIncomplete(gamma));
    }
    let shadows = shadows.truncated(gamma);
    let kappa = 6 * gamma - 2;
    // y = u X^2
    let y = BiPoly::from_terms(&[(1, 1, 2)]);
    let w = &BiPoly::constant(Poly::one()) - &y;
    let mut w_pow = vec![BiPoly::constant(Poly::one())];
    let mut y_pow = vec![BiPoly::constant(Poly::one())];
    for _ in 0..kappa {
        w_pow.push(&w_pow[w_pow.len() - 1] * &w);
        y_pow.push(&y_pow[y_pow.len() - 1] * &y);
    }
    let base = BiPoly::from_terms(&[(-1, 0, 0), (1, 0, 1), (-1, 1, 2)]);
    let mut p = &w_pow[kappa] * &base;
    let isum = shadows.sum_up_to(gamma);
    for (m, c) in isum.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = (&w_pow[kappa - m] * &y_pow[m]).scale(c);
        p = &p - &term;
    }
    let deg = p.degree_x();
    let lead = p.leading_x();
    let want = Poly::monomial(int(-1), 1 + kappa);
    if deg != Some(2 + 2 * kappa) || lead != want {
        return Err(Error::ConditionViolated(format!(
            "P_{gamma} has degree {deg:?} and leading coefficient {lead}"
        )));
    }
    Ok(GammaSystem {
        gamma,
        kappa,
        p,
        shadows,
    })
}

/// `h_gamma(0..=n)` as integers.
///
/// Each coefficient of the fixed point `H = 1 + uH^2 + I(uH^2/(1-uH^2))`
/// depends only on lower ones, so the iteration is carried out one
/// coefficient at a time: `[u^n]` of `u H^2`, of `y = uH^2/(1-uH^2)` and of
/// the powers `y^j` are updated from the already-final prefix.
pub fn h_coefficients(sys: &GammaSystem, n: usize) -> Vec<BigInt> {
    let icoef = sys.shadow_sum_coeffs();
    let kmax = icoef.len().saturating_sub(1);
    let zero = BigInt::zero();
    let mut h: Vec<BigInt> = vec![BigInt::one()];
    // s = H^2
    let mut s: Vec<BigInt> = vec![BigInt::one()];
    // a = u H^2, y = a / (1 - a); both vanish at 0
    let mut a: Vec<BigInt> = vec![zero.clone()];
    let mut y: Vec<BigInt> = vec![zero.clone()];
    // pw[j] = y^j for j = 1..=kmax (pw[0] unused)
    let mut pw: Vec<Vec<BigInt>> = (0..=kmax).map(|_| vec![zero.clone()]).collect();
    for k in 1..=n {
        a.push(s[k - 1].clone());
        let mut yk = a[k].clone();
        for i in 1..k {
            if !a[i].is_zero() && !y[k - i].is_zero() {
                yk += &a[i] * &y[k - i];
            }
        }
        y.push(yk);
        if kmax >= 1 {
            pw[1].push(y[k].clone());
        }
        for j in 2..=kmax {
            // y^j has valuation j
            let mut c = BigInt::zero();
            if k >= j {
                for i in 1..=(k - j + 1) {
                    let prev = &pw[j - 1][k - i];
                    if !prev.is_zero() {
                        c += &y[i] * prev;
                    }
                }
            }
            pw[j].push(c);
        }
        let mut hk = s[k - 1].clone();
        for (m, im) in icoef.iter().enumerate().skip(1) {
            if !im.is_zero() {
                hk += im * &pw[m][k];
            }
        }
        h.push(hk);
        let mut sk = BigInt::zero();
        for i in 0..=k {
            sk += &h[i] * &h[k - i];
        }
        s.push(sk);
    }
    h
}

/// `H_gamma(u)` to order `n`, checked against `P_gamma(u, H) = 0`.
pub fn h_series(sys: &GammaSystem, n: usize) -> Result<TruncSeries> {
    let h = TruncSeries::from_bigints(h_coefficients(sys, n));
    let residue = sys.p.eval_series(&TruncSeries::var(n), &h);
    if !residue.is_zero() {
        return Err(Error::ConditionViolated(format!(
            "P_{}(u, H) does not vanish to order {n}",
            sys.gamma
        )));
    }
    Ok(h)
}

/// The literal full-series iteration `H <- 1 + uH^2 + I(uH^2/(1-uH^2))`
/// from `H = 1`; returns the fixed point and the number of rounds until it
/// stopped changing.
pub fn h_series_by_iteration(sys: &GammaSystem, n: usize) -> Result<(TruncSeries, usize)> {
    let isum = sys.shadows.sum_up_to(sys.gamma);
    let one = TruncSeries::one(n);
    let mut h = one.clone();
    for round in 1..=n + 2 {
        let a = h.square().shift(1);
        let y = a.div(&(&one - &a))?;
        let next = &(&one + &a) + &TruncSeries::compose_poly(&isum, &y)?;
        if next == h {
            return Ok((h, round));
        }
        h = next;
    }
    Err(Error::FixedPointDivergence(format!(
        "no fixed point after {} rounds",
        n + 2
    )))
}

fn poly_series(p: &Poly, n: usize) -> TruncSeries {
    TruncSeries::from_poly(p, n)
}

fn quotient(num: &Poly, den: &Poly, n: usize) -> TruncSeries {
    poly_series(num, n)
        .div(&poly_series(den, n))
        .expect("denominator has constant term 1")
}

/// Rational arguments for the structure series of one `tau`:
/// `H` is composed with `theta_num / theta_den` and multiplied by
/// `pre_num / pre_den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureParams {
    pub tau: usize,
    pub with_one_arcs: bool,
    pub theta_num: Poly,
    pub theta_den: Poly,
    pub pre_num: Poly,
    pub pre_den: Poly,
}

impl StructureParams {
    /// Without 1-arcs: `theta = u_tau z^2 / (u_tau z^2 - z + 1)^2` and
    /// prefactor `1 / (u_tau z^2 - z + 1)`. With 1-arcs:
    /// `theta = u_tau z^2 / (1 - z)^2` and prefactor `1 / (1 - z)`.
    pub fn new(tau: usize, with_one_arcs: bool) -> Result<Self> {
        if tau == 0 {
            return Err(Error::InvalidArgument("tau must be at least 1".into()));
        }
        let z2t = Poly::monomial(int(1), 2 * tau);
        // d = z^{2tau} - z^2 + 1, so u_tau z^2 = z^{2tau} / d
        let d = &(&z2t - &Poly::monomial(int(1), 2)) + &Poly::one();
        let one_minus_z = Poly::from_ints(&[1, -1]);
        Ok(if with_one_arcs {
            StructureParams {
                tau,
                with_one_arcs,
                theta_num: z2t,
                theta_den: &d * &one_minus_z.pow(2),
                pre_num: Poly::one(),
                pre_den: one_minus_z,
            }
        } else {
            // u_tau z^2 - z + 1 = e / d with e = z^{2tau} + (1 - z) d
            let e = &z2t + &(&one_minus_z * &d);
            StructureParams {
                tau,
                with_one_arcs,
                theta_num: &z2t * &d,
                theta_den: e.pow(2),
                pre_num: d,
                pre_den: e,
            }
        })
    }

    /// `u_tau(z)` to order `n`.
    pub fn u_tau(&self, n: usize) -> TruncSeries {
        let tau = self.tau;
        let d = &(&Poly::monomial(int(1), 2 * tau) - &Poly::monomial(int(1), 2)) + &Poly::one();
        quotient(&Poly::monomial(int(1), 2 * tau - 2), &d, n)
    }

    pub fn theta(&self, n: usize) -> TruncSeries {
        quotient(&self.theta_num, &self.theta_den, n)
    }

    pub fn prefactor(&self, n: usize) -> TruncSeries {
        quotient(&self.pre_num, &self.pre_den, n)
    }
}

fn structure_series(sys: &GammaSystem, params: &StructureParams, n: usize) -> Result<TruncSeries> {
    let theta = params.theta(n);
    if theta.valuation() != Some(2 * params.tau) {
        return Err(Error::ConditionViolated("structure argument must have valuation 2 tau".into()));
    }
    let h = TruncSeries::from_bigints(h_coefficients(sys, n / (2 * params.tau)));
    Ok(params.prefactor(n).mul(&h.compose(&theta)?))
}

/// `G_{tau,gamma}(z)`: tau-canonical gamma-structures without 1-arcs, by length.
pub fn g_series(sys: &GammaSystem, tau: usize, n: usize) -> Result<TruncSeries> {
    structure_series(sys, &StructureParams::new(tau, false)?, n)
}

/// As [`g_series`] but 1-arcs are allowed.
pub fn gtilde_series(sys: &GammaSystem, tau: usize, n: usize) -> Result<TruncSeries> {
    structure_series(sys, &StructureParams::new(tau, true)?, n)
}

/// `S_gamma(u, e) = (1+u)/(1+2u-ue) H(u(1+u)/(1+2u-ue)^2)`: gamma-shapes by
/// arcs (`u`) and 1-arcs (`e`).
pub fn s_series(sys: &GammaSystem, n: usize) -> Result<BiTruncSeries> {
    let one_plus_u = TruncSeries::from_poly(&Poly::from_ints(&[1, 1]), n);
    let one_plus_2u = TruncSeries::from_poly(&Poly::from_ints(&[1, 2]), n);
    let den = &BiTruncSeries::from_base(&one_plus_2u, n)
        - &BiTruncSeries::marker_times(&TruncSeries::var(n), n);
    let num = BiTruncSeries::from_base(&one_plus_u, n);
    let pre = num.div(&den)?;
    let arg = BiTruncSeries::from_base(&TruncSeries::var(n), n)
        .mul(&num)
        .div(&den.mul(&den))?;
    let h = TruncSeries::from_bigints(h_coefficients(sys, n));
    Ok(pre.mul(&BiTruncSeries::compose_series(&h, &arg)?))
}

/// `A_{tau,gamma}(z, t)`: structures without 1-arcs by length (`z`) and arc
/// count (`t`), to `z`-order `n` and `t`-order `t_order`.
pub fn a_series(sys: &GammaSystem, tau: usize, n: usize, t_order: usize) -> Result<BiTruncSeries> {
    arc_marked(sys, tau, false, n, t_order)
}

/// As [`a_series`] but 1-arcs are allowed.
pub fn atilde_series(sys: &GammaSystem, tau: usize, n: usize, t_order: usize) -> Result<BiTruncSeries> {
    arc_marked(sys, tau, true, n, t_order)
}

fn arc_marked(sys: &GammaSystem, tau: usize, with_one_arcs: bool, n: usize, t_order: usize) -> Result<BiTruncSeries> {
    if tau == 0 {
        return Err(Error::InvalidArgument("tau must be at least 1".into()));
    }
    let z = TruncSeries::var(n);
    // w = t z^2, u_tau(z,t) z^2 = w^tau / d
    let w = BiTruncSeries::marker_times(&z.square(), t_order);
    let one = BiTruncSeries::one(t_order, n);
    let mut w_tau = one.clone();
    for _ in 0..tau {
        w_tau = w_tau.mul(&w);
    }
    let d = &(&w_tau - &w) + &one;
    let one_minus_z = BiTruncSeries::from_base(&(&TruncSeries::one(n) - &z), t_order);
    let (pre, arg) = if with_one_arcs {
        let pre = one.div(&one_minus_z)?;
        let arg = w_tau.div(&d.mul(&one_minus_z).mul(&one_minus_z))?;
        (pre, arg)
    } else {
        let e = &w_tau + &one_minus_z.mul(&d);
        (d.div(&e)?, w_tau.mul(&d).div(&e.mul(&e))?)
    };
    let h = TruncSeries::from_bigints(h_coefficients(sys, n / (2 * tau)));
    Ok(pre.mul(&BiTruncSeries::compose_series(&h, &arg)?))
}

/// `G^lambda` for a shape with `s` arcs of which `m` are 1-arcs:
/// `(1-z)^{-1} (z^{2tau} / ((1-z^2)(1-z)^2 - (2z-z^2) z^{2tau}))^s z^m`.
pub fn g_lambda_series(s: usize, m: usize, tau: usize, n: usize) -> Result<TruncSeries> {
    if m > s || tau == 0 {
        return Err(Error::InvalidArgument(format!(
            "shape needs 0 <= m <= s and tau >= 1, got s={s} m={m} tau={tau}"
        )));
    }
    let z2t = Poly::monomial(int(1), 2 * tau);
    let one_minus_z = Poly::from_ints(&[1, -1]);
    let den = &(&Poly::from_ints(&[1, 0, -1]) * &one_minus_z.pow(2))
        - &(&Poly::from_ints(&[0, 2, -1]) * &z2t);
    let inflate = quotient(&z2t, &den, n);
    let lead = quotient(&Poly::one(), &one_minus_z, n);
    Ok(lead.mul(&inflate.pow(s as u32)).shift(m).truncate(n))
}

/// Whether every coefficient is a nonnegative integer.
pub fn is_counting_series(s: &TruncSeries) -> bool {
    s.coeffs()
        .iter()
        .all(|c| c.denom().is_one() && c >= &Rational::zero())
}
