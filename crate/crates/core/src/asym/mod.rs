//! Singularity analysis of algebraic generating functions.
//!
//! For `Phi(u, y) = 0` with a square-root dominant singularity at `u = rho`,
//! `y(u) = pi + lambda (rho - u)^{1/2} + O(rho - u)` and
//! `[u^n] y ~ c n^{-3/2} rho^{-n}` with
//! `lambda = -sqrt(2 Phi_u / Phi_yy)` and `c = -lambda sqrt(rho) / (2 sqrt(circle constant))`.
//! `rho` is a positive root of `res_y(Phi, Phi_y)`, selected by agreement with
//! the coefficient-ratio estimate.

pub mod numeric;
pub mod resultant;
pub mod roots;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, BiPoly, Poly, Rational};
use crate::gamma::{h_coefficients, GammaSystem, StructureParams};

pub use resultant::{discriminant_resultant, resultant, sylvester_resultant};
pub use roots::{count_roots, isolate_positive_roots, RootEnclosure};

use numeric::{digits_for, pi_approx, sqrt_approx, ten_to_minus, to_f64};

/// Terms of the series used for the coefficient-ratio estimate of `rho`.
pub const RATIO_TERMS: usize = 120;

/// A value known to lie within `radius` of `value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approx {
    pub value: Rational,
    pub radius: Rational,
}

impl Approx {
    fn from_bounds(a: &Rational, b: &Rational) -> Approx {
        let two = Rational::from_integer(2.into());
        Approx {
            value: (a + b) / &two,
            radius: (a - b).abs() / &two,
        }
    }

    /// Midpoint of the enclosure, with half its width as radius.
    pub fn from_enclosure(e: &RootEnclosure) -> Approx {
        Approx::from_bounds(&e.low, &e.high)
    }

    fn widen(self, extra: &Rational) -> Approx {
        Approx {
            value: self.value,
            radius: self.radius + extra,
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.value)
    }

    /// Rounded to `digits` places.
    pub fn decimal(&self, digits: usize) -> String {
        numeric::to_decimal(&self.value, digits)
    }

    /// Error bound for the value printed with `digits` places.
    pub fn printed_error(&self, digits: usize) -> String {
        let half_ulp = ten_to_minus(digits) / Rational::from_integer(2.into());
        numeric::error_bound_string(&(&self.radius + &half_ulp))
    }
}

/// Dominant-singularity data of one algebraic series.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymData {
    pub discriminant: Poly,
    pub ratio_estimate: f64,
    pub rho: RootEnclosure,
    pub pi_val: Approx,
    pub lambda_val: Approx,
    pub c_val: Approx,
    pub growth: Approx,
}

/// `rho ~ (h(n-1)/h(n)) ((n-1)/n)^{3/2}` from the last two coefficients.
pub fn ratio_estimate(coeffs: &[BigInt]) -> f64 {
    let n = coeffs.len() - 1;
    let r = Rational::new(coeffs[n - 1].clone(), coeffs[n].clone());
    let nf = n as f64;
    to_f64(&r) * ((nf - 1.0) / nf).powf(1.5)
}

/// Partial sum `sum h_k x^k` in floating point.
fn partial_sum_f64(coeffs: &[BigInt], x: f64) -> f64 {
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + to_f64(&Rational::from_integer(c.clone())))
}

fn sign(p: &Poly, x: &Rational) -> Ordering {
    p.eval(x).cmp(&Rational::zero())
}

/// Bisects a sign change of `p` in `[a, b]` down to width `w`.
fn bisect_bracket(p: &Poly, mut a: Rational, mut b: Rational, w: &Rational) -> (Rational, Rational) {
    let sa = sign(p, &a);
    let two = Rational::from_integer(2.into());
    while &b - &a > *w {
        let m = (&a + &b) / &two;
        match sign(p, &m) {
            Ordering::Equal => return (m.clone(), m),
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    (a, b)
}

/// Root of `Phi_y(u, .)` that is also (nearly) a root of `Phi(u, .)`,
/// scanning upward from `start`.
fn double_root_near(phi: &BiPoly, u: &Rational, start: &Rational, w: &Rational, tol: &Rational) -> Option<(Rational, Rational)> {
    let p = phi.eval_u(u);
    let q = phi.derivative_x().eval_u(u);
    let step = rat(1, 1024);
    let mut a = start.clone();
    let mut sa = sign(&q, &a);
    for _ in 0..64 * 1024 {
        let b = &a + &step;
        let sb = sign(&q, &b);
        if sa == Ordering::Equal || sb != sa {
            let (lo, hi) = if sa == Ordering::Equal {
                (a.clone(), a.clone())
            } else {
                bisect_bracket(&q, a.clone(), b.clone(), w)
            };
            if p.eval(&lo).abs() < *tol {
                return Some((lo, hi));
            }
        }
        a = b;
        sa = sb;
    }
    None
}

/// Analysis of `phi(u, y) = 0` whose power-series root has the given
/// leading coefficients; `rho` is refined to width `precision`.
pub fn analyze(phi: &BiPoly, coeffs: &[BigInt], precision: &Rational) -> Result<AsymData> {
    if coeffs.len() < 3 {
        return Err(Error::InvalidArgument("need at least three coefficients".into()));
    }
    let discriminant = discriminant_resultant(phi);
    let estimate = ratio_estimate(coeffs);
    let coarse = rat(1, 100_000_000);
    let near: Vec<RootEnclosure> = isolate_positive_roots(&discriminant)
        .into_iter()
        .map(|e| e.refine(&coarse))
        .filter(|e| (to_f64(&e.midpoint()) - estimate).abs() < 1e-3)
        .collect();
    let rho = match near.as_slice() {
        [one] => one.refine(precision),
        [] => {
            return Err(Error::NoConsistentRoot(format!(
                "no positive root of the discriminant within 1e-3 of {estimate}"
            )))
        }
        _ => {
            return Err(Error::NoConsistentRoot(format!(
                "{} discriminant roots within 1e-3 of {estimate}",
                near.len()
            )))
        }
    };

    let digits = digits_for(precision) + 5;
    let fine = ten_to_minus(digits);
    // Phi vanishes to first order in the distance to rho
    let tol = ten_to_minus((digits_for(precision) / 2).max(2));

    // start below pi: the series evaluated slightly inside the disc
    let start_f = partial_sum_f64(coeffs, 0.999 * to_f64(&rho.low));
    let start = Rational::from_float(start_f - 1e-3).unwrap_or_else(Rational::zero);
    let at_lo = double_root_near(phi, &rho.low, &start, &fine, &tol)
        .ok_or_else(|| Error::ConditionViolated("no double root of Phi near the series value".into()))?;
    // same branch at the other end: search outward around the first root
    let q_hi = phi.derivative_x().eval_u(&rho.high);
    let mut w = precision.clone();
    let at_hi = loop {
        let (a, b) = (&at_lo.0 - &w, &at_lo.1 + &w);
        if sign(&q_hi, &a) != sign(&q_hi, &b) || sign(&q_hi, &a) == Ordering::Equal {
            break bisect_bracket(&q_hi, a, b, &fine);
        }
        w = &w * Rational::from_integer(2.into());
        if w > rat(1, 10) {
            return Err(Error::ConditionViolated("branch lost between enclosure ends".into()));
        }
    };

    let lo = [&at_lo.0, &at_lo.1, &at_hi.0, &at_hi.1].into_iter().min().unwrap().clone();
    let hi = [&at_lo.0, &at_lo.1, &at_hi.0, &at_hi.1].into_iter().max().unwrap().clone();
    let pi_val = Approx::from_bounds(&lo, &hi);

    let phi_u = phi.derivative_u();
    let phi_xx = phi.derivative_x().derivative_x();
    let check = |u: &Rational, y: &Rational| -> Result<(Rational, Rational)> {
        let pu = phi_u.eval(u, y);
        let pxx = phi_xx.eval(u, y);
        let margin = rat(1, 1_000_000);
        if pu.abs() < margin || pxx.abs() < margin {
            return Err(Error::ConditionViolated(format!(
                "Phi_u = {} or Phi_yy = {} is too close to zero",
                to_f64(&pu),
                to_f64(&pxx)
            )));
        }
        if phi.eval(u, y).abs() > tol || phi.derivative_x().eval(u, y).abs() > tol {
            return Err(Error::ConditionViolated("Phi or Phi_y does not vanish at (rho, pi)".into()));
        }
        Ok((pu, pxx))
    };

    let pi_const = pi_approx(digits);
    let constants = |u: &Rational, y: &Rational| -> Result<(Rational, Rational)> {
        let (pu, pxx) = check(u, y)?;
        let r = Rational::from_integer(2.into()) * pu / pxx;
        if !r.is_positive() {
            return Err(Error::ConditionViolated("2 Phi_u / Phi_yy is not positive".into()));
        }
        let lambda = -sqrt_approx(&r, digits);
        let c = -&lambda * sqrt_approx(u, digits)
            / (Rational::from_integer(2.into()) * sqrt_approx(&pi_const, digits));
        Ok((lambda, c))
    };
    let (l1, c1) = constants(&rho.low, &at_lo.0)?;
    let (l2, c2) = constants(&rho.high, &at_hi.0)?;
    let rounding = ten_to_minus(digits - 2);
    let lambda_val = Approx::from_bounds(&l1, &l2).widen(&rounding);
    let c_val = Approx::from_bounds(&c1, &c2).widen(&rounding);
    let growth = Approx::from_bounds(&rho.low.recip(), &rho.high.recip());

    Ok(AsymData {
        discriminant,
        ratio_estimate: estimate,
        rho,
        pi_val,
        lambda_val,
        c_val,
        growth,
    })
}

/// Dominant singularity of `H_gamma`.
pub fn dominant_singularity(sys: &GammaSystem, precision: &Rational) -> Result<AsymData> {
    let coeffs = h_coefficients(sys, RATIO_TERMS);
    analyze(&sys.p, &coeffs, precision)
}

/// Growth rate of the structure series obtained by composing `H_gamma` with
/// the `tau` argument: `1/z` for the smallest positive `z` with
/// `theta(z) = rho`, which must come before every pole of `theta`.
pub fn structure_growth(data: &AsymData, tau: usize, with_one_arcs: bool, precision: &Rational) -> Result<Approx> {
    let params = StructureParams::new(tau, with_one_arcs)?;
    let g = params.theta_num.gcd(&params.theta_den);
    let num = params.theta_num.exact_div(&g);
    let den = params.theta_den.exact_div(&g);
    let first_pole = isolate_positive_roots(&den).into_iter().next();

    let mut ends = Vec::new();
    for r in [&data.rho.low, &data.rho.high] {
        let f = &num - &den.scale(r);
        if f.gcd(&f.derivative()).degree() != Some(0) {
            return Err(Error::ConditionViolated(format!(
                "theta(z) = rho has a repeated root for tau={tau}"
            )));
        }
        let mut root = isolate_positive_roots(&f)
            .into_iter()
            .next()
            .ok_or_else(|| Error::NoRootBeforePole(format!("theta(z) = rho has no positive root for tau={tau}")))?;
        if let Some(pole) = &first_pole {
            let mut pole = pole.clone();
            // separate the two enclosures
            while root.high >= pole.low {
                if root.low >= pole.high {
                    return Err(Error::NoRootBeforePole(format!(
                        "first pole of theta precedes the root for tau={tau}"
                    )));
                }
                root = root.bisect();
                pole = pole.bisect();
            }
        }
        let root = root.refine(&(precision / Rational::from_integer(100.into())));
        ends.push(root.low.recip());
        ends.push(root.high.recip());
    }
    let lo = ends.iter().min().unwrap();
    let hi = ends.iter().max().unwrap();
    Ok(Approx::from_bounds(lo, hi))
}

/// `h(n) / (c n^{-3/2} rho^{-n})`.
pub fn asym_ratio(data: &AsymData, coeffs: &[BigInt], n: usize) -> Rational {
    let rho = data.rho.midpoint();
    let nn = Rational::from_integer(n.into());
    let digits = 40;
    let n32 = &nn * sqrt_approx(&nn, digits);
    let h = Rational::from_integer(coeffs[n].clone());
    let r = h * num_traits::pow(rho, n) * n32 / &data.c_val.value;
    numeric::floor_to(&r, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::gamma::build_p;
    use crate::hz;
    use crate::shadows::shadow_set;

    fn catalan() -> (BiPoly, Vec<BigInt>) {
        let phi = BiPoly::from_terms(&[(-1, 0, 0), (1, 0, 1), (-1, 1, 2)]);
        let coeffs = hz::c_series(0, 400).unwrap().to_bigints().unwrap();
        (phi, coeffs)
    }

    #[test]
    fn catalan_instance() {
        let (phi, coeffs) = catalan();
        let d = analyze(&phi, &coeffs[..=RATIO_TERMS], &ten_to_minus(30)).unwrap();
        assert!(d.rho.contains(&rat(1, 4)) || d.rho.low == rat(1, 4) || d.rho.high == rat(1, 4));
        assert!(d.rho.width() <= ten_to_minus(30));
        assert!((&d.pi_val.value - int(2)).abs() < ten_to_minus(25));
        assert!((&d.lambda_val.value + int(4)).abs() < ten_to_minus(25));
        let c = 1.0 / std::f64::consts::PI.sqrt();
        assert!((d.c_val.to_f64() - c).abs() < 1e-12);
        assert!((d.growth.to_f64() - 4.0).abs() < 1e-12);
        let r400 = to_f64(&asym_ratio(&d, &coeffs, 400));
        assert!((r400 - 1.0).abs() < 0.02, "{r400}");
    }

    #[test]
    fn genus_one_constants() {
        let sys = build_p(1, &shadow_set(1, None).unwrap()).unwrap();
        let d = dominant_singularity(&sys, &ten_to_minus(30)).unwrap();
        assert!((to_f64(&d.rho.midpoint()) - 0.12071097737191352548).abs() < 1e-15);
        assert!((d.pi_val.to_f64() - 1.3715373383402158).abs() < 1e-12);
        assert!(d.lambda_val.value.is_negative());
        assert!(d.c_val.value.is_positive());
        let tau1 = structure_growth(&d, 1, false, &ten_to_minus(10)).unwrap();
        assert!((tau1.to_f64() - 3.600498080).abs() < 1e-8, "{}", tau1.to_f64());
        let tau2 = structure_growth(&d, 2, false, &ten_to_minus(10)).unwrap();
        assert!((tau2.to_f64() - 2.275917830).abs() < 1e-8);
        let t1 = structure_growth(&d, 1, true, &ten_to_minus(10)).unwrap();
        assert!((t1.to_f64() - 3.878237431).abs() < 1e-8);
    }

    #[test]
    fn refinement_stays_nested() {
        let (phi, coeffs) = catalan();
        let coarse = analyze(&phi, &coeffs[..=RATIO_TERMS], &ten_to_minus(10)).unwrap();
        let finer = coarse.rho.refine(&ten_to_minus(20));
        assert!(coarse.rho.encloses(&finer));
    }
}
