//! Resultants with respect to `X` of polynomials in `Q[u][X]`.
//!
//! The main route is the subresultant pseudo-remainder sequence, run over
//! `Z[u]` after clearing denominators. [`sylvester_resultant`] computes the
//! same value by fraction-free elimination on the Sylvester matrix and is
//! kept as an independent check for small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{to_common_denominator, BiPoly, Poly, Rational};

/// Dense polynomial in `u` with integer coefficients, no trailing zeros.
type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    trim(out)
}

fn zneg(a: &ZPoly) -> ZPoly {
    a.iter().map(|x| -x).collect()
}

fn zpow(a: &ZPoly, e: usize) -> ZPoly {
    let mut out = vec![BigInt::one()];
    for _ in 0..e {
        out = zmul(&out, a);
    }
    out
}

/// `a / b` in `Z[u]`; the division must be exact.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    assert!(a.len() > db, "inexact division in Z[u]");
    let lead = &b[db];
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, r) = rem[k + db].div_rem(lead);
        assert!(r.is_zero(), "inexact division in Z[u]");
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                rem[k + i] -= &c * bc;
            }
        }
        q[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact division in Z[u]");
    trim(q)
}

/// Polynomial in `X` over `Z[u]`, no trailing zero coefficients.
type ZXPoly = Vec<ZPoly>;

fn deg(p: &ZXPoly) -> usize {
    p.len() - 1
}

fn lc(p: &ZXPoly) -> &ZPoly {
    p.last().expect("nonzero polynomial")
}

fn xtrim(mut p: ZXPoly) -> ZXPoly {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
    p
}

/// Pseudo-remainder: `lc(b)^{deg a - deg b + 1} a mod b`.
fn prem(a: &ZXPoly, b: &ZXPoly) -> ZXPoly {
    let db = deg(b);
    let lb = lc(b).clone();
    let mut r = a.clone();
    let mut steps = 0;
    let total = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let lr = lc(&r).clone();
        let shift = dr - db;
        let mut next: ZXPoly = r.iter().map(|c| zmul(c, &lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            let t = zmul(&lr, bc);
            next[i + shift] = zsub(&next[i + shift], &t);
        }
        r = xtrim(next);
        steps += 1;
    }
    if steps < total {
        let f = zpow(&lb, total - steps);
        r = r.iter().map(|c| zmul(c, &f)).collect();
    }
    r
}

/// `res_X(a, b)` over `Z[u]` by the subresultant algorithm.
fn zresultant(a: ZXPoly, b: ZXPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (mut a, mut b) = (a, b);
    let mut s = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return negate_if(zpow(&b[0], deg(&a)), s);
    }
    let mut g: ZPoly = vec![BigInt::one()];
    let mut h: ZPoly = vec![BigInt::one()];
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = !s;
        }
        let r = prem(&a, &b);
        a = b;
        let divisor = zmul(&g, &zpow(&h, delta));
        b = r.iter().map(|c| zdiv_exact(c, &divisor)).collect();
        g = lc(&a).clone();
        h = if delta == 0 {
            h
        } else {
            zdiv_exact(&zpow(&g, delta), &zpow(&h, delta - 1))
        };
        if b.is_empty() {
            return Vec::new();
        }
        if deg(&b) == 0 {
            let da = deg(&a);
            let num = zpow(&b[0], da);
            let out = if da == 0 {
                num
            } else {
                zdiv_exact(&num, &zpow(&h, da - 1))
            };
            return negate_if(out, s);
        }
    }
}

fn negate_if(p: ZPoly, negate: bool) -> ZPoly {
    if negate {
        zneg(&p)
    } else {
        p
    }
}

/// Clears denominators: returns the integral version and the scale factor.
fn to_integral(p: &BiPoly) -> (ZXPoly, BigInt) {
    let all: Vec<Rational> = p.coeffs().iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
    let (_, den) = to_common_denominator(&all);
    let d = Rational::from_integer(den.clone());
    let z = p
        .coeffs()
        .iter()
        .map(|c| trim(c.scale(&d).to_bigints().expect("scaled to integers")))
        .collect();
    (z, den)
}

/// `res_X(p, q)` as a polynomial in `u`.
pub fn resultant(p: &BiPoly, q: &BiPoly) -> Poly {
    if p.is_zero() || q.is_zero() {
        return Poly::zero();
    }
    let (zp, dp) = to_integral(p);
    let (zq, dq) = to_integral(q);
    let (m, n) = (deg(&zp), deg(&zq));
    let r = Poly::from_bigints(zresultant(zp, zq));
    // res(dp p, dq q) = dp^n dq^m res(p, q)
    let scale = Rational::new(BigInt::one(), dp.pow(n as u32) * dq.pow(m as u32));
    r.scale(&scale)
}

/// `res_X(p, q)` as the determinant of the Sylvester matrix, by Bareiss
/// fraction-free elimination over `Q[u]`.
pub fn sylvester_resultant(p: &BiPoly, q: &BiPoly) -> Poly {
    let (Some(m), Some(n)) = (p.degree_x(), q.degree_x()) else {
        return Poly::zero();
    };
    let size = m + n;
    if size == 0 {
        return Poly::one();
    }
    let mut a = vec![vec![Poly::zero(); size]; size];
    // rows 0..n: shifted copies of p; rows n..n+m: shifted copies of q,
    // coefficients from the highest power of X down
    for i in 0..n {
        for k in 0..=m {
            a[i][i + k] = p.coeff_x(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            a[n + i][i + k] = q.coeff_x(n - k);
        }
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..size {
        let Some(piv) = (k..size).find(|&r| !a[r][k].is_zero()) else {
            return Poly::zero();
        };
        if piv != k {
            a.swap(piv, k);
            negate = !negate;
        }
        for i in (k + 1)..size {
            for j in (k + 1)..size {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev);
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `res_X(p, dp/dX)`.
pub fn discriminant_resultant(p: &BiPoly) -> Poly {
    resultant(p, &p.derivative_x())
}
