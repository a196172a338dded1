//! Fixed-point decimal helpers on top of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

pub fn pow10(d: usize) -> BigInt {
    BigInt::from(10u32).pow(d as u32)
}

/// `10^{-d}`.
pub fn ten_to_minus(d: usize) -> Rational {
    Rational::new(BigInt::one(), pow10(d))
}

/// `floor(q 10^d) / 10^d`.
pub fn floor_to(q: &Rational, d: usize) -> Rational {
    let s = pow10(d);
    Rational::new((q * Rational::from_integer(s.clone())).floor().to_integer(), s)
}

/// `sqrt(q)` to within `10^{-d}`, from below.
pub fn sqrt_approx(q: &Rational, d: usize) -> Rational {
    assert!(!q.is_negative(), "square root of a negative number");
    let scaled = (q.numer() * pow10(2 * d)) / q.denom();
    Rational::new(scaled.sqrt(), pow10(d))
}

/// `arctan(1/x) 10^d` as a truncated integer, for integer `x > 1`.
fn arctan_inv_scaled(x: u32, d: usize) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = pow10(d) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// The circle constant to within `10^{-d}`, by Machin's formula.
pub fn pi_approx(d: usize) -> Rational {
    let guard = d + 10;
    let scaled = BigInt::from(16) * arctan_inv_scaled(5, guard) - BigInt::from(4) * arctan_inv_scaled(239, guard);
    floor_to(&Rational::new(scaled, pow10(guard)), d)
}

/// Decimal string rounded to `d` places.
pub fn to_decimal(q: &Rational, d: usize) -> String {
    let s = pow10(d);
    let scaled = (q * Rational::from_integer(s.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let (int_part, frac) = scaled.abs().div_rem(&s);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(d - frac.len()))
}

/// Smallest power of ten that is at least `r`, as `1e-k` (or `1e0`, `1e1`, ...).
pub fn error_bound_string(r: &Rational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let mut k: i64 = 0;
    let ten = Rational::from_integer(10.into());
    let mut p = Rational::one();
    while &p / &ten >= *r {
        p = &p / &ten;
        k -= 1;
    }
    while p < *r {
        p = &p * &ten;
        k += 1;
    }
    format!("1e{k}")
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Number of decimal places needed to resolve `precision`.
pub fn digits_for(precision: &Rational) -> usize {
    let mut d = 0;
    while ten_to_minus(d) > *precision {
        d += 1;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&rat(1, 100), 3), "0.010");
        assert_eq!(to_decimal(&int(7), 0), "7");
        assert_eq!(error_bound_string(&rat(1, 1000)), "1e-3");
        assert_eq!(error_bound_string(&rat(3, 1000)), "1e-2");
        assert_eq!(error_bound_string(&int(5)), "1e1");
    }

    #[test]
    fn constants() {
        assert_eq!(to_decimal(&pi_approx(30), 30), "3.141592653589793238462643383279");
        let s = sqrt_approx(&int(2), 20);
        assert_eq!(to_decimal(&s, 19), "1.4142135623730950488");
        assert!(&s * &s <= int(2));
    }
}
