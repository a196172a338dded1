//! Irreducible-shadow polynomials `I_g(z)`.
//!
//! `I_g` is obtained by inverting the genus expansion of
//! `C(z,t) - z C(z,t)^2 - I(z C^2 / (1 - z C^2), t) = 1` one power of `t` at a
//! time. The substitution `z -> theta(z) = z(z+1)/(2z+1)^2` undoes
//! `y = z C_0^2 / (1 - z C_0^2)`, so with `C_k = C_k(theta(z))`
//!
//! ```text
//! I_g(z) = C_g - theta * sum_{i=0..g} C_i C_{g-i}
//!        - sum_{j=1..g-1} [t^{g-j}] I_j(theta B^2 / (1 - theta B^2)),
//! B = sum_{k=0..g-j} C_k t^k.
//! ```

use num_traits::Zero;

use crate::cache::DiskCache;
use crate::error::{Error, Result};
use crate::exact::{int, BiTruncSeries, Poly, TruncSeries};
use crate::hz;

/// `I_1, ..., I_{g_max}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowPolySet {
    polys: Vec<Poly>,
}

impl ShadowPolySet {
    /// `polys[g - 1]` is taken as `I_g`.
    pub fn from_polys(polys: Vec<Poly>) -> Self {
        ShadowPolySet { polys }
    }

    pub fn g_max(&self) -> usize {
        self.polys.len()
    }

    /// `I_g` for `1 <= g <= g_max`.
    pub fn get(&self, g: usize) -> &Poly {
        &self.polys[g - 1]
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// `sum_g I_g` restricted to `g <= gamma`.
    pub fn sum_up_to(&self, gamma: usize) -> Poly {
        self.polys[..gamma].iter().fold(Poly::zero(), |acc, p| &acc + p)
    }

    pub fn truncated(&self, g_max: usize) -> ShadowPolySet {
        ShadowPolySet {
            polys: self.polys[..g_max].to_vec(),
        }
    }
}

/// `z(z+1)/(2z+1)^2` to order `n`.
pub fn theta_series(n: usize) -> TruncSeries {
    let den = TruncSeries::from_poly(&Poly::from_ints(&[1, 2]), n).square();
    let num = TruncSeries::from_poly(&Poly::from_ints(&[0, 1, 1]), n);
    num.div(&den).expect("unit constant term")
}

/// `C_k(theta(z))` for `k = 0..=g`, each to order `n`.
pub fn c_of_theta(g: usize, n: usize) -> Result<Vec<TruncSeries>> {
    let theta = theta_series(n);
    let table = hz::hz_table(g, n)?;
    (0..=g)
        .map(|k| TruncSeries::from_bigints(table.row(k).to_vec()).compose(&theta))
        .collect()
}

/// Computes `I_g` given `I_1..I_{g-1}` in `lower`.
pub fn i_poly(g: usize, lower: &[Poly]) -> Result<Poly> {
    if g == 0 || lower.len() < g - 1 {
        return Err(Error::InvalidArgument(format!(
            "I_{g} needs I_1..I_{} first",
            g.saturating_sub(1)
        )));
    }
    let n = 6 * g + 6;
    let theta = theta_series(n);
    let c = c_of_theta(g, n)?;

    let mut acc = c[g].clone();
    let mut conv = TruncSeries::zero(n);
    for i in 0..=g {
        conv = &conv + &c[i].mul(&c[g - i]);
    }
    acc = &acc - &theta.mul(&conv);

    for (j, ij) in lower.iter().enumerate().take(g - 1).map(|(k, p)| (k + 1, p)) {
        let t = g - j;
        let b = BiTruncSeries::new(c[..=t].to_vec());
        let tb2 = b.mul(&b).mul(&BiTruncSeries::from_base(&theta, t));
        let y = tb2.div(&tb2.one_minus())?;
        let term = BiTruncSeries::compose_poly(ij, &y)?;
        acc = &acc - term.level(t);
    }

    for h in (0..2 * g).chain(6 * g - 1..=n) {
        if !acc.coeff(h).is_zero() {
            return Err(Error::PolynomialityViolation(format!(
                "I_{g} has nonzero coefficient at z^{h}"
            )));
        }
    }
    let p = acc.truncate(6 * g - 2).to_poly();
    if !p.is_integral() || p.coeffs().iter().any(|c| c < &int(0)) {
        return Err(Error::NonIntegerCoefficient(format!("I_{g}")));
    }
    Ok(p)
}

/// `I_1..I_{g_max}`, read from and written to `cache` when one is given.
pub fn shadow_set(g_max: usize, cache: Option<&DiskCache>) -> Result<ShadowPolySet> {
    let mut polys: Vec<Poly> = Vec::with_capacity(g_max);
    for g in 1..=g_max {
        let cached = match cache {
            Some(c) => c.load_shadow(g)?,
            None => None,
        };
        let p = match cached {
            Some(p) => p,
            None => {
                let p = i_poly(g, &polys)?;
                if let Some(c) = cache {
                    c.store_shadow(g, &p)?;
                }
                p
            }
        };
        polys.push(p);
    }
    Ok(ShadowPolySet { polys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn theta_prefix() {
        let t = theta_series(5);
        let want: Vec<Rational> = [0, 1, -3, 8, -20, 48].iter().map(|&x| int(x)).collect();
        assert_eq!(t.coeffs(), want.as_slice());
    }

    #[test]
    fn theta_inverts_catalan_substitution() {
        let n = 12;
        let c0 = hz::c_series(0, n).unwrap();
        let zc2 = c0.square().shift(1);
        let y = zc2.div(&(&TruncSeries::one(n) - &zc2)).unwrap();
        assert_eq!(theta_series(n).compose(&y).unwrap(), TruncSeries::var(n));
    }

    #[test]
    fn first_polys() {
        let set = shadow_set(3, None).unwrap();
        assert_eq!(set.get(1), &Poly::from_ints(&[0, 0, 1, 2, 1]));
        let i2 = Poly::from_ints(&[0, 1]).pow(4)
            * Poly::from_ints(&[1, 1]).pow(4)
            * Poly::from_ints(&[17, 92, 96]);
        assert_eq!(set.get(2), &i2);
        assert_eq!(set.get(3).coeff(6), int(1259));
        for g in 1..=3 {
            assert_eq!(set.get(g).valuation(), Some(2 * g));
            assert_eq!(set.get(g).degree(), Some(6 * g - 2));
        }
    }

    #[test]
    fn c_of_theta_two_ways() {
        let n = 20;
        let c = c_of_theta(4, n).unwrap();
        let two_z_plus_one = TruncSeries::from_poly(&Poly::from_ints(&[1, 2]), n);
        let c0 = two_z_plus_one
            .div(&TruncSeries::from_poly(&Poly::from_ints(&[1, 1]), n))
            .unwrap();
        assert_eq!(c[0], c0);
        let theta = theta_series(n);
        for k in 1..=4 {
            let q = hz::q_poly(k).unwrap();
            let via_q = TruncSeries::compose_poly(&q, &theta)
                .unwrap()
                .mul(&two_z_plus_one.pow(6 * k as u32 - 1));
            assert_eq!(c[k], via_q, "k={k}");
        }
    }

    #[test]
    fn forward_identity() {
        // C - z C^2 - I(z C^2 / (1 - z C^2), t) = 1 through t^3, z^16
        let (gm, n) = (3, 16);
        let set = shadow_set(gm, None).unwrap();
        let table = hz::hz_table(gm, n).unwrap();
        let c = BiTruncSeries::new((0..=gm).map(|g| TruncSeries::from_bigints(table.row(g).to_vec())).collect());
        let z = BiTruncSeries::from_base(&TruncSeries::var(n), gm);
        let zc2 = z.mul(&c.mul(&c));
        let y = zc2.div(&zc2.one_minus()).unwrap();
        let mut lhs = &c - &zc2;
        let mut t_pow = BiTruncSeries::one(gm, n);
        for g in 1..=gm {
            t_pow = t_pow.shift_t();
            let ig = BiTruncSeries::compose_poly(set.get(g), &y).unwrap();
            lhs = &lhs - &ig.mul(&t_pow);
        }
        assert!(lhs.is_one());
    }

    #[test]
    fn divisibility_by_z_and_one_plus_z() {
        let set = shadow_set(4, None).unwrap();
        for g in 1..=4 {
            let f = Poly::from_ints(&[0, 1, 1]).pow(2 * g as u32);
            let (_, r) = set.get(g).div_rem(&f);
            assert!(r.is_zero(), "g={g}");
        }
    }
}
