//! Reference values shipped with the crate (`fixtures/reference.toml`).

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Poly, Rational};

const REFERENCE: &str = include_str!("../fixtures/reference.toml");

/// `multiplier * z^z_power * (1+z)^one_plus_z_power * cofactor(z)`.
#[derive(Clone, Debug, Deserialize)]
pub struct FactoredPoly {
    pub genus: usize,
    pub multiplier: String,
    pub z_power: usize,
    #[serde(default)]
    pub one_plus_z_power: usize,
    pub cofactor: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GrowthRate {
    pub tau: usize,
    pub gamma: usize,
    pub with_one_arcs: bool,
    pub value: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Reference {
    pub q: Vec<FactoredPoly>,
    pub i: Vec<FactoredPoly>,
    pub growth: Vec<GrowthRate>,
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

impl FactoredPoly {
    pub fn expand(&self) -> Result<Poly> {
        let cof = self.cofactor.iter().map(|c| parse_int(c)).collect::<Result<Vec<_>>>()?;
        let m = Rational::from_integer(parse_int(&self.multiplier)?);
        let p = &Poly::from_bigints(cof) * &Poly::from_ints(&[1, 1]).pow(self.one_plus_z_power as u32);
        Ok(p.scale(&m).shift(self.z_power))
    }
}

impl GrowthRate {
    pub fn rational(&self) -> Result<Rational> {
        let (int_part, frac) = self.value.split_once('.').unwrap_or((&self.value, ""));
        let den = format!("1{}", "0".repeat(frac.len()));
        parse_rational(&format!("{int_part}{frac}/{den}"))
    }
}

impl Reference {
    pub fn q_poly(&self, g: usize) -> Option<&FactoredPoly> {
        self.q.iter().find(|f| f.genus == g)
    }

    pub fn i_poly(&self, g: usize) -> Option<&FactoredPoly> {
        self.i.iter().find(|f| f.genus == g)
    }
}

/// The parsed reference file.
pub fn reference() -> &'static Reference {
    static CELL: OnceLock<Reference> = OnceLock::new();
    CELL.get_or_init(|| toml::from_str(REFERENCE).expect("fixtures/reference.toml is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn parses_and_expands() {
        let r = reference();
        assert_eq!(r.q.len(), 5);
        assert_eq!(r.i.len(), 8);
        assert_eq!(r.growth.len(), 6);
        let i2 = r.i_poly(2).unwrap().expand().unwrap();
        assert_eq!(i2, Poly::from_ints(&[0, 0, 0, 0, 17, 160, 566, 1004, 961, 476, 96]));
        let q2 = r.q_poly(2).unwrap().expand().unwrap();
        assert_eq!(q2, Poly::from_ints(&[0, 0, 0, 0, 21, 21]));
        let i8 = r.i_poly(8).unwrap().expand().unwrap();
        assert_eq!(i8.degree(), Some(46));
        assert_eq!(r.growth[0].rational().unwrap(), rat(36005, 10000));
    }
}
