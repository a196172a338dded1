//! Rendering of command results as text, JSON or CSV.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::config::OutputFormat;
use crate::asym::Approx;
use crate::exact::{format_rational, Poly, Rational};

/// Ascending, space-free form such as `17+92z+96z^2`.
pub fn compact_poly(p: &Poly, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if k == 0 || !mag.is_one() {
            out.push_str(&format_rational(&mag));
        }
        match k {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&format!("{var}^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `c z^a (1+z)^b (q(z))` with `c` the integer content, `q(0) != 0` and
/// `q(-1) != 0`; unit factors are left out.
pub fn factored(p: &Poly) -> String {
    let Some(v) = p.valuation() else {
        return "0".into();
    };
    let mut q = Poly::new(p.coeffs()[v..].to_vec());
    let one_plus_z = Poly::from_ints(&[1, 1]);
    let mut b = 0;
    while q.degree().unwrap_or(0) > 0 {
        let (d, r) = q.div_rem(&one_plus_z);
        if !r.is_zero() {
            break;
        }
        q = d;
        b += 1;
    }
    let mut out = String::new();
    if let Some(ints) = q.to_bigints() {
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            out.push_str(&g.to_string());
            q = q.scale(&Rational::new(BigInt::one(), g));
        }
    }
    match v {
        0 => {}
        1 => out.push('z'),
        _ => out.push_str(&format!("z^{v}")),
    }
    match b {
        0 => {}
        1 => out.push_str("(1+z)"),
        _ => out.push_str(&format!("(1+z)^{b}")),
    }
    if q != Poly::one() || out.is_empty() {
        out.push_str(&format!("({})", compact_poly(&q, "z")));
    }
    out
}

/// Decimal places that give `digits` significant digits for `x`.
fn decimals_for(x: &Rational, digits: usize) -> usize {
    let x = x.abs();
    if x.is_zero() {
        return digits;
    }
    // x in [10^e, 10^{e+1})
    let mut e: i64 = 0;
    let ten = Rational::from_integer(10.into());
    let mut p = Rational::one();
    while p > x {
        p = &p / &ten;
        e -= 1;
    }
    while &p * &ten <= x {
        p = &p * &ten;
        e += 1;
    }
    (digits as i64 - 1 - e).max(0) as usize
}

/// `(value, error bound)` rounded to `digits` significant digits.
pub fn significant(a: &Approx, digits: usize) -> (String, String) {
    let d = decimals_for(&a.value, digits);
    (a.decimal(d), a.printed_error(d))
}

/// Series coefficients from index 0 upward.
pub struct SeriesOut<'a> {
    pub command: &'a str,
    pub var: &'a str,
    pub name: String,
    pub params: Value,
    pub coeffs: Vec<Rational>,
}

impl SeriesOut<'_> {
    pub fn render(&self, format: OutputFormat) -> String {
        let strings: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        match format {
            OutputFormat::Json => {
                let v = json!({
                    "command": self.command,
                    "params": self.params,
                    "coefficients": strings,
                });
                format!("{v}\n")
            }
            OutputFormat::Csv => {
                let mut s = String::from("n,coefficient\n");
                for (n, c) in strings.iter().enumerate() {
                    s.push_str(&format!("{n},{c}\n"));
                }
                s
            }
            OutputFormat::Text => {
                let p = Poly::new(self.coeffs.clone());
                format!(
                    "{} = {} + O({}^{})\ncoefficients: {}\n",
                    self.name,
                    compact_poly(&p, self.var),
                    self.var,
                    self.coeffs.len(),
                    strings.join(", ")
                )
            }
        }
    }
}

/// Coefficients `rows[n][k]` of a series in two variables.
pub struct TableOut<'a> {
    pub command: &'a str,
    pub params: Value,
    pub row_label: &'a str,
    pub col_label: &'a str,
    pub rows: Vec<Vec<String>>,
}

impl TableOut<'_> {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let v = json!({
                    "command": self.command,
                    "params": self.params,
                    "coefficients": self.rows,
                });
                format!("{v}\n")
            }
            OutputFormat::Csv => {
                let mut s = format!("{},{},count\n", self.row_label, self.col_label);
                for (n, row) in self.rows.iter().enumerate() {
                    for (k, c) in row.iter().enumerate() {
                        s.push_str(&format!("{n},{k},{c}\n"));
                    }
                }
                s
            }
            OutputFormat::Text => {
                let mut s = format!("{} \\ {}\n", self.row_label, self.col_label);
                for (n, row) in self.rows.iter().enumerate() {
                    s.push_str(&format!("{n}: {}\n", row.join(" ")));
                }
                s
            }
        }
    }
}

/// Named quantities with error bounds.
pub fn render_quantities(
    command: &str,
    params: Value,
    rows: &[(&str, String, String)],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("command".into(), json!(command));
            obj.insert("params".into(), params);
            for (i, (name, value, err)) in rows.iter().enumerate() {
                if i == 0 {
                    obj.insert((*name).into(), json!(value));
                    obj.insert("error_bound".into(), json!(err));
                } else {
                    obj.insert((*name).into(), json!({ "value": value, "error_bound": err }));
                }
            }
            format!("{}\n", Value::Object(obj))
        }
        OutputFormat::Csv => {
            let mut s = String::from("quantity,value,error_bound\n");
            for (name, value, err) in rows {
                s.push_str(&format!("{name},{value},{err}\n"));
            }
            s
        }
        OutputFormat::Text => {
            let width = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
            rows.iter()
                .map(|(name, value, err)| format!("{name:<7} {value:<width$}  +/- {err}\n"))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn factored_forms() {
        let i2 = &(&Poly::from_ints(&[17, 92, 96]) * &Poly::from_ints(&[1, 1]).pow(4)).shift(4);
        assert_eq!(factored(i2), "z^4(1+z)^4(17+92z+96z^2)");
        let i1 = Poly::from_ints(&[0, 0, 1, 2, 1]);
        assert_eq!(factored(&i1), "z^2(1+z)^2");
        assert_eq!(factored(&Poly::from_ints(&[0, 0, 0, 0, 21, 21])), "21z^4(1+z)");
        assert_eq!(factored(&Poly::from_ints(&[3])), "3");
        assert_eq!(factored(&Poly::from_ints(&[1])), "(1)");
        assert_eq!(compact_poly(&Poly::from_ints(&[0, -1, 0, 2]), "z"), "-z+2z^3");
    }

    #[test]
    fn significant_digits() {
        let a = Approx {
            value: rat(3600498, 1000000),
            radius: rat(1, 10_000_000),
        };
        assert_eq!(significant(&a, 5), ("3.6005".to_string(), "1e-4".to_string()));
        let b = Approx {
            value: rat(12071, 100000),
            radius: rat(0, 1),
        };
        assert_eq!(significant(&b, 3).0, "0.121");
        let c = Approx {
            value: rat(-1850595, 1000000),
            radius: rat(0, 1),
        };
        assert_eq!(significant(&c, 4).0, "-1.851");
    }
}
