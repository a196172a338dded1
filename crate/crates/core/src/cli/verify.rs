//! Cross-checks of the symbolic results against the brute-force oracles and
//! the shipped reference values.
//!
//! Items run in parallel; the report lists them sorted by id and carries no
//! timings, so it is byte-identical from run to run.

use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::config::{Config, OutputFormat};
use crate::asym::numeric::{to_decimal, to_f64};
use crate::asym::{analyze, asym_ratio, dominant_singularity, structure_growth, AsymData};
use crate::exact::{rat, Poly, Rational};
use crate::fixtures::reference;
use crate::gamma::{build_p, g_series, gtilde_series, h_coefficients, h_series, s_series, GammaSystem};
use crate::hz::{self, hz_table, HZTable};
use crate::oracle::{double_factorial_odd, Oracle};
use crate::shadows::{shadow_set, ShadowPolySet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A checked conjecture that does not hold; not an error.
    Warn,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl Item {
    fn new(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Item {
        Item {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn failed(id: impl Into<String>, detail: impl std::fmt::Display) -> Item {
        Item::new(id, false, detail.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub level: Level,
    pub items: Vec<Item>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.items.iter().filter(|i| i.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn item(&self, id: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let v = json!({
                    "level": self.level,
                    "items": self.items,
                    "passed": self.count(Status::Pass),
                    "failed": self.count(Status::Fail),
                    "warnings": self.count(Status::Warn),
                });
                format!("{v}\n")
            }
            OutputFormat::Csv => {
                let mut s = String::from("id,status,detail\n");
                for i in &self.items {
                    let status = serde_json::to_value(i.status).unwrap();
                    s.push_str(&format!("{},{},\"{}\"\n", i.id, status.as_str().unwrap(), i.detail.replace('"', "\"\"")));
                }
                s
            }
            OutputFormat::Text => {
                let mut s = String::new();
                for i in &self.items {
                    let tag = match i.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Warn => "WARN",
                    };
                    s.push_str(&format!("{tag} {}: {}\n", i.id, i.detail));
                }
                s.push_str(&format!(
                    "{} passed, {} failed, {} warnings\n",
                    self.count(Status::Pass),
                    self.count(Status::Fail),
                    self.count(Status::Warn)
                ));
                s
            }
        }
    }
}

/// Problem sizes per level.
struct Bounds {
    gamma: usize,
    matching_arcs: usize,
    shadow_arcs: usize,
    length: usize,
    shape_arcs: usize,
    fixture_genus: usize,
    equation_gamma: usize,
}

impl Bounds {
    fn of(level: Level) -> Bounds {
        match level {
            Level::Quick => Bounds {
                gamma: 1,
                matching_arcs: 7,
                shadow_arcs: 7,
                length: 10,
                shape_arcs: 5,
                fixture_genus: 3,
                equation_gamma: 1,
            },
            Level::Full => Bounds {
                gamma: 2,
                matching_arcs: 9,
                shadow_arcs: 8,
                length: 12,
                shape_arcs: 7,
                fixture_genus: 8,
                equation_gamma: 3,
            },
        }
    }
}

/// Allowed distance between a computed growth rate and a four-decimal
/// reference value.
pub fn growth_tolerance() -> Rational {
    rat(5, 100_000)
}

/// Order to which `P(u, H) = 0` is checked.
pub const EQUATION_ORDER: usize = 60;

struct Inputs {
    oracle: Oracle,
    config: Config,
    shadows: Result<ShadowPolySet, String>,
}

impl Inputs {
    fn system(&self, gamma: usize) -> Result<GammaSystem, String> {
        let s = self.shadows.as_ref().map_err(Clone::clone)?;
        build_p(gamma, s).map_err(|e| e.to_string())
    }
}

fn big(n: &BigUint) -> BigInt {
    BigInt::from(n.clone())
}

fn hz_item(inp: &Inputs, m_max: usize) -> Vec<Item> {
    let id = "hz.oracle";
    let g_max = m_max / 2;
    let cache = inp.config.cache();
    let table: HZTable = match cache.load_hz(g_max, m_max) {
        Ok(Some(t)) => t,
        Ok(None) => match hz_table(g_max, m_max) {
            Ok(t) => {
                if let Err(e) = cache.store_hz(&t) {
                    return vec![Item::failed(id, e)];
                }
                t
            }
            Err(e) => return vec![Item::failed(id, e)],
        },
        Err(e) => return vec![Item::failed(id, e)],
    };
    let mut bad = Vec::new();
    for m in 0..=m_max {
        let counts = match inp.oracle.count_matchings_by_genus(m) {
            Ok(t) => t,
            Err(e) => return vec![Item::failed(id, e)],
        };
        for g in 0..=g_max {
            if big(&counts.get(&[g, m])) != *table.get(g, m) {
                bad.push(format!("c_{g}({m})"));
            }
        }
        if counts.sum_where(|k| k[0] > g_max) != BigUint::zero() {
            bad.push(format!("genus above {g_max} at m={m}"));
        }
        if table.column_sum(m) != big(&double_factorial_odd(m)) {
            bad.push(format!("column sum at m={m}"));
        }
    }
    let detail = if bad.is_empty() {
        format!("genus<={g_max}, arcs<={m_max}: recursion equals enumeration, columns sum to (2m-1)!!")
    } else {
        format!("mismatch at {}", bad.join(", "))
    };
    vec![Item::new(id, bad.is_empty(), detail)]
}

fn q_item() -> Vec<Item> {
    let mut bad = Vec::new();
    for g in 1..=5 {
        let want = reference().q_poly(g).map(|f| f.expand());
        match (hz::q_poly(g), want) {
            (Ok(got), Some(Ok(want))) if got == want => {}
            (Err(e), _) => bad.push(format!("Q_{g}: {e}")),
            _ => bad.push(format!("Q_{g}")),
        }
    }
    let detail = if bad.is_empty() {
        "Q_1..Q_5 equal the reference".to_string()
    } else {
        format!("mismatch: {}", bad.join(", "))
    };
    vec![Item::new("q.reference", bad.is_empty(), detail)]
}

fn shadow_fixture_items(inp: &Inputs, g_max: usize) -> Vec<Item> {
    (1..=g_max)
        .map(|g| {
            let id = format!("shadows.reference.g{g}");
            let set = match &inp.shadows {
                Ok(s) => s,
                Err(e) => return Item::failed(id, e),
            };
            let want = reference().i_poly(g).expect("reference lists I_1..I_8").expand();
            match want {
                Ok(w) if &w == set.get(g) => Item::new(id, true, format!("I_{g} equals the reference, degree {}", 6 * g - 2)),
                Ok(w) => {
                    let first = (0..=6 * g - 2).find(|&k| w.coeff(k) != set.get(g).coeff(k)).unwrap_or(0);
                    Item::failed(id, format!("I_{g} differs from the reference at z^{first}"))
                }
                Err(e) => Item::failed(id, e),
            }
        })
        .collect()
}

fn shadow_oracle_item(inp: &Inputs, m_max: usize) -> Vec<Item> {
    let id = "shadows.oracle";
    let set = match &inp.shadows {
        Ok(s) => s,
        Err(e) => return vec![Item::failed(id, e)],
    };
    let mut bad = Vec::new();
    for m in 2..=m_max {
        let t = match inp.oracle.count_irreducible_shadows(m) {
            Ok(t) => t,
            Err(e) => return vec![Item::failed(id, e)],
        };
        for g in 1..=set.g_max() {
            let want = Rational::from_integer(big(&t.get(&[g, m])));
            if set.get(g).coeff(m) != want {
                bad.push(format!("i_{g}({m})"));
            }
        }
        if t.sum_where(|k| k[0] > set.g_max()) != BigUint::zero() {
            bad.push(format!("shadows of genus above {} at m={m}", set.g_max()));
        }
    }
    let detail = if bad.is_empty() {
        format!("arcs 2..={m_max}: enumerated irreducible shadows equal [z^m] I_g")
    } else {
        format!("mismatch at {}", bad.join(", "))
    };
    vec![Item::new(id, bad.is_empty(), detail)]
}

fn conjecture_item(inp: &Inputs, g_max: usize) -> Vec<Item> {
    let id = "shadows.divisibility";
    let set = match &inp.shadows {
        Ok(s) => s,
        Err(e) => return vec![Item::failed(id, e)],
    };
    let bad: Vec<usize> = (1..=g_max)
        .filter(|&g| {
            let f = Poly::from_ints(&[0, 1, 1]).pow(2 * g as u32);
            !set.get(g).div_rem(&f).1.is_zero()
        })
        .collect();
    if bad.is_empty() {
        vec![Item::new(id, true, format!("z^(2g)(1+z)^(2g) divides I_g for g<={g_max}"))]
    } else {
        vec![Item {
            id: id.into(),
            status: Status::Warn,
            detail: format!("z^(2g)(1+z)^(2g) does not divide I_g for g in {bad:?}"),
        }]
    }
}

fn hseries_oracle_item(inp: &Inputs, gamma_max: usize, m_max: usize) -> Vec<Item> {
    let id = "hseries.oracle";
    let mut h = Vec::new();
    for gamma in 1..=gamma_max {
        match inp.system(gamma) {
            Ok(sys) => h.push(h_coefficients(&sys, m_max)),
            Err(e) => return vec![Item::failed(id, e)],
        }
    }
    let mut bad = Vec::new();
    for m in 0..=m_max {
        let t = match inp.oracle.count_matchings_by_component_genus(m) {
            Ok(t) => t,
            Err(e) => return vec![Item::failed(id, e)],
        };
        for gamma in 1..=gamma_max {
            if big(&t.sum_where(|k| k[0] <= gamma)) != h[gamma - 1][m] {
                bad.push(format!("h_{gamma}({m})"));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("gamma<={gamma_max}, arcs<={m_max}: [u^m] H equals the enumerated gamma-matchings")
    } else {
        format!("mismatch at {}", bad.join(", "))
    };
    vec![Item::new(id, bad.is_empty(), detail)]
}

fn equation_items(inp: &Inputs, gamma_max: usize) -> Vec<Item> {
    (1..=gamma_max)
        .map(|gamma| {
            let id = format!("hseries.equation.g{gamma}");
            let sys = match inp.system(gamma) {
                Ok(s) => s,
                Err(e) => return Item::failed(id, e),
            };
            match h_series(&sys, EQUATION_ORDER) {
                Ok(_) => Item::new(
                    id,
                    true,
                    format!(
                        "P_{gamma}(u, H) = 0 through u^{}; degree {} in X, leading coefficient -u^{}",
                        EQUATION_ORDER,
                        2 + 2 * sys.kappa,
                        1 + sys.kappa
                    ),
                ),
                Err(e) => Item::failed(id, e),
            }
        })
        .collect()
}

fn structure_items(inp: &Inputs, gamma_max: usize, n_max: usize) -> Vec<Item> {
    (1..=gamma_max)
        .map(|gamma| {
            let id = format!("structures.oracle.g{gamma}");
            let sys = match inp.system(gamma) {
                Ok(s) => s,
                Err(e) => return Item::failed(id, e),
            };
            let mut bad = Vec::new();
            for tau in 1..=2 {
                for allow in [false, true] {
                    let series = if allow {
                        gtilde_series(&sys, tau, n_max)
                    } else {
                        g_series(&sys, tau, n_max)
                    };
                    let series = match series {
                        Ok(s) => s,
                        Err(e) => return Item::failed(id, e),
                    };
                    let t = match inp.oracle.count_structures_table(tau, gamma, n_max, allow) {
                        Ok(t) => t,
                        Err(e) => return Item::failed(id, e),
                    };
                    for n in 0..=n_max {
                        let want = Rational::from_integer(big(&t.sum_where(|k| k[0] == n)));
                        if series.coeff(n) != &want {
                            let name = if allow { "G~" } else { "G" };
                            bad.push(format!("{name}_(tau={tau})({n})"));
                        }
                    }
                }
            }
            if gamma == 1 {
                let g = g_series(&sys, 1, 4).ok();
                let prefix: Option<Vec<String>> = g.map(|s| s.coeffs().iter().map(|c| c.to_string()).collect());
                if prefix.as_deref() != Some(&["1", "1", "1", "2", "5"].map(String::from)[..]) {
                    bad.push("prefix of G_(tau=1)".into());
                }
            }
            let detail = if bad.is_empty() {
                format!("tau in {{1,2}}, with and without 1-arcs, length<={n_max}: series equal enumeration")
            } else {
                format!("mismatch at {}", bad.join(", "))
            };
            Item::new(id, bad.is_empty(), detail)
        })
        .collect()
}

fn shape_items(inp: &Inputs, gamma_max: usize, arcs: usize) -> Vec<Item> {
    (1..=gamma_max)
        .map(|gamma| {
            let id = format!("shapes.oracle.g{gamma}");
            let sys = match inp.system(gamma) {
                Ok(s) => s,
                Err(e) => return Item::failed(id, e),
            };
            let s = match s_series(&sys, arcs) {
                Ok(s) => s,
                Err(e) => return Item::failed(id, e),
            };
            let t = match inp.oracle.count_shapes(gamma, arcs) {
                Ok(t) => t,
                Err(e) => return Item::failed(id, e),
            };
            let mut bad = Vec::new();
            for m in 0..=arcs {
                for k in 0..=arcs {
                    let want = Rational::from_integer(big(&t.get(&[m, k])));
                    if s.coeff(m, k) != &want {
                        bad.push(format!("[u^{m} e^{k}]"));
                    }
                }
            }
            let detail = if bad.is_empty() {
                format!("arcs<={arcs}, every 1-arc count: series equals enumeration")
            } else {
                format!("mismatch at {}", bad.join(", "))
            };
            Item::new(id, bad.is_empty(), detail)
        })
        .collect()
}

fn singularity(inp: &Inputs, gamma: usize) -> Result<(GammaSystem, AsymData), String> {
    let sys = inp.system(gamma)?;
    let data = dominant_singularity(&sys, &rat(1, 10).pow(30)).map_err(|e| e.to_string())?;
    Ok((sys, data))
}

fn growth_items(inp: &Inputs, gamma: usize) -> Vec<Item> {
    let cells: Vec<_> = reference().growth.iter().filter(|c| c.gamma == gamma).collect();
    let data = singularity(inp, gamma);
    cells
        .into_iter()
        .map(|cell| {
            let suffix = if cell.with_one_arcs { ".one_arcs" } else { "" };
            let id = format!("growth.g{}.t{}{suffix}", cell.gamma, cell.tau);
            let (_, data) = match &data {
                Ok(d) => d,
                Err(e) => return Item::failed(id, e),
            };
            let want = match cell.rational() {
                Ok(w) => w,
                Err(e) => return Item::failed(id, e),
            };
            match structure_growth(data, cell.tau, cell.with_one_arcs, &rat(1, 10).pow(12)) {
                Ok(a) => {
                    let dist = (&a.value - &want).abs() + &a.radius;
                    Item::new(
                        id,
                        dist <= growth_tolerance(),
                        format!("computed {} vs reference {} (tolerance 5e-5)", to_decimal(&a.value, 9), cell.value),
                    )
                }
                Err(e) => Item::failed(id, e),
            }
        })
        .collect()
}

/// `|r(n) - 1|` at the sample points must shrink, and be below `tol` at the
/// last one.
fn ratio_trend(ratios: &[(usize, Rational)], tol: f64) -> (bool, String) {
    let dev: Vec<f64> = ratios.iter().map(|(_, r)| (to_f64(r) - 1.0).abs()).collect();
    let decreasing = dev.windows(2).all(|w| w[1] < w[0]);
    let ok = decreasing && *dev.last().unwrap() < tol;
    let shown: Vec<String> = ratios.iter().map(|(n, r)| format!("r({n})={}", to_decimal(r, 4))).collect();
    (ok, shown.join(", "))
}

fn transfer_items(inp: &Inputs, gamma_max: usize) -> Vec<Item> {
    let samples = [100, 200, 400];
    let mut out = Vec::new();
    let catalan = {
        let phi = crate::exact::BiPoly::from_terms(&[(-1, 0, 0), (1, 0, 1), (-1, 1, 2)]);
        hz::c_series(0, 400)
            .map_err(|e| e.to_string())
            .and_then(|s| s.to_bigints().ok_or_else(|| "non-integral Catalan numbers".to_string()))
            .and_then(|c| {
                analyze(&phi, &c[..=crate::asym::RATIO_TERMS], &rat(1, 10).pow(30))
                    .map(|d| (d, c))
                    .map_err(|e| e.to_string())
            })
    };
    out.push(match catalan {
        Ok((d, c)) => {
            let r = asym_ratio(&d, &c, 400);
            let ok = (to_f64(&r) - 1.0).abs() < 0.02;
            Item::new("transfer.catalan", ok, format!("r(400)={} (tolerance 2%)", to_decimal(&r, 4)))
        }
        Err(e) => Item::failed("transfer.catalan", e),
    });
    for gamma in 1..=gamma_max {
        let id = format!("transfer.g{gamma}");
        out.push(match singularity(inp, gamma) {
            Ok((sys, d)) => {
                let c = h_coefficients(&sys, 400);
                let ratios: Vec<_> = samples.iter().map(|&n| (n, asym_ratio(&d, &c, n))).collect();
                let (ok, shown) = ratio_trend(&ratios, 0.05);
                Item::new(id, ok, format!("{shown} (deviation shrinking, below 5% at 400)"))
            }
            Err(e) => Item::failed(id, e),
        });
    }
    out
}

type Task<'a> = Box<dyn Fn() -> Vec<Item> + Send + Sync + 'a>;

/// Runs every check of `level`.
pub fn verify(level: Level, config: &Config) -> Report {
    let b = Bounds::of(level);
    let cache = config.cache();
    let inputs = Inputs {
        oracle: Oracle::new(config.oracle_caps.clone()),
        config: config.clone(),
        shadows: shadow_set(b.fixture_genus, Some(&cache)).map_err(|e| e.to_string()),
    };
    let inp = &inputs;
    let b = &b;
    let mut tasks: Vec<Task> = vec![
        Box::new(move || hz_item(inp, b.matching_arcs)),
        Box::new(q_item),
        Box::new(move || shadow_fixture_items(inp, b.fixture_genus)),
        Box::new(move || shadow_oracle_item(inp, b.shadow_arcs)),
        Box::new(move || conjecture_item(inp, b.fixture_genus)),
        Box::new(move || hseries_oracle_item(inp, b.gamma, b.matching_arcs)),
        Box::new(move || equation_items(inp, b.equation_gamma)),
        Box::new(move || structure_items(inp, b.gamma, b.length)),
        Box::new(move || shape_items(inp, b.gamma, b.shape_arcs)),
        Box::new(move || transfer_items(inp, 1)),
    ];
    for gamma in 1..=b.gamma {
        tasks.push(Box::new(move || growth_items(inp, gamma)));
    }
    let mut items: Vec<Item> = tasks.par_iter().flat_map_iter(|t| t()).collect();
    items.sort_by(|a, b| a.id.cmp(&b.id));
    Report { level, items }
}
