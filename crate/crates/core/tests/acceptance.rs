//! Acceptance criteria, one test each. Every test writes a single
//! `criterion NN [PASS|FAIL|WARN] ...` line to stderr (bypassing output
//! capture) and then asserts. Tests take a shared lock so the printed
//! runtimes are not inflated by each other.

use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use gammaenum::asym::numeric::{to_decimal, to_f64};
use gammaenum::asym::{analyze, asym_ratio, dominant_singularity, structure_growth, RATIO_TERMS};
use gammaenum::cache::DiskCache;
use gammaenum::cli::config::{Config, OutputFormat};
use gammaenum::cli::verify::{growth_tolerance, verify, Level};
use gammaenum::exact::{int, rat, BiPoly, Poly, Rational, TruncSeries};
use gammaenum::fixtures::reference;
use gammaenum::gamma::{build_p, g_series, gtilde_series, h_coefficients, h_series, s_series, GammaSystem};
use gammaenum::hz::{self, hz_table};
use gammaenum::oracle::{double_factorial_odd, Oracle};
use gammaenum::shadows::{shadow_set, ShadowPolySet};

static SERIAL: Mutex<()> = Mutex::new(());

fn lock() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

/// Prints the criterion line; returns whether it passed within budget.
fn report(n: &str, title: &str, ok: bool, detail: &str, start: Instant, budget: Duration) -> bool {
    let took = start.elapsed();
    let in_time = took <= budget;
    let tag = if ok && in_time { "PASS" } else { "FAIL" };
    let timing = format!("{:.2}s of {}s", took.as_secs_f64(), budget.as_secs());
    let over = if in_time { "" } else { " OVER BUDGET" };
    let _ = writeln!(std::io::stderr(), "criterion {n} [{tag}] {title}: {detail} ({timing}{over})");
    ok && in_time
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn big(n: &BigUint) -> BigInt {
    BigInt::from(n.clone())
}

fn shadows(g: usize) -> ShadowPolySet {
    shadow_set(g, None).unwrap()
}

fn system(gamma: usize) -> GammaSystem {
    build_p(gamma, &shadows(gamma)).unwrap()
}

#[test]
fn criterion_01_harer_zagier_table_matches_enumeration() {
    let _g = lock();
    let start = Instant::now();
    let table = hz_table(4, 9).unwrap();
    let oracle = Oracle::default();
    let mut bad = Vec::new();
    let mut per_m = Vec::new();
    for m in 0..=9 {
        let t0 = Instant::now();
        let counts = oracle.count_matchings_by_genus(m).unwrap();
        per_m.push((m, t0.elapsed()));
        for g in 0..=4 {
            if big(&counts.get(&[g, m])) != *table.get(g, m) {
                bad.push(format!("c_{g}({m})"));
            }
        }
        if counts.total() != double_factorial_odd(m) || table.column_sum(m) != big(&double_factorial_odd(m)) {
            bad.push(format!("sum at m={m}"));
        }
    }
    let m9 = per_m.last().unwrap().1.as_secs_f64();
    let detail = if bad.is_empty() {
        format!("all (g<=4, m<=9) equal, sums (2m-1)!!; m=9 enumeration of 34459425 matchings took {m9:.2}s")
    } else {
        format!("mismatch at {}", bad.join(", "))
    };
    assert!(report("01", "Harer-Zagier vs enumeration", bad.is_empty(), &detail, start, secs(300)));
}

#[test]
fn criterion_02_q_polynomials_match_reference() {
    let _g = lock();
    let start = Instant::now();
    let mut bad = Vec::new();
    for g in 1..=5 {
        let want = reference().q_poly(g).unwrap().expand().unwrap();
        if hz::q_poly(g).unwrap() != want {
            bad.push(g);
        }
    }
    let q4 = hz::q_poly(4).unwrap();
    let spot = q4.coeff(10) == int(143 * 18378);
    let ok = bad.is_empty() && spot;
    let detail = format!("Q_1..Q_5 coefficientwise; [z^10]Q_4 = 143*18378: {spot}; mismatches {bad:?}");
    assert!(report("02", "Q polynomials", ok, &detail, start, secs(1)));
}

#[test]
fn criterion_03_irreducible_shadow_polynomials_match_reference() {
    let _g = lock();
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let set = shadow_set(8, Some(&cache)).unwrap();
    let mut bad = Vec::new();
    for g in 1..=8 {
        let want = reference().i_poly(g).unwrap().expand().unwrap();
        if set.get(g) != &want {
            bad.push(g);
        }
    }
    let lead: BigInt = "12107536630199227514880".parse().unwrap();
    let spot = set.get(8).coeff(46) == Rational::from_integer(lead);
    let cached = (1..=8).all(|g| cache.load_shadow(g).unwrap().as_ref() == Some(set.get(g)));
    let ok = bad.is_empty() && spot && cached;
    let detail = format!(
        "I_1..I_8 exact; [z^46]I_8 = 12107536630199227514880: {spot}; cache round-trip: {cached}; mismatches {bad:?}"
    );
    assert!(report("03", "irreducible shadows vs reference", ok, &detail, start, secs(120)));
}

#[test]
fn criterion_04_irreducible_shadows_match_enumeration() {
    let _g = lock();
    let start = Instant::now();
    let set = shadows(4);
    let oracle = Oracle::default();
    let mut bad = Vec::new();
    let mut sample = Vec::new();
    for m in 2..=8 {
        let t = oracle.count_irreducible_shadows(m).unwrap();
        let sum: Rational = (1..=4).map(|g| set.get(g).coeff(m)).fold(Rational::zero(), |a, b| a + b);
        if Rational::from_integer(big(&t.total())) != sum {
            bad.push(format!("m={m}"));
        }
        for g in 1..=4 {
            if Rational::from_integer(big(&t.get(&[g, m]))) != set.get(g).coeff(m) {
                bad.push(format!("i_{g}({m})"));
            }
        }
        sample.push(format!("{}", t.total()));
    }
    let known = [(1, 2, 1), (1, 3, 2), (1, 4, 1), (2, 4, 17), (2, 5, 160)];
    let spot = known.iter().all(|&(g, m, v)| set.get(g).coeff(m) == int(v));
    let ok = bad.is_empty() && spot;
    let detail = format!(
        "m=2..8 totals [{}] equal sum_g [z^m]I_g; spot values ok: {spot}; mismatches {bad:?}",
        sample.join(", ")
    );
    assert!(report("04", "irreducible shadows vs enumeration", ok, &detail, start, secs(600)));
}

#[test]
fn criterion_05_gamma_matchings_match_enumeration() {
    let _g = lock();
    let start = Instant::now();
    let oracle = Oracle::default();
    let mut bad = Vec::new();
    for gamma in 1..=2 {
        let h = h_coefficients(&system(gamma), 9);
        for (m, hm) in h.iter().enumerate() {
            if big(&oracle.count_gamma_matchings(gamma, m).unwrap()) != *hm {
                bad.push(format!("h_{gamma}({m})"));
            }
        }
    }
    let detail = format!("gamma in {{1,2}}, m<=9; mismatches {bad:?}");
    assert!(report("05", "gamma-matchings vs enumeration", bad.is_empty(), &detail, start, secs(600)));
}

#[test]
fn criterion_06_defining_polynomial_annihilates_h() {
    let _g = lock();
    let start = Instant::now();
    let set = shadows(3);
    let mut bad = Vec::new();
    for gamma in 1..=3 {
        let sys = build_p(gamma, &set).unwrap();
        let kappa = 6 * gamma - 2;
        if sys.p.degree_x() != Some(2 + 2 * kappa) || sys.p.leading_x() != Poly::monomial(int(-1), 1 + kappa) {
            bad.push(format!("shape of P_{gamma}"));
        }
        let h = TruncSeries::from_bigints(h_coefficients(&sys, 60));
        if !sys.p.eval_series(&TruncSeries::var(60), &h).is_zero() || h_series(&sys, 60).is_err() {
            bad.push(format!("P_{gamma}(u,H) != 0"));
        }
    }
    let detail = format!("gamma=1,2,3 through u^60, degree 2+2kappa, leading -u^(1+kappa); failures {bad:?}");
    assert!(report("06", "defining polynomial", bad.is_empty(), &detail, start, secs(30)));
}

#[test]
fn criterion_07_structure_series_match_enumeration() {
    let _g = lock();
    let start = Instant::now();
    let oracle = Oracle::default();
    let mut bad = Vec::new();
    let mut checked = 0;
    for gamma in 1..=2 {
        let sys = system(gamma);
        for tau in 1..=2 {
            for allow in [false, true] {
                let s = if allow {
                    gtilde_series(&sys, tau, 12).unwrap()
                } else {
                    g_series(&sys, tau, 12).unwrap()
                };
                for n in 0..=12 {
                    let want = oracle.count_structures(tau, gamma, n, allow).unwrap();
                    checked += 1;
                    if s.coeff(n) != &Rational::from_integer(big(&want)) {
                        bad.push(format!("(tau={tau}, gamma={gamma}, one_arcs={allow}, n={n})"));
                    }
                }
            }
        }
    }
    let prefix: Vec<Rational> = g_series(&system(1), 1, 4).unwrap().into_coeffs();
    let prefix_ok = prefix == [1, 1, 1, 2, 5].map(int);
    let ok = bad.is_empty() && prefix_ok;
    let detail = format!("{checked} coefficients, n<=12; G_(1,1) prefix 1,1,1,2,5: {prefix_ok}; mismatches {bad:?}");
    assert!(report("07", "structures vs enumeration", ok, &detail, start, secs(600)));
}

#[test]
fn criterion_08_shape_series_match_enumeration() {
    let _g = lock();
    let start = Instant::now();
    let oracle = Oracle::default();
    let mut bad = Vec::new();
    for gamma in 1..=2 {
        let s = s_series(&system(gamma), 7).unwrap();
        let t = oracle.count_shapes(gamma, 7).unwrap();
        for m in 0..=7 {
            for k in 0..=7 {
                if s.coeff(m, k) != &Rational::from_integer(big(&t.get(&[m, k]))) {
                    bad.push(format!("gamma={gamma} [u^{m} e^{k}]"));
                }
            }
        }
    }
    let detail = format!("gamma<=2, 2n<=14, all 1-arc counts; mismatches {bad:?}");
    assert!(report("08", "shapes vs enumeration", bad.is_empty(), &detail, start, secs(300)));
}

/// Checks the reference growth rates for one `gamma`; returns the printed
/// cell summaries and whether all are within tolerance.
fn growth_cells(sys: &GammaSystem, gamma: usize) -> (Vec<String>, bool) {
    let data = dominant_singularity(sys, &rat(1, 10).pow(30)).unwrap();
    let mut ok = true;
    let mut shown = Vec::new();
    for cell in reference().growth.iter().filter(|c| c.gamma == gamma) {
        let a = structure_growth(&data, cell.tau, cell.with_one_arcs, &rat(1, 10).pow(12)).unwrap();
        let dist = (&a.value - cell.rational().unwrap()).abs() + &a.radius;
        let hit = dist <= growth_tolerance();
        ok &= hit;
        let kind = if cell.with_one_arcs { " with 1-arcs" } else { "" };
        shown.push(format!(
            "(tau={}{kind}) {} vs {} {}",
            cell.tau,
            to_decimal(&a.value, 6),
            cell.value,
            if hit { "ok" } else { "off" }
        ));
    }
    (shown, ok)
}

#[test]
fn criterion_09a_growth_rates_gamma_1() {
    let _g = lock();
    let start = Instant::now();
    let (shown, ok) = growth_cells(&system(1), 1);
    let detail = format!("tolerance 5e-5: {}", shown.join("; "));
    assert!(report("09a", "growth rates, gamma=1 and the 1-arc constants", ok, &detail, start, secs(120)));
}

/// The gamma=2 reference values are compared against the equation built from
/// `I_1 + I_2`, as for every other computation in the crate.
#[test]
fn criterion_09b_growth_rates_gamma_2() {
    let _g = lock();
    let start = Instant::now();
    let (shown, ok) = growth_cells(&system(2), 2);
    let detail = format!("tolerance 5e-5: {}", shown.join("; "));
    assert!(report("09b", "growth rates, gamma=2", ok, &detail, start, secs(120)));
}

/// Not a criterion: the gamma=2 reference values are reproduced when only
/// `I_2` enters the equation, i.e. when genus-1 components are excluded.
#[test]
fn gamma_2_reference_rates_come_from_the_genus_2_term_alone() {
    let _g = lock();
    let set = shadows(2);
    let only_two = ShadowPolySet::from_polys(vec![Poly::zero(), set.get(2).clone()]);
    let sys = build_p(2, &only_two).unwrap();
    let (shown, ok) = growth_cells(&sys, 2);
    let _ = writeln!(
        std::io::stderr(),
        "diagnostic: equation with I_2 only gives {}",
        shown.join("; ")
    );
    assert!(ok);
}

#[test]
fn criterion_10_transfer_ratio_tends_to_one() {
    let _g = lock();
    let start = Instant::now();
    let sys = system(1);
    let data = dominant_singularity(&sys, &rat(1, 10).pow(30)).unwrap();
    let h = h_coefficients(&sys, 400);
    let r: Vec<f64> = [100, 200, 400].iter().map(|&n| to_f64(&asym_ratio(&data, &h, n))).collect();
    let dev: Vec<f64> = r.iter().map(|x| (x - 1.0).abs()).collect();
    let monotone = dev[1] < dev[0] && dev[2] < dev[1];
    let within = dev[2] < 0.05;
    let positive = (2..=400).all(|n| asym_ratio(&data, &h, n) > Rational::zero());

    let phi = BiPoly::from_terms(&[(-1, 0, 0), (1, 0, 1), (-1, 1, 2)]);
    let cat = hz::c_series(0, 400).unwrap().to_bigints().unwrap();
    let cd = analyze(&phi, &cat[..=RATIO_TERMS], &rat(1, 10).pow(30)).unwrap();
    let rc = to_f64(&asym_ratio(&cd, &cat, 400));
    let catalan_ok = (rc - 1.0).abs() < 0.02;

    let ok = monotone && within && positive && catalan_ok;
    let detail = format!(
        "gamma=1 r(100)={:.5} r(200)={:.5} r(400)={:.5} (5% at 400, shrinking: {monotone}); Catalan r(400)={rc:.5} (2%)",
        r[0], r[1], r[2]
    );
    assert!(report("10", "transfer asymptotics", ok, &detail, start, secs(120)));
}

/// A failure here is a warning only.
#[test]
fn criterion_11_divisibility_conjecture() {
    let _g = lock();
    let start = Instant::now();
    let set = shadows(8);
    let failing: Vec<usize> = (1..=8)
        .filter(|&g| !set.get(g).div_rem(&Poly::from_ints(&[0, 1, 1]).pow(2 * g as u32)).1.is_zero())
        .collect();
    if failing.is_empty() {
        report("11", "z^(2g)(1+z)^(2g) divides I_g", true, "holds for g=1..8", start, secs(120));
    } else {
        let _ = writeln!(std::io::stderr(), "criterion 11 [WARN] divisibility fails for g in {failing:?}");
    }
}

#[test]
fn criterion_12_full_verify_is_deterministic() {
    let _g = lock();
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let config = Config {
        cache_dir: dir.path().join("cache"),
        ..Config::default()
    };
    let cold = verify(Level::Full, &config);
    let warm_files = config.cache().status().unwrap().len();
    let warm = verify(Level::Full, &config);
    let same = cold.render(OutputFormat::Text) == warm.render(OutputFormat::Text)
        && cold.render(OutputFormat::Json) == warm.render(OutputFormat::Json);
    let detail = format!(
        "cold and warm ({warm_files} cache files) reports byte-identical: {same}; {} items",
        cold.items.len()
    );
    assert!(report("12", "verify determinism", same, &detail, start, secs(600)));
}
