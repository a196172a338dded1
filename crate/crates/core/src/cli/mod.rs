//! The `gammaenum` command line.
//!
//! Exit codes: 0 on success, 1 on usage or runtime errors, 2 when `verify`
//! finds a mismatch.

pub mod config;
pub mod output;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::asym::{dominant_singularity, structure_growth};
use crate::diagrams::{classify, irreducible_components, shadow, Diagram};
use crate::error::{Error, Result};
use crate::exact::{format_rational, rat, BiTruncSeries, Rational};
use crate::gamma::{a_series, atilde_series, build_p, g_series, gtilde_series, h_coefficients, s_series, GammaSystem};
use crate::hz::hz_table;
use crate::shadows::shadow_set;

use config::{Config, OutputFormat};
use output::{factored, render_quantities, significant, SeriesOut, TableOut};
use verify::Level;

#[derive(Debug, Parser)]
#[command(name = "gammaenum", version, about = "Exact enumeration of genus-filtered matchings and canonical gamma-structures")]
pub struct Cli {
    /// Output format (default from the config file, else text)
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// JSON configuration file
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Irreducible shadow polynomial I_g
    Shadows {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=20))]
        genus: u64,
    },
    /// Matchings by genus: the whole table, or the prefix of C_g with --genus
    Matchings {
        /// Largest arc count
        #[arg(long)]
        arcs: usize,
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Coefficients of H_gamma(u), gamma-matchings by arcs
    Hseries {
        #[command(flatten)]
        gamma: GammaArg,
        /// Number of coefficients
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
    },
    /// gamma-shapes by arcs and 1-arcs
    Shapes {
        #[command(flatten)]
        gamma: GammaArg,
        /// Number of arc counts
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
    },
    /// tau-canonical gamma-structures by length
    Structures {
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        tau: u64,
        /// Largest backbone length
        #[arg(long)]
        length: usize,
        #[arg(long)]
        with_one_arcs: bool,
        /// Also split by number of arcs
        #[arg(long)]
        mark_arcs: bool,
    },
    /// Dominant singularity and growth rate
    Asymptotics {
        #[command(flatten)]
        gamma: GammaArg,
        /// Growth rate of tau-canonical structures instead of gamma-matchings
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        tau: Option<u64>,
        #[arg(long, requires = "tau")]
        with_one_arcs: bool,
        /// Significant digits
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200))]
        digits: Option<u64>,
    },
    /// Classify a diagram read from a file ("n" then "i-j" arcs)
    Classify {
        file: PathBuf,
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        tau: u64,
        #[arg(long)]
        allow_one_arcs: bool,
    },
    /// Cross-check symbolic results against enumeration and reference values
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
    },
    /// Inspect or clear the on-disk cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Args)]
pub struct GammaArg {
    /// Genus bound of irreducible components
    #[arg(long = "gamma", value_parser = clap::value_parser!(u64).range(1..=10))]
    pub value: u64,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    Status,
    Clear,
}

/// Output of a command, and its exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, code: 0 })
}

fn system(config: &Config, gamma: usize) -> Result<GammaSystem> {
    let set = shadow_set(gamma, Some(&config.cache()))?;
    build_p(gamma, &set)
}

fn bi_rows(s: &BiTruncSeries, max_k: usize) -> Vec<Vec<String>> {
    (0..=s.order())
        .map(|n| (0..=max_k.min(s.t_order())).map(|k| format_rational(s.coeff(n, k))).collect())
        .collect()
}

/// Runs a parsed command.
pub fn execute(cli: Cli) -> Result<Outcome> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let format = cli.format.unwrap_or(config.output_format);
    match cli.command {
        Command::Shadows { genus } => {
            let g = genus as usize;
            let set = shadow_set(g, Some(&config.cache()))?;
            let p = set.get(g);
            let params = json!({ "genus": g });
            let out = match format {
                OutputFormat::Text => format!(
                    "I_{g}(z) = {}\n  = {}\ncoefficients: {}\n",
                    factored(p),
                    p,
                    p.coeffs().iter().map(format_rational).collect::<Vec<_>>().join(", ")
                ),
                _ => SeriesOut {
                    command: "shadows",
                    var: "z",
                    name: format!("I_{g}(z)"),
                    params,
                    coeffs: p.coeffs().to_vec(),
                }
                .render(format),
            };
            ok(out)
        }
        Command::Matchings { arcs, genus } => {
            let g_max = genus.unwrap_or(arcs / 2);
            let cache = config.cache();
            let table = match cache.load_hz(g_max, arcs)? {
                Some(t) => t,
                None => {
                    let t = hz_table(g_max, arcs)?;
                    cache.store_hz(&t)?;
                    t
                }
            };
            match genus {
                Some(g) => ok(SeriesOut {
                    command: "matchings",
                    var: "z",
                    name: format!("C_{g}(z)"),
                    params: json!({ "genus": g, "arcs": arcs }),
                    coeffs: table.row(g).iter().cloned().map(Rational::from_integer).collect(),
                }
                .render(format)),
                None => {
                    let rows = (0..=g_max)
                        .map(|g| table.row(g).iter().map(|c| c.to_string()).collect())
                        .collect();
                    ok(TableOut {
                        command: "matchings",
                        params: json!({ "arcs": arcs }),
                        row_label: "genus",
                        col_label: "arcs",
                        rows,
                    }
                    .render(format))
                }
            }
        }
        Command::Hseries { gamma, terms } => {
            let gamma = gamma.value as usize;
            let sys = system(&config, gamma)?;
            let h = h_coefficients(&sys, terms as usize - 1);
            ok(SeriesOut {
                command: "hseries",
                var: "u",
                name: format!("H_{gamma}(u)"),
                params: json!({ "gamma": gamma, "terms": terms }),
                coeffs: h.into_iter().map(Rational::from_integer).collect(),
            }
            .render(format))
        }
        Command::Shapes { gamma, terms } => {
            let gamma = gamma.value as usize;
            let sys = system(&config, gamma)?;
            let n = terms as usize - 1;
            let s = s_series(&sys, n)?;
            ok(TableOut {
                command: "shapes",
                params: json!({ "gamma": gamma, "terms": terms }),
                row_label: "arcs",
                col_label: "one_arcs",
                rows: bi_rows(&s, n),
            }
            .render(format))
        }
        Command::Structures {
            gamma,
            tau,
            length,
            with_one_arcs,
            mark_arcs,
        } => {
            let gamma = gamma.value as usize;
            let tau = tau as usize;
            let sys = system(&config, gamma)?;
            let params = json!({
                "gamma": gamma,
                "tau": tau,
                "length": length,
                "with_one_arcs": with_one_arcs,
                "mark_arcs": mark_arcs,
            });
            if mark_arcs {
                let t_order = length / 2;
                let a = if with_one_arcs {
                    atilde_series(&sys, tau, length, t_order)?
                } else {
                    a_series(&sys, tau, length, t_order)?
                };
                return ok(TableOut {
                    command: "structures",
                    params,
                    row_label: "length",
                    col_label: "arcs",
                    rows: bi_rows(&a, t_order),
                }
                .render(format));
            }
            let s = if with_one_arcs {
                gtilde_series(&sys, tau, length)?
            } else {
                g_series(&sys, tau, length)?
            };
            let name = if with_one_arcs { "G~" } else { "G" };
            ok(SeriesOut {
                command: "structures",
                var: "z",
                name: format!("{name}_{{{tau},{gamma}}}(z)"),
                params,
                coeffs: s.into_coeffs(),
            }
            .render(format))
        }
        Command::Asymptotics {
            gamma,
            tau,
            with_one_arcs,
            digits,
        } => {
            let gamma = gamma.value as usize;
            let digits = match digits {
                Some(d) => d as usize,
                None => crate::asym::numeric::digits_for(&config.default_precision),
            };
            let sys = system(&config, gamma)?;
            let precision = rat(1, 10).pow(digits as i32 + 8);
            let data = dominant_singularity(&sys, &precision)?;
            let growth = match tau {
                Some(t) => structure_growth(&data, t as usize, with_one_arcs, &precision)?,
                None => data.growth.clone(),
            };
            let rho = crate::asym::Approx::from_enclosure(&data.rho);
            let q = |a: &crate::asym::Approx| significant(a, digits);
            let (gv, ge) = q(&growth);
            let (rv, re) = q(&rho);
            let (pv, pe) = q(&data.pi_val);
            let (lv, le) = q(&data.lambda_val);
            let (cv, ce) = q(&data.c_val);
            let rows = [
                ("growth", gv, ge),
                ("rho", rv, re),
                ("pi", pv, pe),
                ("lambda", lv, le),
                ("c", cv, ce),
            ];
            let params = json!({
                "gamma": gamma,
                "tau": tau,
                "with_one_arcs": with_one_arcs,
                "digits": digits,
            });
            ok(render_quantities("asymptotics", params, &rows, format))
        }
        Command::Classify {
            file,
            gamma,
            tau,
            allow_one_arcs,
        } => {
            let gamma = gamma.value as usize;
            let tau = tau as usize;
            let text = fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
            let d = Diagram::parse(&text)?;
            let comps = irreducible_components(&d);
            let sh = shadow(&d);
            let member = classify(&d, gamma, tau, allow_one_arcs);
            let rows: Vec<(&str, String)> = vec![
                ("vertices", d.n().to_string()),
                ("arcs", d.arcs().len().to_string()),
                ("genus", d.genus().to_string()),
                ("one_arcs", d.one_arc_count().to_string()),
                ("stack_sizes", format!("{:?}", d.stack_sizes())),
                ("shadow_arcs", sh.arc_count().to_string()),
                ("component_genera", format!("{:?}", comps.genera)),
                ("is_structure", member.to_string()),
            ];
            let out = match format {
                OutputFormat::Json => {
                    let v = json!({
                        "command": "classify",
                        "params": { "gamma": gamma, "tau": tau, "allow_one_arcs": allow_one_arcs },
                        "vertices": d.n(),
                        "arcs": d.arcs().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
                        "genus": d.genus(),
                        "one_arcs": d.one_arc_count(),
                        "stack_sizes": d.stack_sizes(),
                        "shadow_arcs": sh.arc_count(),
                        "component_genera": comps.genera,
                        "is_structure": member,
                    });
                    format!("{v}\n")
                }
                OutputFormat::Csv => {
                    let mut s = String::from("property,value\n");
                    for (k, v) in &rows {
                        s.push_str(&format!("{k},\"{v}\"\n"));
                    }
                    s
                }
                OutputFormat::Text => rows.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
            };
            ok(out)
        }
        Command::Verify { level } => {
            let report = verify::verify(level, &config);
            Ok(Outcome {
                text: report.render(format),
                code: if report.passed() { 0 } else { 2 },
            })
        }
        Command::Cache { action } => {
            let cache = config.cache();
            match action {
                CacheAction::Status => {
                    let entries = cache.status()?;
                    let out = match format {
                        OutputFormat::Json => {
                            let files: Vec<_> = entries.iter().map(|e| json!({ "name": e.name, "bytes": e.bytes })).collect();
                            format!("{}\n", json!({ "dir": cache.dir().display().to_string(), "files": files }))
                        }
                        OutputFormat::Csv => {
                            let mut s = String::from("name,bytes\n");
                            for e in &entries {
                                s.push_str(&format!("{},{}\n", e.name, e.bytes));
                            }
                            s
                        }
                        OutputFormat::Text => {
                            let mut s = format!("{}: {} files\n", cache.dir().display(), entries.len());
                            for e in &entries {
                                s.push_str(&format!("{} {}\n", e.name, e.bytes));
                            }
                            s
                        }
                    };
                    ok(out)
                }
                CacheAction::Clear => {
                    let n = cache.clear()?;
                    ok(format!("removed {n} files from {}\n", cache.dir().display()))
                }
            }
        }
    }
}

/// Parses `argv`, runs the command and writes its output; returns the exit
/// code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.text.as_bytes());
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("config.json");
        fs::write(&cfg, json!({ "cache_dir": dir.path().join("cache") }).to_string()).unwrap();
        let mut argv = vec!["gammaenum", "--config", cfg.to_str().unwrap()];
        argv.extend_from_slice(args);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn structures_prefix() {
        let (code, out, _) = call(&["structures", "--gamma", "1", "--tau", "1", "--length", "4", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["coefficients"], json!(["1", "1", "1", "2", "5"]));
        assert_eq!(v["command"], "structures");
        assert_eq!(v["params"]["gamma"], 1);
    }

    #[test]
    fn shadows_text() {
        let (code, out, _) = call(&["shadows", "--genus", "2", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("I_2(z) = z^4(1+z)^4(17+92z+96z^2)\n"), "{out}");
        assert!(out.contains("coefficients: 0, 0, 0, 0, 17, 160, 566, 1004, 961, 476, 96"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["hseries", "--gamma", "0", "--terms", "3"]).0, 1);
        assert_eq!(call(&["bogus"]).0, 1);
        assert_eq!(call(&["asymptotics", "--gamma", "1", "--with-one-arcs"]).0, 1);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }
}
