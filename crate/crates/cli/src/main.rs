//! Command-line front-end: run the identity-verification suite, emit the
//! Franel tables, evaluate series at given points, and produce scan CSVs.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hlzeta::report::IdentityReport;
use hlzeta::suite::{self, SuiteConfig};
use hlzeta::Error;

#[derive(Parser)]
#[command(
    name = "hlzeta",
    about = "Verification workbench for the series sum sin(x/n)/n and its identities",
    version
)]
struct Cli {
    /// Flat key=value config file (sieve_bound, jobs, format, out, tol.<id>)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output to this file as well as stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Per-identity tolerance override, ID=VALUE (repeatable)
    #[arg(long = "tol", global = true)]
    tol: Vec<String>,
    /// Worker threads for the suite
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Franel2,
    Franel1,
    AnCoeffs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanKind {
    GrowthF,
    Davenport,
    Saffari,
    MobiusExp,
    Bod,
    DivisorSum,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run identity checks matching a selector ('all' or wildcards like kubert.*)
    Verify {
        #[arg(default_value = "all")]
        selector: String,
    },
    /// Emit a deterministic CSV table
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long, default_value_t = 4)]
        n_max: u64,
        #[arg(long, default_value_t = 4)]
        m_max: u64,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[arg(long, default_value_t = 20)]
        count: u32,
        #[arg(long, default_value_t = 11)]
        points: usize,
    },
    /// Emit growth / trend scan data
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        #[arg(long, default_value_t = 10.0)]
        x_min: f64,
        #[arg(long, default_value_t = 1e6)]
        x_max: f64,
        #[arg(long, default_value_t = 40)]
        points: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.3)]
        x: f64,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
    },
    /// Evaluate one series at a point (kinds: f, fcos, sin2, g, chi,
    /// chi_tilde, gnu, zeta, theta4, theta4_cubed, epstein_q1, epstein_q2)
    Eval {
        kind: String,
        x: f64,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        nu: Option<f64>,
    },
}

fn parse_config_file(path: &PathBuf) -> Result<BTreeMap<String, String>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        what: format!("cannot read {}: {e}", path.display()),
    })?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Config {
            what: format!("{}:{}: expected key=value", path.display(), lineno + 1),
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

struct Resolved {
    suite: SuiteConfig,
    format: Format,
    out: Option<PathBuf>,
}

fn resolve_config(cli: &Cli) -> Result<Resolved, Error> {
    let file = match &cli.config {
        Some(p) => parse_config_file(p)?,
        None => BTreeMap::new(),
    };
    let mut suite = SuiteConfig::default();
    if let Some(v) = file.get("sieve_bound") {
        suite.sieve_bound = v.parse().map_err(|_| Error::Config {
            what: format!("bad sieve_bound '{v}'"),
        })?;
    }
    if let Some(v) = file.get("jobs") {
        suite.parallelism = v.parse().map_err(|_| Error::Config {
            what: format!("bad jobs '{v}'"),
        })?;
    }
    for (k, v) in &file {
        if let Some(id) = k.strip_prefix("tol.") {
            let tol: f64 = v.parse().map_err(|_| Error::Config {
                what: format!("bad tolerance '{v}' for {id}"),
            })?;
            suite.tolerance_overrides.insert(id.to_string(), tol);
        }
    }
    // command-line flags override the file
    if let Some(j) = cli.jobs {
        suite.parallelism = j;
    }
    for spec in &cli.tol {
        let (id, v) = spec.split_once('=').ok_or_else(|| Error::Config {
            what: format!("--tol expects ID=VALUE, got '{spec}'"),
        })?;
        let tol: f64 = v.parse().map_err(|_| Error::Config {
            what: format!("bad tolerance '{v}' for {id}"),
        })?;
        suite.tolerance_overrides.insert(id.to_string(), tol);
    }
    let format = cli
        .format
        .unwrap_or(match file.get("format").map(String::as_str) {
            Some("jsonl") => Format::Jsonl,
            _ => Format::Csv,
        });
    let out = cli
        .out
        .clone()
        .or_else(|| file.get("out").map(PathBuf::from));
    suite.output_path = out.as_ref().map(|p| p.display().to_string());
    Ok(Resolved { suite, format, out })
}

fn emit(lines: &[String], out: &Option<PathBuf>) -> std::io::Result<()> {
    let mut stdout = std::io::stdout().lock();
    for line in lines {
        writeln!(stdout, "{line}")?;
    }
    if let Some(path) = out {
        let mut buf = String::new();
        for line in lines {
            buf.push_str(line);
            buf.push('\n');
        }
        std::fs::write(path, buf)?;
    }
    Ok(())
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    let resolved = resolve_config(&cli)?;
    let write_err = |e: std::io::Error| Error::Config {
        what: format!("write failed: {e}"),
    };
    match &cli.cmd {
        Cmd::Verify { selector } => {
            let results = suite::run_suite(selector, &resolved.suite)?;
            let mut lines = Vec::with_capacity(results.len() + 1);
            if resolved.format == Format::Csv {
                lines.push(IdentityReport::csv_header().to_string());
            }
            let mut any_fail = false;
            let mut any_error = false;
            for (id, rep) in &results {
                match rep {
                    Ok(r) => {
                        if !r.pass {
                            any_fail = true;
                        }
                        lines.push(match resolved.format {
                            Format::Csv => r.to_csv_row(),
                            Format::Jsonl => r.to_jsonl(),
                        });
                    }
                    Err(e) => {
                        any_error = true;
                        lines.push(match resolved.format {
                            Format::Csv => format!("{id},,,,,error,\"{e}\""),
                            Format::Jsonl => {
                                format!("{{\"identity_id\":\"{id}\",\"error\":\"{e}\"}}")
                            }
                        });
                    }
                }
            }
            emit(&lines, &resolved.out).map_err(write_err)?;
            Ok(if any_error {
                2
            } else if any_fail {
                1
            } else {
                0
            })
        }
        Cmd::Table {
            kind,
            n_max,
            m_max,
            theta,
            count,
            points,
        } => {
            let rows = match kind {
                TableKind::Franel2 => suite::franel2_table_rows(*n_max, *m_max)?,
                TableKind::Franel1 => suite::franel1_table_rows(*points)?,
                TableKind::AnCoeffs => suite::an_table_rows(*theta, *count)?,
            };
            emit(&rows, &resolved.out).map_err(write_err)?;
            Ok(0)
        }
        Cmd::Scan {
            kind,
            x_min,
            x_max,
            points,
            epsilon,
            x,
            theta,
        } => {
            let rows = match kind {
                ScanKind::GrowthF => suite::growth_scan_rows(*x_min, *x_max, *points, *epsilon)?,
                ScanKind::Davenport => {
                    let grid: Vec<u64> = (1..=(*points).max(2))
                        .map(|i| {
                            let t = i as f64 / *points as f64;
                            10f64.powf(1.0 + 4.0 * t) as u64
                        })
                        .collect();
                    suite::davenport_scan_rows(*x, &grid)?
                }
                ScanKind::Saffari => {
                    let grid: Vec<f64> = (0..(*points).max(2))
                        .map(|i| {
                            let t = i as f64 / (*points - 1).max(1) as f64;
                            x_min * (x_max / x_min).powf(t)
                        })
                        .collect();
                    suite::saffari_scan_rows(&grid)?
                }
                ScanKind::MobiusExp => {
                    let grid: Vec<u64> = (1..=(*points).max(2))
                        .map(|i| {
                            let t = i as f64 / *points as f64;
                            10f64.powf(1.0 + 4.0 * t) as u64
                        })
                        .collect();
                    suite::mobius_scan_rows(&grid, &[0.0, 0.125, *x, 0.618033988749])?
                }
                ScanKind::Bod => {
                    let grid: Vec<u64> = (1..=(*points).max(2))
                        .map(|i| {
                            let t = i as f64 / *points as f64;
                            10f64.powf(1.0 + 4.0 * t) as u64
                        })
                        .collect();
                    suite::bod_scan_rows(*theta, *x, &grid)?
                }
                ScanKind::DivisorSum => {
                    let grid: Vec<f64> = (0..(*points).max(2))
                        .map(|i| {
                            let t = i as f64 / (*points - 1).max(1) as f64;
                            (x_min * (x_max / x_min).powf(t)).round() + 0.5
                        })
                        .collect();
                    suite::divisor_scan_rows(&grid)?
                }
            };
            emit(&rows, &resolved.out).map_err(write_err)?;
            Ok(0)
        }
        Cmd::Eval { kind, x, s, nu } => {
            let (value, bound) = suite::eval_point(kind, *x, *s, *nu)?;
            let lines = vec![format!(
                "{kind}({x}) = {} +- {}",
                IdentityReport::fmt_float(value),
                IdentityReport::fmt_float(bound)
            )];
            emit(&lines, &resolved.out).map_err(write_err)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
