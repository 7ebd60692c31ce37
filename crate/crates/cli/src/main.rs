use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use fibwork::commands::{self, CatalanRow, DEFAULT_MAX_DEGREE};
use fibwork::record::write_csv;
use fibwork::{Budget, Cache, CliError, CliResult, Route, RunOptions, Selector};
use fibwork_core::lab::Finding;
use fibwork_core::tiling::DEFAULT_ENUMERATION_CAP;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "fibwork",
    version,
    about = "Exact q-Fibonomial sweeps, oracle checks and figures"
)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Result cache directory; no caching when unset.
    #[arg(long, global = true, env = "FIBWORK_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, global = true, value_enum, default_value = "default")]
    budget: Budget,
    /// q-Fibonomial algorithm; defaults to division, or ratios under the
    /// extended budget.
    #[arg(long, global = true, value_enum)]
    route: Option<Route>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of one q-Fibonomial plus its sweep record.
    Fibonomial {
        m: usize,
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u64,
    },
    /// Symmetry and unimodality over a grid of (m, n).
    VerifyConjecture {
        #[arg(long)]
        max_sum: Option<usize>,
        #[arg(long)]
        square_max: Option<usize>,
        /// Per-pair time limit in seconds.
        #[arg(long)]
        pair_timeout: Option<u64>,
    },
    /// Tiling enumeration against polynomial division.
    OracleCheck {
        #[arg(long)]
        max_sum: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// SVG of one tiling or of the chain gallery.
    Render {
        m: usize,
        n: usize,
        /// first, last, index=I, file=PATH, weight25 or chains
        #[arg(default_value = "first")]
        selector: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// q-FiboCatalan divisibility, non-negativity and telescoping checks.
    FibocatalanSweep {
        #[arg(long)]
        max_sum: Option<usize>,
    },
    /// Product-conjecture predicate against direct expansion.
    LabScan {
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        r_max: Option<usize>,
        #[arg(long)]
        value_max: Option<usize>,
    },
    /// Chain decomposition of T_(m,2).
    Chains {
        m: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        /// Include every tiling of every block.
        #[arg(long)]
        with_tilings: bool,
        /// Also write the gallery SVG here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn write_text(path: Option<&Path>, text: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => io::stdout().write_all(text).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut text = serde_json::to_vec_pretty(value).expect("reports serialize");
    text.push(b'\n');
    text
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| CliError::io("<csv>", e.into_error()))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::io("<csv>", io::Error::other(e))
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct CatalanCsv {
    m: usize,
    n: usize,
    gcd: usize,
    divisible: bool,
    nonnegative: Option<bool>,
    telescoping_agrees: Option<bool>,
    fibonomial_unimodal: bool,
    coeffs: String,
}

impl From<&CatalanRow> for CatalanCsv {
    fn from(r: &CatalanRow) -> Self {
        CatalanCsv {
            m: r.m,
            n: r.n,
            gcd: r.gcd,
            divisible: r.divisible,
            nonnegative: r.nonnegative,
            telescoping_agrees: r.telescoping_agrees,
            fibonomial_unimodal: r.fibonomial_unimodal,
            coeffs: r.coeffs.as_deref().map(joined).unwrap_or_default(),
        }
    }
}

#[derive(Serialize)]
struct FindingCsv {
    kind: &'static str,
    a: String,
    b: usize,
    r: usize,
    unimodal: bool,
    predicate: bool,
}

impl From<&Finding> for FindingCsv {
    fn from(f: &Finding) -> Self {
        FindingCsv {
            kind: match f.kind {
                fibwork_core::lab::FindingKind::SufficiencyViolation => "SUFFICIENCY_VIOLATION",
                fibwork_core::lab::FindingKind::NecessityViolation => "NECESSITY_VIOLATION",
            },
            a: joined(&f.a),
            b: f.b,
            r: f.r,
            unimodal: f.unimodal,
            predicate: f.predicate,
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let cache = cli.cache_dir.as_ref().map(Cache::open).transpose()?;
    let mut opts = RunOptions {
        jobs: cli.jobs,
        cache,
        route: cli.route.unwrap_or(cli.budget.route()),
        pair_timeout: cli.budget.pair_timeout(),
    };
    let out = cli.output.as_deref();
    let csv = cli.format == Format::Csv;

    match cli.command {
        Command::Fibonomial { m, n, max_degree } => {
            let result = commands::fibonomial(m, n, max_degree, &opts)?;
            let bytes = if csv {
                let mut buf = Vec::new();
                write_csv(std::slice::from_ref(&result.record), &mut buf).map_err(csv_error)?;
                buf
            } else {
                json(&result)
            };
            write_text(out, &bytes)
        }
        Command::VerifyConjecture {
            max_sum,
            square_max,
            pair_timeout,
        } => {
            if let Some(secs) = pair_timeout {
                opts.pair_timeout = Some(Duration::from_secs(secs));
            }
            let max_sum = max_sum.unwrap_or(cli.budget.verify_max_sum());
            let square_max = square_max.unwrap_or(cli.budget.square_max());
            let report = commands::verify_conjecture(max_sum, square_max, &opts)?;
            let bytes = if csv {
                let mut buf = Vec::new();
                write_csv(&report.records, &mut buf).map_err(csv_error)?;
                buf
            } else {
                json(&report)
            };
            write_text(out, &bytes)?;
            let s = &report.summary;
            eprintln!(
                "verify-conjecture: {} pairs, {} not unimodal, {} not symmetric, {} swap mismatches, {} timed out",
                s.pairs,
                s.not_unimodal.len(),
                s.not_symmetric.len(),
                s.swap_mismatches.len(),
                s.timed_out.len()
            );
            if s.has_findings() {
                return Err(CliError::Finding(format!(
                    "not unimodal {:?}, not symmetric {:?}, swap mismatches {:?}",
                    s.not_unimodal, s.not_symmetric, s.swap_mismatches
                )));
            }
            Ok(())
        }
        Command::OracleCheck { max_sum, cap } => {
            let max_sum = max_sum.unwrap_or(cli.budget.oracle_max_sum());
            let report = commands::oracle_check(max_sum, cap, &opts)?;
            let bytes = if csv { csv_rows(&report.pairs)? } else { json(&report) };
            write_text(out, &bytes)?;
            let mismatches = report.mismatches();
            eprintln!(
                "oracle-check: {} pairs, {} chain rows, {} mismatches",
                report.pairs.len(),
                report.chain_rows.len(),
                mismatches.len()
            );
            if !mismatches.is_empty() {
                return Err(CliError::Finding(mismatches.join("; ")));
            }
            Ok(())
        }
        Command::Render { m, n, selector, cap } => {
            let selector: Selector = selector.parse()?;
            let svg = commands::render(m, n, &selector, cap)?;
            write_text(out, svg.as_bytes())
        }
        Command::FibocatalanSweep { max_sum } => {
            let max_sum = max_sum.unwrap_or(cli.budget.fibocatalan_max_sum());
            let rows = commands::fibocatalan_sweep(max_sum, &opts)?;
            let bytes = if csv {
                csv_rows(rows.iter().map(CatalanCsv::from))?
            } else {
                json(&rows)
            };
            write_text(out, &bytes)?;
            let bad: Vec<(usize, usize)> = rows
                .iter()
                .filter(|r| r.contradicts_theorem())
                .map(|r| (r.m, r.n))
                .collect();
            eprintln!(
                "fibocatalan-sweep: {} pairs, {} divisible, {} contradicting",
                rows.len(),
                rows.iter().filter(|r| r.divisible).count(),
                bad.len()
            );
            if !bad.is_empty() {
                return Err(CliError::Finding(format!("q-FiboCatalan claims fail at {bad:?}")));
            }
            Ok(())
        }
        Command::LabScan {
            k_max,
            r_max,
            value_max,
        } => {
            let (k, r, v) = cli.budget.lab_bounds();
            let report = commands::lab_scan(k_max.unwrap_or(k), r_max.unwrap_or(r), value_max.unwrap_or(v), &opts)?;
            let bytes = if csv {
                csv_rows(report.findings.iter().map(FindingCsv::from))?
            } else {
                let mut buf = Vec::new();
                for f in &report.findings {
                    serde_json::to_writer(&mut buf, f).expect("findings serialize");
                    buf.push(b'\n');
                }
                buf
            };
            write_text(out, &bytes)?;
            let s = &report.summary;
            eprintln!(
                "lab-scan: {} specs, {} sufficiency violations, {} necessity violations ({} in the claimed regime)",
                s.specs, s.sufficiency_violations, s.necessity_violations, s.necessity_violations_in_regime
            );
            let bad: Vec<&Finding> = report.findings.iter().filter(|f| f.contradicts_theorem()).collect();
            if !bad.is_empty() {
                return Err(CliError::Finding(format!("findings contradict a proven case: {bad:?}")));
            }
            Ok(())
        }
        Command::Chains {
            m,
            cap,
            with_tilings,
            svg,
        } => {
            let (report, blocks) = commands::chains(m, cap, with_tilings)?;
            let bytes = if csv {
                #[derive(Serialize)]
                struct Row {
                    size: usize,
                    min_degree: u64,
                    max_degree: u64,
                    top_row_signature: String,
                }
                csv_rows(report.blocks.iter().map(|b| Row {
                    size: b.size,
                    min_degree: b.min_degree,
                    max_degree: b.max_degree,
                    top_row_signature: joined(&b.top_row_signature),
                }))?
            } else {
                json(&report)
            };
            write_text(out, &bytes)?;
            if let Some(path) = svg {
                let picture = fibwork_core::svg::render_chains(&blocks);
                fs::write(&path, picture).map_err(|e| CliError::io(&path, e))?;
            }
            if report.contradicts_theorem() {
                return Err(CliError::Finding(format!(
                    "T_({m}, 2): {} blocks (expected {}), block sum matches closed form: {}",
                    report.blocks.len(),
                    report.expected_blocks,
                    report.sum_matches_closed_form
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fibwork: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
