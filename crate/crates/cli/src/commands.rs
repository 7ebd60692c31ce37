//! The work behind each subcommand, returning structured reports. Printing
//! and exit codes live in the binary.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::mpsc::{self, RecvTimeoutError};
use std::thread;
use std::time::{Duration, Instant};

use fibwork_core::chains::{decompose, interval_sum, ChainBlock};
use fibwork_core::fibonomial::{closed_form_n2, fibocat_coeffs_via_telescoping, fibocatalan_finding, FibonomialQuery};
use fibwork_core::lab::{conjecture52_scan, ScanReport};
use fibwork_core::tiling::{enumerate_tilings, tiling_count, tiling_polynomial, weight25_tiling, Tiling};
use fibwork_core::{fib, svg, Polynomial};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::{cached_qfibonomial, Cache, Route};
use crate::error::{CliError, CliResult};
use crate::record::SweepRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Budget {
    Default,
    Extended,
}

impl Budget {
    pub fn verify_max_sum(self) -> usize {
        match self {
            Budget::Default => 14,
            Budget::Extended => 20,
        }
    }

    pub fn square_max(self) -> usize {
        match self {
            Budget::Default => 8,
            Budget::Extended => 16,
        }
    }

    pub fn oracle_max_sum(self) -> usize {
        match self {
            Budget::Default => 8,
            Budget::Extended => 10,
        }
    }

    pub fn fibocatalan_max_sum(self) -> usize {
        match self {
            Budget::Default => 12,
            Budget::Extended => 20,
        }
    }

    /// `(k_max, r_max, value_max)` for the product-conjecture scan.
    pub fn lab_bounds(self) -> (usize, usize, usize) {
        match self {
            Budget::Default => (4, 4, 8),
            Budget::Extended => (5, 6, 8),
        }
    }

    pub fn route(self) -> Route {
        match self {
            Budget::Default => Route::Division,
            Budget::Extended => Route::Ratios,
        }
    }

    pub fn pair_timeout(self) -> Option<Duration> {
        match self {
            Budget::Default => None,
            Budget::Extended => Some(Duration::from_secs(600)),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker count; 0 lets rayon decide.
    pub jobs: usize,
    pub cache: Option<Cache>,
    pub route: Route,
    /// Pairs still running after this long are recorded as timed out and
    /// abandoned.
    pub pair_timeout: Option<Duration>,
}

impl RunOptions {
    fn pool(&self) -> CliResult<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| CliError::Invalid(format!("thread pool: {e}")))
    }
}

pub const DEFAULT_MAX_DEGREE: u64 = 1_000_000;

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Index of the first coefficient where `a` and `b` differ.
pub fn first_difference(a: &Polynomial, b: &Polynomial) -> Option<usize> {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len).find(|&k| a.coeff(k) != b.coeff(k))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibonomialOutput {
    pub coeffs: Vec<String>,
    pub record: SweepRecord,
}

pub fn fibonomial(m: usize, n: usize, max_degree: u64, opts: &RunOptions) -> CliResult<FibonomialOutput> {
    let projected = FibonomialQuery::new(m, n).degree();
    if projected > max_degree.into() {
        return Err(CliError::Refusal(format!(
            "projected degree {projected} of qfibonomial({m}, {n}) exceeds cap {max_degree}"
        )));
    }
    let start = Instant::now();
    let p = cached_qfibonomial(opts.cache.as_ref(), opts.route, m, n)?;
    let mut record = SweepRecord::from_polynomial(m, n, &p, 0)?;
    record.wall_time_ms = elapsed_ms(start);
    Ok(FibonomialOutput {
        coeffs: p.to_decimal_strings(),
        record,
    })
}

/// All `(m, n)` with `m, n ≥ 1` and `m + n ≤ max_sum`, plus `(k, k)` for
/// `k ≤ square_max`, sorted.
pub fn verify_pairs(max_sum: usize, square_max: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (1..max_sum)
        .flat_map(|m| (1..=max_sum - m).map(move |n| (m, n)))
        .chain((1..=square_max).map(|k| (k, k)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub pairs: usize,
    pub timed_out: Vec<(usize, usize)>,
    pub not_unimodal: Vec<(usize, usize)>,
    pub not_symmetric: Vec<(usize, usize)>,
    /// Pairs whose record differs from the record of `(n, m)`.
    pub swap_mismatches: Vec<(usize, usize)>,
    pub log_concave: usize,
}

impl VerifySummary {
    pub fn has_findings(&self) -> bool {
        !(self.not_unimodal.is_empty() && self.not_symmetric.is_empty() && self.swap_mismatches.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub records: Vec<SweepRecord>,
    pub summary: VerifySummary,
}

fn sweep_pair(m: usize, n: usize, opts: &RunOptions) -> CliResult<SweepRecord> {
    let start = Instant::now();
    let p = match opts.pair_timeout {
        None => cached_qfibonomial(opts.cache.as_ref(), opts.route, m, n)?,
        Some(limit) => {
            let (tx, rx) = mpsc::channel();
            let (cache, route) = (opts.cache.clone(), opts.route);
            thread::spawn(move || {
                let _ = tx.send(cached_qfibonomial(cache.as_ref(), route, m, n));
            });
            match rx.recv_timeout(limit) {
                Ok(result) => result?,
                Err(RecvTimeoutError::Timeout) => return Ok(SweepRecord::timed_out(m, n, elapsed_ms(start))),
                Err(RecvTimeoutError::Disconnected) => {
                    return Err(CliError::Invalid(format!("worker for ({m}, {n}) died")))
                }
            }
        }
    };
    let mut record = SweepRecord::from_polynomial(m, n, &p, 0)?;
    record.wall_time_ms = elapsed_ms(start);
    Ok(record)
}

pub fn verify_conjecture(max_sum: usize, square_max: usize, opts: &RunOptions) -> CliResult<VerifyReport> {
    let pairs = verify_pairs(max_sum, square_max);
    let records: Vec<SweepRecord> = opts.pool()?.install(|| {
        pairs
            .par_iter()
            .map(|&(m, n)| sweep_pair(m, n, opts))
            .collect::<CliResult<_>>()
    })?;

    let mut summary = VerifySummary {
        pairs: records.len(),
        ..VerifySummary::default()
    };
    for r in &records {
        if r.timed_out {
            summary.timed_out.push((r.m, r.n));
            continue;
        }
        if !r.unimodal {
            summary.not_unimodal.push((r.m, r.n));
        }
        if !r.symmetric {
            summary.not_symmetric.push((r.m, r.n));
        }
        if r.log_concave {
            summary.log_concave += 1;
        }
        if r.m < r.n {
            let swapped = records.binary_search_by_key(&(r.n, r.m), |s| (s.m, s.n));
            if let Ok(i) = swapped {
                let s = &records[i];
                if !s.timed_out && (s.checksum != r.checksum || s.degree != r.degree) {
                    summary.swap_mismatches.push((r.m, r.n));
                }
            }
        }
    }
    Ok(VerifyReport { records, summary })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePair {
    pub m: usize,
    pub n: usize,
    pub tilings: String,
    pub equal: bool,
    pub first_difference: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRow {
    pub m: usize,
    pub blocks: usize,
    /// Sum of the block interval polynomials equals the closed form.
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub pairs: Vec<OraclePair>,
    pub chain_rows: Vec<ChainRow>,
}

impl OracleReport {
    pub fn mismatches(&self) -> Vec<String> {
        let pairs = self.pairs.iter().filter(|p| !p.equal).map(|p| {
            format!(
                "tiling_polynomial({}, {}) differs from qfibonomial at coefficient {}",
                p.m,
                p.n,
                p.first_difference.unwrap_or(0)
            )
        });
        let rows = self
            .chain_rows
            .iter()
            .filter(|r| !r.equal)
            .map(|r| format!("chain blocks of T_({}, 2) do not sum to the closed form", r.m));
        pairs.chain(rows).collect()
    }
}

/// Tiling enumeration against division for every `m + n ≤ max_sum`
/// (zeros included), and chain reconstruction for the `n = 2` row.
pub fn oracle_check(max_sum: usize, cap: u64, opts: &RunOptions) -> CliResult<OracleReport> {
    let pairs: Vec<(usize, usize)> = (0..=max_sum)
        .flat_map(|m| (0..=max_sum - m).map(move |n| (m, n)))
        .collect();
    let total: num_bigint::BigUint = pairs.iter().map(|&(m, n)| tiling_count(m, n)).sum();
    if total > cap.into() {
        return Err(fibwork_core::Error::CapExceeded {
            projected: total.to_string(),
            cap,
        }
        .into());
    }
    let pool = opts.pool()?;
    let checked = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(m, n)| -> CliResult<OraclePair> {
                let oracle = tiling_polynomial(m, n, cap)?;
                let direct = cached_qfibonomial(opts.cache.as_ref(), opts.route, m, n)?;
                let first_difference = first_difference(&oracle, &direct);
                Ok(OraclePair {
                    m,
                    n,
                    tilings: tiling_count(m, n).to_string(),
                    equal: first_difference.is_none(),
                    first_difference,
                })
            })
            .collect::<CliResult<Vec<_>>>()
    })?;
    let rows: Vec<usize> = (1..=max_sum.saturating_sub(2)).collect();
    let chain_rows = pool.install(|| {
        rows.par_iter()
            .map(|&m| -> CliResult<ChainRow> {
                let blocks = decompose(m, cap)?;
                let sum = interval_sum(&blocks);
                Ok(ChainRow {
                    m,
                    blocks: blocks.len(),
                    equal: sum == closed_form_n2(m)? && sum == *fibwork_core::qfibonomial(m, 2)?,
                })
            })
            .collect::<CliResult<Vec<_>>>()
    })?;
    Ok(OracleReport {
        pairs: checked,
        chain_rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalanRow {
    pub m: usize,
    pub n: usize,
    pub gcd: usize,
    pub divisible: bool,
    pub nonnegative: Option<bool>,
    /// `None` outside `gcd ∈ {1, 2}`, where the telescoping form is not claimed.
    pub telescoping_agrees: Option<bool>,
    pub fibonomial_unimodal: bool,
    pub coeffs: Option<Vec<String>>,
}

impl CatalanRow {
    /// `gcd ∈ {1, 2}` but the division, the telescoping form or (given a
    /// unimodal q-Fibonomial) non-negativity failed.
    pub fn contradicts_theorem(&self) -> bool {
        if self.gcd > 2 {
            return false;
        }
        !self.divisible
            || self.telescoping_agrees != Some(true)
            || (self.fibonomial_unimodal && self.nonnegative != Some(true))
    }
}

pub fn fibocatalan_sweep(max_sum: usize, opts: &RunOptions) -> CliResult<Vec<CatalanRow>> {
    let pairs = verify_pairs(max_sum, 0);
    opts.pool()?.install(|| {
        pairs
            .par_iter()
            .map(|&(m, n)| -> CliResult<CatalanRow> {
                let finding = fibocatalan_finding(m, n)?;
                let telescoping_agrees = if finding.gcd <= 2 {
                    let t = fibocat_coeffs_via_telescoping(m, n)?;
                    Some(finding.polynomial.as_ref() == Some(&t))
                } else {
                    None
                };
                let fibonomial_unimodal = cached_qfibonomial(opts.cache.as_ref(), opts.route, m, n)?.is_unimodal()?;
                Ok(CatalanRow {
                    m,
                    n,
                    gcd: finding.gcd,
                    divisible: finding.divisible,
                    nonnegative: finding.nonnegative,
                    telescoping_agrees,
                    fibonomial_unimodal,
                    coeffs: finding.polynomial.as_ref().map(Polynomial::to_decimal_strings),
                })
            })
            .collect()
    })
}

pub fn lab_scan(k_max: usize, r_max: usize, value_max: usize, opts: &RunOptions) -> CliResult<ScanReport> {
    Ok(opts.pool()?.install(|| conjecture52_scan(k_max, r_max, value_max))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub size: usize,
    pub min_degree: u64,
    pub max_degree: u64,
    pub top_row_signature: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tilings: Option<Vec<Tiling>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainsReport {
    pub m: usize,
    pub blocks: Vec<BlockSummary>,
    pub expected_blocks: u64,
    pub sum_matches_closed_form: bool,
}

impl ChainsReport {
    pub fn contradicts_theorem(&self) -> bool {
        !self.sum_matches_closed_form || self.blocks.len() as u64 != self.expected_blocks
    }
}

pub fn chains(m: usize, cap: u64, with_tilings: bool) -> CliResult<(ChainsReport, Vec<ChainBlock>)> {
    let blocks = decompose(m, cap)?;
    let report = ChainsReport {
        m,
        blocks: blocks
            .iter()
            .map(|b| BlockSummary {
                size: b.len(),
                min_degree: b.min_degree,
                max_degree: b.max_degree,
                top_row_signature: b.top_row_signature.clone(),
                tilings: with_tilings.then(|| b.tilings.clone()),
            })
            .collect(),
        expected_blocks: fib(m + 1).to_u64().unwrap_or(u64::MAX),
        sum_matches_closed_form: interval_sum(&blocks) == closed_form_n2(m)?,
    };
    Ok((report, blocks))
}

/// Which picture `render` draws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    First,
    Last,
    /// Position in enumeration order, 0-based.
    Index(usize),
    /// A tiling in JSON form.
    File(PathBuf),
    /// The `q^25` tiling of `T_{4,4}`.
    Weight25,
    /// The chain gallery of `T_{m,2}`.
    Chains,
}

impl FromStr for Selector {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "first" => Ok(Selector::First),
            "last" => Ok(Selector::Last),
            "weight25" => Ok(Selector::Weight25),
            "chains" => Ok(Selector::Chains),
            _ => {
                if let Some(i) = s.strip_prefix("index=") {
                    i.parse()
                        .map(Selector::Index)
                        .map_err(|_| CliError::Invalid(format!("bad index in selector {s:?}")))
                } else if let Some(p) = s.strip_prefix("file=") {
                    Ok(Selector::File(PathBuf::from(p)))
                } else {
                    Err(CliError::Invalid(format!(
                        "unknown selector {s:?} (first, last, index=I, file=PATH, weight25, chains)"
                    )))
                }
            }
        }
    }
}

pub fn render(m: usize, n: usize, selector: &Selector, cap: u64) -> CliResult<String> {
    let check_shape = |t: Tiling| -> CliResult<Tiling> {
        if (t.m(), t.n()) != (m, n) {
            return Err(CliError::Invalid(format!(
                "selected tiling lives in T_({}, {}), not T_({m}, {n})",
                t.m(),
                t.n()
            )));
        }
        Ok(t)
    };
    let tiling = match selector {
        Selector::Chains => {
            if n != 2 {
                return Err(CliError::Invalid("chains need n = 2".into()));
            }
            return Ok(svg::render_chains(&decompose(m, cap)?));
        }
        Selector::Weight25 => check_shape(weight25_tiling())?,
        Selector::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let t: Tiling =
                serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            check_shape(t)?
        }
        Selector::First => enumerate_tilings(m, n, cap)?
            .next()
            .ok_or_else(|| CliError::Invalid(format!("T_({m}, {n}) is empty")))?,
        Selector::Last => enumerate_tilings(m, n, cap)?
            .last()
            .ok_or_else(|| CliError::Invalid(format!("T_({m}, {n}) is empty")))?,
        Selector::Index(i) => enumerate_tilings(m, n, cap)?
            .nth(*i)
            .ok_or_else(|| CliError::Invalid(format!("T_({m}, {n}) has no tiling at index {i}")))?,
    };
    Ok(svg::render_tiling(&tiling))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_grid() {
        assert_eq!(verify_pairs(3, 2), vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(verify_pairs(0, 2), vec![(1, 1), (2, 2)]);
        assert_eq!(verify_pairs(14, 8).len(), 91 + 1);
    }

    #[test]
    fn selectors_parse() {
        assert_eq!("index=4".parse::<Selector>().unwrap(), Selector::Index(4));
        assert_eq!(
            "file=a.json".parse::<Selector>().unwrap(),
            Selector::File("a.json".into())
        );
        assert!("index=x".parse::<Selector>().is_err());
        assert!("middle".parse::<Selector>().is_err());
    }

    #[test]
    fn fibonomial_outputs() {
        let out = fibonomial(2, 2, DEFAULT_MAX_DEGREE, &RunOptions::default()).unwrap();
        assert_eq!(out.coeffs, ["1", "2", "2", "1"]);
        assert_eq!(
            fibonomial(0, 5, DEFAULT_MAX_DEGREE, &RunOptions::default())
                .unwrap()
                .coeffs,
            ["1"]
        );
        let out = fibonomial(3, 3, DEFAULT_MAX_DEGREE, &RunOptions::default()).unwrap();
        assert_eq!(out.coeffs.len(), 13);
        assert!(out.record.unimodal && !out.record.log_concave);
        let err = fibonomial(30, 30, DEFAULT_MAX_DEGREE, &RunOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("projected degree"));
    }

    #[test]
    fn small_verify_runs() {
        let opts = RunOptions::default();
        let report = verify_conjecture(10, 0, &opts).unwrap();
        assert_eq!(report.summary.pairs, 45);
        assert!(!report.summary.has_findings());
        let squares = verify_conjecture(0, 2, &opts).unwrap();
        let got: Vec<_> = squares.records.iter().map(|r| (r.m, r.n, r.unimodal)).collect();
        assert_eq!(got, vec![(1, 1, true), (2, 2, true)]);
    }

    #[test]
    fn oracle_small_and_refusal() {
        let opts = RunOptions::default();
        let report = oracle_check(6, fibwork_core::tiling::DEFAULT_ENUMERATION_CAP, &opts).unwrap();
        assert!(report.mismatches().is_empty());
        assert_eq!(report.chain_rows.len(), 4);
        let err = oracle_check(40, fibwork_core::tiling::DEFAULT_ENUMERATION_CAP, &opts).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("projected"));
    }

    #[test]
    fn fibocatalan_rows() {
        let rows = fibocatalan_sweep(6, &RunOptions::default()).unwrap();
        let find = |m, n| rows.iter().find(|r| (r.m, r.n) == (m, n)).unwrap();
        assert_eq!(
            find(2, 3).coeffs.as_deref(),
            Some(&["1".to_string(), "1".into(), "1".into()][..])
        );
        assert_eq!(find(1, 1).coeffs.as_deref(), Some(&["1".to_string()][..]));
        assert_eq!(find(3, 3).gcd, 3);
        assert_eq!(find(3, 3).telescoping_agrees, None);
        assert!(rows.iter().all(|r| !r.contradicts_theorem()));
    }

    #[test]
    fn render_examples() {
        let cap = fibwork_core::tiling::DEFAULT_ENUMERATION_CAP;
        assert!(render(4, 4, &Selector::Weight25, cap).unwrap().contains(">q^25</text>"));
        let gallery = render(3, 2, &Selector::Chains, cap).unwrap();
        assert_eq!(gallery.matches("<g class=\"chain\"").count(), 3);
        assert_eq!(gallery.matches("<polyline").count(), 15);
        assert!(render(2, 0, &Selector::First, cap).unwrap().contains(">q^0</text>"));
        assert!(render(3, 3, &Selector::Chains, cap).is_err());
        assert!(render(2, 2, &Selector::Index(6), cap).is_err());
        assert!(render(2, 2, &Selector::Index(5), cap).is_ok());
    }
}
