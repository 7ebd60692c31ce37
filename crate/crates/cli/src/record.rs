use std::io::Write;

use fibwork_core::Polynomial;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// One `(m, n) → verdict` row of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub m: usize,
    pub n: usize,
    pub degree: usize,
    pub peak_coeff: String,
    pub symmetric: bool,
    pub unimodal: bool,
    pub log_concave: bool,
    pub wall_time_ms: u64,
    /// SHA-256 of the comma-joined decimal coefficients.
    pub checksum: String,
    #[serde(default)]
    pub timed_out: bool,
}

impl SweepRecord {
    pub fn from_polynomial(m: usize, n: usize, p: &Polynomial, wall_time_ms: u64) -> CliResult<Self> {
        let degree = p
            .degree()
            .ok_or_else(|| CliError::Invalid(format!("zero polynomial for ({m}, {n})")))?;
        Ok(SweepRecord {
            m,
            n,
            degree,
            peak_coeff: p.peak().to_string(),
            symmetric: p.is_symmetric()?,
            unimodal: p.is_unimodal()?,
            log_concave: p.is_log_concave()?,
            wall_time_ms,
            checksum: checksum(p),
            timed_out: false,
        })
    }

    /// Placeholder for a pair whose computation outlived its time limit.
    pub fn timed_out(m: usize, n: usize, wall_time_ms: u64) -> Self {
        SweepRecord {
            m,
            n,
            degree: 0,
            peak_coeff: String::new(),
            symmetric: false,
            unimodal: false,
            log_concave: false,
            wall_time_ms,
            checksum: String::new(),
            timed_out: true,
        }
    }

    /// Verdicts and checksum agree with `p`; timing is ignored.
    pub fn matches(&self, p: &Polynomial) -> CliResult<bool> {
        let fresh = SweepRecord::from_polynomial(self.m, self.n, p, self.wall_time_ms)?;
        Ok(fresh == *self)
    }
}

pub fn checksum(p: &Polynomial) -> String {
    let text = p.to_decimal_strings().join(",");
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    m: usize,
    n: usize,
    degree: usize,
    peak_coeff: &'a str,
    symmetric: bool,
    unimodal: bool,
    log_concave: bool,
    ms: u64,
}

/// Header row then one line per record, columns
/// `m, n, degree, peak_coeff, symmetric, unimodal, log_concave, ms`.
pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record([
            "m",
            "n",
            "degree",
            "peak_coeff",
            "symmetric",
            "unimodal",
            "log_concave",
            "ms",
        ])?;
    }
    for r in records {
        w.serialize(CsvRow {
            m: r.m,
            n: r.n,
            degree: r.degree,
            peak_coeff: &r.peak_coeff,
            symmetric: r.symmetric,
            unimodal: r.unimodal,
            log_concave: r.log_concave,
            ms: r.wall_time_ms,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_for_three_three() {
        let p = fibwork_core::qfibonomial(3, 3).unwrap();
        let r = SweepRecord::from_polynomial(3, 3, &p, 0).unwrap();
        assert_eq!((r.degree, r.peak_coeff.as_str()), (12, "8"));
        assert!(r.symmetric && r.unimodal && !r.log_concave);
        assert!(r.matches(&p).unwrap());
        assert_eq!(
            r.checksum,
            checksum(&Polynomial::from_i64s(&[1, 2, 4, 5, 7, 7, 8, 7, 7, 5, 4, 2, 1]))
        );
    }

    #[test]
    fn csv_header_order() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "m,n,degree,peak_coeff,symmetric,unimodal,log_concave,ms\n"
        );

        let p = fibwork_core::qfibonomial(2, 2).unwrap();
        let mut buf = Vec::new();
        write_csv(&[SweepRecord::from_polynomial(2, 2, &p, 7).unwrap()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1), Some("2,2,3,2,true,true,true,7"));
    }
}
