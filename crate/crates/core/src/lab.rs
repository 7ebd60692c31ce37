//! Unimodality of products of q-analogs `[a_1]_q ⋯ [a_k]_q [b]_{q^r}`.
//!
//! Every characterization here exists twice: as closed-form arithmetic and
//! as a direct expansion checked with [`Polynomial::is_unimodal`]. Tests and
//! the acceptance suite compare the two routes.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::poly::Polynomial;

/// `[a_1]_q ⋯ [a_k]_q [b]_{q^r}`. Plain factors are kept sorted ascending;
/// the product does not depend on their order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductSpec {
    pub plain_factors: Vec<usize>,
    pub b: usize,
    pub r: usize,
}

impl ProductSpec {
    pub fn new(mut plain_factors: Vec<usize>, b: usize, r: usize) -> Result<Self> {
        if plain_factors.contains(&0) || b == 0 || r == 0 {
            return domain("product factors, b and r must all be ≥ 1");
        }
        plain_factors.sort_unstable();
        Ok(ProductSpec { plain_factors, b, r })
    }

    pub fn k(&self) -> usize {
        self.plain_factors.len()
    }

    pub fn polynomial(&self) -> Polynomial {
        let mut acc = Polynomial::q_analog(self.b, self.r).expect("validated at construction");
        for &a in &self.plain_factors {
            acc = acc.mul_q_analog(a, 1).expect("validated at construction");
        }
        acc
    }
}

/// Coefficients of `[a]_q [b]_q` from the piecewise formula
/// `k+1`, then the plateau `min(a,b)`, then `a+b-1-k`.
pub fn prod2_coeffs(a: usize, b: usize) -> Result<Polynomial> {
    if a == 0 || b == 0 {
        return domain("prod2_coeffs needs a, b ≥ 1");
    }
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let coeffs = (0..=a + b - 2)
        .map(|k| {
            if k < a {
                k + 1
            } else if k < b {
                a
            } else {
                a + b - 1 - k
            }
        })
        .map(num_bigint::BigInt::from)
        .collect();
    Ok(Polynomial::from_coeffs(coeffs))
}

/// `[a]_q [b]_{q^r}` is unimodal iff `a ≥ r(b-1)` or `r | a`.
pub fn two_factor_unimodal_iff(a: usize, b: usize, r: usize) -> bool {
    a >= r * b.saturating_sub(1) || a.is_multiple_of(r)
}

/// Expansion route for [`two_factor_unimodal_iff`].
pub fn two_factor_unimodal_direct(a: usize, b: usize, r: usize) -> Result<bool> {
    ProductSpec::new(vec![a], b, r)?.polynomial().is_unimodal()
}

/// `[a]_q [b]_q [c]_{q^2}` is symmetric and unimodal iff `2c ≤ a+b` or one of
/// `a`, `b` is even.
pub fn triple_unimodal_iff(a: usize, b: usize, c: usize) -> bool {
    2 * c <= a + b || a.is_multiple_of(2) || b.is_multiple_of(2)
}

/// Expansion route for [`triple_unimodal_iff`]; also requires symmetry.
pub fn triple_unimodal_direct(a: usize, b: usize, c: usize) -> Result<bool> {
    let p = ProductSpec::new(vec![a, b], c, 2)?.polynomial();
    Ok(p.is_symmetric()? && p.is_unimodal()?)
}

fn require_odd(a: usize, name: &str) -> Result<()> {
    if a.is_multiple_of(2) {
        return domain(format!("{name} = {a} must be odd"));
    }
    Ok(())
}

/// `#{ℓ ∈ [0, c-1] : lo2 ≤ 2ℓ ≤ hi2}` with doubled integer bounds.
fn count_doubled(lo2: i64, hi2: i64, c: usize) -> u64 {
    let lo = Integer::div_ceil(&lo2, &2).max(0);
    let hi = Integer::div_floor(&hi2, &2).min(c as i64 - 1);
    (hi - lo + 1).max(0) as u64
}

/// `A(k) = #{ℓ ∈ [0, c-1] : (k-a+2)/2 ≤ ℓ ≤ (k+1)/2}`, `a` odd.
pub fn count_a(k: i64, a: usize, c: usize) -> Result<u64> {
    require_odd(a, "a")?;
    Ok(count_doubled(k - a as i64 + 2, k + 1, c))
}

/// `B(k) = #{ℓ ∈ [0, c-1] : (k-a-b+2)/2 ≤ ℓ ≤ (k-b+1)/2}`, `a`, `b` odd.
pub fn count_b(k: i64, a: usize, b: usize, c: usize) -> Result<u64> {
    require_odd(a, "a")?;
    require_odd(b, "b")?;
    Ok(count_doubled(k - (a + b) as i64 + 2, k - b as i64 + 1, c))
}

/// Last `k` for which the piecewise forms below are claimed: `c + (a+b)/2 - 3`.
fn piecewise_limit(a: usize, b: usize, c: usize) -> i64 {
    c as i64 + (a + b) as i64 / 2 - 3
}

/// Closed form of `A(k)` for `b-1 ≤ k ≤ c + (a+b)/2 - 3`, valid when
/// `a ≤ b` are odd and `2c ≤ a+b`; `None` outside that range.
pub fn count_a_piecewise(k: i64, a: usize, b: usize, c: usize) -> Option<u64> {
    if a.is_multiple_of(2) || b.is_multiple_of(2) || a > b || 2 * c > a + b {
        return None;
    }
    let (a_, c_) = (a as i64, c as i64);
    if k < b as i64 - 1 || k > piecewise_limit(a, b, c) {
        return None;
    }
    if k <= 2 * c_ - 3 {
        // a is odd here
        Some(if k % 2 == 0 { a / 2 } else { a / 2 + 1 } as u64)
    } else {
        Some(Integer::div_floor(&(a_ + 2 * c_ - k - 2), &2).max(0) as u64)
    }
}

/// Closed form of `B(k)` for `k ≤ c + (a+b)/2 - 3` under the same hypotheses:
/// zero below `b-1`, then `⌊(k-b+1)/2⌋ + 1`.
pub fn count_b_piecewise(k: i64, a: usize, b: usize, c: usize) -> Option<u64> {
    if a.is_multiple_of(2) || b.is_multiple_of(2) || a > b || 2 * c > a + b || k > piecewise_limit(a, b, c) {
        return None;
    }
    let b_ = b as i64;
    if k < b_ - 1 {
        Some(0)
    } else {
        Some((Integer::div_floor(&(k - b_ + 1), &2) + 1) as u64)
    }
}

/// `r | a_i` for some `i`, or `b ≤ 1 + Σ ⌊a_i / r⌋`.
pub fn conjecture52_predicate(spec: &ProductSpec) -> Result<bool> {
    if spec.r < 2 || spec.plain_factors.is_empty() {
        return domain("the product conjecture needs r ≥ 2 and k ≥ 1");
    }
    let divides = spec.plain_factors.iter().any(|a| a % spec.r == 0);
    let bound = 1 + spec.plain_factors.iter().map(|a| a / spec.r).sum::<usize>();
    Ok(divides || spec.b <= bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FindingKind {
    /// Predicate holds but the product is not unimodal.
    SufficiencyViolation,
    /// Predicate fails but the product is unimodal anyway.
    NecessityViolation,
}

/// One scanner finding, with the full spec so it can be reproduced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub a: Vec<usize>,
    pub b: usize,
    pub r: usize,
    pub unimodal: bool,
    pub predicate: bool,
}

impl Finding {
    pub fn spec(&self) -> ProductSpec {
        ProductSpec {
            plain_factors: self.a.clone(),
            b: self.b,
            r: self.r,
        }
    }

    /// Inside the regime `k ≤ 3` or `r ≤ 3`, where the predicate is also
    /// claimed to be necessary.
    pub fn in_necessity_regime(&self) -> bool {
        self.a.len() <= 3 || self.r <= 3
    }

    /// A divisibility-branch or single-factor case, both of which are proven;
    /// a finding here contradicts a theorem rather than a conjecture.
    pub fn contradicts_theorem(&self) -> bool {
        match self.kind {
            FindingKind::SufficiencyViolation => self.a.len() == 1 || self.a.iter().any(|a| a % self.r == 0),
            FindingKind::NecessityViolation => self.a.len() == 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub specs: usize,
    pub unimodal: usize,
    pub asymmetric: usize,
    pub sufficiency_violations: usize,
    pub necessity_violations: usize,
    pub necessity_violations_in_regime: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub findings: Vec<Finding>,
    pub summary: ScanSummary,
}

/// Every spec with `1 ≤ k ≤ k_max`, `2 ≤ r ≤ r_max` and all values in
/// `1..=value_max`, plain factors as sorted multisets. Order: k, r, factors, b.
pub fn scan_space(k_max: usize, r_max: usize, value_max: usize) -> Vec<ProductSpec> {
    fn multisets(k: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            multisets(k, v, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        let mut factor_sets = Vec::new();
        multisets(k, 1, value_max, &mut Vec::new(), &mut factor_sets);
        for r in 2..=r_max {
            for a in &factor_sets {
                for b in 1..=value_max {
                    out.push(ProductSpec {
                        plain_factors: a.clone(),
                        b,
                        r,
                    });
                }
            }
        }
    }
    out
}

struct Verdict {
    finding: Option<Finding>,
    unimodal: bool,
    symmetric: bool,
}

fn judge(spec: &ProductSpec) -> Result<Verdict> {
    let p = spec.polynomial();
    let unimodal = p.is_unimodal()?;
    let symmetric = p.is_symmetric()?;
    let predicate = conjecture52_predicate(spec)?;
    let kind = match (predicate, unimodal) {
        (true, false) => Some(FindingKind::SufficiencyViolation),
        (false, true) => Some(FindingKind::NecessityViolation),
        _ => None,
    };
    Ok(Verdict {
        finding: kind.map(|kind| Finding {
            kind,
            a: spec.plain_factors.clone(),
            b: spec.b,
            r: spec.r,
            unimodal,
            predicate,
        }),
        unimodal,
        symmetric,
    })
}

/// Exhaustive scan of [`scan_space`]. Work is spread over the current rayon
/// pool; findings come back in scan order regardless of parallelism.
pub fn conjecture52_scan(k_max: usize, r_max: usize, value_max: usize) -> Result<ScanReport> {
    let space = scan_space(k_max, r_max, value_max);
    let verdicts = space.par_iter().map(judge).collect::<Result<Vec<_>>>()?;
    let mut summary = ScanSummary {
        specs: space.len(),
        ..ScanSummary::default()
    };
    let mut findings = Vec::new();
    for v in verdicts {
        summary.unimodal += v.unimodal as usize;
        summary.asymmetric += (!v.symmetric) as usize;
        if let Some(f) = v.finding {
            match f.kind {
                FindingKind::SufficiencyViolation => summary.sufficiency_violations += 1,
                FindingKind::NecessityViolation => {
                    summary.necessity_violations += 1;
                    summary.necessity_violations_in_regime += f.in_necessity_regime() as usize;
                }
            }
            findings.push(f);
        }
    }
    Ok(ScanReport { findings, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    /// Direct set count, independent of the doubled-bound arithmetic.
    fn brute_count(c: usize, pred: impl Fn(i64) -> bool) -> u64 {
        (0..c as i64).filter(|&l| pred(l)).count() as u64
    }

    fn brute_a(k: i64, a: usize, c: usize) -> u64 {
        let a = a as i64;
        brute_count(c, |l| 2 * l >= k - a + 2 && 2 * l <= k + 1)
    }

    fn brute_b(k: i64, a: usize, b: usize, c: usize) -> u64 {
        let (a, b) = (a as i64, b as i64);
        brute_count(c, |l| 2 * l >= k - a - b + 2 && 2 * l <= k - b + 1)
    }

    #[test]
    fn prod2_examples() {
        assert_eq!(prod2_coeffs(2, 3).unwrap(), p(&[1, 2, 2, 1]));
        assert_eq!(prod2_coeffs(1, 5).unwrap(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(prod2_coeffs(3, 5).unwrap(), p(&[1, 2, 3, 3, 3, 2, 1]));
        assert_eq!(prod2_coeffs(5, 3).unwrap(), p(&[1, 2, 3, 3, 3, 2, 1]));
    }

    #[test]
    fn prod2_matches_convolution() {
        for a in 1..=40 {
            for b in a..=40 {
                let conv = &Polynomial::q_analog(a, 1).unwrap() * &Polynomial::q_analog(b, 1).unwrap();
                assert_eq!(prod2_coeffs(a, b).unwrap(), conv, "({a},{b})");
            }
        }
    }

    #[test]
    fn two_factor_examples() {
        let e = ProductSpec::new(vec![3], 2, 2).unwrap().polynomial();
        assert_eq!(e, p(&[1, 1, 2, 1, 1]));
        assert!(two_factor_unimodal_iff(3, 2, 2));
        let e = ProductSpec::new(vec![3], 3, 2).unwrap().polynomial();
        assert_eq!(e, p(&[1, 1, 2, 1, 2, 1, 1]));
        assert!(!two_factor_unimodal_iff(3, 3, 2));
        assert!(two_factor_unimodal_iff(4, 3, 2));
        for (a, b, r) in [(3, 2, 2), (3, 3, 2), (4, 3, 2)] {
            assert_eq!(
                two_factor_unimodal_iff(a, b, r),
                two_factor_unimodal_direct(a, b, r).unwrap()
            );
        }
    }

    #[test]
    fn triple_examples() {
        assert!(!triple_unimodal_iff(3, 3, 4));
        assert!(triple_unimodal_iff(3, 5, 4));
        assert!(triple_unimodal_iff(2, 3, 100));
        for (a, b, c) in [(3, 3, 4), (3, 5, 4), (2, 3, 100)] {
            assert_eq!(triple_unimodal_iff(a, b, c), triple_unimodal_direct(a, b, c).unwrap());
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_a(4, 3, 4).unwrap(), 1);
        assert_eq!(count_b(4, 3, 3, 4).unwrap(), 2);
        assert_eq!(count_a(5, 3, 4).unwrap(), 2);
        assert_eq!(count_b(5, 3, 5, 4).unwrap(), 1);
        for k in -10..-1 {
            assert_eq!(count_a(k, 5, 6).unwrap(), 0);
        }
        assert!(count_a(0, 4, 3).is_err());
        assert!(count_b(0, 3, 4, 3).is_err());
    }

    #[test]
    fn counts_match_brute_force() {
        for a in (1..=15).step_by(2) {
            for b in (a..=15).step_by(2) {
                for c in 1..=15 {
                    for k in -4..=(a + b + 2 * c) as i64 {
                        assert_eq!(count_a(k, a, c).unwrap(), brute_a(k, a, c));
                        assert_eq!(count_b(k, a, b, c).unwrap(), brute_b(k, a, b, c));
                    }
                }
            }
        }
    }

    #[test]
    fn piecewise_forms_match_counts() {
        let mut checked = 0;
        for a in (1..=21).step_by(2) {
            for b in (a..=21).step_by(2) {
                for c in 1..=21 {
                    for k in -4..=(a + b + 2 * c) as i64 {
                        if let Some(v) = count_a_piecewise(k, a, b, c) {
                            assert_eq!(v, count_a(k, a, c).unwrap(), "A({k}; {a},{b},{c})");
                            checked += 1;
                        }
                        if let Some(v) = count_b_piecewise(k, a, b, c) {
                            assert_eq!(v, count_b(k, a, b, c).unwrap(), "B({k}; {a},{b},{c})");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn predicate_examples() {
        let s = ProductSpec::new(vec![3, 3, 3, 3], 2, 4).unwrap();
        assert!(!conjecture52_predicate(&s).unwrap());
        assert!(s.polynomial().is_unimodal().unwrap());
        assert!(conjecture52_predicate(&ProductSpec::new(vec![4], 7, 2).unwrap()).unwrap());
        assert!(conjecture52_predicate(&ProductSpec::new(vec![3, 5], 4, 2).unwrap()).unwrap());
        assert!(conjecture52_predicate(&ProductSpec::new(vec![3], 4, 1).unwrap()).is_err());
        assert!(conjecture52_predicate(&ProductSpec::new(vec![], 4, 2).unwrap()).is_err());
    }

    #[test]
    fn spec_canonicalizes() {
        let s = ProductSpec::new(vec![5, 1, 3], 2, 2).unwrap();
        assert_eq!(s.plain_factors, vec![1, 3, 5]);
        assert!(ProductSpec::new(vec![0], 1, 1).is_err());
    }

    #[test]
    fn single_factor_scan_has_no_sufficiency_violations() {
        let report = conjecture52_scan(1, 3, 10).unwrap();
        assert_eq!(report.summary.sufficiency_violations, 0);
        assert_eq!(report.summary.asymmetric, 0);
    }

    #[test]
    fn small_scan_has_no_necessity_violations() {
        let report = conjecture52_scan(3, 3, 12).unwrap();
        assert_eq!(report.summary.necessity_violations, 0, "{:?}", report.findings);
        assert_eq!(report.summary.sufficiency_violations, 0);
    }

    #[test]
    fn values_up_to_three_outside_the_regime() {
        let report = conjecture52_scan(4, 4, 3).unwrap();
        let got: Vec<_> = report
            .findings
            .iter()
            .map(|f| (f.kind, f.a.clone(), f.b, f.r))
            .collect();
        let nv = FindingKind::NecessityViolation;
        assert_eq!(got, vec![(nv, vec![3, 3, 3, 3], 2, 4), (nv, vec![3, 3, 3, 3], 3, 4)]);
        // [3]^4 [3]_{q^4}: the plateau 20,20,20,20 rises to 21 at the centre
        let p = ProductSpec::new(vec![3, 3, 3, 3], 3, 4).unwrap().polynomial();
        assert_eq!(
            p,
            Polynomial::from_i64s(&[1, 4, 10, 16, 20, 20, 20, 20, 21, 20, 20, 20, 20, 16, 10, 4, 1])
        );
    }

    #[test]
    fn json_line_shape() {
        let f = Finding {
            kind: FindingKind::NecessityViolation,
            a: vec![3, 3, 3, 3],
            b: 2,
            r: 4,
            unimodal: true,
            predicate: false,
        };
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"kind":"NECESSITY_VIOLATION","a":[3,3,3,3],"b":2,"r":4,"unimodal":true,"predicate":false}"#
        );
    }
}
