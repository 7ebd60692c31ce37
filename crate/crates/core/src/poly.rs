//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients, q-analog constructors and coefficient-shape predicates.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::fib::fib_usize;

/// Operand length above which multiplication switches to Karatsuba.
pub const KARATSUBA_THRESHOLD: usize = 1024;

/// `coeffs[k]` is the coefficient of `q^k`. The last entry is never zero;
/// the zero polynomial has no entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c · q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Largest coefficient; zero for the zero polynomial.
    pub fn peak(&self) -> BigInt {
        self.coeffs.iter().max().cloned().unwrap_or_default()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// The q-analog `[n]_{q^r} = 1 + q^r + … + q^{r(n-1)}`.
    pub fn q_analog(n: usize, r: usize) -> Result<Self> {
        if n == 0 || r == 0 {
            return domain(format!("q_analog needs n ≥ 1 and r ≥ 1, got n={n}, r={r}"));
        }
        let mut coeffs = vec![BigInt::zero(); r * (n - 1) + 1];
        for j in 0..n {
            coeffs[r * j] = BigInt::one();
        }
        Ok(Polynomial { coeffs })
    }

    /// Multiply by `[n]_{q^r}` as a sliding window sum, `O(deg · 1)` per
    /// output coefficient instead of a full convolution.
    pub fn mul_q_analog(&self, n: usize, r: usize) -> Result<Self> {
        if n == 0 || r == 0 {
            return domain(format!("q_analog needs n ≥ 1 and r ≥ 1, got n={n}, r={r}"));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let span = r * (n - 1);
        let len = self.coeffs.len() + span;
        let mut out = vec![BigInt::zero(); len];
        // out[k] = sum_{j<n} p[k - r j]; one window per residue class mod r.
        for residue in 0..r {
            let mut window = BigInt::zero();
            let mut k = residue;
            let mut step = 0usize;
            while k < len {
                if let Some(c) = self.coeffs.get(k) {
                    window += c;
                }
                if step >= n {
                    let leaving = k - r * n;
                    if let Some(c) = self.coeffs.get(leaving) {
                        window -= c;
                    }
                }
                out[k] = window.clone();
                k += r;
                step += 1;
            }
        }
        Ok(Self::from_coeffs(out))
    }

    /// Exact division by `[n]_{q^r}` in linear time: multiply by `1 - q^r`,
    /// then undo `1 - q^{rn}` with the recurrence `c_i = s_i + c_{i-rn}`.
    pub fn div_q_analog(&self, n: usize, r: usize) -> Result<Self> {
        if n == 0 || r == 0 {
            return domain(format!("q_analog needs n ≥ 1 and r ≥ 1, got n={n}, r={r}"));
        }
        let span = r * (n - 1);
        if self.is_zero() || n == 1 {
            return Ok(self.clone());
        }
        let len = self.coeffs.len() + r;
        let period = r * n;
        let mut c: Vec<BigInt> = Vec::with_capacity(len);
        for i in 0..len {
            let mut v = self.coeffs.get(i).cloned().unwrap_or_default();
            if i >= r {
                if let Some(prev) = self.coeffs.get(i - r) {
                    v -= prev;
                }
            }
            if i >= period {
                v += &c[i - period];
            }
            c.push(v);
        }
        let quotient_len = self.coeffs.len().saturating_sub(span);
        if quotient_len == 0 || c[quotient_len..].iter().any(|x| !x.is_zero()) {
            // Not exact; long division reports the remainder.
            return self.exact_div(&Self::q_analog(n, r)?);
        }
        c.truncate(quotient_len);
        Ok(Self::from_coeffs(c))
    }

    /// `[F_n]^!_q = ∏_{k=1}^{n} [F_k]_q`; the empty product is 1.
    pub fn fib_q_factorial(n: usize) -> Self {
        let mut acc = Self::one();
        for k in 3..=n {
            // F_1 = F_2 = 1 contribute [1]_q = 1.
            acc = acc
                .mul_q_analog(fib_usize(k), 1)
                .expect("Fibonacci numbers past F_0 are positive");
        }
        acc
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Exact quotient `self / divisor`. A nonzero remainder is reported as
    /// [`Error::NotDivisible`]; the divisor must be nonzero.
    ///
    /// Long division from the top. Every step must divide exactly by the
    /// divisor's leading coefficient (always ±1 for q-analog products), so
    /// an integral quotient is found whenever one exists.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Self> {
        let Some(dd) = divisor.degree() else {
            return domain("division by the zero polynomial");
        };
        let Some(pd) = self.degree() else {
            return Ok(Self::zero());
        };
        if pd < dd {
            return Err(Error::NotDivisible {
                remainder: self.clone(),
            });
        }
        let lead = &divisor.coeffs[dd];
        let unit = lead.abs().is_one();
        let lead_negative = lead.is_negative();
        let mut rem = self.coeffs.clone();
        let qd = pd - dd;
        let mut quot = vec![BigInt::zero(); qd + 1];
        for i in (0..=qd).rev() {
            let top = std::mem::take(&mut rem[i + dd]);
            if top.is_zero() {
                continue;
            }
            let t = if unit {
                if lead_negative {
                    -top
                } else {
                    top
                }
            } else {
                let (t, r) = top.div_rem(lead);
                if !r.is_zero() {
                    rem[i + dd] = top;
                    return Err(Error::NotDivisible {
                        remainder: Self::from_coeffs(rem),
                    });
                }
                t
            };
            for (j, dc) in divisor.coeffs[..dd].iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &t * dc;
                }
            }
            quot[i] = t;
        }
        rem.truncate(dd);
        let remainder = Self::from_coeffs(rem);
        if remainder.is_zero() {
            Ok(Self::from_coeffs(quot))
        } else {
            Err(Error::NotDivisible { remainder })
        }
    }

    fn require_nonzero(&self, what: &str) -> Result<()> {
        if self.is_zero() {
            return domain(format!("{what} is undefined for the zero polynomial"));
        }
        Ok(())
    }

    fn require_nonnegative(&self, what: &str) -> Result<()> {
        self.require_nonzero(what)?;
        if let Some(k) = self.coeffs.iter().position(Signed::is_negative) {
            return domain(format!("{what} needs nonnegative coefficients (q^{k} is negative)"));
        }
        Ok(())
    }

    /// Palindromic coefficient sequence.
    pub fn is_symmetric(&self) -> Result<bool> {
        self.require_nonzero("symmetry")?;
        let c = &self.coeffs;
        Ok(c.iter().eq(c.iter().rev()))
    }

    /// Single pass, weakly rising then weakly falling. Returns the index
    /// `k` at which a strict rise `c_k < c_{k+1}` first follows a fall, or
    /// `None` when the sequence is unimodal.
    pub fn unimodality_violation(&self) -> Result<Option<usize>> {
        self.require_nonnegative("unimodality")?;
        let mut falling = false;
        for (k, w) in self.coeffs.windows(2).enumerate() {
            match w[0].cmp(&w[1]) {
                std::cmp::Ordering::Greater => falling = true,
                std::cmp::Ordering::Less if falling => return Ok(Some(k)),
                _ => {}
            }
        }
        Ok(None)
    }

    pub fn is_unimodal(&self) -> Result<bool> {
        Ok(self.unimodality_violation()?.is_none())
    }

    /// Every interior index `k` with `c_k² < c_{k-1} c_{k+1}`, ascending.
    pub fn log_concavity_violations(&self) -> Result<Vec<usize>> {
        self.require_nonnegative("log-concavity")?;
        Ok(self
            .coeffs
            .windows(3)
            .enumerate()
            .filter(|(_, w)| &w[1] * &w[1] < &w[0] * &w[2])
            .map(|(k, _)| k + 1)
            .collect())
    }

    /// First interior index `k` with `c_k² < c_{k-1} c_{k+1}`.
    pub fn log_concavity_violation(&self) -> Result<Option<usize>> {
        self.require_nonnegative("log-concavity")?;
        Ok(self
            .coeffs
            .windows(3)
            .position(|w| &w[1] * &w[1] < &w[0] * &w[2])
            .map(|k| k + 1))
    }

    pub fn is_log_concave(&self) -> Result<bool> {
        Ok(self.log_concavity_violation()?.is_none())
    }

    /// Decimal strings, index = exponent.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_decimal_strings<S: AsRef<str>>(items: &[S]) -> std::result::Result<Self, String> {
        let coeffs = items
            .iter()
            .map(|s| {
                s.as_ref()
                    .parse::<BigInt>()
                    .map_err(|e| format!("bad coefficient {:?}: {e}", s.as_ref()))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err("coefficient list has a trailing zero".into());
        }
        Ok(Polynomial { coeffs })
    }
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out[i..].iter_mut().zip(b) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

fn karatsuba(a: &[BigInt], b: &[BigInt], threshold: usize) -> Vec<BigInt> {
    if a.len() <= threshold || b.len() <= threshold {
        return schoolbook(a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let z0 = karatsuba(a0, b0, threshold);
    let z2 = karatsuba(a1, b1, threshold);
    let z1 = karatsuba(&add_slices(a0, a1), &add_slices(b0, b1), threshold);
    let len = a.len() + b.len() - 1;
    // z1 may carry cancelling high terms past the true product length.
    let mut out = vec![BigInt::zero(); len.max(half + z1.len()).max(2 * half + z2.len())];
    for (k, c) in z0.iter().enumerate() {
        out[k] += c;
        out[k + half] -= c;
    }
    for (k, c) in z2.iter().enumerate() {
        out[k + 2 * half] += c;
        out[k + half] -= c;
    }
    for (k, c) in z1.iter().enumerate() {
        out[k + half] += c;
    }
    debug_assert!(out[len..].iter().all(Zero::is_zero));
    out.truncate(len);
    out
}

/// Product with an explicit Karatsuba threshold (benchmarks and tests).
pub fn mul_with_threshold(p: &Polynomial, r: &Polynomial, threshold: usize) -> Polynomial {
    Polynomial::from_coeffs(karatsuba(&p.coeffs, &r.coeffs, threshold.max(1)))
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        mul_with_threshold(self, rhs, KARATSUBA_THRESHOLD)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        Polynomial::from_coeffs(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.to_decimal_strings())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    coeffs: Vec<String>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson {
            coeffs: self.to_decimal_strings(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolynomialJson::deserialize(deserializer)?;
        Polynomial::from_decimal_strings(&raw.coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn q_analog_examples() {
        assert_eq!(Polynomial::q_analog(1, 1).unwrap(), p(&[1]));
        assert_eq!(Polynomial::q_analog(3, 1).unwrap(), p(&[1, 1, 1]));
        assert_eq!(Polynomial::q_analog(2, 4).unwrap(), p(&[1, 0, 0, 0, 1]));
        assert!(matches!(Polynomial::q_analog(0, 1), Err(Error::Domain(_))));
        assert!(matches!(Polynomial::q_analog(2, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn fib_q_factorial_examples() {
        assert_eq!(Polynomial::fib_q_factorial(0), p(&[1]));
        assert_eq!(Polynomial::fib_q_factorial(3), p(&[1, 1]));
        assert_eq!(Polynomial::fib_q_factorial(4), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn mul_examples() {
        assert!((&p(&[1, 1]) * &Polynomial::zero()).is_zero());
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1, 1]), p(&[1, 2, 2, 1]));
        assert_eq!(&p(&[1, 1, 1]) * &p(&[1, 0, 1, 0, 1]), p(&[1, 1, 2, 1, 2, 1, 1]));
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(p(&[1, 2, 2, 1]).exact_div(&p(&[1, 1])).unwrap(), p(&[1, 1, 1]));
        let x = p(&[1, 0, 0, 0, 1]);
        assert_eq!(x.exact_div(&Polynomial::one()).unwrap(), x);
        match p(&[1, 1, 1]).exact_div(&p(&[1, 1])) {
            Err(Error::NotDivisible { remainder }) => assert_eq!(remainder, p(&[1])),
            other => panic!("expected NotDivisible, got {other:?}"),
        }
        assert!(matches!(x.exact_div(&Polynomial::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_div_non_unit_leading_coefficient() {
        let d = p(&[1, 3]);
        let q = p(&[2, -1, 5]);
        assert_eq!((&q * &d).exact_div(&d).unwrap(), q);
        assert!(matches!(p(&[1, 1]).exact_div(&d), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn div_q_analog_examples() {
        assert_eq!(p(&[1, 2, 2, 1]).div_q_analog(2, 1).unwrap(), p(&[1, 1, 1]));
        assert_eq!(p(&[1, 1, 1, 1, 1, 1]).div_q_analog(3, 1).unwrap(), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[1, 0, 1, 0, 1]).div_q_analog(3, 2).unwrap(), Polynomial::one());
        assert!(matches!(p(&[1, 1]).div_q_analog(3, 1), Err(Error::NotDivisible { .. })));
        assert!(matches!(
            p(&[1, 0, 1]).div_q_analog(2, 1),
            Err(Error::NotDivisible { .. })
        ));
        assert!(Polynomial::one().div_q_analog(0, 1).is_err());
    }

    #[test]
    fn symmetric_examples() {
        assert!(p(&[1, 2, 1]).is_symmetric().unwrap());
        assert!(!p(&[1, 2]).is_symmetric().unwrap());
        assert!(p(&[1, 2, 2, 1]).is_symmetric().unwrap());
        assert!(Polynomial::zero().is_symmetric().is_err());
    }

    #[test]
    fn unimodal_examples() {
        assert_eq!(p(&[1, 1, 2, 1, 2, 1, 1]).unimodality_violation().unwrap(), Some(3));
        assert_eq!(p(&[1, 2, 2, 1]).unimodality_violation().unwrap(), None);
        assert_eq!(p(&[5]).unimodality_violation().unwrap(), None);
        assert!(p(&[1, -1, 1]).is_unimodal().is_err());
        assert!(Polynomial::zero().is_unimodal().is_err());
        // plateaus in both phases
        assert!(p(&[1, 1, 3, 3, 2, 2, 1]).is_unimodal().unwrap());
    }

    #[test]
    fn log_concave_examples() {
        assert!(p(&[1, 2, 1]).is_log_concave().unwrap());
        assert!(p(&[1, 1, 1]).is_log_concave().unwrap());
        let c = p(&[1, 2, 4, 5, 7, 7, 8, 7, 7, 5, 4, 2, 1]);
        // 5² < 4·7 at k=3 and 7² < 7·8 at k=5 (and symmetrically 7, 9).
        assert_eq!(c.log_concavity_violation().unwrap(), Some(3));
        assert_eq!(c.log_concavity_violations().unwrap(), vec![3, 5, 7, 9]);
        assert!(p(&[1, -2, 1]).is_log_concave().is_err());
    }

    #[test]
    fn karatsuba_matches_schoolbook_on_large_input() {
        let a: Vec<i64> = (0..3000).map(|i| (i * 7919 % 1000) - 300).collect();
        let b: Vec<i64> = (0..2500).map(|i| (i * 104_729 % 997) - 500).collect();
        let (a, b) = (p(&a), p(&b));
        assert_eq!(mul_with_threshold(&a, &b, 64), mul_with_threshold(&a, &b, usize::MAX));
        assert_eq!(&a * &b, mul_with_threshold(&a, &b, usize::MAX));
    }

    #[test]
    fn json_form_uses_decimal_strings() {
        let big = Polynomial::from_coeffs(vec![BigInt::one(), BigInt::from(1u64) << 80u32]);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, r#"{"coeffs":["1","1208925819614629174706176"]}"#);
        assert_eq!(serde_json::from_str::<Polynomial>(&s).unwrap(), big);
        assert!(serde_json::from_str::<Polynomial>(r#"{"coeffs":["1","0"]}"#).is_err());
        assert!(serde_json::from_str::<Polynomial>(r#"{"coeffs":[1]}"#).is_err());
        assert_eq!(
            serde_json::from_str::<Polynomial>(r#"{"coeffs":[]}"#).unwrap(),
            Polynomial::zero()
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 2, 0, -1]).to_string(), "1 + 2q - q^3");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-1_000_000i64..=1_000_000, 0..=max_len).prop_map(|c| p(&c))
    }

    fn arb_unit_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
        (prop::bool::ANY, prop::collection::vec(-1000i64..=1000, 0..=max_len)).prop_map(|(neg, mut c)| {
            c.insert(0, if neg { -1 } else { 1 });
            p(&c)
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in arb_poly(200), b in arb_poly(200), c in arb_poly(60)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn exact_div_inverts_mul(a in arb_poly(120), d in arb_unit_poly(40)) {
            prop_assert_eq!((&a * &d).exact_div(&d).unwrap(), a);
        }

        #[test]
        fn q_analog_at_one(n in 1usize..300, r in 1usize..9) {
            let a = Polynomial::q_analog(n, r).unwrap();
            prop_assert_eq!(a.eval_at_one(), BigInt::from(n));
            prop_assert_eq!(a.degree(), Some(r * (n - 1)));
        }

        #[test]
        fn windowed_mul_matches_convolution(a in arb_poly(80), n in 1usize..40, r in 1usize..6) {
            let full = &a * &Polynomial::q_analog(n, r).unwrap();
            prop_assert_eq!(a.mul_q_analog(n, r).unwrap(), full);
        }

        #[test]
        fn div_q_analog_inverts_windowed_mul(a in arb_poly(80), n in 1usize..40, r in 1usize..6) {
            let p = a.mul_q_analog(n, r).unwrap();
            prop_assert_eq!(p.div_q_analog(n, r).unwrap(), a);
        }

        #[test]
        fn products_of_q_analogs_stay_symmetric_unimodal(ns in prop::collection::vec(1usize..30, 1..6)) {
            let mut acc = Polynomial::one();
            for n in ns {
                acc = &acc * &Polynomial::q_analog(n, 1).unwrap();
            }
            prop_assert!(acc.is_symmetric().unwrap());
            prop_assert!(acc.is_unimodal().unwrap());
        }

        #[test]
        fn json_round_trip(a in arb_poly(50)) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<Polynomial>(&s).unwrap(), a);
        }
    }
}
