//! q-Fibonomial and q-FiboCatalan polynomials.
//!
//! `qfibonomial(m, n) = [F_{m+n}]^!_q / ([F_m]^!_q [F_n]^!_q)`, computed by a
//! single exact division. Two closed forms (the `n = 2` coefficient formula
//! and the `n = 3` product factorization) give independent routes for tests.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::fib::{fib, fib_usize};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FibonomialQuery {
    pub m: usize,
    pub n: usize,
}

impl FibonomialQuery {
    pub fn new(m: usize, n: usize) -> Self {
        FibonomialQuery { m, n }
    }

    /// `F_{m+n+2} − F_{m+2} − F_{n+2} + 1`.
    pub fn degree(&self) -> BigUint {
        fib(self.m + self.n + 2) + 1u32 - fib(self.m + 2) - fib(self.n + 2)
    }

    /// Value at `q = 1`: `F_{m+n}! / (F_m! F_n!)`.
    pub fn integer_value(&self) -> BigUint {
        integer_fibonomial(self.m, self.n)
    }
}

fn fib_factorial(n: usize) -> BigUint {
    (1..=n).map(fib).product()
}

/// The integer Fibonomial `F_{m+n}! / (F_m! F_n!)`.
pub fn integer_fibonomial(m: usize, n: usize) -> BigUint {
    let (quot, rem) = fib_factorial(m + n).div_rem(&(fib_factorial(m) * fib_factorial(n)));
    debug_assert!(rem.is_zero());
    quot
}

fn memo() -> &'static Mutex<HashMap<FibonomialQuery, Arc<Polynomial>>> {
    static MEMO: OnceLock<Mutex<HashMap<FibonomialQuery, Arc<Polynomial>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Uncached computation of the q-Fibonomial.
pub fn compute_qfibonomial(m: usize, n: usize) -> Result<Polynomial> {
    if m == 0 || n == 0 {
        return Ok(Polynomial::one());
    }
    let numerator = Polynomial::fib_q_factorial(m + n);
    let denominator = &Polynomial::fib_q_factorial(m) * &Polynomial::fib_q_factorial(n);
    numerator.exact_div(&denominator)
}

/// Second route to the q-Fibonomial, through the ratio of neighbours
/// `[m+j choose j]_F = [m+j-1 choose j-1]_F · [F_{m+j}]_q / [F_j]_q`.
/// Each step is a windowed multiply and a linear-time exact division, so
/// this scales to degrees where one long division by the full denominator
/// is too slow.
pub fn qfibonomial_by_ratios(m: usize, n: usize) -> Result<Polynomial> {
    let (m, n) = if n <= m { (m, n) } else { (n, m) };
    let mut acc = Polynomial::one();
    for j in 1..=n {
        acc = acc.mul_q_analog(fib_usize(m + j), 1)?.div_q_analog(fib_usize(j), 1)?;
    }
    Ok(acc)
}

/// `[m+n choose n]_F` as a polynomial in `q`, memoized process-wide.
///
/// A `NotDivisible` error here would contradict integrality and is a bug.
pub fn qfibonomial(m: usize, n: usize) -> Result<Arc<Polynomial>> {
    let key = FibonomialQuery::new(m, n);
    if let Some(hit) = memo().lock().expect("memo poisoned").get(&key) {
        return Ok(hit.clone());
    }
    // Computed outside the lock; a racing insert of the same value is harmless.
    let value = Arc::new(compute_qfibonomial(m, n)?);
    let mut table = memo().lock().expect("memo poisoned");
    Ok(table.entry(key).or_insert(value).clone())
}

/// Coefficient formula for `[m+2 choose 2]_F`, piecewise in three ranges.
pub fn closed_form_n2(m: usize) -> Result<Polynomial> {
    if m == 0 {
        return domain("closed_form_n2 needs m ≥ 1");
    }
    let f1 = fib_usize(m + 1);
    let f2 = fib_usize(m + 2);
    let f3 = fib_usize(m + 3);
    let coeffs = (0..=f3 - 2)
        .map(|k| {
            let c = if k < f1 {
                k + 1
            } else if k + 1 < f2 {
                f1
            } else {
                f3 - k - 1
            };
            BigInt::from(c)
        })
        .collect();
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Parameters of `[m+3 choose 3]_F = [A]_q [B]_q [E/2]_{q^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct N3Factorization {
    /// Smaller odd member of `{F_{m+1}, F_{m+2}, F_{m+3}}`.
    pub a: usize,
    /// Larger odd member.
    pub b: usize,
    /// Half of the even member.
    pub half_e: usize,
}

impl N3Factorization {
    pub fn polynomial(&self) -> Polynomial {
        let lhs = &Polynomial::q_analog(self.a, 1).expect("a ≥ 1") * &Polynomial::q_analog(self.b, 1).expect("b ≥ 1");
        &lhs * &Polynomial::q_analog(self.half_e, 2).expect("E/2 ≥ 1")
    }
}

pub fn n3_factorization(m: usize) -> Result<N3Factorization> {
    if m == 0 {
        return domain("n3_factorization needs m ≥ 1");
    }
    let trio = [fib_usize(m + 1), fib_usize(m + 2), fib_usize(m + 3)];
    let (even, mut odd): (Vec<usize>, Vec<usize>) = trio.iter().partition(|f| *f % 2 == 0);
    // Exactly one of three consecutive Fibonacci numbers is even (3 | k ⇔ 2 | F_k).
    assert_eq!(even.len(), 1, "{trio:?}");
    odd.sort_unstable();
    Ok(N3Factorization {
        a: odd[0],
        b: odd[1],
        half_e: even[0] / 2,
    })
}

/// `qfibonomial(m, n) / [F_{m+n}]_q`. A nonzero remainder comes back as
/// `Err(Error::NotDivisible)`, which is a legitimate outcome when
/// `gcd(m, n) ∉ {1, 2}`.
pub fn qfibocatalan(m: usize, n: usize) -> Result<Polynomial> {
    if m == 0 || n == 0 {
        return domain("qfibocatalan needs m, n ≥ 1");
    }
    let divisor = Polynomial::q_analog(fib_usize(m + n), 1)?;
    qfibonomial(m, n)?.exact_div(&divisor)
}

/// q-FiboCatalan coefficients via
/// `c_i = Σ_{k≥0} (a_{i − kF} − a_{i − kF − 1})`, `F = F_{m+n}`, where `a`
/// are the q-Fibonomial coefficients and negative indices read as zero.
pub fn fibocat_coeffs_via_telescoping(m: usize, n: usize) -> Result<Polynomial> {
    if m == 0 || n == 0 {
        return domain("fibocat_coeffs_via_telescoping needs m, n ≥ 1");
    }
    let g = m.gcd(&n);
    if g > 2 {
        return domain(format!("gcd({m}, {n}) = {g} is outside {{1, 2}}"));
    }
    let a = qfibonomial(m, n)?;
    let period = fib_usize(m + n);
    let d = a.degree().expect("q-Fibonomials are nonzero");
    let top = d + 1 - period;
    let at = |j: isize| -> BigInt {
        if j < 0 {
            BigInt::zero()
        } else {
            a.coeff(j as usize)
        }
    };
    let coeffs = (0..=top)
        .map(|i| {
            let mut c = BigInt::zero();
            let mut j = i as isize;
            while j >= 0 {
                c += at(j) - at(j - 1);
                j -= period as isize;
            }
            c
        })
        .collect();
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Outcome of one q-FiboCatalan division, kept as data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiboCatalanFinding {
    pub m: usize,
    pub n: usize,
    pub gcd: usize,
    pub divisible: bool,
    pub polynomial: Option<Polynomial>,
    pub nonnegative: Option<bool>,
}

pub fn fibocatalan_finding(m: usize, n: usize) -> Result<FiboCatalanFinding> {
    let gcd = m.gcd(&n);
    let (divisible, polynomial) = match qfibocatalan(m, n) {
        Ok(p) => (true, Some(p)),
        Err(Error::NotDivisible { .. }) => (false, None),
        Err(e) => return Err(e),
    };
    let nonnegative = polynomial.as_ref().map(Polynomial::is_nonnegative);
    Ok(FiboCatalanFinding {
        m,
        n,
        gcd,
        divisible,
        polynomial,
        nonnegative,
    })
}
