//! Fibonacci numbers and Zeckendorf representations.
//!
//! `F_0 = 0`, `F_1 = 1`, `F_n = F_{n-1} + F_{n-2}`. Values are arbitrary
//! precision; a process-wide memo backs [`fib`], and [`FibSequence`] can be
//! owned privately by a worker that wants to avoid the shared lock.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Memoized Fibonacci values. The cache only ever grows.
#[derive(Debug, Clone)]
pub struct FibSequence {
    cache: Vec<BigUint>,
}

impl Default for FibSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl FibSequence {
    pub fn new() -> Self {
        FibSequence {
            cache: vec![BigUint::zero(), BigUint::one()],
        }
    }

    /// Number of cached values (`F_0 ..= F_{len-1}`).
    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn extend_to(&mut self, n: usize) {
        while self.cache.len() <= n {
            let k = self.cache.len();
            let next = &self.cache[k - 1] + &self.cache[k - 2];
            self.cache.push(next);
        }
    }

    pub fn get(&mut self, n: usize) -> &BigUint {
        self.extend_to(n);
        &self.cache[n]
    }

    /// Cached value without growing; `None` if not yet computed.
    pub fn peek(&self, n: usize) -> Option<&BigUint> {
        self.cache.get(n)
    }
}

fn shared() -> &'static RwLock<FibSequence> {
    static SEQ: OnceLock<RwLock<FibSequence>> = OnceLock::new();
    SEQ.get_or_init(|| RwLock::new(FibSequence::new()))
}

/// `F_n` as an arbitrary-precision integer.
pub fn fib(n: usize) -> BigUint {
    if let Some(v) = shared().read().expect("fib cache poisoned").peek(n) {
        return v.clone();
    }
    shared().write().expect("fib cache poisoned").get(n).clone()
}

/// `F_n` for indices whose value fits in a `u64` (n ≤ 93).
pub fn fib_u64(n: usize) -> u64 {
    fib(n).to_u64().expect("Fibonacci value exceeds u64")
}

/// `F_n` as a machine index; panics if it does not fit.
pub fn fib_usize(n: usize) -> usize {
    fib(n).to_usize().expect("Fibonacci value exceeds usize")
}

/// Zeckendorf representation of `value`: strictly decreasing Fibonacci
/// indices, each ≥ 2, no two consecutive, whose values sum to `value`.
///
/// Greedy: repeatedly take the largest `F_k ≤ remaining`.
pub fn zeckendorf(value: u64) -> Vec<usize> {
    let mut out = Vec::new();
    if value == 0 {
        return out;
    }
    // Largest index with F_k <= value.
    let mut k = 2;
    while fib_u64(k + 1) <= value {
        k += 1;
    }
    let mut rest = value;
    while rest > 0 {
        while fib_u64(k) > rest {
            k -= 1;
        }
        out.push(k);
        rest -= fib_u64(k);
        // F_{k-1} can never fit after taking F_k greedily.
        k = k.saturating_sub(2).max(2);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fib_examples() {
        assert_eq!(fib(0), BigUint::zero());
        assert_eq!(fib(1), BigUint::one());
        assert_eq!(fib_u64(10), 55);
        assert_eq!(fib_u64(20), 6765);
    }

    #[test]
    fn fib_matches_iterated_recurrence() {
        let (mut a, mut b) = (0u128, 1u128);
        for n in 0..150 {
            assert_eq!(fib(n), BigUint::from(a), "F_{n}");
            let c = a + b;
            a = b;
            b = c;
        }
    }

    #[test]
    fn big_index_exceeds_u64() {
        // F_100 = 354224848179261915075
        assert_eq!(fib(100).to_string(), "354224848179261915075");
    }

    #[test]
    fn private_sequence_agrees_with_shared() {
        let mut seq = FibSequence::new();
        assert_eq!(seq.peek(30), None);
        assert_eq!(seq.get(30), &fib(30));
        assert_eq!(seq.len(), 31);
    }

    #[test]
    fn zeckendorf_examples() {
        assert_eq!(zeckendorf(0), Vec::<usize>::new());
        assert_eq!(zeckendorf(4), vec![4, 2]);
        assert_eq!(zeckendorf(100), vec![11, 6, 4]);
        assert_eq!(zeckendorf(1), vec![2]);
        assert_eq!(zeckendorf(2), vec![3]);
    }

    fn sum_range(lo: usize, hi: usize, step: usize) -> BigUint {
        (lo..=hi).step_by(step).map(fib).sum()
    }

    #[test]
    fn identity_partial_sums() {
        for n in 1..=40 {
            assert_eq!(sum_range(1, n, 1), fib(n + 2) - 1u32);
            assert_eq!(sum_range(1, 2 * n - 1, 2), fib(2 * n));
            assert_eq!(sum_range(2, 2 * n, 2), fib(2 * n + 1) - 1u32);
        }
    }

    #[test]
    fn identity_divisibility() {
        for n in 1..=60 {
            for m in (1..=n).filter(|m| n % m == 0) {
                assert!((fib(n) % fib(m)).is_zero(), "F_{m} | F_{n}");
            }
        }
    }

    #[test]
    fn zeckendorf_round_trip() {
        for value in 0..=100_000u64 {
            let idx = zeckendorf(value);
            let total: u64 = idx.iter().map(|&k| fib_u64(k)).sum();
            assert_eq!(total, value);
            assert!(idx.iter().all(|&k| k >= 2));
            assert!(idx.windows(2).all(|w| w[0] >= w[1] + 2), "{value}: {idx:?}");
        }
    }
}
