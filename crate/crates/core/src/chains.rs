//! The degree-lowering map `π` on `T_{m,2}`, its partial inverse `π*`, and
//! the partition of `T_{m,2}` into chains.
//!
//! On a `m × 2` board every tiling has heights `(0,…,0,2,…,2)`: the first
//! `p` columns lie above the path and the remaining columns hold forced
//! verticals. Row 1 (bottom) and row 2 (top) are tiled over columns `1..=p`.
//! A horizontal domino "at `k`" has its right end in column `k`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::fib::fib_usize;
use crate::poly::Polynomial;
use crate::tiling::{enumerate_tilings, Tiling};

fn require_n2(t: &Tiling) -> Result<()> {
    if t.n() != 2 {
        return domain(format!("chain moves are defined on T_(m,2) only, got n = {}", t.n()));
    }
    Ok(())
}

/// Number of columns above the path.
fn free_width(t: &Tiling) -> usize {
    t.heights().iter().take_while(|&&h| h == 0).count()
}

fn build(m: usize, p: usize, mut bottom: Vec<usize>, top: Vec<usize>) -> Tiling {
    bottom.sort_unstable();
    let mut heights = vec![0; p];
    heights.resize(m, 2);
    Tiling::new(m, 2, heights, vec![bottom, top], vec![Vec::new(); m]).expect("chain move keeps the tiling valid")
}

/// Dominoes ending at `k, k-2, k-4, …` down to column 2.
fn packed_left_from(k: usize) -> impl Iterator<Item = usize> {
    (2..=k).rev().step_by(2)
}

/// One application of `π`: the first applicable move among
/// remove the domino at `(2,1)`; shift the leftmost bottom domino left and
/// pack dominoes to its left; rotate the leftmost vertical down into the
/// bottom row and pack to its left; otherwise fix the tiling.
pub fn pi(t: &Tiling) -> Result<Tiling> {
    require_n2(t)?;
    let m = t.m();
    let p = free_width(t);
    let bottom = t.row(1);
    let top = t.row(2).to_vec();
    if bottom.first() == Some(&2) {
        return Ok(build(m, p, bottom[1..].to_vec(), top));
    }
    if let Some((&k, rest)) = bottom.split_first() {
        let mut next: Vec<usize> = rest.to_vec();
        next.extend(packed_left_from(k - 1));
        return Ok(build(m, p, next, top));
    }
    if p < m {
        // Leftmost vertical sits in column p+1. In column 1 there is no room
        // for a horizontal domino and the vertical simply leaves.
        let k = p + 1;
        return Ok(build(m, k, packed_left_from(k).collect(), top));
    }
    Ok(t.clone())
}

/// One application of `π*`, the partial inverse of [`pi`]: add a domino at
/// `(2,1)`; else shift right the leftmost shiftable bottom domino and clear
/// the bottom row to its left; else rotate the bottom domino ending at the
/// last free column up into a vertical when the top cell above it is free,
/// clearing the bottom row; otherwise fix the tiling.
pub fn pi_star(t: &Tiling) -> Result<Tiling> {
    require_n2(t)?;
    let m = t.m();
    let p = free_width(t);
    let bottom = t.row(1);
    let top = t.row(2).to_vec();

    let covered = |cell: usize| bottom.iter().any(|&e| e == cell || e == cell + 1);
    if p >= 2 && !covered(1) && !covered(2) {
        let mut next = bottom.to_vec();
        next.push(2);
        return Ok(build(m, p, next, top));
    }
    for (idx, &e) in bottom.iter().enumerate() {
        let right_free = e < p && bottom.get(idx + 1).is_none_or(|&next| next > e + 2);
        if right_free {
            let mut next = vec![e + 1];
            next.extend_from_slice(&bottom[idx + 1..]);
            return Ok(build(m, p, next, top));
        }
    }
    let top_cell_free = !top.contains(&p);
    let rotatable = match bottom.last() {
        Some(&e) => e == p,
        // a free strip of width one has no bottom domino to rotate
        None => p == 1,
    };
    if p >= 1 && rotatable && top_cell_free {
        return Ok(build(m, p - 1, Vec::new(), top));
    }
    Ok(t.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremity {
    Minimal,
    Maximal,
    Interior,
    Both,
}

/// Minimal ⇔ fixed by `π`; maximal ⇔ fixed by `π*`.
pub fn classify(t: &Tiling) -> Result<Extremity> {
    let minimal = pi(t)? == *t;
    let maximal = pi_star(t)? == *t;
    Ok(match (minimal, maximal) {
        (true, true) => Extremity::Both,
        (true, false) => Extremity::Minimal,
        (false, true) => Extremity::Maximal,
        (false, false) => Extremity::Interior,
    })
}

/// Structural description of minimal tilings: no verticals and an empty
/// bottom row.
pub fn is_minimal_by_structure(t: &Tiling) -> Result<bool> {
    require_n2(t)?;
    Ok(free_width(t) == t.m() && t.row(1).is_empty())
}

/// Structural description of maximal tilings: with `α` the right end of the
/// last top-row domino (0 if none), every column right of `α` is vertical and
/// the bottom row is packed right to left from `α`, leaving column 1 empty
/// when `α` is odd.
pub fn is_maximal_by_structure(t: &Tiling) -> Result<bool> {
    require_n2(t)?;
    let alpha = t.row(2).last().copied().unwrap_or(0);
    let mut packed: Vec<usize> = packed_left_from(alpha).collect();
    packed.sort_unstable();
    Ok(free_width(t) == alpha && t.row(1) == packed.as_slice())
}

/// One block of the partition: a chain from its maximal tiling down to its
/// minimal tiling, each step one application of `π`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainBlock {
    /// Maximal first, minimal last.
    pub tilings: Vec<Tiling>,
    pub min_degree: u64,
    pub max_degree: u64,
    /// Top-row domino ends shared by every member.
    pub top_row_signature: Vec<usize>,
}

impl ChainBlock {
    pub fn len(&self) -> usize {
        self.tilings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tilings.is_empty()
    }

    pub fn minimal(&self) -> &Tiling {
        self.tilings.last().expect("blocks are nonempty")
    }

    pub fn maximal(&self) -> &Tiling {
        &self.tilings[0]
    }

    /// `q^ℓ + q^{ℓ+1} + … + q^r`.
    pub fn weight_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for t in &self.tilings {
            p = &p + &Polynomial::monomial(1, t.weight_degree() as usize);
        }
        p
    }
}

/// Partition of `T_{m,2}` by the fixed point reached under iterated `π`,
/// blocks ordered by top-row signature.
pub fn decompose(m: usize, cap: u64) -> Result<Vec<ChainBlock>> {
    if m == 0 {
        return domain("decompose needs m ≥ 1");
    }
    let all: Vec<Tiling> = enumerate_tilings(m, 2, cap)?.collect();
    // No chain is longer than the largest degree in T_{m,2}.
    let depth_guard = fib_usize(m + 3) - 2;
    let mut key_of: HashMap<Tiling, Tiling> = HashMap::with_capacity(all.len());
    for t in &all {
        let mut path = Vec::new();
        let mut cur = t.clone();
        let key = loop {
            if let Some(k) = key_of.get(&cur) {
                break k.clone();
            }
            let next = pi(&cur)?;
            if next == cur {
                break cur;
            }
            path.push(cur);
            assert!(path.len() <= depth_guard, "π failed to reach a fixed point from {t}");
            cur = next;
        };
        key_of.insert(key.clone(), key.clone());
        for visited in path {
            key_of.insert(visited, key.clone());
        }
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<Tiling>> = BTreeMap::new();
    for t in all {
        let key = &key_of[&t];
        groups.entry(key.row(2).to_vec()).or_default().push(t);
    }
    Ok(groups
        .into_iter()
        .map(|(signature, mut tilings)| {
            tilings.sort_by_key(|t| std::cmp::Reverse(t.weight_degree()));
            ChainBlock {
                min_degree: tilings.last().expect("nonempty").weight_degree(),
                max_degree: tilings[0].weight_degree(),
                top_row_signature: signature,
                tilings,
            }
        })
        .collect())
}

/// `Σ_blocks (q^ℓ + … + q^r)` built from the degree intervals alone.
pub fn interval_sum(blocks: &[ChainBlock]) -> Polynomial {
    let top = blocks.iter().map(|b| b.max_degree).max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; top + 1];
    for b in blocks {
        for d in b.min_degree..=b.max_degree {
            counts[d as usize] += 1;
        }
    }
    Polynomial::from_coeffs(counts.into_iter().map(BigInt::from).collect())
}
