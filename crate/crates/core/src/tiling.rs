//! Weighted path-domino tilings of an `m × n` board.
//!
//! Cell `(i, j)` is column `i` (1-based, left to right) and row `j` (1-based,
//! bottom to top); its top-right corner is the lattice point `(i, j)`. A
//! monotone lattice path from `(0,0)` to `(m,n)` is encoded by the heights
//! `h_1 ≤ … ≤ h_m`, `h_i` being the number of cells of column `i` below the
//! path. Above the path each row is tiled by squares and horizontal dominoes;
//! below it each column carries the forced vertical domino directly under
//! its path segment, the rest tiled by squares and vertical dominoes.
//!
//! Weights (exponents of `q`, with `(i, j)` the top-right corner):
//! horizontal `F_i F_j`, vertical `F_i F_j`, forced vertical `F_{i+1} F_j`.
//!
//! A column of height 1 has no room for its forced domino, so such profiles
//! contribute no tilings and are never generated.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::fib::fib_u64;
use crate::fibonomial::integer_fibonomial;
use crate::poly::Polynomial;

/// Default refusal threshold for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Column heights of the lattice path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HeightProfile(Vec<usize>);

impl HeightProfile {
    pub fn new(heights: Vec<usize>, n: usize) -> Result<Self> {
        if heights.windows(2).any(|w| w[0] > w[1]) {
            return domain(format!("heights {heights:?} are not weakly increasing"));
        }
        if let Some(h) = heights.iter().find(|&&h| h == 1 || h > n) {
            return domain(format!("height {h} not in {{0}} ∪ [2, {n}]"));
        }
        Ok(HeightProfile(heights))
    }

    pub fn heights(&self) -> &[usize] {
        &self.0
    }

    /// Number of columns lying entirely above row `j - 1`, i.e. the length
    /// of the above-path part of row `j`.
    pub fn row_width(&self, row: usize) -> usize {
        self.0.iter().take_while(|&&h| h < row).count()
    }

    /// Every valid profile for an `m × n` board in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<HeightProfile> {
        fn rec(m: usize, n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<HeightProfile>) {
            if cur.len() == m {
                out.push(HeightProfile(cur.clone()));
                return;
            }
            for h in std::iter::once(0).chain(2..=n) {
                if h < min {
                    continue;
                }
                cur.push(h);
                rec(m, n, h, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, n, 0, &mut Vec::with_capacity(m), &mut out);
        out
    }
}

/// A domino placement identified by its top-right corner `(col, row)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Domino {
    /// Covers `(col-1, row)` and `(col, row)`.
    Horizontal { col: usize, row: usize },
    /// Covers `(col, row-1)` and `(col, row)`, below the path.
    Vertical { col: usize, row: usize },
    /// The vertical domino directly under a horizontal path segment.
    Forced { col: usize, row: usize },
}

impl Domino {
    pub fn weight_degree(&self) -> u64 {
        match *self {
            Domino::Horizontal { col, row } | Domino::Vertical { col, row } => fib_u64(col) * fib_u64(row),
            Domino::Forced { col, row } => fib_u64(col + 1) * fib_u64(row),
        }
    }
}

/// One element of `T_{m,n}`. Equality is structural on the canonical form
/// (profile plus sorted domino end lists); the derived order is the
/// enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tiling {
    m: usize,
    n: usize,
    profile: HeightProfile,
    /// `rows[j-1]`: right-end columns of horizontal dominoes in row `j`.
    rows: Vec<Vec<usize>>,
    /// `columns[i-1]`: top rows of the unforced vertical dominoes in column `i`.
    columns: Vec<Vec<usize>>,
}

fn valid_strip(ends: &[usize], len: usize) -> bool {
    ends.iter().all(|&e| e >= 2 && e <= len) && ends.windows(2).all(|w| w[1] >= w[0] + 2)
}

impl Tiling {
    pub fn new(
        m: usize,
        n: usize,
        heights: Vec<usize>,
        rows: Vec<Vec<usize>>,
        columns: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if heights.len() != m || rows.len() != n || columns.len() != m {
            return domain(format!(
                "shape mismatch for {m}×{n}: {} heights, {} rows, {} columns",
                heights.len(),
                rows.len(),
                columns.len()
            ));
        }
        let profile = HeightProfile::new(heights, n)?;
        for (j, ends) in rows.iter().enumerate() {
            let width = profile.row_width(j + 1);
            if !valid_strip(ends, width) {
                return domain(format!("row {} dominoes {ends:?} invalid for width {width}", j + 1));
            }
        }
        for (i, tops) in columns.iter().enumerate() {
            let free = profile.0[i].saturating_sub(2);
            if !valid_strip(tops, free) {
                return domain(format!(
                    "column {} dominoes {tops:?} invalid below height {}",
                    i + 1,
                    profile.0[i]
                ));
            }
        }
        Ok(Tiling {
            m,
            n,
            profile,
            rows,
            columns,
        })
    }

    /// The all-squares tiling (every height zero).
    pub fn empty(m: usize, n: usize) -> Self {
        Tiling {
            m,
            n,
            profile: HeightProfile(vec![0; m]),
            rows: vec![Vec::new(); n],
            columns: vec![Vec::new(); m],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn profile(&self) -> &HeightProfile {
        &self.profile
    }

    pub fn heights(&self) -> &[usize] {
        &self.profile.0
    }

    /// Right ends of horizontal dominoes in row `row` (1-based).
    pub fn row(&self, row: usize) -> &[usize] {
        &self.rows[row - 1]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Top rows of unforced verticals in column `col` (1-based).
    pub fn column(&self, col: usize) -> &[usize] {
        &self.columns[col - 1]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn dominoes(&self) -> Vec<Domino> {
        let mut out = Vec::new();
        for (j, ends) in self.rows.iter().enumerate() {
            out.extend(ends.iter().map(|&col| Domino::Horizontal { col, row: j + 1 }));
        }
        for (i, tops) in self.columns.iter().enumerate() {
            out.extend(tops.iter().map(|&row| Domino::Vertical { col: i + 1, row }));
        }
        for (i, &h) in self.profile.0.iter().enumerate() {
            if h >= 2 {
                out.push(Domino::Forced { col: i + 1, row: h });
            }
        }
        out
    }

    /// Exponent of `q` in `w(T)`.
    pub fn weight_degree(&self) -> u64 {
        self.dominoes().iter().map(Domino::weight_degree).sum()
    }

    /// Checks that every cell is covered exactly once. Construction already
    /// guarantees this; the check is an independent cell-level audit.
    pub fn cell_cover_is_exact(&self) -> bool {
        let mut cover = vec![vec![0u8; self.n + 1]; self.m + 1];
        let mut mark = |c: usize, r: usize| cover[c][r] += 1;
        for d in self.dominoes() {
            match d {
                Domino::Horizontal { col, row } => {
                    mark(col - 1, row);
                    mark(col, row);
                }
                Domino::Vertical { col, row } | Domino::Forced { col, row } => {
                    mark(col, row - 1);
                    mark(col, row);
                }
            }
        }
        // Squares fill whatever remains, so "exactly once" means no cell is
        // doubly covered, no domino leaves the board (index 0 is off-board),
        // horizontals sit above the path and verticals below it.
        let in_board = (0..=self.m).all(|c| cover[c][0] == 0) && (0..=self.n).all(|r| cover[0][r] == 0);
        let no_overlap = cover.iter().flatten().all(|&k| k <= 1);
        let sides = self.dominoes().iter().all(|d| match *d {
            Domino::Horizontal { col, row } => self.profile.0[col - 2] < row && self.profile.0[col - 1] < row,
            Domino::Vertical { col, row } | Domino::Forced { col, row } => row <= self.profile.0[col - 1],
        });
        in_board && no_overlap && sides
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{}x{}] h={:?}", self.m, self.n, self.profile.0)?;
        for (j, ends) in self.rows.iter().enumerate() {
            if !ends.is_empty() {
                write!(f, " r{}={:?}", j + 1, ends)?;
            }
        }
        for (i, tops) in self.columns.iter().enumerate() {
            if !tops.is_empty() {
                write!(f, " c{}={:?}", i + 1, tops)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TilingJson {
    m: usize,
    n: usize,
    heights: Vec<usize>,
    rows: Vec<Vec<usize>>,
    columns: Vec<Vec<usize>>,
}

impl Serialize for Tiling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TilingJson {
            m: self.m,
            n: self.n,
            heights: self.profile.0.clone(),
            rows: self.rows.clone(),
            columns: self.columns.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tiling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TilingJson::deserialize(d)?;
        Tiling::new(raw.m, raw.n, raw.heights, raw.rows, raw.columns).map_err(serde::de::Error::custom)
    }
}

/// All square/domino tilings of a strip of `len` cells as sorted lists of
/// domino end positions (each in `2..=len`), in lexicographic order.
pub fn strip_tilings(len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for end in start.max(2)..=len {
            cur.push(end);
            rec(end + 2, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(2, len, &mut Vec::new(), &mut out);
    out
}

/// Number of tilings of `T_{m,n}`, the integer Fibonomial.
pub fn tiling_count(m: usize, n: usize) -> BigUint {
    integer_fibonomial(m, n)
}

fn check_cap(m: usize, n: usize, cap: u64) -> Result<()> {
    let projected = tiling_count(m, n);
    if projected > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            projected: projected.to_string(),
            cap,
        });
    }
    Ok(())
}

/// All tilings of one strip length, shared between slots.
type StripSet = Rc<Vec<Vec<usize>>>;

/// Deterministic stream over `T_{m,n}`: profiles in lexicographic order,
/// then row tilings (row 1 first) and column tilings, each slot ordered
/// lexicographically with the last slot varying fastest.
pub struct TilingIter {
    m: usize,
    n: usize,
    profiles: std::vec::IntoIter<HeightProfile>,
    /// Profile, the strip set of each slot and the odometer over slots.
    current: Option<(HeightProfile, Vec<StripSet>, Vec<usize>)>,
    strips: HashMap<usize, StripSet>,
}

impl TilingIter {
    fn strips_of(&mut self, len: usize) -> StripSet {
        self.strips
            .entry(len)
            .or_insert_with(|| Rc::new(strip_tilings(len)))
            .clone()
    }

    fn load(&mut self, profile: HeightProfile) {
        let mut slots = Vec::with_capacity(self.n + self.m);
        for j in 1..=self.n {
            let w = profile.row_width(j);
            slots.push(self.strips_of(w));
        }
        for &h in &profile.0 {
            slots.push(self.strips_of(h.saturating_sub(2)));
        }
        let odometer = vec![0; slots.len()];
        self.current = Some((profile, slots, odometer));
    }
}

impl Iterator for TilingIter {
    type Item = Tiling;

    fn next(&mut self) -> Option<Tiling> {
        if self.current.is_none() {
            let profile = self.profiles.next()?;
            self.load(profile);
        }
        let (profile, slots, odometer) = self.current.as_mut().expect("loaded above");
        let pick = |s: usize| slots[s][odometer[s]].clone();
        let rows = (0..self.n).map(pick).collect();
        let columns = (self.n..self.n + self.m).map(pick).collect();
        let tiling = Tiling {
            m: self.m,
            n: self.n,
            profile: profile.clone(),
            rows,
            columns,
        };
        // advance; last slot fastest
        let mut s = slots.len();
        let mut exhausted = true;
        while s > 0 {
            s -= 1;
            odometer[s] += 1;
            if odometer[s] < slots[s].len() {
                exhausted = false;
                break;
            }
            odometer[s] = 0;
        }
        if exhausted {
            self.current = None;
        }
        Some(tiling)
    }
}

/// Every tiling of `T_{m,n}`, refusing with the projected count if it
/// exceeds `cap`.
pub fn enumerate_tilings(m: usize, n: usize, cap: u64) -> Result<TilingIter> {
    check_cap(m, n, cap)?;
    Ok(TilingIter {
        m,
        n,
        profiles: HeightProfile::all(m, n).into_iter(),
        current: None,
        strips: HashMap::new(),
    })
}

/// `Σ_T q^{deg w(T)}` over `T_{m,n}` by brute-force enumeration.
pub fn tiling_polynomial(m: usize, n: usize, cap: u64) -> Result<Polynomial> {
    let mut hist: Vec<u64> = Vec::new();
    for t in enumerate_tilings(m, n, cap)? {
        let d = t.weight_degree() as usize;
        if hist.len() <= d {
            hist.resize(d + 1, 0);
        }
        hist[d] += 1;
    }
    Ok(Polynomial::from_coeffs(hist.into_iter().map(BigInt::from).collect()))
}

/// The reference tiling of weight `q^25` in `T_{4,4}`: path heights
/// `(0,0,3,4)`, a horizontal domino ending at `(2,1)`, an unforced vertical
/// ending at `(4,2)` and forced verticals ending at `(3,3)`, `(4,4)`.
pub fn weight25_tiling() -> Tiling {
    Tiling::new(
        4,
        4,
        vec![0, 0, 3, 4],
        vec![vec![2], vec![], vec![], vec![]],
        vec![vec![], vec![], vec![], vec![2]],
    )
    .expect("fixture is a valid tiling")
}
