//! Two-row Young diagrams and standard tableaux.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `C(n, k)`, zero for `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The diagram `(n - k, k)`. `n = 0` is the empty diagram at level zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoRowDiagram {
    n: usize,
    k: usize,
}

impl TwoRowDiagram {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if 2 * k > n {
            return Err(Error::InvalidDiagram { n, k });
        }
        Ok(TwoRowDiagram { n, k })
    }

    pub fn empty() -> Self {
        TwoRowDiagram { n: 0, k: 0 }
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn is_empty(self) -> bool {
        self.n == 0
    }

    pub fn rows(self) -> (usize, usize) {
        (self.n - self.k, self.k)
    }

    /// Number of standard tableaux, `C(n,k) - C(n,k-1)`.
    pub fn dim(self) -> BigInt {
        let (n, k) = (self.n as i64, self.k as i64);
        binomial(n, k) - binomial(n, k - 1)
    }

    /// Diagrams one level up that contain this one.
    pub fn successors(self) -> Vec<TwoRowDiagram> {
        let mut out = vec![TwoRowDiagram { n: self.n + 1, k: self.k }];
        if 2 * (self.k + 1) <= self.n + 1 {
            out.push(TwoRowDiagram { n: self.n + 1, k: self.k + 1 });
        }
        out
    }

    pub fn cells(self) -> impl Iterator<Item = Cell> {
        let (r1, r2) = self.rows();
        (1..=r1)
            .map(|col| Cell { row: 1, col })
            .chain((1..=r2).map(|col| Cell { row: 2, col }))
    }
}

impl fmt::Display for TwoRowDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let (a, b) = self.rows();
        write!(f, "({a},{b})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn content(self) -> i64 {
        self.col as i64 - self.row as i64
    }

    /// Hook length inside `d`; the cell must belong to `d`.
    pub fn hook(self, d: TwoRowDiagram) -> usize {
        let (r1, r2) = d.rows();
        match self.row {
            1 => {
                debug_assert!(self.col <= r1);
                let leg = usize::from(self.col <= r2);
                r1 - self.col + leg + 1
            }
            _ => {
                debug_assert!(self.col <= r2);
                r2 - self.col + 1
            }
        }
    }
}

/// Diagrams of level `n`, ascending in the second-row length. Level 0 yields
/// the empty diagram.
pub fn enumerate_diagrams(n: usize) -> Vec<TwoRowDiagram> {
    (0..=n / 2).map(|k| TwoRowDiagram { n, k }).collect()
}

/// A standard tableau of two-row shape, keyed by its second row.
///
/// Ordered by level, then by second-row length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoRowTableau {
    n: usize,
    second_row: Vec<usize>,
}

impl Ord for TwoRowTableau {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.k(), &self.second_row).cmp(&(other.n, other.k(), &other.second_row))
    }
}

impl PartialOrd for TwoRowTableau {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl TwoRowTableau {
    pub fn new(n: usize, second_row: Vec<usize>) -> Result<Self> {
        for (idx, &p) in second_row.iter().enumerate() {
            let j = idx + 1;
            if p > n {
                return Err(Error::InvalidTableau(format!("entry {p} exceeds n={n}")));
            }
            if idx > 0 && second_row[idx - 1] >= p {
                return Err(Error::InvalidTableau(format!(
                    "second row {second_row:?} is not strictly increasing"
                )));
            }
            if p < 2 * j {
                return Err(Error::InvalidTableau(format!(
                    "second-row entry p_{j}={p} is below {}",
                    2 * j
                )));
            }
        }
        Ok(TwoRowTableau { n, second_row })
    }

    /// The one-row tableau of size `n`.
    pub fn one_row(n: usize) -> Self {
        TwoRowTableau { n, second_row: Vec::new() }
    }

    /// Second row `2, 4, ..., 2k`.
    pub fn good(n: usize, k: usize) -> Result<Self> {
        TwoRowTableau::new(n, (1..=k).map(|j| 2 * j).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.second_row.len()
    }

    pub fn second_row(&self) -> &[usize] {
        &self.second_row
    }

    pub fn shape(&self) -> TwoRowDiagram {
        TwoRowDiagram { n: self.n, k: self.k() }
    }

    pub fn is_good(&self) -> bool {
        self.second_row.iter().enumerate().all(|(i, &p)| p == 2 * (i + 1))
    }

    pub fn content_of_entry(&self, l: usize) -> Result<i64> {
        Ok(self.cell_of(l)?.content())
    }

    pub fn cell_of(&self, l: usize) -> Result<Cell> {
        if l == 0 || l > self.n {
            return Err(Error::OutOfRange(format!("entry {l} not in 1..={}", self.n)));
        }
        let below = self.second_row.partition_point(|&p| p < l);
        if self.second_row.get(below) == Some(&l) {
            Ok(Cell { row: 2, col: below + 1 })
        } else {
            Ok(Cell { row: 1, col: l - below })
        }
    }

    /// Contents `(c_1(u), ..., c_n(u))`.
    pub fn content_vector(&self) -> Vec<i64> {
        (1..=self.n).map(|l| self.content_of_entry(l).expect("in range")).collect()
    }

    /// Second-row lengths of the path `∅ = λ_0 ⊂ λ_1 ⊂ ... ⊂ λ_n`.
    pub fn k_path(&self) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.n + 1);
        let mut k = 0;
        path.push(0);
        for l in 1..=self.n {
            if self.second_row.get(k) == Some(&l) {
                k += 1;
            }
            path.push(k);
        }
        path
    }

    /// The sub-tableau holding `1..=level`.
    pub fn restrict(&self, level: usize) -> TwoRowTableau {
        assert!(level <= self.n);
        TwoRowTableau {
            n: level,
            second_row: self.second_row.iter().copied().filter(|&p| p <= level).collect(),
        }
    }

    /// Add `n + 1` to the first row (`up = false`) or the second row.
    pub fn extend(&self, up: bool) -> Result<TwoRowTableau> {
        let mut second_row = self.second_row.clone();
        if up {
            second_row.push(self.n + 1);
        }
        TwoRowTableau::new(self.n + 1, second_row)
    }
}

impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} second_row={:?}", self.n, self.second_row)
    }
}

/// Standard tableaux of shape `d`, lexicographic in the second row.
pub fn enumerate_tableaux(d: TwoRowDiagram) -> Vec<TwoRowTableau> {
    fn go(n: usize, k: usize, start: usize, row: &mut Vec<usize>, out: &mut Vec<TwoRowTableau>) {
        let j = row.len() + 1;
        if row.len() == k {
            out.push(TwoRowTableau { n, second_row: row.clone() });
            return;
        }
        // leave room for the remaining k - j entries above p_j
        let hi = n - (k - j);
        for p in start.max(2 * j)..=hi {
            row.push(p);
            go(n, k, p + 1, row, out);
            row.pop();
        }
    }
    let mut out = Vec::new();
    go(d.n, d.k, 1, &mut Vec::with_capacity(d.k), &mut out);
    out
}

/// All tableaux at level `n`, grouped by `k` ascending.
pub fn enumerate_level(n: usize) -> Vec<TwoRowTableau> {
    enumerate_diagrams(n).into_iter().flat_map(enumerate_tableaux).collect()
}

/// `dim(small) / dim(big)`.
pub fn cotransition(small: TwoRowDiagram, big: TwoRowDiagram) -> Result<BigRational> {
    let adjacent = big.n == small.n + 1 && (big.k == small.k || big.k == small.k + 1);
    if !adjacent {
        return Err(Error::NotAdjacent {
            small_n: small.n,
            small_k: small.k,
            big_n: big.n,
            big_k: big.k,
        });
    }
    Ok(BigRational::new(small.dim(), big.dim()))
}
