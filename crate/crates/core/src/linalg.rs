//! Exact sparse linear algebra over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A sparse row: column index to non-zero entry.
pub type SparseRow = BTreeMap<usize, BigRational>;

/// A matrix stored as sparse rows.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn push_row(&mut self, mut row: SparseRow) {
        row.retain(|c, v| {
            assert!(*c < self.cols, "column {c} out of range");
            !v.is_zero()
        });
        self.rows.push(row);
    }

    /// Reduced row echelon form. Returns the non-zero rows and their pivot
    /// columns, pivots ascending, each pivot entry normalized to 1.
    pub fn rref(&self) -> (Vec<SparseRow>, Vec<usize>) {
        let mut pending: Vec<SparseRow> = self.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut basis: BTreeMap<usize, SparseRow> = BTreeMap::new();
        while let Some(mut row) = pending.pop() {
            // eliminate known pivots from the row
            loop {
                let hit = row.iter().find(|(c, _)| basis.contains_key(c)).map(|(c, v)| (*c, v.clone()));
                let Some((col, factor)) = hit else { break };
                let prow = &basis[&col];
                axpy(&mut row, &-factor, prow);
            }
            let Some((&pivot, lead)) = row.iter().next() else { continue };
            let inv = BigRational::one() / lead.clone();
            for v in row.values_mut() {
                *v *= &inv;
            }
            // back-substitute into earlier basis rows
            for other in basis.values_mut() {
                if let Some(f) = other.get(&pivot).cloned() {
                    axpy(other, &-f, &row);
                }
            }
            basis.insert(pivot, row);
        }
        let pivots: Vec<usize> = basis.keys().copied().collect();
        (basis.into_values().collect(), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (rows, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[free] = BigRational::one();
                for (row, &p) in rows.iter().zip(&pivots) {
                    if let Some(v) = row.get(&free) {
                        x[p] = -v.clone();
                    }
                }
                x
            })
            .collect()
    }
}

/// `row += factor * other`.
fn axpy(row: &mut SparseRow, factor: &BigRational, other: &SparseRow) {
    for (c, v) in other {
        let slot = row.entry(*c).or_insert_with(BigRational::zero);
        *slot += factor * v;
        if slot.is_zero() {
            row.remove(c);
        }
    }
}

/// Dense product `a * b`.
pub fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| (0..inner).map(|t| &row[t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}
