//! Explicit Gelfand–Tsetlin vectors in the tensor model.
//!
//! Vectors are kept unnormalized with integer coefficients; the normalizing
//! constants involve square roots, so every identity is checked in squared
//! form against the stored `norm_sq`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::tensor::{act, inner, psi, Permutation, SquareFreeForm};
use crate::ygraph::{binomial, enumerate_tableaux, TwoRowDiagram, TwoRowTableau};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GzVector {
    pub tableau: TwoRowTableau,
    /// Degree of the ambient space `A_{n,m}`; `m = k` is the harmonic case.
    pub m: usize,
    pub form: SquareFreeForm,
    pub norm_sq: BigRational,
}

impl GzVector {
    fn from_form(tableau: TwoRowTableau, m: usize, form: SquareFreeForm) -> Self {
        let norm_sq = form.norm_sq();
        GzVector { tableau, m, form, norm_sq }
    }

    pub fn k(&self) -> usize {
        self.tableau.k()
    }
}

/// `Π_j (p_j - 2j + 1)(p_j - 2j + 2)`.
pub fn harmonic_norm_product(u: &TwoRowTableau) -> BigInt {
    u.second_row()
        .iter()
        .enumerate()
        .map(|(idx, &p)| {
            let j = idx as i64 + 1;
            let p = p as i64;
            BigInt::from((p - 2 * j + 1) * (p - 2 * j + 2))
        })
        .product()
}

/// `C(n-2k, m-k) · Π_j (p_j - 2j + 1)(p_j - 2j + 2)`.
pub fn closed_form_norm_sq(u: &TwoRowTableau, m: usize) -> BigRational {
    let (n, k) = (u.n() as i64, u.k() as i64);
    BigRational::from_integer(binomial(n - 2 * k, m as i64 - k) * harmonic_norm_product(u))
}

/// `Σ Π_j (x_{i_j} - x_{p_j})` over `i_j < p_j` with all `2k` indices distinct.
pub fn gz_harmonic(u: &TwoRowTableau) -> GzVector {
    let n = u.n();
    let p_set = Subset::from_elements(u.second_row().iter().copied());
    // (indices used so far, monomial) -> coefficient
    let mut states: HashMap<(Subset, Subset), BigInt> = HashMap::new();
    states.insert((p_set, Subset::EMPTY), BigInt::one());
    for &p in u.second_row() {
        let mut next: HashMap<(Subset, Subset), BigInt> = HashMap::with_capacity(states.len() * 2);
        for ((used, mono), c) in states {
            for i in (1..p).filter(|&i| !used.contains(i)) {
                let used = used.insert(i);
                *next.entry((used, mono.insert(i))).or_default() += &c;
                *next.entry((used, mono.insert(p))).or_default() -= &c;
            }
        }
        states = next;
    }
    let mut form = SquareFreeForm::zero(n, u.k());
    for ((_, mono), c) in states {
        form.add_term(mono, BigRational::from_integer(c));
    }
    GzVector::from_form(u.clone(), u.k(), form)
}

/// The GZ vector of `u` in `H^k_{n,m}`: `psi(h⁰_u, m - k)`.
pub fn gz_in_h(u: &TwoRowTableau, m: usize) -> Result<GzVector> {
    if m < u.k() || 2 * m > u.n() {
        return Err(Error::OutOfRange(format!("m={m} outside {}..={} for {u}", u.k(), u.n() / 2)));
    }
    let h0 = gz_harmonic(u);
    let form = psi(&h0.form, (m - u.k()) as i64)?;
    Ok(GzVector::from_form(u.clone(), m, form))
}

/// `X_l f = Σ_{i<l} (i,l) f`.
pub fn yjm_apply(l: usize, f: &SquareFreeForm) -> Result<SquareFreeForm> {
    let n = f.n();
    if l == 0 || l > n.max(1) {
        return Err(Error::OutOfRange(format!("YJM index {l} outside 1..={n}")));
    }
    let mut out = SquareFreeForm::zero(n, f.k());
    for i in 1..l {
        out = &out + &act(&Permutation::transposition(n, i, l)?, f)?;
    }
    Ok(out)
}

/// Whether `X_l f = c_l(u) f` for every `l`.
pub fn is_yjm_eigenvector(u: &TwoRowTableau, f: &SquareFreeForm) -> bool {
    if f.n() != u.n() || f.is_zero() {
        return false;
    }
    (1..=u.n()).all(|l| {
        let c = BigRational::from_integer(u.content_of_entry(l).expect("in range").into());
        matches!(yjm_apply(l, f), Ok(x) if x == f.scale(&c))
    })
}

pub fn yjm_eigencheck(u: &TwoRowTableau, m: usize) -> Result<bool> {
    Ok(is_yjm_eigenvector(u, &gz_in_h(u, m)?.form))
}

/// GZ vectors of `A_{n,m}` for all shapes `k = 0..=m`, grouped by `k`, each
/// group lexicographic in the second row.
pub fn full_gz_basis(n: usize, m: usize) -> Result<Vec<GzVector>> {
    if 2 * m > n {
        return Err(Error::OutOfRange(format!("m={m} exceeds n/2 for n={n}")));
    }
    let tableaux: Vec<TwoRowTableau> = (0..=m)
        .flat_map(|k| enumerate_tableaux(TwoRowDiagram::new(n, k).expect("k <= m <= n/2")))
        .collect();
    tableaux.par_iter().map(|u| gz_in_h(u, m)).collect()
}

/// `i` and `i + 1` swapped; `None` when they share a row or column.
pub fn swap_adjacent(u: &TwoRowTableau, i: usize) -> Option<TwoRowTableau> {
    let row: Vec<usize> = u
        .second_row()
        .iter()
        .map(|&p| match p {
            p if p == i => i + 1,
            p if p == i + 1 => i,
            p => p,
        })
        .collect();
    let mut sorted = row.clone();
    sorted.sort_unstable();
    if sorted != row || row == u.second_row() {
        return None;
    }
    TwoRowTableau::new(u.n(), row).ok()
}

/// Axial distance `c_{i+1}(u) - c_i(u)`.
pub fn axial_distance(u: &TwoRowTableau, i: usize) -> Result<i64> {
    Ok(u.content_of_entry(i + 1)? - u.content_of_entry(i)?)
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (num, den) = (q.numer(), q.denom());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    (&rn * &rn == *num && &rd * &rd == *den).then(|| BigRational::new(rn, rd))
}

pub type Matrix = Vec<Vec<BigRational>>;

fn check_adjacent_index(i: usize, d: TwoRowDiagram) -> Result<()> {
    if i == 0 || i >= d.n() {
        return Err(Error::OutOfRange(format!("adjacent transposition s_{i} with n={}", d.n())));
    }
    Ok(())
}

/// Matrix of `s_i = (i, i+1)` in the unnormalized GZ basis of shape `d`,
/// built from Young's orthogonal form. Row `u` holds the coordinates of `s_i h_u`.
pub fn orthogonal_form_matrix(i: usize, d: TwoRowDiagram) -> Result<Matrix> {
    check_adjacent_index(i, d)?;
    let basis = enumerate_tableaux(d);
    let index: HashMap<&TwoRowTableau, usize> = basis.iter().enumerate().map(|(a, u)| (u, a)).collect();
    let mut mat = vec![vec![BigRational::zero(); basis.len()]; basis.len()];
    for (row, u) in basis.iter().enumerate() {
        let dist = BigRational::from_integer(axial_distance(u, i)?.into());
        let diag = BigRational::one() / &dist;
        mat[row][row] = diag.clone();
        if let Some(v) = swap_adjacent(u, i) {
            let col = index[&v];
            // orthonormal entry sqrt(1 - 1/d²) rescaled by the norm ratio
            let ratio = closed_form_norm_sq(u, u.k()) / closed_form_norm_sq(&v, v.k());
            let sq = (BigRational::one() - &diag * &diag) * ratio;
            mat[row][col] = rational_sqrt(&sq).ok_or_else(|| {
                Error::Precondition(format!("off-diagonal entry for {u} is irrational: sqrt({sq})"))
            })?;
        }
    }
    Ok(mat)
}

/// Matrix of `act((i, i+1), ·)` on the computed GZ vectors of shape `d`, in
/// `H^k_{n,m}`, via orthogonal projection.
pub fn tensor_transposition_matrix(i: usize, d: TwoRowDiagram, m: usize) -> Result<Matrix> {
    check_adjacent_index(i, d)?;
    let basis: Vec<GzVector> = enumerate_tableaux(d).iter().map(|u| gz_in_h(u, m)).collect::<Result<_>>()?;
    let s = Permutation::transposition(d.n(), i, i + 1)?;
    basis
        .iter()
        .map(|h| {
            let image = act(&s, &h.form)?;
            basis.iter().map(|g| Ok(inner(&image, &g.form)? / &g.norm_sq)).collect()
        })
        .collect()
}
