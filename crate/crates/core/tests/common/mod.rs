//! Test-side oracles, written against the raw definitions rather than the
//! library's closed forms.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use tworow::tensor::act;
use tworow::ygraph::TwoRowDiagram;
use tworow::{Permutation, SpectralTable, SquareFreeForm, Subset, TwoRowTableau};

pub fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn dot(f: &SquareFreeForm, g: &SquareFreeForm) -> BigRational {
    f.terms().map(|(s, c)| c * g.coeff(s)).sum()
}

/// Coefficients of `f(x_1 + t, ..., x_n + t)` keyed by `(monomial, power of t)`.
pub fn shift_expand(f: &SquareFreeForm) -> BTreeMap<(Subset, usize), BigRational> {
    let mut out: BTreeMap<(Subset, usize), BigRational> = BTreeMap::new();
    for (s, c) in f.terms() {
        let elems = s.to_vec();
        for mask in 0u64..(1 << elems.len()) {
            let kept = Subset::from_elements(elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
            let power = elems.len() - kept.len();
            *out.entry((kept, power)).or_insert_with(BigRational::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn is_shift_invariant(f: &SquareFreeForm) -> bool {
    shift_expand(f).keys().all(|&(_, power)| power == 0)
}

/// Content of the cell holding `l`, read off the second row directly.
pub fn content_of(u: &TwoRowTableau, l: usize) -> i64 {
    let row = u.second_row();
    match row.iter().position(|&p| p == l) {
        Some(j) => j as i64 - 1,
        None => (1..l).filter(|i| !row.contains(i)).count() as i64,
    }
}

/// `X_l f = Σ_{i<l} (i l) f`.
pub fn yjm(l: usize, f: &SquareFreeForm) -> SquareFreeForm {
    let mut acc = SquareFreeForm::zero(f.n(), f.k());
    for i in 1..l {
        let t = Permutation::transposition(f.n(), i, l).unwrap();
        acc = &acc + &act(&t, f).unwrap();
    }
    acc
}

/// `Π_{j ≤ k} (x_{2j-1} - x_{2j})`, expanded by hand.
pub fn alternating_product(n: usize, k: usize) -> SquareFreeForm {
    let mut terms: BTreeMap<Subset, BigRational> = BTreeMap::from([(Subset::EMPTY, BigRational::one())]);
    for j in 1..=k {
        let mut next = BTreeMap::new();
        for (s, c) in &terms {
            *next.entry(s.insert(2 * j - 1)).or_insert_with(BigRational::zero) += c;
            *next.entry(s.insert(2 * j)).or_insert_with(BigRational::zero) -= c;
        }
        terms = next;
    }
    SquareFreeForm::from_terms(n, k, terms).unwrap()
}

/// Number of semistandard fillings of the diagram with entries in `{1, 2}`.
pub fn ssyt_count(d: TwoRowDiagram) -> u64 {
    let (a, b) = d.rows();
    let mut count = 0;
    // first row: i ones then twos; second row must be all twos, above a one
    for ones_top in 0..=a {
        if ones_top >= b {
            count += 1;
        }
    }
    count
}

/// `s_λ(1/2, 1/2)`.
pub fn schur_half(d: TwoRowDiagram) -> BigRational {
    BigRational::new(ssyt_count(d).into(), BigInt::one() << d.n())
}

pub fn bits_of(xi: &str) -> Vec<u8> {
    xi.bytes().map(|b| b - b'0').collect()
}

/// `(p_stay, p_up)` at `(n, k)` with `m` ones among the first `n` bits.
pub fn kernel_step(n: usize, k: usize, m: usize, bit: u8) -> (BigRational, BigRational) {
    let (n, k, m) = (n as i64, k as i64, m as i64);
    let den = n - 2 * k + 1;
    if bit == 0 {
        (rat(n - m - k + 1, den), rat(m - k, den))
    } else {
        (rat(m - k + 1, den), rat(n - m - k, den))
    }
}

pub fn path_product(bits: &[u8], u: &TwoRowTableau) -> BigRational {
    let ks = u.k_path();
    let mut p = BigRational::one();
    for n in 0..u.n() {
        let m = bits[..n].iter().filter(|&&b| b == 1).count();
        let (stay, up) = kernel_step(n, ks[n], m, bits[n]);
        p *= if ks[n + 1] > ks[n] { up } else { stay };
    }
    p
}

/// Transition probabilities of one level step, keyed by `(k_n, moved up)`;
/// `Err` when two pasts ending in the same state disagree or the levels
/// are not consistent marginals.
pub fn markov_step(a: &SpectralTable, b: &SpectralTable) -> Result<BTreeMap<(usize, bool), BigRational>, String> {
    let mut seen: BTreeMap<(usize, bool), BigRational> = BTreeMap::new();
    for (u, p) in a.entries() {
        let mut mass = BigRational::zero();
        for up in [false, true] {
            let Ok(v) = u.extend(up) else { continue };
            let q = b.prob(&v);
            mass += &q;
            let ratio = q / p;
            match seen.get(&(u.k(), up)) {
                Some(prev) if *prev != ratio => {
                    return Err(format!("{u}: step ratio {ratio} but another past gives {prev}"));
                }
                Some(_) => {}
                None => {
                    seen.insert((u.k(), up), ratio);
                }
            }
        }
        if &mass != p {
            return Err(format!("{u}: extensions carry {mass} of {p}"));
        }
    }
    Ok(seen)
}
