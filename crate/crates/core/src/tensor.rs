//! Square-free multilinear forms and the substitution action of `S_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::subset::{Subset, MAX_ELEMENT};

/// `Σ c_I x_I` over `k`-subsets `I ⊆ {1..n}`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareFreeForm {
    n: usize,
    k: usize,
    coeffs: BTreeMap<Subset, BigRational>,
}

impl SquareFreeForm {
    pub fn zero(n: usize, k: usize) -> Self {
        assert!(n <= MAX_ELEMENT, "at most {MAX_ELEMENT} variables");
        SquareFreeForm { n, k, coeffs: BTreeMap::new() }
    }

    /// The degree-0 form `c`.
    pub fn scalar(n: usize, c: BigRational) -> Self {
        let mut f = SquareFreeForm::zero(n, 0);
        f.add_term(Subset::EMPTY, c);
        f
    }

    pub fn monomial(n: usize, vars: Subset) -> Result<Self> {
        let mut f = SquareFreeForm::zero(n, vars.len());
        f.check_key(vars)?;
        f.add_term(vars, BigRational::one());
        Ok(f)
    }

    /// Builds a form from `(vars, coefficient)` pairs; repeated keys add up.
    pub fn from_terms<I>(n: usize, k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, BigRational)>,
    {
        let mut f = SquareFreeForm::zero(n, k);
        for (vars, c) in terms {
            f.check_key(vars)?;
            f.add_term(vars, c);
        }
        Ok(f)
    }

    fn check_key(&self, vars: Subset) -> Result<()> {
        if vars.len() != self.k {
            return Err(Error::InvalidForm(format!(
                "monomial {vars:?} has degree {} but the form has degree {}",
                vars.len(),
                self.k
            )));
        }
        if !vars.is_subset_of(Subset::full(self.n)) {
            return Err(Error::InvalidForm(format!("monomial {vars:?} uses variables beyond n={}", self.n)));
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, vars: Subset, c: BigRational) {
        debug_assert_eq!(vars.len(), self.k);
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(vars).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&vars);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, vars: Subset) -> BigRational {
        self.coeffs.get(&vars).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &BigRational)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return SquareFreeForm::zero(self.n, self.k);
        }
        SquareFreeForm {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().map(|(s, v)| (*s, v * c)).collect(),
        }
    }

    fn same_shape(&self, other: &SquareFreeForm) -> Result<()> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::ShapeMismatch(self.n, self.k, other.n, other.k));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SquareFreeForm) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SquareFreeForm) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, -c.clone());
        }
        Ok(out)
    }

    /// The same form viewed in `n_new ≥ n` variables.
    pub fn embed(&self, n_new: usize) -> Self {
        assert!(n_new >= self.n && n_new <= MAX_ELEMENT);
        SquareFreeForm { n: n_new, k: self.k, coeffs: self.coeffs.clone() }
    }

    /// Multiplication by `x_var`; terms already containing `x_var` vanish
    /// (they would not be square-free).
    pub fn mul_var(&self, var: usize) -> Result<Self> {
        if var == 0 || var > self.n {
            return Err(Error::OutOfRange(format!("variable x_{var} with n={}", self.n)));
        }
        let mut out = SquareFreeForm::zero(self.n, self.k + 1);
        for (s, c) in self.terms() {
            if !s.contains(var) {
                out.add_term(s.insert(var), c.clone());
            }
        }
        Ok(out)
    }

    /// Product of two forms over disjoint supports, dropping non-square-free terms.
    pub fn mul(&self, other: &SquareFreeForm) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(self.n, self.k, other.n, other.k));
        }
        let mut out = SquareFreeForm::zero(self.n, self.k + other.k);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if !a.intersects(b) {
                    out.add_term(a.union(b), ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn norm_sq(&self) -> BigRational {
        self.coeffs.values().map(|c| c * c).sum()
    }
}

impl fmt::Debug for SquareFreeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareFreeForm(n={}, k={}; {})", self.n, self.k, self)
    }
}

impl fmt::Display for SquareFreeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (s, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = s.iter().map(|v| format!("x{v}")).collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &SquareFreeForm {
    type Output = SquareFreeForm;
    fn add(self, rhs: &SquareFreeForm) -> SquareFreeForm {
        self.try_add(rhs).expect("forms of the same shape")
    }
}

impl Sub for &SquareFreeForm {
    type Output = SquareFreeForm;
    fn sub(self, rhs: &SquareFreeForm) -> SquareFreeForm {
        self.try_sub(rhs).expect("forms of the same shape")
    }
}

impl Neg for &SquareFreeForm {
    type Output = SquareFreeForm;
    fn neg(self) -> SquareFreeForm {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&SquareFreeForm> for &BigRational {
    type Output = SquareFreeForm;
    fn mul(self, rhs: &SquareFreeForm) -> SquareFreeForm {
        rhs.scale(self)
    }
}

/// A bijection of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i - 1]` is the image of `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={n}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Permutation::cycle(n, &[a, b])
    }

    /// `a_1 → a_2 → ... → a_r → a_1`.
    pub fn cycle(n: usize, elems: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for (idx, &a) in elems.iter().enumerate() {
            if a == 0 || a > n {
                return Err(Error::InvalidPermutation(format!("cycle element {a} outside 1..={n}")));
            }
            images[a - 1] = elems[(idx + 1) % elems.len()];
        }
        Permutation::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::InvalidPermutation("composing permutations of different degrees".into()));
        }
        Ok(Permutation { images: other.images.iter().map(|&i| self.apply(i)).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (idx, &i) in self.images.iter().enumerate() {
            images[i - 1] = idx + 1;
        }
        Permutation { images }
    }

    pub fn apply_set(&self, s: Subset) -> Subset {
        Subset::from_elements(s.iter().map(|i| self.apply(i)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

/// `⟨f, g⟩ = Σ_I c_I(f) c_I(g)`.
pub fn inner(f: &SquareFreeForm, g: &SquareFreeForm) -> Result<BigRational> {
    f.same_shape(g)?;
    let (small, large) = if f.num_terms() <= g.num_terms() { (f, g) } else { (g, f) };
    Ok(small
        .terms()
        .filter_map(|(s, c)| large.coeffs.get(&s).map(|d| c * d))
        .sum())
}

/// `σ · f`: the coefficient of `σI` in the result is the coefficient of `I` in `f`.
pub fn act(sigma: &Permutation, f: &SquareFreeForm) -> Result<SquareFreeForm> {
    if sigma.n() != f.n {
        return Err(Error::ShapeMismatch(sigma.n(), f.k, f.n, f.k));
    }
    Ok(SquareFreeForm {
        n: f.n,
        k: f.k,
        coeffs: f.terms().map(|(s, c)| (sigma.apply_set(s), c.clone())).collect(),
    })
}

/// The degree-`(k-1)` form with `J`-coefficient `Σ_{j∉J} c_{J∪j}`.
pub fn divergence(f: &SquareFreeForm) -> Result<SquareFreeForm> {
    if f.k == 0 {
        return Err(Error::Precondition("divergence of a degree-0 form".into()));
    }
    let mut out = SquareFreeForm::zero(f.n, f.k - 1);
    for (s, c) in f.terms() {
        for j in s.iter() {
            out.add_term(s.remove(j), c.clone());
        }
    }
    Ok(out)
}

/// Membership in the harmonic subspace `A⁰_{n,k}`.
pub fn is_harmonic(f: &SquareFreeForm) -> bool {
    f.k == 0 || divergence(f).map(|d| d.is_zero()).unwrap_or(false)
}

/// Expanded `Π_t (x_{i_t} - x_{j_t})` in `n` variables.
pub fn pseudo_monomial(pairs: &[(usize, usize)], n: usize) -> Result<SquareFreeForm> {
    let mut used = Subset::EMPTY;
    for &(i, j) in pairs {
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(Error::OutOfRange(format!("index {v} outside 1..={n}")));
            }
            if used.contains(v) {
                return Err(Error::InvalidForm(format!("index {v} repeated in pseudo-monomial")));
            }
            used = used.insert(v);
        }
    }
    let mut acc = SquareFreeForm::scalar(n, BigRational::one());
    for &(i, j) in pairs {
        let factor = SquareFreeForm::from_terms(
            n,
            1,
            [(Subset::singleton(i), BigRational::one()), (Subset::singleton(j), -BigRational::one())],
        )?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// `x_I ↦ x_I · Σ_{S ⊆ {1..n}∖I, |S| = l} x_S`, extended linearly.
///
/// Negative `l` gives the zero form of degree `k` (the degree bookkeeping is
/// moot for a zero vector).
pub fn psi(f: &SquareFreeForm, l: i64) -> Result<SquareFreeForm> {
    if l < 0 {
        return Ok(SquareFreeForm::zero(f.n, f.k));
    }
    let l = l as usize;
    if f.k + l > f.n {
        return Err(Error::Precondition(format!("psi: k + l = {} exceeds n = {}", f.k + l, f.n)));
    }
    if l == 0 {
        return Ok(f.clone());
    }
    let full = Subset::full(f.n);
    let mut out = SquareFreeForm::zero(f.n, f.k + l);
    for (s, c) in f.terms() {
        let rest = Subset::from_bits(full.bits() & !s.bits());
        for extra in rest.subsets_of_size(l) {
            out.add_term(s.union(extra), c.clone());
        }
    }
    Ok(out)
}

/// Matrix of `divergence: A_{n,k} → A_{n,k-1}` in the lexicographic monomial bases.
pub fn divergence_matrix(n: usize, k: usize) -> Result<SparseMatrix> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("divergence matrix needs 1 <= k <= n, got n={n} k={k}")));
    }
    let cols = Subset::full(n).subsets_of_size(k);
    let rows = Subset::full(n).subsets_of_size(k - 1);
    let row_index: BTreeMap<Subset, usize> = rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut entries: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); rows.len()];
    for (c, s) in cols.iter().enumerate() {
        for j in s.iter() {
            entries[row_index[&s.remove(j)]].insert(c, BigRational::one());
        }
    }
    let mut m = SparseMatrix::new(cols.len());
    for row in entries {
        m.push_row(row);
    }
    Ok(m)
}

/// A basis of `A⁰_{n,k}` from the exact kernel of the divergence.
pub fn harmonic_basis(n: usize, k: usize) -> Result<Vec<SquareFreeForm>> {
    if k == 0 {
        return Ok(vec![SquareFreeForm::scalar(n, BigRational::one())]);
    }
    let keys = Subset::full(n).subsets_of_size(k);
    divergence_matrix(n, k)?
        .nullspace()
        .into_iter()
        .map(|v| SquareFreeForm::from_terms(n, k, keys.iter().copied().zip(v)))
        .collect()
}

/// Rank of a family of forms of a common shape.
pub fn span_dimension(forms: &[SquareFreeForm]) -> usize {
    let Some(first) = forms.first() else { return 0 };
    let keys = Subset::full(first.n).subsets_of_size(first.k);
    let index: BTreeMap<Subset, usize> = keys.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = SparseMatrix::new(keys.len());
    for f in forms {
        assert!(f.n == first.n && f.k == first.k, "forms of different shapes");
        m.push_row(f.terms().map(|(s, c)| (index[&s], c.clone())).collect());
    }
    m.rank()
}

/// The two branching components of a vector `f ∈ H^k_{n,m}` after the
/// embedding into level `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDecomposition {
    /// Component in `H^k_{n+1,m'}`.
    pub stay: SquareFreeForm,
    /// Component in `H^{k+1}_{n+1,m'}`.
    pub up: SquareFreeForm,
    /// `f` or `x_{n+1} f`, depending on the bit.
    pub embedded: SquareFreeForm,
}

/// Splits `ι(f)` for `f = psi(f0, m - k)`, where `m = f.k()` and `k = f0.k()`.
pub fn decompose_step(f: &SquareFreeForm, f0: &SquareFreeForm, bit: u8) -> Result<StepDecomposition> {
    if bit > 1 {
        return Err(Error::Precondition(format!("bit must be 0 or 1, got {bit}")));
    }
    if !is_harmonic(f0) {
        return Err(Error::Precondition("f0 is not harmonic".into()));
    }
    let (n, m, k) = (f.n, f.k, f0.k);
    if f0.n != n || k > m {
        return Err(Error::ShapeMismatch(f.n, f.k, f0.n, f0.k));
    }
    if 2 * m > n {
        return Err(Error::Precondition(format!("degree m={m} exceeds n/2 for n={n}")));
    }
    if bit == 1 && 2 * (m + 1) > n + 1 {
        return Err(Error::Precondition(format!("m+1={} exceeds (n+1)/2 for n={n}", m + 1)));
    }
    if &psi(f0, (m - k) as i64)? != f {
        return Err(Error::Precondition("f is not psi(f0, m - k)".into()));
    }

    let (n_i, m_i, k_i) = (n as i64, m as i64, k as i64);
    let denom = BigInt::from(n_i - 2 * k_i + 1);
    let frac = |num: i64| BigRational::new(BigInt::from(num), denom.clone());
    let n1 = n + 1;
    let f_up = f.embed(n1);
    let x_last_f = f_up.mul_var(n1)?;

    let (stay, up, embedded) = if bit == 0 {
        // x_{n+1} ψ^{m-k-1} f0
        let tail = psi(f0, m_i - k_i - 1)?.embed(n1).mul_var(n1)?;
        let tail = if tail.k() == m { tail } else { SquareFreeForm::zero(n1, m) };
        let a = n_i - m_i - k_i + 1;
        let stay = &frac(a) * &(&f_up + &tail);
        let up = &(&frac(m_i - k_i) * &f_up) - &(&frac(a) * &tail);
        (stay, up, f_up)
    } else {
        let wide = psi(f0, m_i - k_i + 1)?.embed(n1);
        let a = m_i - k_i + 1;
        let stay = &frac(a) * &(&x_last_f + &wide);
        let up = &(&frac(n_i - m_i - k_i) * &x_last_f) - &(&frac(a) * &wide);
        (stay, up, x_last_f)
    };
    Ok(StepDecomposition { stay, up, embedded })
}
