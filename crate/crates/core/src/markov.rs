//! Spectral measures of induced representations and their Markov kernels.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gz::{full_gz_basis, GzVector};
use crate::subset::Subset;
use crate::ygraph::{binomial, enumerate_level, TwoRowTableau};

/// A finite prefix `ξ_1 ... ξ_N` of the 0/1 sequence defining an induced
/// representation, with running counts of ones.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitPrefix {
    bits: Vec<u8>,
    /// `ones[n] = m(n)` for `n = 0..=N`.
    ones: Vec<usize>,
}

impl BitPrefix {
    /// Rejects prefixes with `m(n) > n/2` at some `n`.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        let mut ones = Vec::with_capacity(bits.len() + 1);
        ones.push(0);
        for (idx, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(Error::InvalidPrefix(format!("bit {b} at position {}", idx + 1)));
            }
            let m = ones[idx] + b as usize;
            let n = idx + 1;
            if 2 * m > n {
                return Err(Error::InvalidPrefix(format!(
                    "m({n}) = {m} exceeds {n}/2; only prefixes with at most half ones are supported"
                )));
            }
            ones.push(m);
        }
        Ok(BitPrefix { bits, ones })
    }

    /// `0101...` of length `len`.
    pub fn alternating(len: usize) -> Self {
        BitPrefix::new((0..len).map(|i| (i % 2) as u8).collect()).expect("m(n) = [n/2]")
    }

    pub fn zeros(len: usize) -> Self {
        BitPrefix::new(vec![0; len]).expect("no ones")
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// `ξ_{n+1}`, the bit read on the step from level `n` to `n + 1`.
    pub fn next_bit(&self, n: usize) -> Option<u8> {
        self.bits.get(n).copied()
    }

    /// `m(n)`.
    pub fn ones(&self, n: usize) -> usize {
        self.ones[n]
    }

    /// Positions of ones among the first `n` bits.
    pub fn support(&self, n: usize) -> Subset {
        Subset::from_elements(self.bits[..n].iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i + 1))
    }

    /// Every valid prefix of length `len`, in lexicographic order.
    pub fn enumerate(len: usize) -> Vec<BitPrefix> {
        (0u64..1 << len)
            .filter_map(|code| {
                let bits = (0..len).map(|i| ((code >> (len - 1 - i)) & 1) as u8).collect();
                BitPrefix::new(bits).ok()
            })
            .collect()
    }
}

impl FromStr for BitPrefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidPrefix("empty prefix".into()));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidPrefix(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitPrefix::new(bits)
    }
}

impl fmt::Display for BitPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPrefix({self})")
    }
}

/// Probabilities of the two moves out of `λ_{n,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    /// To `λ_{n+1,k}`.
    pub stay: BigRational,
    /// To `λ_{n+1,k+1}`.
    pub up: BigRational,
}

impl Transition {
    pub fn prob(&self, up: bool) -> &BigRational {
        if up {
            &self.up
        } else {
            &self.stay
        }
    }
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Transition probabilities of the spectral measure of `ξ` at level `n`,
/// shape `λ_{n,k}`, with `m = m(n)` and `bit = ξ_{n+1}`.
pub fn induced_transition(n: usize, k: usize, m: usize, bit: u8) -> Result<Transition> {
    if bit > 1 {
        return Err(Error::Precondition(format!("bit must be 0 or 1, got {bit}")));
    }
    if k > m || 2 * m > n {
        return Err(Error::Precondition(format!("need k <= m <= n/2, got n={n} k={k} m={m}")));
    }
    if bit == 1 && 2 * (m + 1) > n + 1 {
        return Err(Error::Precondition(format!("m(n+1) = {} exceeds (n+1)/2 for n={n}", m + 1)));
    }
    let (n, k, m) = (n as i64, k as i64, m as i64);
    let den = n - 2 * k + 1;
    Ok(if bit == 0 {
        Transition { stay: frac(n - m - k + 1, den), up: frac(m - k, den) }
    } else {
        Transition { stay: frac(m - k + 1, den), up: frac(n - m - k, den) }
    })
}

/// Exact cylinder probabilities of the level-`n` tableaux. Zero-mass
/// tableaux are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralTable {
    level: usize,
    probs: BTreeMap<TwoRowTableau, BigRational>,
}

impl SpectralTable {
    /// Validates levels, non-negativity and total mass one.
    pub fn new<I>(level: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (TwoRowTableau, BigRational)>,
    {
        let mut probs = BTreeMap::new();
        for (u, p) in entries {
            if u.n() != level {
                return Err(Error::Precondition(format!("tableau {u} in a level-{level} table")));
            }
            if p.is_negative() {
                return Err(Error::Precondition(format!("negative probability {p} at {u}")));
            }
            if !p.is_zero() {
                probs.insert(u, p);
            }
        }
        let total: BigRational = probs.values().sum();
        if !total.is_one() {
            return Err(Error::Precondition(format!("level-{level} masses sum to {total}")));
        }
        Ok(SpectralTable { level, probs })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn prob(&self, u: &TwoRowTableau) -> BigRational {
        self.probs.get(u).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Support entries, grouped by `k`, lexicographic in the second row.
    pub fn entries(&self) -> impl Iterator<Item = (&TwoRowTableau, &BigRational)> {
        self.probs.iter()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// `|⟨ξ, h_u⟩|² / ‖h_u‖²` over a full GZ basis of `A_{n,m(n)}`.
pub fn spectral_measure_with_basis(xi: &BitPrefix, n: usize, basis: &[GzVector]) -> Result<SpectralTable> {
    if n > xi.len() {
        return Err(Error::OutOfRange(format!("level {n} beyond prefix length {}", xi.len())));
    }
    let m = xi.ones(n);
    let support = xi.support(n);
    if let Some(bad) = basis.iter().find(|h| h.tableau.n() != n || h.m != m) {
        return Err(Error::Precondition(format!(
            "basis vector for {} lives in A_{{{},{}}}, expected A_{{{n},{m}}}",
            bad.tableau,
            bad.tableau.n(),
            bad.m
        )));
    }
    let entries = basis.iter().map(|h| {
        let c = h.form.coeff(support);
        (h.tableau.clone(), &c * &c / &h.norm_sq)
    });
    SpectralTable::new(n, entries)
}

/// Brute-force spectral measure of the cyclic vector `ξ` at level `n`.
pub fn spectral_measure(xi: &BitPrefix, n: usize) -> Result<SpectralTable> {
    if n > xi.len() {
        return Err(Error::OutOfRange(format!("level {n} beyond prefix length {}", xi.len())));
    }
    let basis = full_gz_basis(n, xi.ones(n))?;
    spectral_measure_with_basis(xi, n, &basis)
}

/// Which measure a kernel came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelSource {
    Induced(BitPrefix),
    Central,
}

impl fmt::Display for KernelSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSource::Induced(xi) => write!(f, "xi={xi}"),
            KernelSource::Central => write!(f, "central"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelEntry {
    /// `ξ_{n+1}` for induced kernels.
    pub bit: Option<u8>,
    pub transition: Transition,
}

/// Transition probabilities for every reachable `(n, k)` with `n < depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionKernel {
    source: KernelSource,
    depth: usize,
    entries: BTreeMap<(usize, usize), KernelEntry>,
}

impl TransitionKernel {
    pub fn source(&self) -> &KernelSource {
        &self.source
    }

    /// Number of levels covered: transitions out of levels `0..depth`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&KernelEntry> {
        self.entries.get(&(n, k))
    }

    /// Entries ordered by `(n, k)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &KernelEntry)> {
        self.entries.iter().map(|(key, e)| (*key, e))
    }

    /// Product of the kernel's transitions along the path of `u`.
    pub fn path_probability(&self, u: &TwoRowTableau) -> Result<BigRational> {
        if u.n() > self.depth {
            return Err(Error::OutOfRange(format!("tableau of size {} beyond kernel depth {}", u.n(), self.depth)));
        }
        let path = u.k_path();
        let mut acc = BigRational::one();
        for level in 0..u.n() {
            let (k, next) = (path[level], path[level + 1]);
            let Some(entry) = self.get(level, k) else {
                // only reachable through a zero-probability move
                debug_assert!(acc.is_zero());
                return Ok(BigRational::zero());
            };
            acc *= entry.transition.prob(next > k);
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Level-`n` table built from path products.
    pub fn table(&self, n: usize) -> Result<SpectralTable> {
        let entries = enumerate_level(n)
            .into_iter()
            .map(|u| self.path_probability(&u).map(|p| (u, p)))
            .collect::<Result<Vec<_>>>()?;
        SpectralTable::new(n, entries)
    }
}

/// Kernel of the induced spectral measure for every `(n, k)`, `k ≤ m(n)`, `n < N`.
pub fn kernel_from_prefix(xi: &BitPrefix) -> TransitionKernel {
    let mut entries = BTreeMap::new();
    for n in 0..xi.len() {
        let m = xi.ones(n);
        let bit = xi.next_bit(n).expect("n < N");
        for k in 0..=m {
            let transition = induced_transition(n, k, m, bit).expect("valid prefix satisfies preconditions");
            entries.insert((n, k), KernelEntry { bit: Some(bit), transition });
        }
    }
    TransitionKernel { source: KernelSource::Induced(xi.clone()), depth: xi.len(), entries }
}

/// `C(n-2k, m_n-k) / C(n+1-2k, m_{n+1}-k)`: the one-step ratio of squared
/// projections of `ξ` onto good-tableau vectors.
pub fn good_tableau_ratio(n: usize, k: usize, m_n: usize, m_n1: usize) -> Result<BigRational> {
    if m_n1 < m_n || m_n1 > m_n + 1 {
        return Err(Error::Precondition(format!("m(n+1) = {m_n1} must be m(n) or m(n)+1 (m(n) = {m_n})")));
    }
    let (n, k) = (n as i64, k as i64);
    let num = binomial(n - 2 * k, m_n as i64 - k);
    let den = binomial(n + 1 - 2 * k, m_n1 as i64 - k);
    if num.is_zero() || den.is_zero() {
        return Err(Error::Precondition(format!(
            "binomials vanish for n={n} k={k} m(n)={m_n} m(n+1)={m_n1}"
        )));
    }
    Ok(BigRational::new(num, den))
}

/// Mass of the cylinder of `u` under the central measure with Thoma
/// parameters `α = (1/2, 1/2)`: `2^{-n} Π (2 + c(□)) / h(□)`.
pub fn central_alpha_prob(u: &TwoRowTableau) -> BigRational {
    let d = u.shape();
    let mut acc = BigRational::new(BigInt::one(), BigInt::one() << u.n());
    for cell in d.cells() {
        acc *= frac(2 + cell.content(), cell.hook(d) as i64);
    }
    acc
}

pub fn central_alpha_transition(n: usize, k: usize) -> Result<Transition> {
    if 2 * k > n {
        return Err(Error::Precondition(format!("k={k} exceeds n/2 for n={n}")));
    }
    let j = (n - 2 * k) as i64;
    Ok(Transition { stay: frac(j + 2, 2 * (j + 1)), up: frac(j, 2 * (j + 1)) })
}

pub fn central_kernel(depth: usize) -> TransitionKernel {
    let mut entries = BTreeMap::new();
    for n in 0..depth {
        for k in 0..=n / 2 {
            let transition = central_alpha_transition(n, k).expect("k <= n/2");
            entries.insert((n, k), KernelEntry { bit: None, transition });
        }
    }
    TransitionKernel { source: KernelSource::Central, depth, entries }
}

pub fn central_table(n: usize) -> SpectralTable {
    let entries = enumerate_level(n).into_iter().map(|u| {
        let p = central_alpha_prob(&u);
        (u, p)
    });
    SpectralTable::new(n, entries).expect("central masses sum to one")
}

/// A tableau whose one-step continuation ratio differs from that of another
/// tableau of the same shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovViolation {
    pub tableau: TwoRowTableau,
    pub up: bool,
    pub ratio: BigRational,
    pub reference: TwoRowTableau,
    pub reference_ratio: BigRational,
}

impl fmt::Display for MarkovViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}: ratio {} but {} has {}",
            self.tableau,
            if self.up { "second row" } else { "first row" },
            self.ratio,
            self.reference,
            self.reference_ratio
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovReport {
    pub markov: bool,
    pub violations: Vec<MarkovViolation>,
}

/// Checks that the continuation probabilities from `table` to `deeper`
/// depend only on the current shape.
pub fn is_markov(table: &SpectralTable, deeper: &SpectralTable) -> Result<MarkovReport> {
    if deeper.level != table.level + 1 {
        return Err(Error::NotRefining(format!("levels {} and {}", table.level, deeper.level)));
    }
    for (v, _) in deeper.entries() {
        let parent = v.restrict(table.level);
        if table.prob(&parent).is_zero() {
            return Err(Error::NotRefining(format!("{v} extends the zero-mass tableau {parent}")));
        }
    }
    // (k, up) -> first tableau seen and its ratio
    let mut reference: BTreeMap<(usize, bool), (TwoRowTableau, BigRational)> = BTreeMap::new();
    let mut violations = Vec::new();
    for (u, p) in table.entries() {
        let mut children = BigRational::zero();
        for up in [false, true] {
            let Ok(child) = u.extend(up) else { continue };
            let q = deeper.prob(&child);
            children += &q;
            let ratio = q / p;
            match reference.get(&(u.k(), up)) {
                None => {
                    reference.insert((u.k(), up), (u.clone(), ratio));
                }
                Some((ref_u, ref_ratio)) if *ref_ratio != ratio => violations.push(MarkovViolation {
                    tableau: u.clone(),
                    up,
                    ratio,
                    reference: ref_u.clone(),
                    reference_ratio: ref_ratio.clone(),
                }),
                Some(_) => {}
            }
        }
        if children != *p {
            return Err(Error::NotRefining(format!("children of {u} carry {children}, expected {p}")));
        }
    }
    Ok(MarkovReport { markov: violations.is_empty(), violations })
}

/// A level-3/level-4 pair whose continuation depends on the past: the two
/// tableaux of shape `(2,1)` move to different rows with certainty.
pub fn negative_control_tables() -> (SpectralTable, SpectralTable) {
    let t = |n, row: &[usize]| TwoRowTableau::new(n, row.to_vec()).expect("standard");
    let half = frac(1, 2);
    let table = SpectralTable::new(3, [(t(3, &[2]), half.clone()), (t(3, &[3]), half.clone())]).expect("valid");
    let deeper = SpectralTable::new(4, [(t(4, &[2]), half.clone()), (t(4, &[3, 4]), half)]).expect("valid");
    (table, deeper)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        frac(a, b)
    }

    fn tab(n: usize, row: &[usize]) -> TwoRowTableau {
        TwoRowTableau::new(n, row.to_vec()).unwrap()
    }

    fn pair(stay: BigRational, up: BigRational) -> Transition {
        Transition { stay, up }
    }

    #[test]
    fn prefix_validation() {
        assert!("1".parse::<BitPrefix>().is_err());
        assert!("0110".parse::<BitPrefix>().is_err());
        assert!("01a".parse::<BitPrefix>().is_err());
        assert!("".parse::<BitPrefix>().is_err());
        let xi: BitPrefix = "0101".parse().unwrap();
        assert_eq!((0..=4).map(|n| xi.ones(n)).collect::<Vec<_>>(), vec![0, 0, 1, 1, 2]);
        assert_eq!(xi.support(4), Subset::from_elements([2, 4]));
        assert_eq!(xi.to_string(), "0101");
        assert_eq!(BitPrefix::alternating(4), xi);
        // 2^8 candidates, ballot-style filtering
        assert_eq!(BitPrefix::enumerate(8).len(), 70);
    }

    #[test]
    fn induced_examples() {
        assert_eq!(induced_transition(2, 0, 1, 0).unwrap(), pair(rat(2, 3), rat(1, 3)));
        for n in 2..8 {
            let m = n / 2;
            assert_eq!(induced_transition(n, m, m, 0).unwrap(), pair(rat(1, 1), rat(0, 1)));
        }
        assert_eq!(induced_transition(1, 0, 0, 1).unwrap(), pair(rat(1, 2), rat(1, 2)));
        assert_eq!(induced_transition(2, 0, 0, 1).unwrap(), pair(rat(1, 3), rat(2, 3)));
        assert!(induced_transition(2, 2, 1, 0).is_err());
        assert!(induced_transition(2, 0, 2, 0).is_err());
        assert!(induced_transition(2, 1, 1, 1).is_err());
        assert!(induced_transition(2, 0, 1, 3).is_err());
    }

    #[test]
    fn spectral_examples() {
        let t = spectral_measure(&"01".parse().unwrap(), 2).unwrap();
        assert_eq!(t.prob(&tab(2, &[])), rat(1, 2));
        assert_eq!(t.prob(&tab(2, &[2])), rat(1, 2));
        for n in 0..=5 {
            let t = spectral_measure(&BitPrefix::zeros(5), n).unwrap();
            assert_eq!(t.len(), 1);
            assert_eq!(t.prob(&TwoRowTableau::one_row(n)), rat(1, 1));
        }
        let xi: BitPrefix = "0101".parse().unwrap();
        assert_eq!(spectral_measure(&xi, 4).unwrap(), kernel_from_prefix(&xi).table(4).unwrap());
        assert!(spectral_measure(&xi, 5).is_err());
    }

    #[test]
    fn kernel_examples() {
        let xi = BitPrefix::alternating(8);
        let kernel = kernel_from_prefix(&xi);
        for ((n, k), e) in kernel.entries() {
            let j = (n - 2 * k) as i64;
            let expected = if n % 2 == 1 {
                pair(rat(1, 2), rat(1, 2))
            } else {
                pair(rat(j + 2, 2 * (j + 1)), rat(j, 2 * (j + 1)))
            };
            assert_eq!(e.transition, expected, "n={n} k={k}");
        }
        for (_, e) in kernel_from_prefix(&BitPrefix::zeros(6)).entries() {
            assert_eq!(e.transition, pair(rat(1, 1), rat(0, 1)));
        }
        let k = kernel_from_prefix(&"001".parse().unwrap());
        assert_eq!(k.get(2, 0).unwrap().transition, pair(rat(1, 3), rat(2, 3)));
        assert_eq!(k.get(2, 0).unwrap().bit, Some(1));
    }

    #[test]
    fn markov_checks() {
        let xi: BitPrefix = "010101".parse().unwrap();
        for n in 0..6 {
            let a = spectral_measure(&xi, n).unwrap();
            let b = spectral_measure(&xi, n + 1).unwrap();
            assert!(is_markov(&a, &b).unwrap().markov);
        }
        let (a, b) = negative_control_tables();
        let report = is_markov(&a, &b).unwrap();
        assert!(!report.markov);
        assert_eq!(report.violations[0].tableau, tab(3, &[3]));
        for n in 0..8 {
            assert!(is_markov(&central_table(n), &central_table(n + 1)).unwrap().markov);
        }
        assert!(is_markov(&central_table(3), &central_table(5)).is_err());
        assert!(is_markov(&spectral_measure(&xi, 3).unwrap(), &central_table(4)).is_err());
    }

    #[test]
    fn good_ratio_examples() {
        assert_eq!(good_tableau_ratio(1, 0, 0, 1).unwrap(), rat(1, 2));
        assert_eq!(good_tableau_ratio(2, 0, 1, 1).unwrap(), rat(2, 3));
        assert_eq!(good_tableau_ratio(2, 1, 1, 1).unwrap(), rat(1, 1));
        assert!(good_tableau_ratio(2, 0, 1, 3).is_err());
        assert!(good_tableau_ratio(2, 2, 1, 1).is_err());
    }

    #[test]
    fn central_examples() {
        assert_eq!(central_alpha_prob(&tab(1, &[])), rat(1, 1));
        assert_eq!(central_alpha_prob(&tab(2, &[])), rat(3, 4));
        assert_eq!(central_alpha_prob(&tab(2, &[2])), rat(1, 4));
        assert_eq!(central_alpha_transition(1, 0).unwrap(), pair(rat(3, 4), rat(1, 4)));
        assert_eq!(central_alpha_transition(6, 3).unwrap(), pair(rat(1, 1), rat(0, 1)));
        assert_eq!(central_alpha_transition(3, 1).unwrap(), pair(rat(3, 4), rat(1, 4)));
        assert!(central_alpha_transition(3, 2).is_err());
        for n in 0..=12 {
            let total: BigRational = enumerate_level(n).iter().map(central_alpha_prob).sum();
            assert_eq!(total, rat(1, 1));
            assert_eq!(central_kernel(n).table(n).unwrap(), central_table(n));
        }
    }

    #[test]
    fn induced_measures_are_not_central() {
        let t = spectral_measure(&"0100".parse().unwrap(), 4).unwrap();
        let a = t.prob(&tab(4, &[2]));
        let b = t.prob(&tab(4, &[3]));
        assert_ne!(a, b);
    }

    #[test]
    fn table_validation() {
        assert!(SpectralTable::new(2, [(tab(2, &[]), rat(1, 2))]).is_err());
        assert!(SpectralTable::new(2, [(tab(3, &[]), rat(1, 1))]).is_err());
        assert!(SpectralTable::new(2, [(tab(2, &[]), rat(3, 2)), (tab(2, &[2]), rat(-1, 2))]).is_err());
    }
}
