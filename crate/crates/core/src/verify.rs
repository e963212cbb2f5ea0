//! Exhaustive exact checks behind the `verify` command.
//!
//! Each check yields one [`CheckResult`]; failures carry the first
//! counterexample found.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::gz::{
    closed_form_norm_sq, full_gz_basis, gz_harmonic, gz_in_h, harmonic_norm_product, is_yjm_eigenvector,
    orthogonal_form_matrix, tensor_transposition_matrix, GzVector,
};
use crate::linalg::{identity, mat_mul};
use crate::markov::{
    central_alpha_prob, central_alpha_transition, central_table, good_tableau_ratio, induced_transition, is_markov,
    kernel_from_prefix, negative_control_tables, spectral_measure_with_basis, BitPrefix, SpectralTable,
};
use crate::tensor::{decompose_step, harmonic_basis, inner, psi, span_dimension, SquareFreeForm};
use crate::ygraph::{binomial, enumerate_diagrams, enumerate_level, enumerate_tableaux, TwoRowDiagram, TwoRowTableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Gz,
    Markov,
    Central,
}

impl std::str::FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Scope::All),
            "gz" => Ok(Scope::Gz),
            "markov" => Ok(Scope::Markov),
            "central" => Ok(Scope::Central),
            other => Err(format!("unknown scope {other:?} (expected all|gz|markov|central)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, outcome: Result<String, String>) -> Self {
        match outcome {
            Ok(detail) => CheckResult { name: name.into(), passed: true, detail },
            Err(detail) => CheckResult { name: name.into(), passed: false, detail },
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for n in &self.notes {
            writeln!(f, "NOTE {n}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

type Outcome = Result<String, String>;

/// Largest `n` accepted by the tensor-model oracles.
pub const MAX_TENSOR_N: usize = 8;

pub fn run(scope: Scope, n_max: usize) -> Report {
    let mut report = Report::default();
    if matches!(scope, Scope::All | Scope::Gz) {
        gz_checks(n_max.min(MAX_TENSOR_N), &mut report);
    }
    if matches!(scope, Scope::All | Scope::Markov) {
        markov_checks(n_max.min(MAX_TENSOR_N), &mut report);
    }
    if matches!(scope, Scope::All | Scope::Central) {
        central_checks(n_max, &mut report);
    }
    report
}

/// Full GZ bases for every `(n, m)` with `n ≤ n_max`.
pub fn basis_cache(n_max: usize) -> HashMap<(usize, usize), Vec<GzVector>> {
    let keys: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (0..=n / 2).map(move |m| (n, m))).collect();
    keys.into_par_iter()
        .map(|(n, m)| ((n, m), full_gz_basis(n, m).expect("m <= n/2")))
        .collect()
}

fn gz_checks(n_max: usize, report: &mut Report) {
    let cache = basis_cache(n_max);
    report.checks.push(CheckResult::new("gz.yjm_eigenvectors", check_yjm(&cache, n_max)));
    report.checks.push(CheckResult::new("gz.orthogonality", check_orthogonality(&cache, n_max)));
    report.checks.push(CheckResult::new("gz.norm_closed_form", check_norms(&cache, n_max)));
    report.checks.push(CheckResult::new("gz.psi_consistency", check_psi_consistency(n_max)));
    report.checks.push(CheckResult::new("gz.good_tableau_norms", check_good_norms(12)));
    report.checks.push(CheckResult::new("gz.content_separation", check_separation(n_max)));
    report.checks.push(CheckResult::new("gz.orthogonal_form", check_orthogonal_form(n_max.min(6))));
    report.checks.push(CheckResult::new("tensor.psi_isometry", check_psi_isometry(n_max)));
    report.checks.push(CheckResult::new("tensor.decompose_step", check_decompose(&cache, n_max.min(7))));
    report.checks.push(CheckResult::new("tensor.harmonic_dimension", check_dimensions(n_max)));
}

fn each_vector(cache: &HashMap<(usize, usize), Vec<GzVector>>, n_max: usize) -> impl Iterator<Item = &GzVector> {
    (0..=n_max).flat_map(move |n| (0..=n / 2).flat_map(move |m| cache[&(n, m)].iter()))
}

pub fn check_yjm(cache: &HashMap<(usize, usize), Vec<GzVector>>, n_max: usize) -> Outcome {
    let vectors: Vec<&GzVector> = each_vector(cache, n_max).collect();
    match vectors.par_iter().find_first(|h| !is_yjm_eigenvector(&h.tableau, &h.form)) {
        Some(h) => Err(format!("{} in A_{{{},{}}} is not a YJM eigenvector", h.tableau, h.tableau.n(), h.m)),
        None => Ok(format!("{} vectors, n <= {n_max}", vectors.len())),
    }
}

pub fn check_orthogonality(cache: &HashMap<(usize, usize), Vec<GzVector>>, n_max: usize) -> Outcome {
    let mut pairs = 0usize;
    for n in 0..=n_max {
        for m in 0..=n / 2 {
            let basis = &cache[&(n, m)];
            if basis.len() as u64 != binomial(n as i64, m as i64).try_into().unwrap_or(u64::MAX) {
                return Err(format!("A_{{{n},{m}}}: {} vectors, expected C({n},{m})", basis.len()));
            }
            for (a, h) in basis.iter().enumerate() {
                for g in &basis[a + 1..] {
                    pairs += 1;
                    let ip = inner(&h.form, &g.form).map_err(|e| e.to_string())?;
                    if !ip.is_zero() {
                        return Err(format!("<h_u, h_v> = {ip} for u: {}, v: {} (m={m})", h.tableau, g.tableau));
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} pairs exactly orthogonal, n <= {n_max}"))
}

pub fn check_norms(cache: &HashMap<(usize, usize), Vec<GzVector>>, n_max: usize) -> Outcome {
    let mut count = 0usize;
    for h in each_vector(cache, n_max) {
        count += 1;
        let expected = closed_form_norm_sq(&h.tableau, h.m);
        if h.norm_sq != expected || h.form.norm_sq() != expected {
            return Err(format!("{} m={}: norm_sq {} but closed form {expected}", h.tableau, h.m, h.norm_sq));
        }
    }
    Ok(format!("{count} vectors match C(n-2k,m-k)·Π(p_j-2j+1)(p_j-2j+2)"))
}

pub fn check_psi_consistency(n_max: usize) -> Outcome {
    let mut count = 0usize;
    for n in 0..=n_max {
        for u in enumerate_level(n) {
            let h0 = gz_harmonic(&u);
            for m in u.k()..=n / 2 {
                let h = gz_in_h(&u, m).map_err(|e| e.to_string())?;
                let direct = psi(&h0.form, (m - u.k()) as i64).map_err(|e| e.to_string())?;
                count += 1;
                if h.form != direct || !h.form.has_integer_coeffs() {
                    return Err(format!("{u} m={m}: vector differs from psi(h0, m-k)"));
                }
            }
        }
    }
    Ok(format!("{count} (u, m) pairs"))
}

pub fn check_good_norms(half_max: usize) -> Outcome {
    let mut count = 0usize;
    for n in 0..=2 * half_max {
        for k in 0..=n / 2 {
            let u = TwoRowTableau::good(n, k).map_err(|e| e.to_string())?;
            let pow = BigInt::one() << k;
            if harmonic_norm_product(&u) != pow {
                return Err(format!("good tableau n={n} k={k}: product {} != 2^{k}", harmonic_norm_product(&u)));
            }
            for m in k..=n / 2 {
                let expected = BigRational::from_integer(&pow * binomial((n - 2 * k) as i64, (m - k) as i64));
                if closed_form_norm_sq(&u, m) != expected {
                    return Err(format!("good tableau n={n} k={k} m={m}: closed form disagrees with 2^k·C"));
                }
                // explicit vectors only at tensor scale
                if n <= MAX_TENSOR_N {
                    let h = gz_in_h(&u, m).map_err(|e| e.to_string())?;
                    if h.norm_sq != expected {
                        return Err(format!("good tableau n={n} k={k} m={m}: norm_sq {} != {expected}", h.norm_sq));
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} (n, k, m) triples with k <= n/2 <= {half_max}"))
}

pub fn check_separation(n_max: usize) -> Outcome {
    for n in 0..=n_max.max(12) {
        let mut seen: HashMap<Vec<i64>, TwoRowTableau> = HashMap::new();
        for u in enumerate_level(n) {
            if let Some(prev) = seen.insert(u.content_vector(), u.clone()) {
                return Err(format!("{prev} and {u} share a content vector"));
            }
        }
    }
    Ok(format!("content vectors distinct at every level n <= {}", n_max.max(12)))
}

pub fn check_orthogonal_form(n_max: usize) -> Outcome {
    let mut count = 0usize;
    for n in 2..=n_max {
        for d in enumerate_diagrams(n) {
            let dim = enumerate_tableaux(d).len();
            let mats: Vec<_> = (1..n)
                .map(|i| orthogonal_form_matrix(i, d).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            for (idx, mat) in mats.iter().enumerate() {
                let i = idx + 1;
                if mat_mul(mat, mat) != identity(dim) {
                    return Err(format!("s_{i} on {d} is not an involution"));
                }
                for m in d.k()..=n / 2 {
                    let tensor = tensor_transposition_matrix(i, d, m).map_err(|e| e.to_string())?;
                    if &tensor != mat {
                        return Err(format!("s_{i} on {d} (m={m}) differs from the tensor-model matrix"));
                    }
                }
                if let Some(next) = mats.get(idx + 1) {
                    let lhs = mat_mul(&mat_mul(mat, next), mat);
                    let rhs = mat_mul(&mat_mul(next, mat), next);
                    if lhs != rhs {
                        return Err(format!("braid relation fails for s_{i}, s_{} on {d}", i + 1));
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} generator matrices, n <= {n_max}"))
}

pub fn check_psi_isometry(n_max: usize) -> Outcome {
    let mut count = 0usize;
    for n in 0..=n_max {
        for u in enumerate_level(n) {
            let h0 = gz_harmonic(&u);
            let k = u.k();
            for m in k..=n / 2 {
                let image = psi(&h0.form, (m - k) as i64).map_err(|e| e.to_string())?;
                let expected = BigRational::from_integer(binomial((n - 2 * k) as i64, (m - k) as i64)) * &h0.norm_sq;
                if image.norm_sq() != expected {
                    return Err(format!("{u} m={m}: ||psi h0||² = {} != {expected}", image.norm_sq()));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} (u, m) pairs"))
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Squared-norm ratios of the two branching components for `f = psi(f0, m-k)`.
pub fn expected_step_ratios(n: usize, m: usize, k: usize, bit: u8) -> (BigRational, BigRational) {
    let (n, m, k) = (n as i64, m as i64, k as i64);
    let den = n - 2 * k + 1;
    if bit == 0 {
        (frac(n - m - k + 1, den), frac(m - k, den))
    } else {
        (frac(m - k + 1, den), frac(n - m - k, den))
    }
}

/// Checks one decomposition: sum, orthogonality, norm ratios, harmonic type.
pub fn check_one_step(f: &SquareFreeForm, f0: &SquareFreeForm, bit: u8) -> Result<(), String> {
    let (n, m, k) = (f.n(), f.k(), f0.k());
    let d = decompose_step(f, f0, bit).map_err(|e| e.to_string())?;
    if &d.stay + &d.up != d.embedded {
        return Err(format!("components do not sum to the embedded vector (n={n} m={m} k={k} bit={bit})"));
    }
    if !inner(&d.stay, &d.up).map_err(|e| e.to_string())?.is_zero() {
        return Err(format!("components not orthogonal (n={n} m={m} k={k} bit={bit})"));
    }
    let norm = f.norm_sq();
    let (rs, ru) = expected_step_ratios(n, m, k, bit);
    if d.stay.norm_sq() != &rs * &norm || d.up.norm_sq() != &ru * &norm {
        return Err(format!(
            "norm ratios {}/{} and {}/{} differ from {rs} and {ru} (n={n} m={m} k={k} bit={bit})",
            d.stay.norm_sq(),
            norm,
            d.up.norm_sq(),
            norm
        ));
    }
    Ok(())
}

pub fn check_decompose(cache: &HashMap<(usize, usize), Vec<GzVector>>, n_max: usize) -> Outcome {
    let mut count = 0usize;
    for n in 1..=n_max {
        for m in 0..=n / 2 {
            for h in &cache[&(n, m)] {
                let f0 = gz_harmonic(&h.tableau).form;
                for bit in [0u8, 1] {
                    if bit == 1 && 2 * (m + 1) > n + 1 {
                        continue;
                    }
                    check_one_step(&h.form, &f0, bit)?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} decompositions of GZ spanning vectors, n <= {n_max}"))
}

pub fn check_dimensions(n_max: usize) -> Outcome {
    let n_max = n_max.max(10);
    for n in 0..=n_max {
        let harmonic: Vec<Vec<SquareFreeForm>> =
            (0..=n / 2).map(|k| harmonic_basis(n, k).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        for (k, basis) in harmonic.iter().enumerate() {
            let expected = TwoRowDiagram::new(n, k).expect("k <= n/2").dim();
            if BigInt::from(basis.len()) != expected {
                return Err(format!("dim A⁰_{{{n},{k}}} = {} but C(n,k)-C(n,k-1) = {expected}", basis.len()));
            }
        }
        for m in 0..=n / 2 {
            let mut all = Vec::new();
            let mut sum = 0usize;
            for (k, basis) in harmonic.iter().enumerate().take(m + 1) {
                let images: Vec<SquareFreeForm> = basis
                    .iter()
                    .map(|f0| psi(f0, (m - k) as i64).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?;
                sum += span_dimension(&images);
                all.extend(images);
            }
            let total = BigInt::from(sum);
            let binom = binomial(n as i64, m as i64);
            if total != binom || BigInt::from(span_dimension(&all)) != binom {
                return Err(format!("A_{{{n},{m}}}: Σ dim H^k = {total}, span {}, C(n,m) = {binom}", span_dimension(&all)));
            }
        }
    }
    Ok(format!("kernel ranks and multiplicity-free sums, n <= {n_max}"))
}

fn markov_checks(n_max: usize, report: &mut Report) {
    let cache = basis_cache(n_max);
    report.checks.push(CheckResult::new("markov.oracle_equivalence", check_oracle_equivalence(&cache, n_max)));
    report.checks.push(CheckResult::new("markov.markov_property", check_markov_property(&cache, n_max)));
    report.checks.push(CheckResult::new("markov.negative_control", check_negative_control()));
    report.checks.push(CheckResult::new("markov.kernel_rows", check_kernel_rows(n_max)));
    report.checks.push(CheckResult::new("markov.good_tableau_ratio", check_good_ratio(12)));
    report.checks.push(CheckResult::new("markov.non_central", check_non_central(&cache)));
    let parity = alternating_parity(&cache, n_max);
    report.notes.extend(parity.notes.iter().cloned());
    report.checks.push(CheckResult::new("markov.alternating_parity", parity.outcome));
}

/// Every valid prefix of each length `0..=n_max`.
fn prefixes_up_to(n_max: usize) -> Vec<BitPrefix> {
    (0..=n_max).flat_map(BitPrefix::enumerate).collect()
}

pub fn check_oracle_equivalence(cache: &HashMap<(usize, usize), Vec<GzVector>>, n_max: usize) -> Outcome {
    let prefixes = prefixes_up_to(n_max);
    let bad = prefixes.par_iter().find_map_first(|xi| {
        let n = xi.len();
        let oracle = spectral_measure_with_basis(xi, n, &cache[&(n, xi.ones(n))]);
        let product = kernel_from_prefix(xi).table(n);
        match (oracle, product) {
            (Ok(a), Ok(b)) if a == b => None,
            (Ok(_), Ok(_)) => Some(format!("xi={xi}: oracle table differs from the path products")),
            (Err(e), _) | (_, Err(e)) => Some(format!("xi={xi}: {e}")),
        }
    });
    match bad {
        Some(msg) => Err(msg),
        None => Ok(format!("{} prefixes of length <= {n_max}, exact equality", prefixes.len())),
    }
}

pub fn check_markov_property(cache: &HashMap<(usize, usize), Vec<GzVector>>, n_max: usize) -> Outcome {
    let prefixes: Vec<BitPrefix> = (1..=n_max).flat_map(BitPrefix::enumerate).collect();
    let table = |xi: &BitPrefix, n: usize| spectral_measure_with_basis(xi, n, &cache[&(n, xi.ones(n))]);
    let bad = prefixes.par_iter().find_map_first(|xi| {
        let n = xi.len();
        let res = table(xi, n - 1).and_then(|a| table(xi, n).and_then(|b| is_markov(&a, &b)));
        match res {
            Ok(r) if r.markov => None,
            Ok(r) => Some(format!("xi={xi}: {}", r.violations[0])),
            Err(e) => Some(format!("xi={xi}: {e}")),
        }
    });
    if let Some(msg) = bad {
        return Err(msg);
    }
    for n in 0..n_max.max(12) {
        let r = is_markov(&central_table(n), &central_table(n + 1)).map_err(|e| e.to_string())?;
        if !r.markov {
            return Err(format!("central level {n}: {}", r.violations[0]));
        }
    }
    Ok(format!("{} oracle table pairs and central tables n <= {}", prefixes.len(), n_max.max(12)))
}

pub fn check_negative_control() -> Outcome {
    let (a, b) = negative_control_tables();
    let r = is_markov(&a, &b).map_err(|e| e.to_string())?;
    match r.violations.first() {
        Some(v) if !r.markov => Ok(format!("rejected with violation {v}")),
        _ => Err("corrupted table accepted as Markov".into()),
    }
}

pub fn check_kernel_rows(n_max: usize) -> Outcome {
    for xi in BitPrefix::enumerate(n_max) {
        let kernel = kernel_from_prefix(&xi);
        for ((n, k), e) in kernel.entries() {
            let t = &e.transition;
            if &t.stay + &t.up != BigRational::one() || t.stay < BigRational::zero() || t.up < BigRational::zero() {
                return Err(format!("xi={xi} n={n} k={k}: row ({}, {}) is not a distribution", t.stay, t.up));
            }
            let m = xi.ones(n);
            if k == m && e.bit == Some(0) && !t.up.is_zero() {
                return Err(format!("xi={xi} n={n} k={k}: boundary up-probability {} != 0", t.up));
            }
        }
    }
    Ok(format!("all kernels of valid prefixes of length {n_max}"))
}

pub fn check_good_ratio(n_max: usize) -> Outcome {
    let mut count = 0usize;
    for n in 0..=n_max {
        for m in 0..=n / 2 {
            for bit in [0u8, 1] {
                let m1 = m + bit as usize;
                if 2 * m1 > n + 1 {
                    continue;
                }
                for k in 0..=m {
                    let ratio = good_tableau_ratio(n, k, m, m1).map_err(|e| e.to_string())?;
                    let t = induced_transition(n, k, m, bit).map_err(|e| e.to_string())?;
                    if ratio != t.stay {
                        return Err(format!("n={n} k={k} m={m} bit={bit}: ratio {ratio} != p_stay {}", t.stay));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} (n, k, m, bit) cases, n <= {n_max}"))
}

pub fn check_non_central(cache: &HashMap<(usize, usize), Vec<GzVector>>) -> Outcome {
    let xi: BitPrefix = "0100".parse().expect("valid prefix");
    let t = spectral_measure_with_basis(&xi, 4, &cache.get(&(4, 1)).cloned().unwrap_or_else(|| full_gz_basis(4, 1).expect("valid")))
        .map_err(|e| e.to_string())?;
    for d in enumerate_diagrams(4) {
        let tabs = enumerate_tableaux(d);
        for (a, u) in tabs.iter().enumerate() {
            for v in &tabs[a + 1..] {
                if t.prob(u) != t.prob(v) {
                    return Ok(format!("xi=0100: P({u}) = {} but P({v}) = {}", t.prob(u), t.prob(v)));
                }
            }
        }
    }
    Err("no witness of non-centrality at level 4 for xi=0100".into())
}

pub struct ParityResolution {
    pub outcome: Outcome,
    pub notes: Vec<String>,
    /// Parity of `n` at which every transition under `0101...` is `(1/2, 1/2)`.
    pub half_parity: Option<&'static str>,
}

/// Determines from the brute-force oracle which levels of `ξ = 0101...`
/// carry the `(1/2, 1/2)` transitions, and cross-checks the closed-form
/// substitution and the good-tableau binomial ratio.
pub fn alternating_parity(cache: &HashMap<(usize, usize), Vec<GzVector>>, n_max: usize) -> ParityResolution {
    let xi = BitPrefix::alternating(n_max);
    let tables: Vec<SpectralTable> = (0..=n_max)
        .map(|n| spectral_measure_with_basis(&xi, n, &cache[&(n, xi.ones(n))]).expect("valid level"))
        .collect();
    let half = frac(1, 2);
    let mut half_levels = [true, true]; // [even n, odd n]
    let mut other_levels = [true, true];
    for n in 0..n_max {
        for k in 0..=xi.ones(n) {
            let u = TwoRowTableau::good(n, k).expect("k <= n/2");
            let p = tables[n].prob(&u);
            if p.is_zero() {
                continue;
            }
            let oracle_stay = tables[n + 1].prob(&u.extend(false).expect("first row")) / &p;
            let bit = xi.next_bit(n).expect("n < N");
            let substituted = induced_transition(n, k, xi.ones(n), bit).expect("valid").stay;
            let binomial_ratio = good_tableau_ratio(n, k, xi.ones(n), xi.ones(n + 1)).expect("valid");
            if oracle_stay != substituted || oracle_stay != binomial_ratio {
                return ParityResolution {
                    outcome: Err(format!(
                        "n={n} k={k}: oracle {oracle_stay}, substitution {substituted}, binomial ratio {binomial_ratio}"
                    )),
                    notes: Vec::new(),
                    half_parity: None,
                };
            }
            let j = (n - 2 * k) as i64;
            half_levels[n % 2] &= oracle_stay == half;
            other_levels[n % 2] &= oracle_stay == frac(j + 2, 2 * (j + 1));
        }
    }
    let half_parity = match (half_levels, other_levels) {
        ([false, true], [true, _]) => Some("odd"),
        ([true, false], [_, true]) => Some("even"),
        _ => None,
    };
    let mut notes = Vec::new();
    let outcome = match half_parity {
        Some(parity) => {
            let other = if parity == "odd" { "even" } else { "odd" };
            notes.push(format!(
                "xi=0101...: oracle, substituted kernel and good-tableau binomial ratio agree on levels n <= {n_max}: \
                 transitions are (1/2, 1/2) at {parity} n and ((n-2k+2)/(2(n-2k+1)), (n-2k)/(2(n-2k+1))) at {other} n"
            ));
            if parity == "odd" {
                notes.push(
                    "FLAG: this is the transpose of the published labeling, which assigns the (n-2k+2)/(2(n-2k+1)) \
                     formula to odd n and (1/2, 1/2) to even n; the labels are reported, not patched"
                        .into(),
                );
            }
            notes.push(format!(
                "in j = n-2k coordinates: Prob(j, j+1) = (j+2)/(2(j+1)) at {other} n, 1/2 at {parity} n"
            ));
            Ok(format!("(1/2, 1/2) transitions sit at {parity} n"))
        }
        None => Err("oracle transitions do not follow a parity pattern".into()),
    };
    ParityResolution { outcome, notes, half_parity }
}

fn central_checks(n_max: usize, report: &mut Report) {
    report.checks.push(CheckResult::new("central.mass_conservation", check_central_mass(n_max.max(12))));
    report.checks.push(CheckResult::new("central.schur_ratio", check_central_schur(n_max)));
    report.checks.push(CheckResult::new("central.markov_property", {
        (0..n_max)
            .find_map(|n| {
                let r = is_markov(&central_table(n), &central_table(n + 1)).ok()?;
                (!r.markov).then(|| format!("level {n}: {}", r.violations[0]))
            })
            .map_or(Ok(format!("central tables n <= {n_max}")), Err)
    }));
    report.notes.push(
        "central measure alpha=(1/2,1/2): p_stay = (n-2k+2)/(2(n-2k+1)) holds at every n (checked against \
         the semistandard-filling count of s_λ(1/2,1/2)); it coincides with the 0101... kernel only at even n"
            .into(),
    );
}

pub fn check_central_mass(n_max: usize) -> Outcome {
    for n in 0..=n_max {
        let total: BigRational = enumerate_level(n).iter().map(central_alpha_prob).sum();
        if !total.is_one() {
            return Err(format!("level {n}: total mass {total}"));
        }
    }
    Ok(format!("Σ μ_α(C_u) = 1 at every level n <= {n_max}"))
}

/// `s_λ(1/2, 1/2)` from a brute-force count of semistandard fillings with
/// entries in `{1, 2}`; every such monomial evaluates to `2^{-n}`.
pub fn schur_half_half(d: TwoRowDiagram) -> BigRational {
    let (r1, r2) = d.rows();
    let cells = r1 + r2;
    let mut count = 0u64;
    for code in 0u64..(1 << cells) {
        let entry = |row: usize, col: usize| -> u64 {
            let idx = if row == 1 { col } else { r1 + col };
            1 + ((code >> idx) & 1)
        };
        let rows_ok = (1..r1).all(|c| entry(1, c - 1) <= entry(1, c)) && (1..r2).all(|c| entry(2, c - 1) <= entry(2, c));
        let cols_ok = (0..r2).all(|c| entry(1, c) < entry(2, c));
        if rows_ok && cols_ok {
            count += 1;
        }
    }
    BigRational::new(count.into(), BigInt::one() << cells)
}

pub fn check_central_schur(n_max: usize) -> Outcome {
    let mut count = 0usize;
    for n in 0..=n_max {
        for d in enumerate_diagrams(n) {
            let k = d.k();
            let base = schur_half_half(d);
            for u in enumerate_tableaux(d) {
                if central_alpha_prob(&u) != base {
                    return Err(format!("{u}: hook-content mass {} != Schur value {base}", central_alpha_prob(&u)));
                }
            }
            let t = central_alpha_transition(n, k).map_err(|e| e.to_string())?;
            let stay = schur_half_half(TwoRowDiagram::new(n + 1, k).expect("k <= n/2")) / &base;
            let up = TwoRowDiagram::new(n + 1, k + 1)
                .map(|big| schur_half_half(big) / &base)
                .unwrap_or_else(|_| BigRational::zero());
            if t.stay != stay || t.up != up {
                return Err(format!("n={n} k={k}: closed form ({}, {}) vs Schur ratio ({stay}, {up})", t.stay, t.up));
            }
            count += 1;
        }
    }
    Ok(format!("{count} (n, k) transitions match Schur ratios, n <= {n_max}"))
}
