//! Seeded random walks on two-row tableaux driven by an exact kernel.
//!
//! Each step draws a uniform `u64` and moves to the first row iff
//! `draw < ceil(p_stay · 2^64)`, an exact integer comparison.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::markov::TransitionKernel;
use crate::ygraph::TwoRowTableau;

/// A sampled path `k_0 = 0, k_1, ..., k_depth` of second-row lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledPath {
    pub ks: Vec<usize>,
}

impl SampledPath {
    pub fn depth(&self) -> usize {
        self.ks.len() - 1
    }

    /// `j_n = n - 2 k_n`.
    pub fn js(&self) -> Vec<usize> {
        self.ks.iter().enumerate().map(|(n, &k)| n - 2 * k).collect()
    }

    pub fn tableau(&self) -> TwoRowTableau {
        let row = (1..self.ks.len()).filter(|&n| self.ks[n] > self.ks[n - 1]).collect();
        TwoRowTableau::new(self.depth(), row).expect("kernel paths stay standard")
    }
}

/// `ceil(p · 2^64)` for `p ∈ [0, 1]`.
fn fixed_point_threshold(p: &BigRational) -> u128 {
    let scaled = p.numer() << 64u32;
    let (q, r) = scaled.div_rem(p.denom());
    let q = if r.is_zero() { q } else { q + 1 };
    q.to_u128().expect("probability in [0, 1]")
}

/// Kernel with precomputed integer thresholds.
pub struct Sampler<'a> {
    kernel: &'a TransitionKernel,
    thresholds: BTreeMap<(usize, usize), u128>,
}

impl<'a> Sampler<'a> {
    pub fn new(kernel: &'a TransitionKernel) -> Self {
        let thresholds = kernel
            .entries()
            .map(|(key, e)| (key, fixed_point_threshold(&e.transition.stay)))
            .collect();
        Sampler { kernel, thresholds }
    }

    pub fn sample<R: RngCore>(&self, depth: usize, rng: &mut R) -> Result<SampledPath> {
        if depth > self.kernel.depth() {
            return Err(Error::OutOfRange(format!(
                "depth {depth} beyond kernel depth {}",
                self.kernel.depth()
            )));
        }
        let mut ks = Vec::with_capacity(depth + 1);
        ks.push(0);
        let mut k = 0;
        for n in 0..depth {
            let threshold = *self
                .thresholds
                .get(&(n, k))
                .ok_or_else(|| Error::OutOfRange(format!("kernel has no entry at n={n} k={k}")))?;
            if u128::from(rng.next_u64()) >= threshold {
                k += 1;
            }
            ks.push(k);
        }
        Ok(SampledPath { ks })
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One path of length `depth` from a fresh generator seeded with `seed`.
pub fn sample_tableau(kernel: &TransitionKernel, depth: usize, seed: u64) -> Result<SampledPath> {
    Sampler::new(kernel).sample(depth, &mut rng_from_seed(seed))
}

/// `count` paths drawn in sequence from one generator seeded with `seed`.
pub fn sample_paths(kernel: &TransitionKernel, depth: usize, count: usize, seed: u64) -> Result<Vec<SampledPath>> {
    let sampler = Sampler::new(kernel);
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| sampler.sample(depth, &mut rng)).collect()
}

/// Exact distribution of `k_n` for `n = 0..=depth`.
pub fn exact_marginals(kernel: &TransitionKernel, depth: usize) -> Result<Vec<BTreeMap<usize, BigRational>>> {
    if depth > kernel.depth() {
        return Err(Error::OutOfRange(format!("depth {depth} beyond kernel depth {}", kernel.depth())));
    }
    let mut levels = vec![BTreeMap::from([(0usize, BigRational::from_integer(BigInt::from(1)))])];
    for n in 0..depth {
        let mut next: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (&k, p) in &levels[n] {
            let e = kernel
                .get(n, k)
                .ok_or_else(|| Error::OutOfRange(format!("kernel has no entry at n={n} k={k}")))?;
            for (dk, q) in [(0, &e.transition.stay), (1, &e.transition.up)] {
                if !q.is_zero() {
                    *next.entry(k + dk).or_insert_with(BigRational::zero) += p * q;
                }
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// Observed versus exact frequency of a binomial event.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyCheck {
    pub trials: u64,
    pub successes: u64,
    pub expected: BigRational,
}

impl FrequencyCheck {
    pub fn empirical(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub fn sigma(&self) -> f64 {
        let p = self.expected.to_f64().unwrap_or(f64::NAN);
        (self.trials as f64 * p * (1.0 - p)).sqrt()
    }

    /// `(successes - trials·p) / σ`; zero when both deviation and σ vanish.
    pub fn z_score(&self) -> f64 {
        let p = self.expected.to_f64().unwrap_or(f64::NAN);
        let dev = self.successes as f64 - self.trials as f64 * p;
        let sigma = self.sigma();
        if sigma == 0.0 {
            if self.degenerate_match() {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            dev / sigma
        }
    }

    fn degenerate_match(&self) -> bool {
        // p ∈ {0, 1}: outcomes must match exactly
        BigRational::from_integer(self.successes.into()) == &self.expected * BigRational::from_integer(self.trials.into())
    }

    pub fn within_sigmas(&self, bound: f64) -> bool {
        if self.sigma() == 0.0 {
            return self.degenerate_match();
        }
        self.z_score().abs() <= bound
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSummary {
    pub depth: usize,
    pub count: usize,
    /// Up-moves on the step `n → n+1`, indexed by `n`.
    pub levels: Vec<FrequencyCheck>,
    /// Up-moves out of each visited state `(n, k)`.
    pub states: BTreeMap<(usize, usize), FrequencyCheck>,
}

impl SampleSummary {
    pub fn levels_within(&self, bound: f64) -> bool {
        self.levels.iter().all(|c| c.within_sigmas(bound))
    }
}

pub fn summarize(kernel: &TransitionKernel, paths: &[SampledPath]) -> Result<SampleSummary> {
    let depth = paths.first().map_or(0, SampledPath::depth);
    if paths.iter().any(|p| p.depth() != depth) {
        return Err(Error::Precondition("paths of different depths".into()));
    }
    let marginals = exact_marginals(kernel, depth)?;
    let mut level_ups = vec![0u64; depth];
    let mut states: BTreeMap<(usize, usize), (u64, u64)> = BTreeMap::new();
    for path in paths {
        for n in 0..depth {
            let up = path.ks[n + 1] > path.ks[n];
            let slot = states.entry((n, path.ks[n])).or_default();
            slot.0 += 1;
            if up {
                slot.1 += 1;
                level_ups[n] += 1;
            }
        }
    }
    let levels = (0..depth)
        .map(|n| {
            let expected: BigRational = marginals[n]
                .iter()
                .map(|(&k, p)| p * &kernel.get(n, k).expect("reachable").transition.up)
                .sum();
            FrequencyCheck { trials: paths.len() as u64, successes: level_ups[n], expected }
        })
        .collect();
    let states = states
        .into_iter()
        .map(|((n, k), (trials, successes))| {
            let entry = kernel.get(n, k).expect("visited states are in the kernel");
            ((n, k), FrequencyCheck { trials, successes, expected: entry.transition.up.clone() })
        })
        .collect();
    Ok(SampleSummary { depth, count: paths.len(), levels, states })
}
