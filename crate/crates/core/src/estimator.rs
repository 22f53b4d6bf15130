//! Entanglement entropy bounds from an unsigned stabilizer group, and the
//! end-to-end estimator built on Bell difference sampling.
//!
//! Given a subspace `S` standing in for `Weyl(|ψ⟩)` and a cut `A ⊔ B`:
//!
//! ```text
//! upper' = min{|A| - dim S_A, |B| - dim S_B}
//! lower' = max{dim S - dim S_B - |A|, dim S - dim S_A - |B|}
//! ```
//!
//! When `S` is the complement of sampled points it may be a strict superset
//! of the true group; the bounds are then widened by `r = εn + H(ε)` unless
//! `dim S` already equals the promised `n - k`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::statevector::{bell_difference_sample, characteristic_distribution, StateVector};
use crate::symplectic::{Cut, Subspace, SympVec};
use crate::weyl::{GroupProvenance, StabilizerGroupEstimate};

/// `H(p) = -p log₂ p - (1-p) log₂(1-p)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("binary entropy of {p}")));
    }
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    Ok(term(p) + term(1.0 - p))
}

/// `ε = 1/(8n)`, small enough that the gap collapses to `u - ℓ ≤ k`.
pub fn default_epsilon(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "default epsilon needs n >= 2, got {n}"
        )));
    }
    Ok(1.0 / (8.0 * n as f64))
}

/// `⌈(2 ln(1/δ) + 4n) / ε²⌉` Bell difference samples.
pub fn sample_count(n: usize, epsilon: f64, delta: f64) -> usize {
    let inv = 1.0 / epsilon;
    ((2.0 * (1.0 / delta).ln() + 4.0 * n as f64) * inv * inv).ceil() as usize
}

/// Copies of the state consumed: each Bell difference sample measures four.
pub fn copies_required(n: usize, epsilon: f64, delta: f64) -> usize {
    4 * sample_count(n, epsilon, delta)
}

/// The Fannes–Audenaert slack `εn + H(ε)`.
pub fn fannes_correction(n: usize, epsilon: f64) -> f64 {
    epsilon * n as f64 + binary_entropy(epsilon).expect("epsilon validated")
}

/// The additive gap the estimator guarantees: `k + max{0, 2(εn + H(ε)) - 1}`.
pub fn guaranteed_gap(n: usize, k: usize, epsilon: f64) -> f64 {
    k as f64 + (2.0 * fannes_correction(n, epsilon) - 1.0).max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatorParams {
    pub epsilon: f64,
    pub delta: f64,
    /// Promised stabilizer-dimension deficit: `dim Weyl(|ψ⟩) ≥ n - k`.
    pub k: usize,
    pub seed: u64,
}

impl EstimatorParams {
    pub fn new(epsilon: f64, delta: f64, k: usize, seed: u64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.375) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 3/8), got {epsilon}"
            )));
        }
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in (0, 1], got {delta}"
            )));
        }
        Ok(Self {
            epsilon,
            delta,
            k,
            seed,
        })
    }

    /// Parameters with `ε = 1/(8n)`.
    pub fn with_default_epsilon(n: usize, delta: f64, k: usize, seed: u64) -> Result<Self> {
        Self::new(default_epsilon(n)?, delta, k, seed)
    }

    pub fn sample_count(&self, n: usize) -> usize {
        sample_count(n, self.epsilon, self.delta)
    }

    fn check_k(&self, n: usize) -> Result<()> {
        if self.k > n {
            return Err(Error::InvalidParameter(format!("k = {} exceeds n = {n}", self.k)));
        }
        Ok(())
    }
}

fn serialize_cut<S: Serializer>(cut: &Cut, s: S) -> std::result::Result<S::Ok, S::Error> {
    cut.a_one_based().serialize(s)
}

/// Output of one estimation at one cut. `cut_A` serializes with 1-based indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper: f64,
    pub estimate: f64,
    #[serde(rename = "dim_S")]
    pub dim_s: usize,
    pub r: f64,
    pub samples_used: usize,
    #[serde(rename = "cut_A", serialize_with = "serialize_cut")]
    pub cut: Cut,
    pub promise_violated: bool,
}

impl BoundReport {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, entropy: f64, tolerance: f64) -> bool {
        self.lower - tolerance <= entropy && entropy <= self.upper + tolerance
    }
}

/// Unclamped `(lower', upper')` for any subspace; requires `s.n() == cut.n()`.
fn raw_bounds(s: &Subspace, cut: &Cut) -> Result<(i64, i64)> {
    if s.n() != cut.n() {
        return Err(Error::DimensionMismatch {
            left: s.n(),
            right: cut.n(),
        });
    }
    let dim = s.dim() as i64;
    let dim_a = s.restrict_to(cut.a())?.dim() as i64;
    let dim_b = s.restrict_to(cut.b())?.dim() as i64;
    let (size_a, size_b) = (cut.a().len() as i64, cut.b().len() as i64);
    let upper = (size_a - dim_a).min(size_b - dim_b);
    let lower = (dim - dim_b - size_a).max(dim - dim_a - size_b);
    Ok((lower, upper))
}

/// `(lower', upper')` from an isotropic group, with `lower'` clamped at zero.
pub fn entropy_bounds_from_group(s: &StabilizerGroupEstimate, cut: &Cut) -> Result<(f64, f64)> {
    if !s.group().is_isotropic() {
        return Err(Error::NotIsotropic);
    }
    let (lower, upper) = raw_bounds(s.group(), cut)?;
    Ok((lower.max(0) as f64, upper as f64))
}

/// What the estimator consumes: raw Bell difference samples, or a known group.
#[derive(Clone, Copy, Debug)]
pub enum EstimatorInput<'a> {
    Samples(&'a [SympVec]),
    Group(&'a StabilizerGroupEstimate),
}

/// Bounds at `cut`. A supplied group bypasses sampling and uses `r = 0`.
pub fn estimate_entropy(
    input: EstimatorInput<'_>,
    cut: &Cut,
    params: &EstimatorParams,
) -> Result<BoundReport> {
    match input {
        EstimatorInput::Samples(samples) => {
            SampledComplement::from_samples(cut.n(), samples, params)?.bounds(cut)
        }
        EstimatorInput::Group(group) => bounds_from_exact_group(group, cut),
    }
}

/// Bounds from a group known to equal `Weyl(|ψ⟩)`; for tableau groups they coincide.
pub fn bounds_from_exact_group(group: &StabilizerGroupEstimate, cut: &Cut) -> Result<BoundReport> {
    if group.provenance() == GroupProvenance::Sampled {
        return Err(Error::InvalidParameter(
            "sampled groups carry sampling error; estimate from the samples instead".into(),
        ));
    }
    let (lower, upper) = entropy_bounds_from_group(group, cut)?;
    Ok(BoundReport {
        lower,
        upper,
        estimate: (lower + upper) / 2.0,
        dim_s: group.dim(),
        r: 0.0,
        samples_used: 0,
        cut: cut.clone(),
        promise_violated: false,
    })
}

/// The symplectic complement of the span of the samples, computed once and
/// reusable across any number of cuts.
#[derive(Clone, Debug)]
pub struct SampledComplement {
    estimate: StabilizerGroupEstimate,
    params: EstimatorParams,
    samples_used: usize,
}

impl SampledComplement {
    pub fn from_samples(n: usize, samples: &[SympVec], params: &EstimatorParams) -> Result<Self> {
        params.check_k(n)?;
        let need = params.sample_count(n);
        if samples.len() < need {
            return Err(Error::InsufficientSamples {
                got: samples.len(),
                need,
            });
        }
        let spanned = Subspace::span(n, samples)?;
        Ok(Self {
            estimate: StabilizerGroupEstimate::new(
                spanned.symplectic_complement(),
                GroupProvenance::Sampled,
            ),
            params: *params,
            samples_used: samples.len(),
        })
    }

    pub fn group(&self) -> &StabilizerGroupEstimate {
        &self.estimate
    }

    /// `dim S < n - k`, or `S` not isotropic: neither can happen for a state
    /// that keeps the promise and a sample set in the success event.
    pub fn promise_violated(&self) -> bool {
        let s = self.estimate.group();
        s.dim() + self.params.k < s.n() || !s.is_isotropic()
    }

    /// `0` when `dim S = n - k`, otherwise `εn + H(ε)`.
    pub fn correction(&self) -> f64 {
        let s = self.estimate.group();
        if s.dim() + self.params.k == s.n() {
            0.0
        } else {
            fannes_correction(s.n(), self.params.epsilon)
        }
    }

    pub fn bounds(&self, cut: &Cut) -> Result<BoundReport> {
        let s = self.estimate.group();
        let (raw_lower, raw_upper) = raw_bounds(s, cut)?;
        let r = self.correction();
        let ceiling = cut.a().len().min(cut.b().len()) as f64;
        let (lower, upper) = if s.is_isotropic() {
            (
                (raw_lower as f64 - r).max(0.0),
                (raw_upper as f64 + r).min(ceiling),
            )
        } else {
            (0.0, ceiling)
        };
        Ok(BoundReport {
            lower,
            upper,
            estimate: (lower + upper) / 2.0,
            dim_s: s.dim(),
            r,
            samples_used: self.samples_used,
            cut: cut.clone(),
            promise_violated: self.promise_violated(),
        })
    }
}

/// Draws the prescribed number of Bell difference samples from a dense state
/// (seeded by `params.seed`) and returns their complement.
pub fn sample_complement(psi: &StateVector, params: &EstimatorParams) -> Result<SampledComplement> {
    let n = psi.n();
    params.check_k(n)?;
    let p = characteristic_distribution(psi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let samples = bell_difference_sample(&p, &mut rng, params.sample_count(n));
    SampledComplement::from_samples(n, &samples, params)
}

/// Sampling followed by classical post-processing at one cut.
pub fn estimate_from_state(
    psi: &StateVector,
    cut: &Cut,
    params: &EstimatorParams,
) -> Result<BoundReport> {
    sample_complement(psi, params)?.bounds(cut)
}
