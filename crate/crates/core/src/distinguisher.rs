//! Telling a high-entropy ensemble from a low-entropy one with the estimator.
//!
//! Both ensembles are prepared with at most `t'` non-Clifford gates, so every
//! member has stabilizer dimension at least `n - 2t'`. Running the estimator
//! with `k = 2t'` and `ε = 1/(8n)` yields `u - ℓ ≤ 2t'`, and when the two
//! entropy levels differ by more than `2t'` at most one of them fits inside
//! `[ℓ, u]`.

use std::f64::consts::FRAC_PI_8;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{random_clifford_on, Circuit, Gate};
use crate::error::{Error, Result};
use crate::estimator::{binary_entropy, estimate_from_state, BoundReport, EstimatorParams};
use crate::statevector::{simulate_circuit, StateVector};
use crate::symplectic::Cut;

type Generator = dyn Fn(u64) -> Circuit + Send + Sync;

/// A seeded family of circuits with a known entropy at a reference cut.
#[derive(Clone)]
pub struct EnsembleSpec {
    name: String,
    t_prime: usize,
    entropy_level: f64,
    cut: Cut,
    generator: Arc<Generator>,
}

impl std::fmt::Debug for EnsembleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EnsembleSpec")
            .field("name", &self.name)
            .field("t_prime", &self.t_prime)
            .field("entropy_level", &self.entropy_level)
            .field("cut", &self.cut)
            .finish()
    }
}

impl EnsembleSpec {
    pub fn new<F>(name: &str, t_prime: usize, entropy_level: f64, cut: Cut, generator: F) -> Self
    where
        F: Fn(u64) -> Circuit + Send + Sync + 'static,
    {
        Self {
            name: name.to_string(),
            t_prime,
            entropy_level,
            cut,
            generator: Arc::new(generator),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn t_prime(&self) -> usize {
        self.t_prime
    }

    pub fn entropy_level(&self) -> f64 {
        self.entropy_level
    }

    pub fn cut(&self) -> &Cut {
        &self.cut
    }

    pub fn n(&self) -> usize {
        self.cut.n()
    }

    /// The member for `key`; fails if the generator overspends its gate budget.
    pub fn generate(&self, key: u64) -> Result<Circuit> {
        let c = (self.generator)(key);
        if c.t_count() > self.t_prime {
            return Err(Error::InvalidParameter(format!(
                "ensemble {} produced {} non-Clifford gates with budget {}",
                self.name,
                c.t_count(),
                self.t_prime
            )));
        }
        if c.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: c.n(),
            });
        }
        Ok(c)
    }
}

fn local_scramble(c: &mut Circuit, cut: &Cut, rng: &mut ChaCha8Rng) {
    let n = c.n();
    for side in [cut.a(), cut.b()] {
        let depth = 8 * side.len().max(1);
        c.extend(&random_clifford_on(n, side, depth, rng)).expect("same n");
    }
}

/// `n/2` Bell pairs across the half cut, dressed with random Cliffords local to each side.
/// Entropy exactly `n/2`.
pub fn clifford_maximal_ensemble(n: usize) -> Result<EnsembleSpec> {
    require_even(n)?;
    let cut = Cut::half(n);
    let level = (n / 2) as f64;
    let gen_cut = cut.clone();
    Ok(EnsembleSpec::new("clifford-maximal", 0, level, cut, move |key| {
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        let mut c = Circuit::new(n);
        for q in 0..n / 2 {
            c.push(Gate::H(q)).expect("in range");
            c.push(Gate::Cnot(q, q + n / 2)).expect("in range");
        }
        local_scramble(&mut c, &gen_cut, &mut rng);
        c
    }))
}

/// Random single-qubit Cliffords on every qubit. Entropy zero.
pub fn product_ensemble(n: usize) -> Result<EnsembleSpec> {
    require_even(n)?;
    let cut = Cut::half(n);
    Ok(EnsembleSpec::new("product", 0, 0.0, cut, move |key| {
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        let mut c = Circuit::new(n);
        for q in 0..n {
            let local = random_clifford_on(n, &[q], 6, &mut rng);
            c.extend(&local).expect("same n");
        }
        c
    }))
}

/// Entropy of `cos(π/8)|00⟩ + sin(π/8)|11⟩`-type pairs.
pub fn single_t_level() -> f64 {
    let c = FRAC_PI_8.cos();
    binary_entropy(c * c).expect("probability")
}

/// One `H T H` qubit entangled across the cut by a single CNOT, then local
/// Cliffords on each side. Uses one `T`; entropy `H(cos²(π/8)) ≈ 0.601`.
pub fn single_t_ensemble(n: usize) -> Result<EnsembleSpec> {
    require_even(n)?;
    let cut = Cut::half(n);
    let gen_cut = cut.clone();
    Ok(EnsembleSpec::new("single-t", 1, single_t_level(), cut, move |key| {
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        let mut c = Circuit::new(n);
        let gates = [Gate::H(0), Gate::T(0), Gate::H(0), Gate::Cnot(0, n / 2)];
        for g in gates {
            c.push(g).expect("in range");
        }
        local_scramble(&mut c, &gen_cut, &mut rng);
        c
    }))
}

fn require_even(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "ensembles need an even qubit count >= 2, got {n}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Guess {
    High,
    Low,
}

/// One decision and the bounds behind it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decision {
    pub guess: Guess,
    pub bounds: BoundReport,
    /// Both levels fell inside `[ℓ, u]`; impossible when the gap condition
    /// and the estimator's guarantee hold.
    pub both_levels_inside: bool,
}

/// Runs the estimator with `k = 2t'`, `ε = 1/(8n)` and guesses "high" iff
/// `ℓ ≤ f_level ≤ u`.
pub fn distinguish(
    psi: &StateVector,
    f_level: f64,
    g_level: f64,
    t_prime: usize,
    cut: &Cut,
    delta: f64,
    seed: u64,
) -> Result<Decision> {
    check_gap(f_level, g_level, t_prime)?;
    let params = EstimatorParams::with_default_epsilon(psi.n(), delta, 2 * t_prime, seed)?;
    let bounds = estimate_from_state(psi, cut, &params)?;
    let inside = |level: f64| bounds.lower <= level && level <= bounds.upper;
    let guess = if inside(f_level) { Guess::High } else { Guess::Low };
    let both_levels_inside = inside(f_level) && inside(g_level);
    Ok(Decision {
        guess,
        bounds,
        both_levels_inside,
    })
}

fn check_gap(f_level: f64, g_level: f64, t_prime: usize) -> Result<()> {
    let gap = f_level - g_level;
    let bound = 2.0 * t_prime as f64;
    if gap > bound {
        Ok(())
    } else {
        Err(Error::GapCondition { gap, bound })
    }
}

/// SplitMix64 finalizer; per-trial seeds are `mix(master + i·φ)`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    pub truth: String,
    pub guess: String,
    pub correct: bool,
    pub both_levels_inside: bool,
    pub bounds: BoundReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistinguisherResult {
    pub high: String,
    pub low: String,
    pub f_level: f64,
    pub g_level: f64,
    pub t_prime: usize,
    pub delta: f64,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub outcomes: Vec<TrialOutcome>,
}

/// `trials` independent draws; each trial flips a fair coin (from its own
/// seed) to choose the ensemble, prepares a member, and runs [`distinguish`].
pub fn run_trials(
    high: &EnsembleSpec,
    low: &EnsembleSpec,
    trials: usize,
    delta: f64,
    master_seed: u64,
) -> Result<DistinguisherResult> {
    if high.cut() != low.cut() {
        return Err(Error::InvalidCut("ensembles use different reference cuts".into()));
    }
    let t_prime = high.t_prime().max(low.t_prime());
    let (f_level, g_level) = (high.entropy_level(), low.entropy_level());
    check_gap(f_level, g_level, t_prime)?;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seed = derive_seed(master_seed, trial as u64);
            let mut coin = ChaCha8Rng::seed_from_u64(seed);
            let truth = if coin.random_bool(0.5) { high } else { low };
            let circuit = truth.generate(derive_seed(seed, 0))?;
            let psi = simulate_circuit(&circuit)?;
            let d = distinguish(
                &psi,
                f_level,
                g_level,
                t_prime,
                high.cut(),
                delta,
                derive_seed(seed, 1),
            )?;
            let guess = match d.guess {
                Guess::High => high.name(),
                Guess::Low => low.name(),
            };
            Ok(TrialOutcome {
                trial,
                seed,
                truth: truth.name().to_string(),
                guess: guess.to_string(),
                correct: guess == truth.name(),
                both_levels_inside: d.both_levels_inside,
                bounds: d.bounds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let successes = outcomes.iter().filter(|o| o.correct).count();
    Ok(DistinguisherResult {
        high: high.name().to_string(),
        low: low.name().to_string(),
        f_level,
        g_level,
        t_prime,
        delta,
        trials,
        successes,
        success_rate: if trials == 0 {
            0.0
        } else {
            successes as f64 / trials as f64
        },
        outcomes,
    })
}
