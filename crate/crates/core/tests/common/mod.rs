//! Brute-force oracles shared by the integration suites. Nothing here calls
//! the elimination routines it is used to check.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use stabent::circuit::random_clifford;
use stabent::{conjugate_vector, CliffordCircuit, StateVector, Subspace, SympVec};

/// Every vector of F₂²ⁿ (n ≤ 6 or so).
pub fn all_vectors(n: usize) -> Vec<SympVec> {
    (0u64..(1 << (2 * n))).map(|i| SympVec::from_index(n, i)).collect()
}

/// Symplectic product straight from the definition, bit by bit.
pub fn naive_product(x: &SympVec, y: &SympVec) -> bool {
    let n = x.n();
    let mut acc = false;
    for q in 0..n {
        acc ^= x.x(q) & y.z(q);
        acc ^= x.z(q) & y.x(q);
    }
    acc
}

/// All elements of the span, by closing the set under addition.
pub fn closure(n: usize, generators: &[SympVec]) -> Vec<SympVec> {
    let mut set = std::collections::BTreeSet::new();
    set.insert(SympVec::zero(n));
    for g in generators {
        let current: Vec<SympVec> = set.iter().cloned().collect();
        for v in current {
            set.insert(&v + g);
        }
    }
    set.into_iter().collect()
}

pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> SympVec {
    let mut v = SympVec::zero(n);
    for i in 0..2 * n {
        v.set_bit(i, rng.random_bool(0.5));
    }
    v
}

/// Span of a random number of random vectors; biased toward sparse vectors
/// so that low-rank and coordinate-aligned cases show up.
pub fn random_generators<R: Rng>(n: usize, rng: &mut R) -> Vec<SympVec> {
    let count = rng.random_range(0..=2 * n + 1);
    let density = [0.15, 0.5][rng.random_range(0..2)];
    (0..count)
        .map(|_| {
            let mut v = SympVec::zero(n);
            for i in 0..2 * n {
                v.set_bit(i, rng.random_bool(density));
            }
            v
        })
        .collect()
}

pub fn random_subspace<R: Rng>(n: usize, rng: &mut R) -> Subspace {
    Subspace::span(n, &random_generators(n, rng)).unwrap()
}

pub fn random_clifford_circuit<R: Rng>(n: usize, rng: &mut R) -> CliffordCircuit {
    random_clifford(n, 10 * n + 5, rng).try_into().unwrap()
}

/// A random isotropic subspace: images of `Z₁..Z_m` under a random Clifford.
pub fn random_isotropic<R: Rng>(n: usize, m: usize, rng: &mut R) -> (CliffordCircuit, Vec<SympVec>) {
    let c = random_clifford_circuit(n, rng);
    let rows = (0..m)
        .map(|q| conjugate_vector(&c, &SympVec::z_on(n, q)).unwrap())
        .collect();
    (c, rows)
}

pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    let mut amps: Vec<Complex64> = (0..1 << n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(n, amps).unwrap()
}

/// Exact `q_ψ(x) = Σ_a p(a) p(x + a)` by explicit convolution.
pub fn convolve(p: &[f64], n: usize) -> Vec<f64> {
    let size = 1usize << (2 * n);
    let mut q = vec![0.0; size];
    for (x, qx) in q.iter_mut().enumerate() {
        *qx = (0..size).map(|a| p[a] * p[x ^ a]).sum();
    }
    q
}
