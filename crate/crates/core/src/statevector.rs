//! Dense state vectors for small Clifford+T circuits, the characteristic
//! distribution `p_ψ`, Bell difference sampling, and exact entanglement entropy.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::symplectic::{Cut, SympVec};
use crate::weyl::weyl_expectations_all;

/// Largest qubit count the dense backend accepts by default.
pub const DEFAULT_DENSE_CAP: usize = 12;

const NORM_TOLERANCE: f64 = 1e-10;
const EIGENVALUE_FLOOR: f64 = 1e-12;

/// `2ⁿ` amplitudes; qubit 0 is the most significant bit of the basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0ⁿ⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        check_cap(n, DEFAULT_DENSE_CAP)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_cap(n, DEFAULT_DENSE_CAP)?;
        if amps.len() != 1 << n {
            return Err(Error::InvalidParameter(format!(
                "{} amplitudes for {n} qubits",
                amps.len()
            )));
        }
        let s = Self { n, amps };
        if (s.norm_sqr() - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "state has squared norm {}",
                s.norm_sqr()
            )));
        }
        Ok(s)
    }

    pub(crate) fn from_raw(n: usize, amps: Vec<Complex64>) -> Self {
        Self { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    #[inline]
    fn bit_of(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        for &q in &gate.qubits() {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { index: q, n: self.n });
            }
        }
        match gate {
            Gate::H(q) => {
                let m = self.bit_of(q);
                let h = FRAC_1_SQRT_2;
                for j in (0..self.amps.len()).filter(|j| j & m == 0) {
                    let (a0, a1) = (self.amps[j], self.amps[j | m]);
                    self.amps[j] = (a0 + a1) * h;
                    self.amps[j | m] = (a0 - a1) * h;
                }
            }
            Gate::X(q) => {
                let m = self.bit_of(q);
                for j in (0..self.amps.len()).filter(|j| j & m == 0) {
                    self.amps.swap(j, j | m);
                }
            }
            Gate::Y(q) => {
                let m = self.bit_of(q);
                let i = Complex64::i();
                for j in (0..self.amps.len()).filter(|j| j & m == 0) {
                    let (a0, a1) = (self.amps[j], self.amps[j | m]);
                    self.amps[j] = -i * a1;
                    self.amps[j | m] = i * a0;
                }
            }
            Gate::Z(q) => self.phase_on_one(q, Complex64::new(-1.0, 0.0)),
            Gate::S(q) => self.phase_on_one(q, Complex64::i()),
            Gate::T(q) => self.phase_on_one(q, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)),
            Gate::Tdg(q) => {
                self.phase_on_one(q, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4))
            }
            Gate::Cnot(c, t) => {
                let (mc, mt) = (self.bit_of(c), self.bit_of(t));
                for j in (0..self.amps.len()).filter(|j| j & mc != 0 && j & mt == 0) {
                    self.amps.swap(j, j | mt);
                }
            }
        }
        Ok(())
    }

    fn phase_on_one(&mut self, q: usize, phase: Complex64) {
        let m = self.bit_of(q);
        for (j, a) in self.amps.iter_mut().enumerate() {
            if j & m != 0 {
                *a *= phase;
            }
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// `C|0ⁿ⟩` with the default cap.
pub fn simulate_circuit(c: &Circuit) -> Result<StateVector> {
    simulate_circuit_with_cap(c, DEFAULT_DENSE_CAP)
}

/// `C|0ⁿ⟩`, refusing circuits wider than `cap` qubits.
pub fn simulate_circuit_with_cap(c: &Circuit, cap: usize) -> Result<StateVector> {
    check_cap(c.n(), cap)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << c.n()];
    amps[0] = Complex64::new(1.0, 0.0);
    let mut psi = StateVector::from_raw(c.n(), amps);
    for &g in c.gates() {
        psi.apply(g)?;
    }
    Ok(psi)
}

/// `p_ψ(x) = 2⁻ⁿ ⟨ψ|W_x|ψ⟩²` over all `4ⁿ` points, indexed by [`SympVec::to_index`].
#[derive(Clone, Debug)]
pub struct CharacteristicDistribution {
    n: usize,
    p: Vec<f64>,
    cumulative: Vec<f64>,
}

impl CharacteristicDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn prob(&self, x: &SympVec) -> f64 {
        self.p[x.to_index() as usize]
    }

    pub fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// Inverse-CDF draw of one point.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> SympVec {
        let u = rng.random::<f64>() * self.total();
        let idx = self.cumulative.partition_point(|&c| c <= u).min(self.p.len() - 1);
        SympVec::from_index(self.n, idx as u64)
    }
}

pub fn characteristic_distribution(psi: &StateVector) -> Result<CharacteristicDistribution> {
    let scale = 0.5f64.powi(psi.n() as i32);
    let p: Vec<f64> = weyl_expectations_all(psi)?
        .into_iter()
        .map(|e| e * e * scale)
        .collect();
    let cumulative = p
        .iter()
        .scan(0.0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    Ok(CharacteristicDistribution {
        n: psi.n(),
        p,
        cumulative,
    })
}

/// `count` draws from `q_ψ`, each the sum of two independent draws from `p_ψ`.
pub fn bell_difference_sample<R: Rng + ?Sized>(
    p: &CharacteristicDistribution,
    rng: &mut R,
    count: usize,
) -> Vec<SympVec> {
    (0..count)
        .map(|_| {
            let a = p.draw(rng);
            let b = p.draw(rng);
            &a + &b
        })
        .collect()
}

/// Von Neumann entropy of `ρ_A` in bits, from the Schmidt coefficients across the cut.
pub fn entanglement_entropy_oracle(psi: &StateVector, cut: &Cut) -> Result<f64> {
    if cut.n() != psi.n() {
        return Err(Error::DimensionMismatch {
            left: psi.n(),
            right: cut.n(),
        });
    }
    let n = psi.n();
    let (a, b) = (cut.a(), cut.b());
    let gather = |j: usize, side: &[usize]| -> usize {
        side.iter()
            .fold(0, |acc, &q| (acc << 1) | ((j >> (n - 1 - q)) & 1))
    };
    let mut m = DMatrix::<Complex64>::zeros(1 << a.len(), 1 << b.len());
    for (j, amp) in psi.amplitudes().iter().enumerate() {
        m[(gather(j, a), gather(j, b))] = *amp;
    }
    let entropy = m
        .singular_values()
        .iter()
        .map(|s| s * s)
        .filter(|&lambda| lambda > EIGENVALUE_FLOOR)
        .map(|lambda| -lambda * lambda.log2())
        .sum::<f64>();
    Ok(entropy.max(0.0))
}
