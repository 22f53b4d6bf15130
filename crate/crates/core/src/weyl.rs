//! Weyl operators `W_x = i^{a'·b'} X^{a₁}Z^{b₁} ⊗ … ⊗ X^{aₙ}Z^{bₙ}` acting on dense states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevector::StateVector;
use crate::symplectic::{Subspace, SympVec};

/// Imaginary residue of `⟨ψ|W|ψ⟩` tolerated before reporting a phase bug.
pub const IMAG_TOLERANCE: f64 = 1e-10;

/// `|⟨ψ|W_x|ψ⟩| ≥ 1 − STABILIZER_TOLERANCE` counts as `W_x|ψ⟩ = ±|ψ⟩`.
pub const STABILIZER_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupProvenance {
    /// Enumerated from a dense state.
    ExactOracle,
    /// Read off a stabilizer tableau.
    Tableau,
    /// Complement of Bell difference samples.
    Sampled,
}

/// A subspace standing in for `Weyl(|ψ⟩)`, tagged with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroupEstimate {
    group: Subspace,
    provenance: GroupProvenance,
}

impl StabilizerGroupEstimate {
    pub fn new(group: Subspace, provenance: GroupProvenance) -> Self {
        Self { group, provenance }
    }

    pub fn group(&self) -> &Subspace {
        &self.group
    }

    pub fn provenance(&self) -> GroupProvenance {
        self.provenance
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }
}

/// Reverses the low `n` bits: per-qubit bit `q` becomes basis-index bit `n - 1 - q`.
#[inline]
fn to_index_mask(qubit_bits: u64, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (qubit_bits.reverse_bits() >> (64 - n)) as usize
}

fn check_dims(v: &SympVec, psi: &StateVector) -> Result<()> {
    if v.n() != psi.n() {
        return Err(Error::DimensionMismatch {
            left: v.n(),
            right: psi.n(),
        });
    }
    Ok(())
}

/// Per-qubit x and z masks in basis-index order, plus the `i^{a'·b'}` phase.
fn index_masks(v: &SympVec) -> (usize, usize, Complex64) {
    let n = v.n();
    let (mut a, mut b) = (0u64, 0u64);
    for q in 0..n {
        a |= (v.x(q) as u64) << q;
        b |= (v.z(q) as u64) << q;
    }
    (to_index_mask(a, n), to_index_mask(b, n), i_pow((a & b).count_ones()))
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `W_v|ψ⟩` without materializing the operator.
pub fn apply_weyl(v: &SympVec, psi: &StateVector) -> Result<StateVector> {
    check_dims(v, psi)?;
    let (amask, bmask, phase) = index_masks(v);
    let src = psi.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); src.len()];
    for (j, amp) in src.iter().enumerate() {
        let sign = if (bmask & j).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[j ^ amask] = phase * sign * amp;
    }
    Ok(StateVector::from_raw(psi.n(), out))
}

fn real_part(e: Complex64) -> Result<f64> {
    if e.im.abs() > IMAG_TOLERANCE {
        return Err(Error::NonRealExpectation { imag: e.im });
    }
    Ok(e.re)
}

/// `⟨ψ|W_v|ψ⟩`, real because `W_v` is Hermitian.
pub fn weyl_expectation(v: &SympVec, psi: &StateVector) -> Result<f64> {
    let w = apply_weyl(v, psi)?;
    real_part(psi.inner(&w)?)
}

/// `⟨ψ|W_x|ψ⟩` for every `x`, indexed by [`SympVec::to_index`].
///
/// For a fixed x-part the z-part enters only through `(-1)^{b·j}`, so one
/// Walsh–Hadamard transform per x-part yields all `2ⁿ` z-parts at once:
/// `O(4ⁿ n)` total instead of `O(8ⁿ)`.
pub fn weyl_expectations_all(psi: &StateVector) -> Result<Vec<f64>> {
    let n = psi.n();
    let dim = 1usize << n;
    let amps = psi.amplitudes();
    let mut out = vec![0.0; dim * dim];
    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
    for a in 0..dim as u64 {
        let amask = to_index_mask(a, n);
        for (j, slot) in buf.iter_mut().enumerate() {
            *slot = amps[j ^ amask].conj() * amps[j];
        }
        walsh_hadamard(&mut buf);
        for b in 0..dim as u64 {
            let phase = i_pow((a & b).count_ones());
            let e = real_part(phase * buf[to_index_mask(b, n)])?;
            out[(a | (b << n)) as usize] = e;
        }
    }
    Ok(out)
}

/// In-place unnormalized transform `F[m] = Σ_j (-1)^{m·j} f[j]`.
fn walsh_hadamard(buf: &mut [Complex64]) {
    let mut h = 1;
    while h < buf.len() {
        for start in (0..buf.len()).step_by(2 * h) {
            for j in start..start + h {
                let (x, y) = (buf[j], buf[j + h]);
                buf[j] = x + y;
                buf[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// `Weyl(|ψ⟩)` by enumerating all `4ⁿ` operators.
pub fn weyl_group_oracle(psi: &StateVector) -> Result<StabilizerGroupEstimate> {
    let n = psi.n();
    let members: Vec<SympVec> = weyl_expectations_all(psi)?
        .into_iter()
        .enumerate()
        .filter(|(_, e)| e.abs() >= 1.0 - STABILIZER_TOLERANCE)
        .map(|(idx, _)| SympVec::from_index(n, idx as u64))
        .collect();
    let group = Subspace::span(n, &members)?;
    Ok(StabilizerGroupEstimate::new(group, GroupProvenance::ExactOracle))
}
