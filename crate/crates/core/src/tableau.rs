//! Stabilizer tableau for Clifford circuits on many qubits.
//!
//! Only the `n` stabilizer rows are kept (no destabilizers), since nothing
//! here measures. Signs follow the Aaronson–Gottesman update rules, where a
//! row with both bits set on a qubit means `Y` on that qubit.

use crate::circuit::{CliffordCircuit, Gate};
use crate::error::{Error, Result};
use crate::symplectic::{Subspace, SympVec};
use crate::weyl::{GroupProvenance, StabilizerGroupEstimate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    rows: Vec<SympVec>,
    signs: Vec<bool>,
}

/// Conjugates a single row by `gate`, returning whether the sign flips.
#[inline]
fn conjugate_row(row: &mut SympVec, gate: Gate) -> Result<bool> {
    let flip = match gate {
        Gate::H(q) => {
            let (x, z) = (row.x(q), row.z(q));
            row.set_x(q, z);
            row.set_z(q, x);
            x && z
        }
        Gate::S(q) => {
            let (x, z) = (row.x(q), row.z(q));
            row.set_z(q, z ^ x);
            x && z
        }
        Gate::Cnot(a, b) => {
            let (xa, za, xb, zb) = (row.x(a), row.z(a), row.x(b), row.z(b));
            row.set_x(b, xb ^ xa);
            row.set_z(a, za ^ zb);
            xa && zb && !(xb ^ za)
        }
        Gate::X(q) => row.z(q),
        Gate::Z(q) => row.x(q),
        Gate::Y(q) => row.x(q) ^ row.z(q),
        Gate::T(_) | Gate::Tdg(_) => return Err(Error::NonClifford(gate.to_string())),
    };
    Ok(flip)
}

impl Tableau {
    /// Tableau of `|0ⁿ⟩`: generators `Z₁, …, Zₙ`.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: (0..n).map(|q| SympVec::z_on(n, q)).collect(),
            signs: vec![false; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[SympVec] {
        &self.rows
    }

    /// `true` means the generator carries a `-1`.
    pub fn signs(&self) -> &[bool] {
        &self.signs
    }

    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        for &q in &gate.qubits() {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { index: q, n: self.n });
            }
        }
        for (row, sign) in self.rows.iter_mut().zip(self.signs.iter_mut()) {
            *sign ^= conjugate_row(row, gate)?;
        }
        Ok(())
    }

    /// Generators as signed Pauli strings, e.g. `+XX`.
    pub fn generator_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .zip(&self.signs)
            .map(|(r, &s)| format!("{}{}", if s { '-' } else { '+' }, r))
            .collect()
    }
}

/// Tableau of `C|0ⁿ⟩`.
pub fn simulate_clifford(c: &CliffordCircuit) -> Tableau {
    let mut t = Tableau::new(c.n());
    for &g in c.gates() {
        t.apply(g).expect("Clifford gates on validated indices");
    }
    t
}

/// Unsigned stabilizer group read off the generators; always dimension `n`.
pub fn weyl_group_from_tableau(t: &Tableau) -> StabilizerGroupEstimate {
    let group = Subspace::span(t.n, &t.rows).expect("rows share n");
    debug_assert_eq!(group.dim(), t.n);
    StabilizerGroupEstimate::new(group, GroupProvenance::Tableau)
}

/// `C(x)`: the vector with `W_{C(x)} = ±C W_x C†`.
pub fn conjugate_vector(c: &CliffordCircuit, x: &SympVec) -> Result<SympVec> {
    if x.n() != c.n() {
        return Err(Error::DimensionMismatch {
            left: c.n(),
            right: x.n(),
        });
    }
    let mut y = x.clone();
    for &g in c.gates() {
        conjugate_row(&mut y, g)?;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{random_clifford, Circuit};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cc(text: &str) -> CliffordCircuit {
        text.parse::<Circuit>().unwrap().try_into().unwrap()
    }

    fn v(s: &str) -> SympVec {
        s.parse().unwrap()
    }

    #[test]
    fn empty_circuit_is_all_z() {
        let t = simulate_clifford(&cc("qubits 3\n"));
        assert_eq!(t.generator_strings(), vec!["+ZII", "+IZI", "+IIZ"]);
    }

    #[test]
    fn hadamard_gives_x() {
        let t = simulate_clifford(&cc("qubits 1\nH 1\n"));
        assert_eq!(t.generator_strings(), vec!["+X"]);
    }

    #[test]
    fn epr_generators() {
        let t = simulate_clifford(&cc("qubits 2\nH 1\nCNOT 1 2\n"));
        let g = weyl_group_from_tableau(&t);
        assert_eq!(g.group(), &Subspace::span(2, &[v("XX"), v("ZZ")]).unwrap());
        assert_eq!(t.generator_strings(), vec!["+XX", "+ZZ"]);
    }

    #[test]
    fn signs_follow_textbook_conventions() {
        assert_eq!(simulate_clifford(&cc("qubits 1\nX 1\n")).generator_strings(), vec!["-Z"]);
        assert_eq!(simulate_clifford(&cc("qubits 1\nH 1\nS 1\n")).generator_strings(), vec!["+Y"]);
        assert_eq!(simulate_clifford(&cc("qubits 1\nH 1\nZ 1\n")).generator_strings(), vec!["-X"]);
        assert_eq!(
            simulate_clifford(&cc("qubits 1\nH 1\nS 1\nS 1\nS 1\n")).generator_strings(),
            vec!["-Y"]
        );
        assert_eq!(simulate_clifford(&cc("qubits 1\nY 1\n")).generator_strings(), vec!["-Z"]);
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(conjugate_vector(&cc("qubits 1\nH 1\n"), &v("X")).unwrap(), v("Z"));
        assert_eq!(conjugate_vector(&cc("qubits 2\nCNOT 1 2\n"), &v("XI")).unwrap(), v("XX"));
        assert_eq!(conjugate_vector(&cc("qubits 2\nCNOT 1 2\n"), &v("IZ")).unwrap(), v("ZZ"));
        assert!(conjugate_vector(&cc("qubits 2\n"), &v("X")).is_err());
    }

    #[test]
    fn tableau_stays_lagrangian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut t = Tableau::new(9);
        for g in random_clifford(9, 200, &mut rng).gates() {
            t.apply(*g).unwrap();
            let s = Subspace::span(9, t.rows()).unwrap();
            assert_eq!(s.dim(), 9);
            assert!(s.is_isotropic());
        }
    }

    #[test]
    fn conjugation_is_linear_and_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let n = rng.random_range(1..8);
            let c: CliffordCircuit = random_clifford(n, 40, &mut rng).try_into().unwrap();
            let x = SympVec::from_index(n, rng.random::<u64>());
            let y = SympVec::from_index(n, rng.random::<u64>());
            let cx = conjugate_vector(&c, &x).unwrap();
            let cy = conjugate_vector(&c, &y).unwrap();
            assert_eq!(cx.symplectic(&cy), x.symplectic(&y));
            assert_eq!(conjugate_vector(&c, &(&x + &y)).unwrap(), &cx + &cy);
        }
    }

    #[test]
    fn t_gate_rejected() {
        let mut t = Tableau::new(1);
        assert!(matches!(t.apply(Gate::T(0)), Err(Error::NonClifford(_))));
        assert!(matches!(t.apply(Gate::H(1)), Err(Error::QubitOutOfRange { .. })));
    }
}
