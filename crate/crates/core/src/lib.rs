//! Entanglement entropy estimation for quantum states with large stabilizer
//! dimension.
//!
//! The pipeline: prepare a state (a stabilizer [`tableau`] for Clifford
//! circuits, a dense [`statevector`] for Clifford+T), obtain its unsigned
//! stabilizer group either exactly or from Bell difference samples, and turn
//! the group into lower and upper bounds on the entanglement entropy across a
//! cut ([`estimator`]). Everything rests on the F₂ symplectic linear algebra
//! in [`symplectic`].

pub mod circuit;
pub mod distinguisher;
pub mod error;
pub mod estimator;
pub mod statevector;
pub mod symplectic;
pub mod tableau;
pub mod weyl;

pub use circuit::{Circuit, CliffordCircuit, Gate};
pub use error::{Error, Result};
pub use estimator::{
    binary_entropy, default_epsilon, entropy_bounds_from_group, estimate_entropy, BoundReport,
    EstimatorInput, EstimatorParams, SampledComplement,
};
pub use statevector::{
    bell_difference_sample, characteristic_distribution, entanglement_entropy_oracle,
    simulate_circuit, CharacteristicDistribution, StateVector,
};
pub use symplectic::{
    extract_symplectic_subspace, restrict_to_cut, span, symplectic_complement, symplectic_product,
    Cut, Subspace, SympVec,
};
pub use tableau::{conjugate_vector, simulate_clifford, weyl_group_from_tableau, Tableau};
pub use weyl::{
    apply_weyl, weyl_expectation, weyl_group_oracle, GroupProvenance, StabilizerGroupEstimate,
};
