//! Two-qubit entanglement toolkit built around Lewenstein-Sanpera
//! decompositions of the Werner state `ρ_{1/2} = ½ I/4 + ½ |Ψ⁻⟩⟨Ψ⁻|`.
//!
//! * [`numerics`]: small complex matrices and a Jacobi Hermitian eigensolver.
//! * [`states`]: pure states, Werner states, the θ-family, Pauli form,
//!   partial transpose and partial trace.
//! * [`entanglement`]: concurrence, entropy of entanglement, PPT test and
//!   Wootters' mixed-state concurrence.
//! * [`lsdecomp`]: decomposition verifier, quasi-optimal solver and the
//!   feasibility threshold scan.

pub mod entanglement;
pub mod error;
pub mod lsdecomp;
pub mod numerics;
pub mod states;

pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, ComplexScalar, EigenResult};
pub use states::{DensityMatrix, PauliForm, PureState, ThetaParam, WernerParam};
