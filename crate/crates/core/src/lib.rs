//! Ground-state quantum computation.
//!
//! A circuit of real orthogonal gates on `M` qubits over `N` stages is turned
//! into a sparse Hamiltonian on a chain of `2(N+1)` sites per qubit. Its zero
//! energy states are the input states carried through the whole circuit, one
//! row per stage. This crate assembles that Hamiltonian, computes its ground
//! space, and checks it against two independent oracles: a register-level
//! gate simulator and a direct construction of the ground state.
//!
//! ```
//! use gsqc::{build_grover_circuit, verify, Circuit64, VerifyOptions};
//!
//! let circuit: Circuit64 = build_grover_circuit();
//! let report = verify(&circuit, 0, &VerifyOptions::default()).unwrap();
//! assert_eq!(report.degeneracy, 1);
//! assert!(report.min_fidelity() > 1.0 - 1e-8);
//! ```

pub mod analysis;
pub mod circuit;
pub mod eigen;
pub mod error;
pub mod hamiltonian;
pub mod hilbert;
pub mod oracle;
pub mod scalar;
pub mod sparse;

pub use analysis::{
    format_bits, parse_bits, readout, verify, ReadoutReport, VerificationReport, VerifyOptions,
};
pub use circuit::{
    build_grover_circuit, parse_circuit, serialize_circuit, Assignment, Circuit, ControlledGate,
    SingleGate, Stage, ValidationReport,
};
pub use eigen::{ground_space, spectral_gap_scan, GroundSpace, GroundSpaceOptions, SolverChoice};
pub use error::{Error, Result};
pub use hamiltonian::{assemble, assemble_with, BiasSpec, HamiltonianForm};
pub use hilbert::{project_row, Layout, StateVector};
pub use oracle::{
    confined_recursion_state, final_state_identity_check, gate_oracle_run, recursion_state,
    RegisterState,
};
pub use scalar::Scalar;
pub use sparse::SparseSymMatrix;

pub type Circuit64 = Circuit<f64>;
pub type Circuit32 = Circuit<f32>;
pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type SparseSym64 = SparseSymMatrix<f64>;
pub type SparseSym32 = SparseSymMatrix<f32>;
pub type GroundSpace64 = GroundSpace<f64>;
pub type GroundSpace32 = GroundSpace<f32>;
pub type VerificationReport64 = VerificationReport<f64>;
pub type VerificationReport32 = VerificationReport<f32>;
