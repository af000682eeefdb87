//! Exact diagonalization toolkit for the staggered spin-1/2 XXZ chain and the
//! quantum Ashkin-Teller chain under periodic boundary conditions.
//!
//! The crate builds both Hamiltonians inside their symmetry sectors, finds
//! ground states with a restarted Lanczos solver, and evaluates pairwise
//! (negativity, distance from the separability boundary) and block (von
//! Neumann entropy) entanglement. The [`verify`] module turns the equivalence
//! between the two chains into executable checks.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, sweeps and the
//! command line live in the `spinchain` crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod basis;
pub mod eigensolve;
pub mod entanglement;
mod error;
mod math;
pub mod models;
pub mod observables;
pub mod pauli;
pub mod state;
pub mod verify;

pub use basis::{Label, Parity, Sector, SpinBasis, MAX_SPINS};
pub use eigensolve::{dense_spectrum, lanczos_ground, ground_state, EigenResult, LanczosOptions};
pub use entanglement::{DensityMatrix, EntanglementReport};
pub use error::{Error, Result};
pub use models::{build_hamiltonian, ModelKind, ModelParams, SparseHamiltonian};
pub use pauli::{Axis, PauliString};
pub use state::{apply_pauli_string, expectation, Frame, QuantumState};

pub use num_complex::Complex64;
