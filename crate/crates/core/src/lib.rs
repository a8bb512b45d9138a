//! Pauli-triplet subalgebras of multi-qubit matrix algebras.
//!
//! A *Pauli triplet* is a triple `(S1, S2, S3)` of self-adjoint unitaries with
//! `S1 S2 = -S2 S1` and `S3 = -i S1 S2`. Together with the identity, a triplet
//! spans a subalgebra isomorphic to `M2(C)`, and a two-qubit state is fully
//! determined by its reduced densities in five well-chosen subalgebras.
//!
//! This crate provides:
//!
//! - exact Gaussian-rational matrix arithmetic over the ring generated by the
//!   entries of all relevant operators ([`scalar`], [`matrix`]);
//! - signed Pauli strings with symplectic bit arithmetic ([`pauli`]);
//! - triplet verification, subalgebra reduction and the intertwiner to
//!   `B(H_A) (x) C I_B` ([`triplet`], [`state`]);
//! - weak/strong mutual unbiasedness of subalgebra families ([`unbiased`]);
//! - forward simulation and linear-inversion tomography of a two-qubit state
//!   from triplet expectation values ([`tomography`]);
//! - enumeration and search engines: elementary-triplet catalogs, the
//!   exhaustive five-triplet refutation, the Hadamard-alphabet search for a
//!   fifth triplet, integer feasibility bounds, and budgeted spanning-family
//!   searches ([`search`]);
//! - JSON file formats shared with the `pauli-span` CLI ([`io`]).
//!
//! All verification paths are tolerance-free: every operator of interest has
//! entries in `{0, ±1, ±i, ±1/2, ±i/2}`, so ranks, products and inner products
//! are computed exactly. Floating-point arithmetic enters only at the
//! tomography boundary (states, expectation values, least squares).

pub mod families;
pub mod io;
pub mod matrix;
pub mod pauli;
pub mod rank;
pub mod scalar;
pub mod search;
pub mod state;
pub mod tomography;
pub mod unbiased;
pub mod triplet;

pub use matrix::{ExactMatrix, MatrixError};
pub use pauli::{PauliLetter, PauliString, Phase, PhasedPauli};
pub use scalar::ExactScalar;
pub use state::{BlochVector, DensityMatrix, Provenance, StateError};
pub use triplet::{PauliTriplet, SubalgebraBasis, TripletError, TripletReport};


/// Complex floating scalar used on the tomography side.
pub type C64 = num_complex::Complex64;

/// Dense complex floating matrix used on the tomography side.
pub type CMatrix = nalgebra::DMatrix<C64>;
