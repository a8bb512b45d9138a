//! Reference triplet families for `M_4(C)`.
//!
//! Two constructions are bundled:
//!
//! - four elementary triplets whose twelve operators all have vanishing
//!   diagonal, plus a Hadamard-type triplet whose diagonals are linearly
//!   independent — together they span the traceless part of `M_4(C)`, so
//!   five subalgebras suffice for two-qubit state determination;
//! - six elementary triplets that span, the minimum possible when every
//!   operator is an elementary tensor.

use crate::matrix::ExactMatrix;
use crate::triplet::PauliTriplet;

fn words(w1: &str, w2: &str, w3: &str) -> PauliTriplet {
    PauliTriplet::from_words(
        w1.parse().expect("valid word"),
        w2.parse().expect("valid word"),
        w3.parse().expect("valid word"),
    )
    .expect("reference triplet satisfies the axioms")
}

/// The four elementary triplets with vanishing diagonals:
/// `{σ0⊗σ1, -σ1⊗σ3, σ1⊗σ2}`, `{σ3⊗σ1, σ1⊗σ1, σ2⊗σ0}`,
/// `{σ1⊗σ0, σ2⊗σ2, σ3⊗σ2}`, `{σ0⊗σ2, σ2⊗σ3, σ2⊗σ1}`.
pub fn four_off_diagonal() -> Vec<PauliTriplet> {
    vec![
        words("IX", "-XZ", "XY"),
        words("ZX", "XX", "YI"),
        words("XI", "YY", "ZY"),
        words("IY", "YZ", "YX"),
    ]
}

/// The three Hadamard-type matrices (entries of modulus 1/2) forming the
/// fifth triplet; their diagonals are linearly independent.
pub fn hadamard_fifth_matrices() -> [ExactMatrix; 3] {
    let h1 = ExactMatrix::from_int_entries(
        &[
            &[(1, 0), (1, 0), (1, 0), (1, 0)],
            &[(1, 0), (1, 0), (-1, 0), (-1, 0)],
            &[(1, 0), (-1, 0), (-1, 0), (1, 0)],
            &[(1, 0), (-1, 0), (1, 0), (-1, 0)],
        ],
        1,
    );
    let h2 = ExactMatrix::from_int_entries(
        &[
            &[(1, 0), (0, 1), (0, 1), (-1, 0)],
            &[(0, -1), (-1, 0), (-1, 0), (0, 1)],
            &[(0, -1), (-1, 0), (1, 0), (0, -1)],
            &[(-1, 0), (0, -1), (0, 1), (-1, 0)],
        ],
        1,
    );
    let h3 = ExactMatrix::from_int_entries(
        &[
            &[(-1, 0), (0, 1), (1, 0), (0, 1)],
            &[(0, -1), (1, 0), (0, 1), (1, 0)],
            &[(1, 0), (0, -1), (1, 0), (0, 1)],
            &[(0, -1), (1, 0), (0, -1), (-1, 0)],
        ],
        1,
    );
    [h1, h2, h3]
}

/// The Hadamard-type fifth triplet as a verified [`PauliTriplet`].
pub fn hadamard_fifth() -> PauliTriplet {
    let [h1, h2, h3] = hadamard_fifth_matrices();
    PauliTriplet::from_matrices(h1, h2, h3).expect("reference triplet satisfies the axioms")
}

/// The five-subalgebra reduction family: [`four_off_diagonal`] plus
/// [`hadamard_fifth`]. Its traceless span rank is 15.
pub fn five_reduction_family() -> Vec<PauliTriplet> {
    let mut family = four_off_diagonal();
    family.push(hadamard_fifth());
    family
}

/// The six-triplet elementary spanning family:
/// `{σ1⊗σ1, σ1⊗σ2, σ0⊗σ3}`, `{σ2⊗σ2, σ2⊗σ3, σ0⊗σ1}`,
/// `{σ3⊗σ3, σ3⊗σ1, σ0⊗σ2}`, `{σ2⊗σ2, σ3⊗σ2, σ1⊗σ0}`,
/// `{σ3⊗σ3, σ1⊗σ3, σ2⊗σ0}`, `{σ1⊗σ1, σ2⊗σ1, σ3⊗σ0}`.
pub fn six_elementary() -> Vec<PauliTriplet> {
    vec![
        words("XX", "XY", "IZ"),
        words("YY", "YZ", "IX"),
        words("ZZ", "ZX", "IY"),
        words("YY", "ZY", "XI"),
        words("ZZ", "XZ", "YI"),
        words("XX", "YX", "ZI"),
    ]
}
