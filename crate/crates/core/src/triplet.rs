//! Pauli triplets, the subalgebras they span, and the unitary intertwiner
//! that moves a subalgebra into tensor position.
//!
//! A triplet `(S1, S2, S3)` must satisfy, exactly:
//! 1. each `S_i` is a self-adjoint unitary and `S3 = -i S1 S2`;
//! 2. `S1 S2 + S2 S1 = 0`.
//!
//! Together with the identity a triplet spans a subalgebra of `M_{2^n}(C)`
//! isomorphic to `M_2(C)`; its traceless part has dimension exactly 3.

use crate::matrix::{hs_inner, ExactMatrix, MatrixError};
use crate::pauli::{pauli_coefficients, qubit_count, string_product, PauliString};
use crate::rank::exact_rank_scalars;
use crate::scalar::ExactScalar;
use crate::{C64, CMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TripletError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("triplet axioms violated: {0:?}")]
    AxiomsViolated(Vec<String>),
    #[error("operators must anticommute to complete a triplet")]
    NotAnticommuting,
    #[error("operator {index} is not a self-adjoint unitary")]
    NotSelfAdjointUnitary { index: usize },
    #[error("intertwiner is only defined for ambient dimension 4, got {0}")]
    BadAmbientDim(usize),
    #[error("eigenspace of S3 does not have dimension 2; not a valid triplet")]
    DegenerateEigenspace,
}

/// Per-axiom verification report; `pass` iff every check holds.
///
/// All checks are exact: no tolerances are involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletReport {
    pub self_adjoint: [bool; 3],
    pub unitary: [bool; 3],
    pub anticommutes: bool,
    pub product_identity: bool,
}

impl TripletReport {
    pub fn pass(&self) -> bool {
        self.self_adjoint.iter().all(|&b| b)
            && self.unitary.iter().all(|&b| b)
            && self.anticommutes
            && self.product_identity
    }

    /// Names of the failed axioms, for diagnostics.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..3 {
            if !self.self_adjoint[i] {
                out.push(format!("self_adjoint[{i}]"));
            }
            if !self.unitary[i] {
                out.push(format!("unitary[{i}]"));
            }
        }
        if !self.anticommutes {
            out.push("anticommutation".to_string());
        }
        if !self.product_identity {
            out.push("product_identity".to_string());
        }
        out
    }
}

/// Check the triplet axioms on three matrices, reporting each separately.
pub fn verify_triplet(
    s1: &ExactMatrix,
    s2: &ExactMatrix,
    s3: &ExactMatrix,
) -> Result<TripletReport, TripletError> {
    if s1.dim() != s2.dim() || s1.dim() != s3.dim() {
        let right = if s1.dim() != s2.dim() { s2.dim() } else { s3.dim() };
        return Err(MatrixError::DimMismatch {
            left: s1.dim(),
            right,
        }
        .into());
    }
    let ops = [s1, s2, s3];
    let self_adjoint = [0, 1, 2].map(|i| ops[i].is_self_adjoint());
    let unitary = [0, 1, 2].map(|i| ops[i].is_unitary());
    let s12 = s1.mul(s2)?;
    let anticommutes = s12.add(&s2.mul(s1)?)?.is_zero();
    // S3 = -i S1 S2
    let product_identity = *s3 == s12.times_i().neg();
    Ok(TripletReport {
        self_adjoint,
        unitary,
        anticommutes,
        product_identity,
    })
}

/// A verified Pauli triplet. Elementary triplets remember their words.
#[derive(Debug, Clone)]
pub struct PauliTriplet {
    ops: [ExactMatrix; 3],
    words: Option<[PauliString; 3]>,
}

impl PauliTriplet {
    /// Build from three matrices; all axioms are verified exactly.
    pub fn from_matrices(
        s1: ExactMatrix,
        s2: ExactMatrix,
        s3: ExactMatrix,
    ) -> Result<Self, TripletError> {
        let report = verify_triplet(&s1, &s2, &s3)?;
        if !report.pass() {
            return Err(TripletError::AxiomsViolated(report.failures()));
        }
        let ops = [s1, s2, s3];
        let words = recover_words(&ops);
        Ok(PauliTriplet { ops, words })
    }

    /// Build from three signed words.
    pub fn from_words(
        w1: PauliString,
        w2: PauliString,
        w3: PauliString,
    ) -> Result<Self, TripletError> {
        let s1 = w1.realize();
        let s2 = w2.realize();
        let s3 = w3.realize();
        let report = verify_triplet(&s1, &s2, &s3)?;
        if !report.pass() {
            return Err(TripletError::AxiomsViolated(report.failures()));
        }
        Ok(PauliTriplet {
            ops: [s1, s2, s3],
            words: Some([w1, w2, w3]),
        })
    }

    /// Complete an anticommuting self-adjoint unitary pair to a triplet with
    /// `S3 = -i S1 S2`.
    pub fn complete(s1: ExactMatrix, s2: ExactMatrix) -> Result<Self, TripletError> {
        for (index, s) in [&s1, &s2].into_iter().enumerate() {
            if !s.is_self_adjoint() || !s.is_unitary() {
                return Err(TripletError::NotSelfAdjointUnitary { index });
            }
        }
        let s12 = s1.mul(&s2)?;
        if !s12.add(&s2.mul(&s1)?)?.is_zero() {
            return Err(TripletError::NotAnticommuting);
        }
        let s3 = s12.times_i().neg();
        let ops = [s1, s2, s3];
        let words = recover_words(&ops);
        Ok(PauliTriplet { ops, words })
    }

    /// Complete a pair of words on the string representation; the third
    /// operator keeps elementary form.
    pub fn complete_words(w1: PauliString, w2: PauliString) -> Result<Self, TripletError> {
        if !crate::pauli::anticommutes(&w1, &w2).map_err(|_| MatrixError::DimMismatch {
            left: 1 << w1.n_qubits(),
            right: 1 << w2.n_qubits(),
        })? {
            return Err(TripletError::NotAnticommuting);
        }
        let phased = string_product(&w1, &w2).expect("lengths already checked");
        // -i * (±i * word) = ±word: the product phase is ±i for
        // anticommuting words
        let w3 = match phased.phase {
            crate::pauli::Phase::PlusI => phased.word,
            crate::pauli::Phase::MinusI => phased.word.negated(),
            _ => unreachable!("anticommuting words have product phase ±i"),
        };
        Self::from_words(w1, w2, w3)
    }

    pub fn operators(&self) -> &[ExactMatrix; 3] {
        &self.ops
    }

    pub fn operator(&self, i: usize) -> &ExactMatrix {
        &self.ops[i]
    }

    /// Signed words when every operator is an elementary tensor.
    pub fn words(&self) -> Option<&[PauliString; 3]> {
        self.words.as_ref()
    }

    pub fn is_elementary(&self) -> bool {
        self.words.is_some()
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    pub fn n_qubits(&self) -> usize {
        qubit_count(self.dim())
    }

    /// Sorted unsigned word indices, the canonical deduplication key for
    /// elementary triplets.
    pub fn unsigned_word_key(&self) -> Option<[usize; 3]> {
        self.words.as_ref().map(|ws| {
            let mut key = [ws[0].word_index(), ws[1].word_index(), ws[2].word_index()];
            key.sort_unstable();
            key
        })
    }

    /// Equivalence up to signs and ordering: the unsigned operator sets
    /// coincide. Spanning depends only on this set.
    pub fn same_unsigned_set(&self, other: &PauliTriplet) -> bool {
        if let (Some(a), Some(b)) = (self.unsigned_word_key(), other.unsigned_word_key()) {
            return a == b;
        }
        if self.dim() != other.dim() {
            return false;
        }
        self.ops
            .iter()
            .all(|a| other.ops.iter().any(|b| a == b || *a == b.neg()))
    }

    /// Traceless Pauli-coefficient rows of the three operators, in order.
    pub fn traceless_rows(&self) -> [Vec<ExactScalar>; 3] {
        [0, 1, 2].map(|i| {
            let coeffs = pauli_coefficients(&self.ops[i]);
            debug_assert!(coeffs[0].is_zero(), "triplet operators are traceless");
            coeffs[1..].to_vec()
        })
    }
}

/// If every operator is ± a single Pauli word, recover the signed words.
fn recover_words(ops: &[ExactMatrix; 3]) -> Option<[PauliString; 3]> {
    let n = qubit_count(ops[0].dim());
    let mut words: Vec<PauliString> = Vec::with_capacity(3);
    for op in ops {
        let coeffs = pauli_coefficients(op);
        let nonzero: Vec<(usize, &ExactScalar)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        match nonzero.as_slice() {
            [(idx, c)] if **c == ExactScalar::ONE => {
                words.push(PauliString::from_word_index(n, *idx));
            }
            [(idx, c)] if **c == -ExactScalar::ONE => {
                words.push(PauliString::from_word_index(n, *idx).negated());
            }
            _ => return None,
        }
    }
    Some([words[0].clone(), words[1].clone(), words[2].clone()])
}

/// Exact rank, over the rationals, of the traceless coefficient rows of all
/// operators in the family: a `3k x (4^n - 1)` matrix.
///
/// The family spans `M_{2^n}(C)` together with the identity iff the rank is
/// `4^n - 1`. An empty family has rank 0.
pub fn triplet_span_rank(family: &[PauliTriplet]) -> Result<usize, TripletError> {
    let Some(first) = family.first() else {
        return Ok(0);
    };
    let dim = first.dim();
    for t in family {
        if t.dim() != dim {
            return Err(MatrixError::DimMismatch {
                left: dim,
                right: t.dim(),
            }
            .into());
        }
    }
    let rows: Vec<Vec<ExactScalar>> = family.iter().flat_map(|t| t.traceless_rows()).collect();
    Ok(exact_rank_scalars(&rows))
}

/// A Pauli triplet viewed as the basis of the subalgebra
/// `span{I, S1, S2, S3}` of the ambient algebra.
#[derive(Debug, Clone)]
pub struct SubalgebraBasis {
    triplet: PauliTriplet,
}

impl SubalgebraBasis {
    pub fn new(triplet: PauliTriplet) -> Self {
        SubalgebraBasis { triplet }
    }

    pub fn triplet(&self) -> &PauliTriplet {
        &self.triplet
    }

    pub fn operators(&self) -> &[ExactMatrix; 3] {
        self.triplet.operators()
    }

    pub fn dim(&self) -> usize {
        self.triplet.dim()
    }

    /// Floating copies of the three basis operators.
    pub fn operators_float(&self) -> [CMatrix; 3] {
        [0, 1, 2].map(|i| self.triplet.operator(i).to_cmatrix())
    }
}

impl From<PauliTriplet> for SubalgebraBasis {
    fn from(t: PauliTriplet) -> Self {
        SubalgebraBasis::new(t)
    }
}

/// A unitary `W` with `W* S1 W = σ1⊗I`, `W* S2 W = σ2⊗I`, `W* S3 W = σ3⊗I`,
/// built from an orthonormal basis of the `+1` eigenspace of `S3`.
///
/// The residual phase freedom is fixed by making the first nonzero entry of
/// each of the first two columns real positive, so the output is
/// deterministic.
pub fn intertwiner(sub: &SubalgebraBasis) -> Result<CMatrix, TripletError> {
    let d = sub.dim();
    if d != 4 {
        return Err(TripletError::BadAmbientDim(d));
    }
    let [s1f, _, s3f] = sub.operators_float();
    // columns of the spectral projection (I + S3)/2 span the +1 eigenspace
    let proj = (CMatrix::identity(4, 4) + &s3f) * C64::new(0.5, 0.0);
    let mut basis: Vec<nalgebra::DVector<C64>> = Vec::new();
    for c in 0..4 {
        let mut v: nalgebra::DVector<C64> = proj.column(c).into_owned();
        for u in &basis {
            let overlap = u.dotc(&v);
            v -= u * overlap;
        }
        let norm = v.norm();
        if norm > 1e-9 {
            v /= C64::new(norm, 0.0);
            fix_phase(&mut v);
            basis.push(v);
        }
    }
    if basis.len() != 2 {
        return Err(TripletError::DegenerateEigenspace);
    }
    let mut w = CMatrix::zeros(4, 4);
    for (k, u) in basis.iter().enumerate() {
        w.set_column(k, u);
        // S1 maps the +1 eigenspace of S3 onto the -1 eigenspace
        w.set_column(2 + k, &(&s1f * u));
    }
    Ok(w)
}

/// Rotate a unit vector so its first nonzero entry is real positive.
fn fix_phase(v: &mut nalgebra::DVector<C64>) {
    if let Some(e) = v.iter().find(|e| e.norm() > 1e-9).copied() {
        let phase = e.conj() / C64::new(e.norm(), 0.0);
        *v *= phase;
    }
}

/// Hilbert-Schmidt orthogonality of two operators.
pub fn operators_orthogonal(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool, MatrixError> {
    Ok(hs_inner(a, b)?.is_zero())
}
