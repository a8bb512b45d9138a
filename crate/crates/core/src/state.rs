//! Density matrices, Bloch vectors, and reduction of states onto
//! triplet subalgebras.

use crate::matrix::ExactMatrix;
use crate::triplet::SubalgebraBasis;
use crate::{C64, CMatrix};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hermiticity and unit-trace tolerance for floating states.
pub const STATE_TOL: f64 = 1e-12;
/// Eigenvalues of a valid state may undershoot zero by at most this much.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("matrix is not self-adjoint (deviation {0:.3e})")]
    NotSelfAdjoint(f64),
    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("dimension mismatch: state is {state}, operator is {operator}")]
    DimMismatch { state: usize, operator: usize },
    #[error("state vector must have a nonzero norm")]
    ZeroVector,
}

/// Where a density matrix came from; estimated states skip the exact
/// positivity gate (noisy linear inversion can leave the PSD cone).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Estimated,
}

/// A self-adjoint, trace-one complex matrix.
///
/// With [`Provenance::Exact`] the eigenvalues are additionally checked to be
/// at least `-1e-10`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
    provenance: Provenance,
}

impl DensityMatrix {
    /// Validate a floating matrix as an exact-provenance state.
    pub fn new(mat: CMatrix) -> Result<Self, StateError> {
        Self::with_provenance(mat, Provenance::Exact)
    }

    /// Validate self-adjointness and trace only; positivity is recorded by
    /// the caller if needed.
    pub fn new_estimated(mat: CMatrix) -> Result<Self, StateError> {
        Self::with_provenance(mat, Provenance::Estimated)
    }

    pub fn with_provenance(mat: CMatrix, provenance: Provenance) -> Result<Self, StateError> {
        let herm_dev = hermiticity_deviation(&mat);
        if herm_dev > STATE_TOL {
            return Err(StateError::NotSelfAdjoint(herm_dev));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(StateError::TraceNotOne(tr.re));
        }
        let rho = DensityMatrix { mat, provenance };
        if provenance == Provenance::Exact {
            let min = rho.min_eigenvalue();
            if min < -PSD_TOL {
                return Err(StateError::NotPositive(min));
            }
        }
        Ok(rho)
    }

    /// Pure state `|ψ><ψ|` from amplitudes, normalized.
    pub fn from_pure(amplitudes: &[C64]) -> Result<Self, StateError> {
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(StateError::ZeroVector);
        }
        let d = amplitudes.len();
        let mat = CMatrix::from_fn(d, d, |r, c| {
            amplitudes[r] * amplitudes[c].conj() / norm2
        });
        Self::new(mat)
    }

    /// The Bell state `(|00> + |11>)/sqrt(2)` as a density matrix.
    pub fn bell_phi_plus() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Self::from_pure(&[one, zero, zero, one]).expect("valid state")
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mat = CMatrix::identity(dim, dim) / C64::new(dim as f64, 0.0);
        DensityMatrix {
            mat,
            provenance: Provenance::Exact,
        }
    }

    /// Validate an exact matrix as a state after float conversion.
    pub fn from_exact(m: &ExactMatrix) -> Result<Self, StateError> {
        Self::new(m.to_cmatrix())
    }

    /// Random full-rank state `G G* / Tr(G G*)` with independent standard
    /// complex Gaussian entries.
    pub fn random<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let g = CMatrix::from_fn(dim, dim, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let mut rho = &g * g.adjoint();
        let tr = rho.trace().re;
        rho /= C64::new(tr, 0.0);
        // symmetrize away the last bits of float noise
        let rho = (&rho + rho.adjoint()) * C64::new(0.5, 0.0);
        DensityMatrix {
            mat: rho,
            provenance: Provenance::Exact,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.mat
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b))
    }

    /// Real expectation value `Tr(ρ S)` of a self-adjoint exact operator.
    pub fn expectation(&self, op: &ExactMatrix) -> Result<f64, StateError> {
        if op.dim() != self.dim() {
            return Err(StateError::DimMismatch {
                state: self.dim(),
                operator: op.dim(),
            });
        }
        let d = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..d {
            for b in 0..d {
                acc += self.mat[(a, b)] * op.get(b, a).to_complex();
            }
        }
        debug_assert!(acc.im.abs() < 1e-9, "expectation of a self-adjoint op");
        Ok(acc.re)
    }

    pub fn frobenius_distance(&self, other: &DensityMatrix) -> f64 {
        (&self.mat - &other.mat).norm()
    }
}

/// Max entrywise deviation from self-adjointness.
pub fn hermiticity_deviation(mat: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for r in 0..mat.nrows() {
        for c in 0..mat.ncols() {
            dev = dev.max((mat[(r, c)] - mat[(c, r)].conj()).norm());
        }
    }
    dev
}

/// The reduced density of a state in a triplet subalgebra, encoded as the
/// expectation values `r_i = Tr(ρ S_i)`.
///
/// The induced qubit state is `(I + Σ r_i σ_i)/2`, so `|r| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub r: [f64; 3],
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.r.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Reduce a state onto a subalgebra: `r_i = Tr(ρ S_i)`.
pub fn reduce_state(
    rho: &DensityMatrix,
    sub: &SubalgebraBasis,
) -> Result<BlochVector, StateError> {
    let ops = sub.operators();
    Ok(BlochVector {
        r: [
            rho.expectation(&ops[0])?,
            rho.expectation(&ops[1])?,
            rho.expectation(&ops[2])?,
        ],
    })
}

/// Trace-orthogonal projection of a state onto the subalgebra:
/// `E(ρ) = Tr(ρ) I/d + Σ_i (Tr(ρ S_i)/d) S_i`.
///
/// `E` is idempotent, trace-preserving and Hermiticity-preserving, and
/// carries exactly the information of [`reduce_state`].
pub fn conditional_expectation(
    rho: &DensityMatrix,
    sub: &SubalgebraBasis,
) -> Result<CMatrix, StateError> {
    let d = sub.dim();
    if rho.dim() != d {
        return Err(StateError::DimMismatch {
            state: rho.dim(),
            operator: d,
        });
    }
    let df = C64::new(d as f64, 0.0);
    let mut out = CMatrix::identity(d, d) * (rho.matrix().trace() / df);
    for (op, opf) in sub.operators().iter().zip(sub.operators_float()) {
        let r = rho.expectation(op)?;
        out += opf * C64::new(r / d as f64, 0.0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn sub(idx: usize) -> SubalgebraBasis {
        SubalgebraBasis::new(families::five_reduction_family()[idx].clone())
    }

    #[test]
    fn maximally_mixed_reduces_to_zero() {
        let rho = DensityMatrix::maximally_mixed(4);
        for i in 0..5 {
            let b = reduce_state(&rho, &sub(i)).unwrap();
            assert!(b.norm() < 1e-14);
        }
    }

    #[test]
    fn bell_state_reductions_match_trace_oracle() {
        let rho = DensityMatrix::bell_phi_plus();
        // {σ3⊗σ1, σ1⊗σ1, σ2⊗σ0} -> (0, 1, 0)
        let b = reduce_state(&rho, &sub(1)).unwrap();
        assert_relative_eq!(b.r[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(b.r[1], 1.0, epsilon = 1e-12);
        assert_relative_eq!(b.r[2], 0.0, epsilon = 1e-12);
        // {σ1⊗σ0, σ2⊗σ2, σ3⊗σ2} -> (0, -1, 0)
        let b = reduce_state(&rho, &sub(2)).unwrap();
        assert_relative_eq!(b.r[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(b.r[1], -1.0, epsilon = 1e-12);
        assert_relative_eq!(b.r[2], 0.0, epsilon = 1e-12);

        // independent oracle: entrywise trace against realized float matrices
        for s in 0..5 {
            let sb = sub(s);
            let bloch = reduce_state(&rho, &sb).unwrap();
            for (i, opf) in sb.operators_float().iter().enumerate() {
                let tr = (rho.matrix() * opf).trace();
                assert_relative_eq!(bloch.r[i], tr.re, epsilon = 1e-12);
                assert!(tr.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bloch_norm_within_unit_ball_for_random_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rho = DensityMatrix::random(4, &mut rng);
            for i in 0..5 {
                let b = reduce_state(&rho, &sub(i)).unwrap();
                assert!(b.norm() <= 1.0 + 1e-12, "norm {}", b.norm());
            }
        }
    }

    #[test]
    fn reduce_state_is_linear() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let r1 = DensityMatrix::random(4, &mut rng);
        let r2 = DensityMatrix::random(4, &mut rng);
        let mix =
            DensityMatrix::new((r1.matrix() + r2.matrix()) * C64::new(0.5, 0.0)).unwrap();
        let s = sub(3);
        let b1 = reduce_state(&r1, &s).unwrap();
        let b2 = reduce_state(&r2, &s).unwrap();
        let bm = reduce_state(&mix, &s).unwrap();
        for i in 0..3 {
            assert_relative_eq!(bm.r[i], (b1.r[i] + b2.r[i]) / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn conditional_expectation_properties() {
        // fixed point on the maximally mixed state
        let mixed = DensityMatrix::maximally_mixed(4);
        let e = conditional_expectation(&mixed, &sub(0)).unwrap();
        assert!((e - mixed.matrix()).norm() < 1e-14);

        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..20 {
            let rho = DensityMatrix::random(4, &mut rng);
            let s = sub(4);
            let e1 = conditional_expectation(&rho, &s).unwrap();
            // trace preservation
            assert_relative_eq!(e1.trace().re, 1.0, epsilon = 1e-12);
            assert!(e1.trace().im.abs() < 1e-13);
            // idempotence: E(E(ρ)) = E(ρ)
            let as_state = DensityMatrix::new(e1.clone()).unwrap();
            let e2 = conditional_expectation(&as_state, &s).unwrap();
            assert!((&e1 - &e2).norm() < 1e-12);
            // hermiticity preservation
            assert!(hermiticity_deviation(&e1) < 1e-13);
            // same information as reduce_state
            let b = reduce_state(&rho, &s).unwrap();
            let b2 = reduce_state(&as_state, &s).unwrap();
            for i in 0..3 {
                assert_relative_eq!(b.r[i], b2.r[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn validation_rejects_bad_states() {
        let c = |re: f64, im: f64| C64::new(re, im);
        // not self-adjoint
        let m = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.5, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(StateError::NotSelfAdjoint(_))
        ));
        // wrong trace
        let m = CMatrix::identity(2, 2);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(StateError::TraceNotOne(_))
        ));
        // negative eigenvalue rejected for exact provenance...
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.2, 0.0)],
        );
        assert!(matches!(
            DensityMatrix::new(m.clone()),
            Err(StateError::NotPositive(_))
        ));
        // ...but tolerated for estimated provenance
        let est = DensityMatrix::new_estimated(m).unwrap();
        assert_eq!(est.provenance(), Provenance::Estimated);
        assert!(est.min_eigenvalue() < -0.1);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            reduce_state(&rho, &sub(0)),
            Err(StateError::DimMismatch { .. })
        ));
    }

    #[test]
    fn random_states_are_valid_and_seeded() {
        let mut a = ChaCha12Rng::seed_from_u64(42);
        let mut b = ChaCha12Rng::seed_from_u64(42);
        let ra = DensityMatrix::random(4, &mut a);
        let rb = DensityMatrix::random(4, &mut b);
        assert_eq!(ra.matrix(), rb.matrix());
        assert!(ra.min_eigenvalue() > 0.0); // full rank almost surely
        assert_relative_eq!(ra.matrix().trace().re, 1.0, epsilon = 1e-12);
    }
}
