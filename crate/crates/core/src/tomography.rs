//! Two-qubit state tomography from triplet expectation values.
//!
//! A plan fixes an ordered family of triplets in `M_4(C)` and assembles the
//! real design matrix mapping a state's traceless Pauli coefficients
//! `x_w = Tr(P_w ρ)` to the expectations `Tr(ρ S_i)`. The plan is complete
//! iff the design has exact rank 15; reconstruction then solves the least
//! squares problem through an orthogonal factorization (SVD), never the
//! normal equations.
//!
//! Each operator is measured independently as a ±1-valued observable, so a
//! finite-shot record replaces each expectation by `2f - 1` with
//! `f ~ Binomial(N, (1 + <S>)/2) / N` from a seeded generator.

use crate::rank::exact_rank_scalars;
use crate::scalar::ExactScalar;
use crate::state::{hermiticity_deviation, DensityMatrix, StateError};
use crate::triplet::{PauliTriplet, TripletError};
use crate::{C64, CMatrix};
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact data reconstructs the state to this Frobenius tolerance.
pub const ROUND_TRIP_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum TomographyError {
    #[error("plan needs at least one triplet")]
    EmptyFamily,
    #[error("tomography plans require ambient dimension 4, got {0}")]
    BadAmbientDim(usize),
    #[error("plan is underdetermined: design rank {rank} < 15")]
    Underdetermined { rank: usize },
    #[error("record has {got} entries, plan expects {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("record entry {index} is ({triplet},{op}), plan expects ({want_triplet},{want_op})")]
    EntryMismatch {
        index: usize,
        triplet: usize,
        op: usize,
        want_triplet: usize,
        want_op: usize,
    },
    #[error("expectation {value} at entry {index} is outside [-1, 1]")]
    ExpectationOutOfRange { index: usize, value: f64 },
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("matrix is not self-adjoint (deviation {0:.3e})")]
    NotSelfAdjoint(f64),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Triplet(#[from] TripletError),
}

/// An ordered family of triplets plus the induced real design matrix.
#[derive(Debug, Clone)]
pub struct TomographyPlan {
    triplets: Vec<PauliTriplet>,
    design: DMatrix<f64>,
    rank: usize,
    condition_estimate: f64,
    ops_float: Vec<CMatrix>,
}

impl TomographyPlan {
    pub fn triplets(&self) -> &[PauliTriplet] {
        &self.triplets
    }

    /// Rows of the design: one per `(triplet index, operator index)` pair,
    /// in order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.triplets.len()).flat_map(|j| (0..3).map(move |i| (j, i)))
    }

    pub fn design(&self) -> &DMatrix<f64> {
        &self.design
    }

    pub fn rows(&self) -> usize {
        self.design.nrows()
    }

    /// Exact rank of the design over the rationals.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The plan determines a state uniquely iff the rank is 15.
    pub fn is_complete(&self) -> bool {
        self.rank == 15
    }

    /// Ratio of extreme singular values of the design (floating estimate);
    /// infinite for incomplete plans.
    pub fn condition_estimate(&self) -> f64 {
        self.condition_estimate
    }
}

/// Assemble the design matrix of a family and compute its exact rank.
pub fn build_plan(family: &[PauliTriplet]) -> Result<TomographyPlan, TomographyError> {
    if family.is_empty() {
        return Err(TomographyError::EmptyFamily);
    }
    for t in family {
        if t.dim() != 4 {
            return Err(TomographyError::BadAmbientDim(t.dim()));
        }
    }
    let exact_rows: Vec<Vec<ExactScalar>> =
        family.iter().flat_map(|t| t.traceless_rows()).collect();
    let rank = exact_rank_scalars(&exact_rows);
    let design = DMatrix::from_fn(exact_rows.len(), 15, |r, c| {
        let e = exact_rows[r][c];
        debug_assert!(e.is_real());
        e.to_complex().re
    });
    let condition_estimate = condition_from_svd(&design, rank);
    let ops_float = family
        .iter()
        .flat_map(|t| t.operators().iter().map(|op| op.to_cmatrix()))
        .collect();
    Ok(TomographyPlan {
        triplets: family.to_vec(),
        design,
        rank,
        condition_estimate,
        ops_float,
    })
}

fn condition_from_svd(design: &DMatrix<f64>, rank: usize) -> f64 {
    if rank < 15 {
        return f64::INFINITY;
    }
    let mut sv: Vec<f64> = design
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv[0] / sv[14]
}

/// One measured operator: expectation value plus optional shot data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordEntry {
    pub triplet: usize,
    pub op: usize,
    pub expectation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "plus")]
    pub plus_count: Option<u64>,
}

/// Expectation values for every `(triplet, operator)` pair of a plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub entries: Vec<RecordEntry>,
}

impl MeasurementRecord {
    pub fn expectations(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.expectation).collect()
    }

    /// Shot data, when present, must reproduce the expectation as
    /// `2 * plus/N - 1`.
    pub fn validate(&self) -> Result<(), TomographyError> {
        for (index, e) in self.entries.iter().enumerate() {
            if !(-1.0..=1.0).contains(&e.expectation) {
                return Err(TomographyError::ExpectationOutOfRange {
                    index,
                    value: e.expectation,
                });
            }
            if let (Some(n), Some(plus)) = (e.shots, e.plus_count) {
                let implied = 2.0 * plus as f64 / n as f64 - 1.0;
                if (implied - e.expectation).abs() > 1e-12 {
                    return Err(TomographyError::ExpectationOutOfRange {
                        index,
                        value: e.expectation,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Exact expectation values `Tr(ρ S_i)` for every plan operator.
pub fn forward(
    rho: &DensityMatrix,
    plan: &TomographyPlan,
) -> Result<MeasurementRecord, TomographyError> {
    if rho.dim() != 4 {
        return Err(TomographyError::BadAmbientDim(rho.dim()));
    }
    if rho.min_eigenvalue() < -crate::state::PSD_TOL {
        return Err(TomographyError::State(StateError::NotPositive(
            rho.min_eigenvalue(),
        )));
    }
    let entries = plan
        .pairs()
        .zip(&plan.ops_float)
        .map(|((triplet, op), opf)| {
            let tr = (rho.matrix() * opf).trace();
            RecordEntry {
                triplet,
                op,
                expectation: tr.re,
                shots: None,
                plus_count: None,
            }
        })
        .collect();
    Ok(MeasurementRecord { entries })
}

/// Replace each expectation by a finite-shot binomial estimate.
///
/// Each operator draws `plus ~ Binomial(N, (1 + <S>)/2)` from a single
/// seeded ChaCha12 stream in entry order, so the output is byte-identical
/// across runs for a fixed `(record, shots, seed)`.
pub fn sample_shots(
    record: &MeasurementRecord,
    shots_per_operator: u64,
    seed: u64,
) -> Result<MeasurementRecord, TomographyError> {
    if shots_per_operator == 0 {
        return Err(TomographyError::ZeroShots);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out = record.clone();
    for (index, entry) in out.entries.iter_mut().enumerate() {
        if !(-1.0..=1.0).contains(&entry.expectation) {
            return Err(TomographyError::ExpectationOutOfRange {
                index,
                value: entry.expectation,
            });
        }
        let p = (1.0 + entry.expectation) / 2.0;
        let plus = Binomial::new(shots_per_operator, p.clamp(0.0, 1.0))
            .expect("p lies in [0,1]")
            .sample(&mut rng);
        entry.shots = Some(shots_per_operator);
        entry.plus_count = Some(plus);
        entry.expectation = 2.0 * plus as f64 / shots_per_operator as f64 - 1.0;
    }
    Ok(out)
}

/// Result of a linear-inversion reconstruction.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub rho_hat: DensityMatrix,
    /// Least-squares solution for the 15 traceless coefficients
    /// `x_w = Tr(P_w ρ)`.
    pub raw_traceless_solution: Vec<f64>,
    /// Euclidean norm of `design · x - expectations`.
    pub residual_norm: f64,
    /// Whether the PSD projection step ran.
    pub psd_projected: bool,
}

/// Solve `design · x ≈ expectations` for the 15 traceless coefficients and
/// assemble `ρ̂ = I/4 + Σ_w (x_w/4) P_w`.
///
/// Requires a complete plan (exact rank 15); incomplete plans are rejected
/// with their rank. With `psd_project` the estimate is clipped to the PSD
/// cone and renormalized.
pub fn reconstruct(
    plan: &TomographyPlan,
    record: &MeasurementRecord,
    psd_project: bool,
) -> Result<ReconstructionResult, TomographyError> {
    if !plan.is_complete() {
        return Err(TomographyError::Underdetermined { rank: plan.rank() });
    }
    check_shape(plan, record)?;
    let b = DVector::from_vec(record.expectations());
    let svd = plan.design.clone().svd(true, true);
    let x = svd
        .solve(&b, 1e-12)
        .expect("SVD of a rank-15 design is solvable");
    let residual_norm = (&plan.design * &x - &b).norm();

    let mut h = CMatrix::identity(4, 4) * C64::new(0.25, 0.0);
    for (w, &coeff) in x.iter().enumerate() {
        let pw = crate::pauli::PauliString::from_word_index(2, w + 1)
            .realize()
            .to_cmatrix();
        h += pw * C64::new(coeff / 4.0, 0.0);
    }

    let (rho_hat, psd_projected) = if psd_project {
        (project_to_density(&h)?, true)
    } else {
        (DensityMatrix::new_estimated(h)?, false)
    };
    Ok(ReconstructionResult {
        rho_hat,
        raw_traceless_solution: x.iter().copied().collect(),
        residual_norm,
        psd_projected,
    })
}

fn check_shape(plan: &TomographyPlan, record: &MeasurementRecord) -> Result<(), TomographyError> {
    let expected = plan.rows();
    if record.entries.len() != expected {
        return Err(TomographyError::ShapeMismatch {
            expected,
            got: record.entries.len(),
        });
    }
    for (index, ((want_triplet, want_op), entry)) in
        plan.pairs().zip(&record.entries).enumerate()
    {
        if entry.triplet != want_triplet || entry.op != want_op {
            return Err(TomographyError::EntryMismatch {
                index,
                triplet: entry.triplet,
                op: entry.op,
                want_triplet,
                want_op,
            });
        }
    }
    Ok(())
}

/// Clip a self-adjoint unit-trace matrix to the nearest valid state by
/// zeroing negative eigenvalues and renormalizing the trace.
///
/// Valid densities are fixed points.
pub fn project_to_density(h: &CMatrix) -> Result<DensityMatrix, TomographyError> {
    let dev = hermiticity_deviation(h);
    if dev > 1e-9 {
        return Err(TomographyError::NotSelfAdjoint(dev));
    }
    // work on the exactly Hermitian part so the eigensolver sees a clean input
    let herm = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let clipped: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    debug_assert!(total > 0.0, "unit-trace input has positive part");
    let d = h.nrows();
    let mut out = CMatrix::zeros(d, d);
    for (k, &lambda) in clipped.iter().enumerate() {
        if lambda == 0.0 {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        for r in 0..d {
            for c in 0..d {
                out[(r, c)] += v[r] * v[c].conj() * C64::new(lambda / total, 0.0);
            }
        }
    }
    // keep hermiticity exact under accumulation noise
    let out = (&out + out.adjoint()) * C64::new(0.5, 0.0);
    Ok(DensityMatrix::new(out)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::state::Provenance;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn prop1_plan() -> TomographyPlan {
        build_plan(&families::five_reduction_family()).unwrap()
    }

    #[test]
    fn plan_ranks() {
        let five = prop1_plan();
        assert_eq!(five.rank(), 15);
        assert!(five.is_complete());
        assert_eq!(five.rows(), 15);
        assert!(five.condition_estimate().is_finite());

        let four = build_plan(&families::four_off_diagonal()).unwrap();
        assert_eq!(four.rank(), 12);
        assert!(!four.is_complete());
        assert!(four.condition_estimate().is_infinite());

        let six = build_plan(&families::six_elementary()).unwrap();
        assert_eq!(six.rank(), 15);
        assert_eq!(six.rows(), 18);
        assert!(six.is_complete());
    }

    #[test]
    fn empty_family_is_rejected() {
        assert!(matches!(build_plan(&[]), Err(TomographyError::EmptyFamily)));
    }

    #[test]
    fn forward_on_mixed_state_is_zero() {
        let plan = prop1_plan();
        let record = forward(&DensityMatrix::maximally_mixed(4), &plan).unwrap();
        assert_eq!(record.entries.len(), 15);
        for e in &record.entries {
            assert_relative_eq!(e.expectation, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn forward_on_bell_state_hits_known_entries() {
        let plan = prop1_plan();
        let record = forward(&DensityMatrix::bell_phi_plus(), &plan).unwrap();
        let find = |j: usize, i: usize| {
            record
                .entries
                .iter()
                .find(|e| e.triplet == j && e.op == i)
                .unwrap()
        };
        // σ1⊗σ1 in triplet 2 (index 1), σ2⊗σ2 in triplet 3 (index 2)
        assert_relative_eq!(find(1, 1).expectation, 1.0, epsilon = 1e-12);
        assert_relative_eq!(find(2, 1).expectation, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn forward_is_linear() {
        let plan = prop1_plan();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let r1 = DensityMatrix::random(4, &mut rng);
        let r2 = DensityMatrix::random(4, &mut rng);
        let mix = DensityMatrix::new((r1.matrix() + r2.matrix()) * C64::new(0.5, 0.0)).unwrap();
        let f1 = forward(&r1, &plan).unwrap();
        let f2 = forward(&r2, &plan).unwrap();
        let fm = forward(&mix, &plan).unwrap();
        for ((a, b), m) in f1.entries.iter().zip(&f2.entries).zip(&fm.entries) {
            assert_relative_eq!(
                m.expectation,
                (a.expectation + b.expectation) / 2.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn sample_shots_degenerate_and_deterministic() {
        let plan = prop1_plan();
        let record = forward(&DensityMatrix::bell_phi_plus(), &plan).unwrap();
        let sampled = sample_shots(&record, 1000, 42).unwrap();
        sampled.validate().unwrap();
        // <S> = 1 is a degenerate binomial: all shots come up +1
        let bell_entry = sampled
            .entries
            .iter()
            .find(|e| e.triplet == 1 && e.op == 1)
            .unwrap();
        assert_eq!(bell_entry.plus_count, Some(1000));
        assert_relative_eq!(bell_entry.expectation, 1.0);
        // determinism: same seed, same bytes
        let again = sample_shots(&record, 1000, 42).unwrap();
        assert_eq!(sampled, again);
        let other = sample_shots(&record, 1000, 43).unwrap();
        assert_ne!(sampled, other);
    }

    #[test]
    fn sample_shots_concentrates_at_large_n() {
        // <S> = 0 at N = 10^6: |estimate| < 5e-3 except with tiny probability
        let record = MeasurementRecord {
            entries: vec![RecordEntry {
                triplet: 0,
                op: 0,
                expectation: 0.0,
                shots: None,
                plus_count: None,
            }],
        };
        let mut hits = 0;
        for seed in 0..20 {
            let s = sample_shots(&record, 1_000_000, seed).unwrap();
            if s.entries[0].expectation.abs() < 5e-3 {
                hits += 1;
            }
        }
        assert!(hits >= 19, "binomial tail bound violated: {hits}/20");
    }

    #[test]
    fn sample_shots_rejects_bad_input() {
        let record = MeasurementRecord {
            entries: vec![RecordEntry {
                triplet: 0,
                op: 0,
                expectation: 1.5,
                shots: None,
                plus_count: None,
            }],
        };
        assert!(matches!(
            sample_shots(&record, 10, 0),
            Err(TomographyError::ExpectationOutOfRange { index: 0, .. })
        ));
        let ok = MeasurementRecord {
            entries: vec![RecordEntry {
                triplet: 0,
                op: 0,
                expectation: 0.0,
                shots: None,
                plus_count: None,
            }],
        };
        assert!(matches!(
            sample_shots(&ok, 0, 0),
            Err(TomographyError::ZeroShots)
        ));
    }

    #[test]
    fn exact_round_trip_on_mixed_state() {
        let plan = prop1_plan();
        let rho = DensityMatrix::maximally_mixed(4);
        let rec = forward(&rho, &plan).unwrap();
        let result = reconstruct(&plan, &rec, false).unwrap();
        assert!(result.rho_hat.frobenius_distance(&rho) < 1e-12);
        assert!(result.residual_norm < 1e-12);
        assert!(!result.psd_projected);
    }

    #[test]
    fn exact_round_trip_on_random_states() {
        let plan = prop1_plan();
        for trial in 0..25 {
            let mut rng = ChaCha12Rng::seed_from_u64(100 + trial);
            let rho = DensityMatrix::random(4, &mut rng);
            let rec = forward(&rho, &plan).unwrap();
            let result = reconstruct(&plan, &rec, false).unwrap();
            assert!(
                result.rho_hat.frobenius_distance(&rho) < ROUND_TRIP_TOL,
                "trial {trial}: distance {}",
                result.rho_hat.frobenius_distance(&rho)
            );
            assert!(result.residual_norm < 1e-10);
            assert_relative_eq!(result.rho_hat.matrix().trace().re, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn overdetermined_plan_agrees_with_square_plan() {
        let plan5 = prop1_plan();
        let plan6 = build_plan(&families::six_elementary()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let rho = DensityMatrix::random(4, &mut rng);
        let r5 = reconstruct(&plan5, &forward(&rho, &plan5).unwrap(), false).unwrap();
        let r6 = reconstruct(&plan6, &forward(&rho, &plan6).unwrap(), false).unwrap();
        assert!(r5.rho_hat.frobenius_distance(&r6.rho_hat) < 1e-10);
    }

    #[test]
    fn underdetermined_plan_is_rejected_with_rank() {
        let plan = build_plan(&families::four_off_diagonal()).unwrap();
        let rec = forward(&DensityMatrix::maximally_mixed(4), &plan).unwrap();
        assert!(matches!(
            reconstruct(&plan, &rec, false),
            Err(TomographyError::Underdetermined { rank: 12 })
        ));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let plan = prop1_plan();
        let mut rec = forward(&DensityMatrix::maximally_mixed(4), &plan).unwrap();
        rec.entries.pop();
        assert!(matches!(
            reconstruct(&plan, &rec, false),
            Err(TomographyError::ShapeMismatch {
                expected: 15,
                got: 14
            })
        ));
        let mut rec = forward(&DensityMatrix::maximally_mixed(4), &plan).unwrap();
        rec.entries.swap(0, 1);
        assert!(matches!(
            reconstruct(&plan, &rec, false),
            Err(TomographyError::EntryMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn projection_examples() {
        // fixed point on a valid state
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let rho = DensityMatrix::random(4, &mut rng);
        let p = project_to_density(rho.matrix()).unwrap();
        assert!(p.frobenius_distance(&rho) < 1e-12);

        // clip-then-renormalize on diag(1.2, -0.2, 0, 0)
        let mut h = CMatrix::zeros(4, 4);
        h[(0, 0)] = C64::new(1.2, 0.0);
        h[(1, 1)] = C64::new(-0.2, 0.0);
        let p = project_to_density(&h).unwrap();
        let mut want = CMatrix::zeros(4, 4);
        want[(0, 0)] = C64::new(1.0, 0.0);
        assert!((p.matrix() - want).norm() < 1e-12);

        // non-self-adjoint input is rejected
        let mut bad = CMatrix::identity(4, 4) * C64::new(0.25, 0.0);
        bad[(0, 1)] = C64::new(0.3, 0.0);
        assert!(matches!(
            project_to_density(&bad),
            Err(TomographyError::NotSelfAdjoint(_))
        ));
    }

    #[test]
    fn noisy_pipeline_yields_valid_state() {
        let plan = prop1_plan();
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let rho = DensityMatrix::random(4, &mut rng);
        let rec = sample_shots(&forward(&rho, &plan).unwrap(), 1000, 7).unwrap();
        let result = reconstruct(&plan, &rec, true).unwrap();
        assert!(result.psd_projected);
        assert!(result.rho_hat.min_eigenvalue() > -1e-12);
        assert_relative_eq!(result.rho_hat.matrix().trace().re, 1.0, epsilon = 1e-12);
        // without projection the estimate keeps its trace but may dip below 0
        let raw = reconstruct(&plan, &rec, false).unwrap();
        assert_relative_eq!(raw.rho_hat.matrix().trace().re, 1.0, epsilon = 1e-12);
        assert_eq!(raw.rho_hat.provenance(), Provenance::Estimated);
    }

    #[test]
    fn shot_noise_scales_as_inverse_sqrt_n() {
        let plan = prop1_plan();
        let median = |shots: u64| -> f64 {
            let mut errs: Vec<f64> = (0..21)
                .map(|trial| {
                    let mut rng = ChaCha12Rng::seed_from_u64(1000 + trial);
                    let rho = DensityMatrix::random(4, &mut rng);
                    let rec =
                        sample_shots(&forward(&rho, &plan).unwrap(), shots, 2000 + trial).unwrap();
                    let rec_result = reconstruct(&plan, &rec, false).unwrap();
                    rec_result.rho_hat.frobenius_distance(&rho)
                })
                .collect();
            errs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            errs[errs.len() / 2]
        };
        let e4 = median(10_000);
        let e6 = median(1_000_000);
        let ratio = e4 / e6;
        assert!(
            (5.0..=20.0).contains(&ratio),
            "error ratio {ratio} outside [5, 20] (e4={e4:.2e}, e6={e6:.2e})"
        );
    }
}
