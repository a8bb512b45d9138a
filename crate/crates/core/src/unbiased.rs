//! Weak and strong mutual unbiasedness of triplet subalgebras.
//!
//! Two `M_2`-isomorphic subalgebras of `M_n(C)` are *strongly* unbiased when
//! their traceless parts are Hilbert-Schmidt orthogonal; equivalently, every
//! pair of minimal projections `P`, `Q` satisfies `Tr PQ = n/k^2` (`k = 2`
//! here). The exact decision procedure is the orthogonality condition; the
//! trace condition quantifies over all minimal projections, so it is checked
//! by deterministic sampling and the two verdicts are compared.
//!
//! A family is *weakly* unbiased when the traceless parts are linearly
//! independent, i.e. the span rank equals three times the family size.

use crate::matrix::hs_inner;
use crate::triplet::{triplet_span_rank, SubalgebraBasis, TripletError};
use crate::{C64, CMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, UnitSphere};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sampled traces of exactly representable projections match `n/k^2` to
/// this tolerance.
pub const TRACE_TOL: f64 = 1e-10;

/// Directions sampled per side by default (six axes plus seeded random
/// unit vectors).
pub const DEFAULT_SAMPLES_PER_SIDE: usize = 32;

#[derive(Debug, Error)]
pub enum UnbiasedError {
    #[error("direction must be a unit vector, |u| = {0}")]
    NonUnitDirection(f64),
    #[error("ambient dimensions differ: {0} vs {1}")]
    DimMismatch(usize, usize),
}

/// Minimal projection `P = (I + u1 S1 + u2 S2 + u3 S3)/2` of the subalgebra.
///
/// `P` is idempotent and self-adjoint with `Tr P = n/2`.
pub fn minimal_projection(
    sub: &SubalgebraBasis,
    u: [f64; 3],
) -> Result<CMatrix, UnbiasedError> {
    let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(UnbiasedError::NonUnitDirection(norm));
    }
    let d = sub.dim();
    let mut p = CMatrix::identity(d, d);
    for (coeff, opf) in u.iter().zip(sub.operators_float()) {
        p += opf * C64::new(*coeff, 0.0);
    }
    Ok(p * C64::new(0.5, 0.0))
}

/// Condition (ii), decided exactly: all nine Hilbert-Schmidt inner products
/// between the traceless basis operators vanish.
pub fn strongly_unbiased_pair(a1: &SubalgebraBasis, a2: &SubalgebraBasis) -> bool {
    a1.operators().iter().all(|s| {
        a2.operators()
            .iter()
            .all(|t| hs_inner(s, t).map(|v| v.is_zero()).unwrap_or(false))
    })
}

/// Outcome of the sampled-vs-exact unbiasedness comparison for one pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnbiasednessReport {
    /// Indices of the pair within the family under check.
    pub pair: (usize, usize),
    /// All sampled traces equal `n/k^2` within tolerance.
    pub condition_i_holds: bool,
    /// The traceless parts are exactly orthogonal.
    pub condition_ii_holds: bool,
    /// `n/k^2` for this ambient dimension.
    pub expected_trace: f64,
    /// `Tr(PQ)` for every sampled direction pair.
    pub sampled_traces: Vec<f64>,
}

impl UnbiasednessReport {
    pub fn conditions_agree(&self) -> bool {
        self.condition_i_holds == self.condition_ii_holds
    }
}

/// The deterministic direction set: the six axis directions followed by
/// seeded points on the unit sphere, `count` in total.
pub fn direction_set(count: usize, seed: u64) -> Vec<[f64; 3]> {
    let axes = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut dirs: Vec<[f64; 3]> = axes.into_iter().take(count).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    while dirs.len() < count {
        dirs.push(UnitSphere.sample(&mut rng));
    }
    dirs
}

/// Cross-check the two conditions on one pair of subalgebras.
///
/// Directions are sampled per side (`num_samples` each, axes always
/// included) and `Tr(PQ)` is recorded for every direction pair; condition
/// (i) holds iff all traces equal `n/k^2` within `1e-10`. Condition (ii) is
/// decided exactly. The two verdicts agree on every valid input.
pub fn prop3_crosscheck(
    a1: &SubalgebraBasis,
    a2: &SubalgebraBasis,
    num_samples: usize,
    seed: u64,
) -> Result<UnbiasednessReport, UnbiasedError> {
    if a1.dim() != a2.dim() {
        return Err(UnbiasedError::DimMismatch(a1.dim(), a2.dim()));
    }
    let n = a1.dim() as f64;
    let expected = n / 4.0; // k = 2 for M_2-isomorphic subalgebras
    // derived seeds keep the two sides independent
    let us = direction_set(num_samples, seed);
    let vs = direction_set(num_samples, seed.wrapping_add(0x9e37_79b9));
    let mut traces = Vec::with_capacity(us.len() * vs.len());
    let mut all_match = true;
    for u in &us {
        let p = minimal_projection(a1, *u)?;
        for v in &vs {
            let q = minimal_projection(a2, *v)?;
            let tr = (&p * &q).trace().re;
            if (tr - expected).abs() > TRACE_TOL {
                all_match = false;
            }
            traces.push(tr);
        }
    }
    Ok(UnbiasednessReport {
        pair: (0, 1),
        condition_i_holds: all_match,
        condition_ii_holds: strongly_unbiased_pair(a1, a2),
        expected_trace: expected,
        sampled_traces: traces,
    })
}

/// Cross-check every pair of a family, labelling reports with pair indices.
pub fn prop3_crosscheck_family(
    family: &[SubalgebraBasis],
    num_samples: usize,
    seed: u64,
) -> Result<Vec<UnbiasednessReport>, UnbiasedError> {
    let mut out = Vec::new();
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let mut report = prop3_crosscheck(&family[i], &family[j], num_samples, seed)?;
            report.pair = (i, j);
            out.push(report);
        }
    }
    Ok(out)
}

/// Weak mutual unbiasedness: the traceless subspaces are linearly
/// independent, i.e. the exact span rank is `3 * family size`.
pub fn weakly_unbiased_family(family: &[SubalgebraBasis]) -> Result<bool, TripletError> {
    let triplets: Vec<_> = family.iter().map(|s| s.triplet().clone()).collect();
    let rank = triplet_span_rank(&triplets)?;
    Ok(rank == 3 * family.len())
}
