//! Enumeration and search engines over Pauli triplets.
//!
//! - [`enumerate_elementary_triplets`]: the complete catalog of
//!   elementary-tensor triplets on `n` qubits, deduplicated by unsigned
//!   support;
//! - [`refute_five_elementary`]: exhaustive proof that no five elementary
//!   triplets span `M_4(C)`;
//! - [`find_spanning_six`] / [`count_spanning_six`]: the minimal elementary
//!   spanning families;
//! - [`search_fifth_triplet`]: backtracking search over the Hadamard entry
//!   alphabet for a triplet with independent diagonals;
//! - [`bound_check`]: the integer feasibility obstruction for spanning with
//!   exactly `(4^n - 1)/3` elementary triplets;
//! - [`search_spanning_family`]: budgeted randomized-greedy construction of
//!   spanning families on `n` qubits.
//!
//! Every search is budgeted and returns partial statistics instead of
//! hanging; results are deterministic for a fixed seed and worker count 1,
//! and worker counts only affect discovery order, never the result set.

mod bounds;
mod catalog;
mod family;
mod hadamard;
mod sweep;

pub use bounds::{bound_check, BoundCheckResult};
pub use catalog::{enumerate_elementary_triplets, imaginary_count, TripletCatalog};
pub use family::{search_spanning_family, SpanningFamily};
pub use hadamard::{fifth_triplet_predicate, search_fifth_triplet, FifthTripletSearch, HadamardAlphabet};
pub use sweep::{count_spanning_six, find_spanning_six, refute_five_elementary, RefutationReport};

use crate::scalar::ExactScalar;
use crate::triplet::TripletError;
use serde::{Deserialize, Serialize};
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitsOutOfRange { n: usize, max: usize },
    #[error("operation requires elementary-tensor triplets")]
    NonElementary,
    #[error("fixed family must contain exactly 4 triplets, got {got}")]
    NotFourTriplets { got: usize },
    #[error("fixed triplet operators must all have vanishing diagonal")]
    FixedFamilyNotOffDiagonal,
    #[error("fixed family must have span rank 12, got {rank}")]
    FixedFamilyWrongRank { rank: usize },
    #[error("target size {target} is below the dimension bound {minimum}")]
    TargetTooSmall { target: usize, minimum: usize },
    #[error("spanning with {target} elementary triplets on {n} qubits is provably infeasible: {reason}")]
    ProvablyInfeasible {
        n: usize,
        target: usize,
        reason: String,
    },
    #[error(transparent)]
    Triplet(#[from] TripletError),
}

/// Shared knobs for the budgeted searches.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Entry alphabet for the Hadamard-type backtracker.
    pub alphabet: HadamardAlphabet,
    /// Wall-clock budget; searches return a timeout outcome when exceeded.
    pub budget: Duration,
    /// Worker threads; 1 means fully sequential.
    pub workers: usize,
    /// Seed for randomized searches.
    pub seed: u64,
    /// Prune partial assignments early (row checks); disabling falls back
    /// to filtering completed candidates, useful for cross-validation.
    pub canonical_pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            alphabet: HadamardAlphabet::default(),
            budget: Duration::from_secs(600),
            workers: 1,
            seed: 0,
            canonical_pruning: true,
        }
    }
}

impl SearchConfig {
    pub fn with_budget_secs(mut self, secs: f64) -> Self {
        self.budget = Duration::from_secs_f64(secs);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

/// Counters reported by every search, found or not.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Partial assignments visited by a backtracker.
    pub nodes: u64,
    /// Completed candidates that passed all local checks.
    pub candidates: u64,
    /// Candidate pairs or family extensions evaluated.
    pub pairs_checked: u64,
    /// Greedy restarts performed.
    pub trials: u64,
    /// Best traceless span rank reached, for family searches.
    pub best_rank: Option<usize>,
    pub elapsed_s: f64,
}

/// A budgeted search either finds a value or reports how far it got.
#[derive(Debug, Clone)]
pub enum SearchOutcome<T> {
    Found { value: T, stats: SearchStats },
    Timeout { stats: SearchStats },
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found { value, .. } => Some(value),
            SearchOutcome::Timeout { .. } => None,
        }
    }

    pub fn is_timeout(&self) -> bool {
        matches!(self, SearchOutcome::Timeout { .. })
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Found { stats, .. } | SearchOutcome::Timeout { stats } => stats,
        }
    }
}

/// Scalars allowed in a backtracker candidate, diagonal and off-diagonal.
fn default_diagonal() -> Vec<ExactScalar> {
    vec![ExactScalar::one_half(), -ExactScalar::one_half()]
}

fn default_off_diagonal() -> Vec<ExactScalar> {
    vec![
        ExactScalar::one_half(),
        -ExactScalar::one_half(),
        ExactScalar::i_half(),
        -ExactScalar::i_half(),
    ]
}
