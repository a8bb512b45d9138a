//! Integer feasibility of spanning with the dimension-bound number of
//! elementary triplets.
//!
//! An elementary tensor word has only real or only imaginary entries, and a
//! triplet contains either one or three imaginary operators. Writing `N` for
//! the number of triplets with one imaginary operator and `M` for those with
//! three, a spanning family of exactly `T = (4^n - 1)/3` triplets would have
//! to satisfy both
//!
//! ```text
//! N + M  = (4^n - 1)/3            (every traceless direction covered)
//! N + 3M = (4^n - 2^n)/2          (dimension of the imaginary subspace)
//! ```
//!
//! over non-negative integers. Whenever that system has no solution, more
//! than `T` triplets are needed.

use super::SearchError;
use serde::{Deserialize, Serialize};

/// Feasibility report for the two counting equations at a given `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheckResult {
    pub n: usize,
    /// `T = (4^n - 1)/3`, the dimension lower bound on the family size.
    pub target_triplet_count: u64,
    /// Right-hand side of `N + M = T`.
    pub sum_rhs: u64,
    /// Right-hand side of `N + 3M = (4^n - 2^n)/2`.
    pub imaginary_dim_rhs: u64,
    pub feasible: bool,
    /// `(N, M)` when the system is solvable in non-negative integers.
    pub solution: Option<(u64, u64)>,
}

/// Decide whether the counting equations admit non-negative integers.
pub fn bound_check(n: usize) -> Result<BoundCheckResult, SearchError> {
    if n == 0 || n > 30 {
        return Err(SearchError::QubitsOutOfRange { n, max: 30 });
    }
    let four_n = 1u64 << (2 * n);
    let two_n = 1u64 << n;
    let target = (four_n - 1) / 3;
    let imaginary_dim = (four_n - two_n) / 2;
    // subtracting the equations: 2M = imaginary_dim - T, always >= 0 since
    // the difference is (2^n - 1)(2^n - 2)/6
    let twice_m = imaginary_dim - target;
    let (feasible, solution) = if twice_m % 2 == 0 {
        let m = twice_m / 2;
        (true, Some((target - m, m)))
    } else {
        (false, None)
    };
    Ok(BoundCheckResult {
        n,
        target_triplet_count: target,
        sum_rhs: target,
        imaginary_dim_rhs: imaginary_dim,
        feasible,
        solution,
    })
}
