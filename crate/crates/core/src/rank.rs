//! Exact matrix rank over the rationals via fraction-free Gaussian
//! elimination.
//!
//! Rows arrive as [`ExactScalar`] vectors with real entries; each row is
//! scaled by its power-of-two denominator to an integer vector (row scaling
//! does not change rank) and eliminated with cross-multiplication plus gcd
//! normalization to keep the integers small.

use crate::scalar::ExactScalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Convert a real exact row to a primitive integer row.
///
/// Panics if any entry has a nonzero imaginary part; rank rows in this crate
/// come from coefficient vectors of self-adjoint operators, which are real.
pub fn integer_row(row: &[ExactScalar]) -> Vec<BigInt> {
    let max_den = row.iter().map(|e| e.den_pow2()).max().unwrap_or(0);
    row.iter()
        .map(|e| {
            assert!(
                e.is_real(),
                "rank rows must be real, got imaginary part {}",
                e.im_num()
            );
            BigInt::from(e.re_num()) << (max_den - e.den_pow2())
        })
        .collect()
}

/// Exact rank of a set of integer rows.
pub fn exact_rank(rows: Vec<Vec<BigInt>>) -> usize {
    IncrementalRank::new().add_rows(rows).rank()
}

/// Exact rank of a set of real [`ExactScalar`] rows.
pub fn exact_rank_scalars(rows: &[Vec<ExactScalar>]) -> usize {
    exact_rank(rows.iter().map(|r| integer_row(r)).collect())
}

/// Row-echelon accumulator for incremental exact rank queries.
///
/// Basis rows are kept primitive (content divided out) with their pivot
/// column recorded; inserting a row costs one elimination pass.
#[derive(Clone, Default)]
pub struct IncrementalRank {
    // (pivot column, reduced row)
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl IncrementalRank {
    pub fn new() -> Self {
        IncrementalRank { basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Insert a row; returns true if it increased the rank.
    ///
    /// The basis is kept fully reduced (every row is zero at every other
    /// row's pivot column), so a dependent row always cancels to zero.
    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        for (pivot_col, pivot_row) in &self.basis {
            let coeff = row[*pivot_col].clone();
            if coeff.is_zero() {
                continue;
            }
            let lead = pivot_row[*pivot_col].clone();
            for (r, p) in row.iter_mut().zip(pivot_row) {
                *r = &*r * &lead - p * &coeff;
            }
            normalize(&mut row);
        }
        let Some(col) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        // clear the fresh pivot column from the existing basis
        let lead = row[col].clone();
        for (_, basis_row) in self.basis.iter_mut() {
            let coeff = basis_row[col].clone();
            if coeff.is_zero() {
                continue;
            }
            for (v, r) in basis_row.iter_mut().zip(&row) {
                *v = &*v * &lead - r * &coeff;
            }
            normalize(basis_row);
        }
        self.basis.push((col, row));
        self.basis.sort_by_key(|(c, _)| *c);
        true
    }

    pub fn insert_scalars(&mut self, row: &[ExactScalar]) -> bool {
        self.insert(integer_row(row))
    }

    pub fn add_rows(mut self, rows: Vec<Vec<BigInt>>) -> Self {
        for row in rows {
            self.insert(row);
        }
        self
    }
}

/// Divide a row by the gcd of its entries.
fn normalize(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
        }
        if g == BigInt::from(1) {
            return;
        }
    }
    if g.is_zero() || g == BigInt::from(1) {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}
