//! Dense square matrices over [`ExactScalar`] with tolerance-free predicates.
//!
//! Dimensions in this crate never exceed 16 (four qubits), so everything is
//! dense and owned. `is_self_adjoint`, `is_unitary` and `is_traceless` are
//! decided exactly.

use crate::scalar::ExactScalar;
use crate::CMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("matrix must be square with a power-of-two dimension >= 2, got {dim}")]
    BadDimension { dim: usize },
    #[error("ragged entry rows: row {row} has {len} entries, expected {dim}")]
    RaggedRows { row: usize, len: usize, dim: usize },
}

/// A `dim x dim` matrix of exact Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawExactMatrix", into = "RawExactMatrix")]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<ExactScalar>,
}

/// Wire form `{"dim": d, "entries": [[scalar, ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct RawExactMatrix {
    dim: usize,
    entries: Vec<Vec<ExactScalar>>,
}

impl TryFrom<RawExactMatrix> for ExactMatrix {
    type Error = MatrixError;
    fn try_from(raw: RawExactMatrix) -> Result<Self, MatrixError> {
        if raw.entries.len() != raw.dim {
            return Err(MatrixError::RaggedRows {
                row: 0,
                len: raw.entries.len(),
                dim: raw.dim,
            });
        }
        for (r, row) in raw.entries.iter().enumerate() {
            if row.len() != raw.dim {
                return Err(MatrixError::RaggedRows {
                    row: r,
                    len: row.len(),
                    dim: raw.dim,
                });
            }
        }
        ExactMatrix::from_rows(raw.entries)
    }
}

impl From<ExactMatrix> for RawExactMatrix {
    fn from(m: ExactMatrix) -> Self {
        let entries = (0..m.dim)
            .map(|r| (0..m.dim).map(|c| *m.get(r, c)).collect())
            .collect();
        RawExactMatrix { dim: m.dim, entries }
    }
}

impl ExactMatrix {
    pub fn zero(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![ExactScalar::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, ExactScalar::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        let mut m = Self::zero(dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(MatrixError::RaggedRows {
                    row: r,
                    len: row.len(),
                    dim,
                });
            }
            for (c, v) in row.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }

    /// Build from integer entries given as `(re, im)` pairs scaled by `1/2^den_pow2`.
    pub fn from_int_entries(rows: &[&[(i64, i64)]], den_pow2: u32) -> Self {
        let dim = rows.len();
        let mut m = Self::zero(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "ragged rows");
            for (c, &(re, im)) in row.iter().enumerate() {
                m.set(r, c, ExactScalar::new(re, im, den_pow2));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.check_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(ExactMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.check_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(ExactMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn neg(&self) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&a| -a).collect(),
        }
    }

    pub fn scale(&self, s: ExactScalar) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&a| a * s).collect(),
        }
    }

    /// Multiply by `i` entrywise.
    pub fn times_i(&self) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.times_i()).collect(),
        }
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.check_dim(rhs)?;
        let d = self.dim;
        let mut out = ExactMatrix::zero(d);
        for r in 0..d {
            for k in 0..d {
                let a = *self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = *rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.set(r, c, *out.get(r, c) + a * b);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ExactMatrix {
        let d = self.dim;
        let mut out = ExactMatrix::zero(d);
        for r in 0..d {
            for c in 0..d {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let (da, db) = (self.dim, rhs.dim);
        let d = da * db;
        let mut out = ExactMatrix::zero(d);
        for ra in 0..da {
            for ca in 0..da {
                let a = *self.get(ra, ca);
                if a.is_zero() {
                    continue;
                }
                for rb in 0..db {
                    for cb in 0..db {
                        out.set(ra * db + rb, ca * db + cb, a * *rhs.get(rb, cb));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.dim).fold(ExactScalar::ZERO, |acc, i| acc + *self.get(i, i))
    }

    /// Diagonal as a vector of exact scalars.
    pub fn diagonal(&self) -> Vec<ExactScalar> {
        (0..self.dim).map(|i| *self.get(i, i)).collect()
    }

    pub fn is_self_adjoint(&self) -> bool {
        (0..self.dim).all(|r| (r..self.dim).all(|c| *self.get(r, c) == self.get(c, r).conj()))
    }

    pub fn is_unitary(&self) -> bool {
        match self.mul(&self.adjoint()) {
            Ok(p) => p == ExactMatrix::identity(self.dim),
            Err(_) => false,
        }
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// True when every nonzero entry is real.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.is_real())
    }

    /// True when every nonzero entry is purely imaginary.
    pub fn is_imaginary(&self) -> bool {
        self.entries.iter().all(|e| e.is_imaginary())
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, self.dim, |r, c| self.get(r, c).to_complex())
    }

    fn check_dim(&self, rhs: &ExactMatrix) -> Result<(), MatrixError> {
        if self.dim != rhs.dim {
            return Err(MatrixError::DimMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Hilbert-Schmidt inner product `<A, B> = Tr(A* B)`.
///
/// Conjugate-symmetric: `hs_inner(A, B) = conj(hs_inner(B, A))`.
pub fn hs_inner(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactScalar, MatrixError> {
    if a.dim() != b.dim() {
        return Err(MatrixError::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    // Tr(A* B) = sum_{r,c} conj(A[r,c]) B[r,c]
    let d = a.dim();
    let mut acc = ExactScalar::ZERO;
    for r in 0..d {
        for c in 0..d {
            acc = acc + a.get(r, c).conj() * *b.get(r, c);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn sigma1() -> ExactMatrix {
        ExactMatrix::from_int_entries(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]], 0)
    }

    fn sigma2() -> ExactMatrix {
        ExactMatrix::from_int_entries(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]], 0)
    }

    fn sigma3() -> ExactMatrix {
        ExactMatrix::from_int_entries(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]], 0)
    }

    #[test]
    fn pauli_matrix_predicates() {
        for m in [sigma1(), sigma2(), sigma3()] {
            assert!(m.is_self_adjoint());
            assert!(m.is_unitary());
            assert!(m.is_traceless());
        }
        assert!(ExactMatrix::identity(2).is_unitary());
        assert!(!ExactMatrix::identity(2).is_traceless());
    }

    #[test]
    fn hs_inner_examples() {
        // Tr(s1 s1) = Tr I2 = 2
        assert_eq!(
            hs_inner(&sigma1(), &sigma1()).unwrap(),
            ExactScalar::from_int(2)
        );
        // Tr(s1 s2) = 0
        assert!(hs_inner(&sigma1(), &sigma2()).unwrap().is_zero());
        // conjugate symmetry on a non-hermitian pair
        let a = sigma1().mul(&sigma2()).unwrap();
        let b = sigma3();
        assert_eq!(
            hs_inner(&a, &b).unwrap(),
            hs_inner(&b, &a).unwrap().conj()
        );
        // dimension mismatch is an error
        assert!(matches!(
            hs_inner(&sigma1(), &ExactMatrix::identity(4)),
            Err(MatrixError::DimMismatch { left: 2, right: 4 })
        ));
    }

    #[test]
    fn multiplication_rules() {
        // s1 s2 = i s3
        let p = sigma1().mul(&sigma2()).unwrap();
        assert_eq!(p, sigma3().times_i());
        // s1 s2 + s2 s1 = 0
        let anti = p.add(&sigma2().mul(&sigma1()).unwrap()).unwrap();
        assert!(anti.is_zero());
    }

    #[test]
    fn kron_matches_float_oracle() {
        let k = sigma2().kron(&sigma3());
        let kf = k.to_cmatrix();
        // independent float kron
        let s2 = sigma2().to_cmatrix();
        let s3 = sigma3().to_cmatrix();
        for r in 0..4 {
            for c in 0..4 {
                let expect = s2[(r / 2, c / 2)] * s3[(r % 2, c % 2)];
                assert_eq!(kf[(r, c)], expect);
            }
        }
        assert!(k.is_self_adjoint() && k.is_unitary() && k.is_traceless());
    }

    #[test]
    fn trace_and_diagonal() {
        let m = ExactMatrix::from_int_entries(&[&[(1, 0), (2, 3)], &[(0, 0), (-1, 0)]], 1);
        assert!(m.trace().is_zero());
        assert_eq!(
            m.diagonal(),
            vec![ExactScalar::new(1, 0, 1), ExactScalar::new(-1, 0, 1)]
        );
    }

    #[test]
    fn json_round_trip() {
        let m = sigma2();
        let j = serde_json::to_string(&m).unwrap();
        assert!(j.starts_with(r#"{"dim":2,"entries":[["#));
        let back: ExactMatrix = serde_json::from_str(&j).unwrap();
        assert_eq!(back, m);
        // ragged input is rejected
        let bad = r#"{"dim":2,"entries":[[{"re":1,"im":0,"den_pow2":0}]]}"#;
        assert!(serde_json::from_str::<ExactMatrix>(bad).is_err());
    }

    #[test]
    fn to_cmatrix_is_exact() {
        let m = ExactMatrix::from_int_entries(&[&[(1, 1), (0, 0)], &[(0, 0), (-1, 0)]], 1);
        let c = m.to_cmatrix();
        assert_eq!(c[(0, 0)], Complex64::new(0.5, 0.5));
        assert_eq!(c[(1, 1)], Complex64::new(-0.5, 0.0));
    }
}
