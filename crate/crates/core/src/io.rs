//! JSON file formats shared by the library and the CLI.
//!
//! - Triplet file: `{"name": ..., "operators": [op, op, op]}` where each
//!   operator is either Pauli-string text (`"-XZ"`) or an exact matrix
//!   object `{"dim": d, "entries": [[{"re", "im", "den_pow2"}, ...], ...]}`.
//! - Family file: `{"triplets": [triplet, ...]}` plus an optional witness
//!   header `{"n", "rank", "search_seed", "elapsed_s"}`.
//! - State file: `{"dim": d, "entries": [[entry, ...], ...]}` with exact or
//!   float entries (`{"re": a, "im": b, "den_pow2": k}` or
//!   `{"re": x, "im": y}`).
//! - Data file: `{"plan": ..., "records": [{"triplet", "op", "expectation",
//!   "shots", "plus"}, ...]}`.

use crate::matrix::{ExactMatrix, MatrixError};
use crate::pauli::PauliError;
use crate::scalar::ExactScalar;
use crate::search::SpanningFamily;
use crate::state::{DensityMatrix, StateError};
use crate::tomography::{MeasurementRecord, RecordEntry};
use crate::triplet::{PauliTriplet, TripletError};
use crate::{C64, CMatrix};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("triplet file needs exactly 3 operators, got {0}")]
    BadOperatorCount(usize),
    #[error("operator text: {0}")]
    Word(#[from] PauliError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Triplet(#[from] TripletError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// One operator of a triplet file: Pauli-string text or an exact matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Word(String),
    Matrix(ExactMatrix),
}

impl OperatorSpec {
    pub fn to_matrix(&self) -> Result<ExactMatrix, IoError> {
        match self {
            OperatorSpec::Word(text) => {
                let word: crate::pauli::PauliString = text.parse()?;
                Ok(word.realize())
            }
            OperatorSpec::Matrix(m) => Ok(m.clone()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripletFile {
    pub name: String,
    pub operators: Vec<OperatorSpec>,
}

impl TripletFile {
    pub fn from_triplet(name: impl Into<String>, t: &PauliTriplet) -> Self {
        let operators = match t.words() {
            Some(words) => words
                .iter()
                .map(|w| OperatorSpec::Word(w.to_string()))
                .collect(),
            None => t
                .operators()
                .iter()
                .map(|m| OperatorSpec::Matrix(m.clone()))
                .collect(),
        };
        TripletFile {
            name: name.into(),
            operators,
        }
    }

    /// The three operator matrices, without enforcing the triplet axioms
    /// (verification reports need the raw matrices).
    pub fn to_matrices(&self) -> Result<[ExactMatrix; 3], IoError> {
        if self.operators.len() != 3 {
            return Err(IoError::BadOperatorCount(self.operators.len()));
        }
        Ok([
            self.operators[0].to_matrix()?,
            self.operators[1].to_matrix()?,
            self.operators[2].to_matrix()?,
        ])
    }

    /// Parse and verify as a [`PauliTriplet`].
    pub fn to_triplet(&self) -> Result<PauliTriplet, IoError> {
        let [s1, s2, s3] = self.to_matrices()?;
        Ok(PauliTriplet::from_matrices(s1, s2, s3)?)
    }
}

/// A family of triplets, optionally carrying a search-witness header.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_s: Option<f64>,
    pub triplets: Vec<TripletFile>,
}

impl FamilyFile {
    pub fn from_triplets(prefix: &str, triplets: &[PauliTriplet]) -> Self {
        FamilyFile {
            n: None,
            rank: None,
            search_seed: None,
            elapsed_s: None,
            triplets: triplets
                .iter()
                .enumerate()
                .map(|(i, t)| TripletFile::from_triplet(format!("{prefix}{}", i + 1), t))
                .collect(),
        }
    }

    /// Witness file for a found spanning family.
    pub fn from_witness(witness: &SpanningFamily, elapsed_s: f64) -> Self {
        let mut f = Self::from_triplets("triplet_", &witness.triplets);
        f.n = Some(witness.n);
        f.rank = Some(witness.rank);
        f.search_seed = Some(witness.search_seed);
        f.elapsed_s = Some(elapsed_s);
        f
    }

    pub fn to_triplets(&self) -> Result<Vec<PauliTriplet>, IoError> {
        self.triplets.iter().map(|t| t.to_triplet()).collect()
    }
}

/// A density matrix with exact or floating entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub entries: Vec<Vec<EntrySpec>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Exact(ExactScalar),
    Float { re: f64, im: f64 },
}

impl EntrySpec {
    pub fn to_complex(self) -> C64 {
        match self {
            EntrySpec::Exact(e) => e.to_complex(),
            EntrySpec::Float { re, im } => C64::new(re, im),
        }
    }
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let entries = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        let z = rho.matrix()[(r, c)];
                        EntrySpec::Float { re: z.re, im: z.im }
                    })
                    .collect()
            })
            .collect();
        StateFile { dim: d, entries }
    }

    /// Validate as a state (self-adjoint, trace one, PSD).
    pub fn to_density(&self) -> Result<DensityMatrix, IoError> {
        let mat = self.to_cmatrix()?;
        Ok(DensityMatrix::new(mat)?)
    }

    pub fn to_cmatrix(&self) -> Result<CMatrix, IoError> {
        if self.entries.len() != self.dim {
            return Err(MatrixError::RaggedRows {
                row: 0,
                len: self.entries.len(),
                dim: self.dim,
            }
            .into());
        }
        for (r, row) in self.entries.iter().enumerate() {
            if row.len() != self.dim {
                return Err(MatrixError::RaggedRows {
                    row: r,
                    len: row.len(),
                    dim: self.dim,
                }
                .into());
            }
        }
        Ok(CMatrix::from_fn(self.dim, self.dim, |r, c| {
            self.entries[r][c].to_complex()
        }))
    }
}

/// Expectation records tied to a plan reference.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DataFile {
    /// Family reference (usually the plan file path).
    pub plan: String,
    pub records: Vec<RecordEntry>,
}

impl DataFile {
    pub fn from_record(plan: impl Into<String>, record: &MeasurementRecord) -> Self {
        DataFile {
            plan: plan.into(),
            records: record.entries.clone(),
        }
    }

    pub fn to_record(&self) -> MeasurementRecord {
        MeasurementRecord {
            entries: self.records.clone(),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: impl AsRef<Path>) -> Result<T, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path.as_ref(), text + "\n")?;
    Ok(())
}

pub fn load_family(path: impl AsRef<Path>) -> Result<Vec<PauliTriplet>, IoError> {
    read_json::<FamilyFile>(path)?.to_triplets()
}

pub fn load_state(path: impl AsRef<Path>) -> Result<DensityMatrix, IoError> {
    read_json::<StateFile>(path)?.to_density()
}
