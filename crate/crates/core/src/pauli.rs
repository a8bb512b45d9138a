//! Signed n-qubit Pauli words and their symplectic bit representation.
//!
//! A word is a tensor product of single-qubit Pauli matrices with an overall
//! sign. Products and (anti)commutation are computed on the bit
//! representation; `realize` produces the exact matrix, and the two paths are
//! cross-checked in tests.

use crate::matrix::ExactMatrix;
use crate::scalar::ExactScalar;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("length mismatch: {left} vs {right} letters")]
    LengthMismatch { left: usize, right: usize },
    #[error("cannot parse {0:?} as a Pauli string: expected optional sign then letters from IXYZ")]
    Parse(String),
    #[error("a Pauli string needs at least one letter")]
    Empty,
}

/// One tensor factor. The discriminant is the conventional Pauli index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum PauliLetter {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [
        PauliLetter::I,
        PauliLetter::X,
        PauliLetter::Y,
        PauliLetter::Z,
    ];

    pub fn from_index(i: usize) -> PauliLetter {
        PauliLetter::ALL[i]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Symplectic bits `(x, z)`: I -> (0,0), X -> (1,0), Y -> (1,1), Z -> (0,1).
    pub fn sym_bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    /// The 2x2 exact matrix of this letter.
    pub fn matrix(self) -> ExactMatrix {
        let e = |re: i64, im: i64| (re, im);
        match self {
            PauliLetter::I => ExactMatrix::from_int_entries(&[&[e(1, 0), e(0, 0)], &[e(0, 0), e(1, 0)]], 0),
            PauliLetter::X => ExactMatrix::from_int_entries(&[&[e(0, 0), e(1, 0)], &[e(1, 0), e(0, 0)]], 0),
            PauliLetter::Y => ExactMatrix::from_int_entries(&[&[e(0, 0), e(0, -1)], &[e(0, 1), e(0, 0)]], 0),
            PauliLetter::Z => ExactMatrix::from_int_entries(&[&[e(1, 0), e(0, 0)], &[e(0, 0), e(-1, 0)]], 0),
        }
    }
}

/// Quarter-turn phase `i^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_exponent(k: u32) -> Phase {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn exponent(self) -> u32 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn mul(self, rhs: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + rhs.exponent())
    }

    pub fn to_scalar(self) -> ExactScalar {
        match self {
            Phase::PlusOne => ExactScalar::ONE,
            Phase::PlusI => ExactScalar::I,
            Phase::MinusOne => -ExactScalar::ONE,
            Phase::MinusI => -ExactScalar::I,
        }
    }
}

/// A signed Pauli word `±σ_{k(1)} ⊗ … ⊗ σ_{k(n)}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    negative: bool,
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(negative: bool, letters: Vec<PauliLetter>) -> Result<Self, PauliError> {
        if letters.is_empty() {
            return Err(PauliError::Empty);
        }
        Ok(PauliString { negative, letters })
    }

    /// Positive word from letter indices in `{0,1,2,3}`.
    pub fn from_indices(indices: &[usize]) -> Self {
        PauliString {
            negative: false,
            letters: indices.iter().map(|&i| PauliLetter::from_index(i)).collect(),
        }
    }

    /// Identity word on `n` qubits.
    pub fn identity(n: usize) -> Self {
        PauliString {
            negative: false,
            letters: vec![PauliLetter::I; n],
        }
    }

    /// Positive word with the letters of the lexicographic index
    /// (first letter most significant, I < X < Y < Z).
    pub fn from_word_index(n: usize, mut index: usize) -> Self {
        let mut letters = vec![PauliLetter::I; n];
        for i in (0..n).rev() {
            letters[i] = PauliLetter::from_index(index % 4);
            index /= 4;
        }
        debug_assert_eq!(index, 0, "word index out of range for {n} qubits");
        PauliString {
            negative: false,
            letters,
        }
    }

    /// Lexicographic index of the unsigned word.
    pub fn word_index(&self) -> usize {
        self.letters.iter().fold(0, |acc, l| acc * 4 + l.index())
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn is_identity_word(&self) -> bool {
        self.letters.iter().all(|&l| l == PauliLetter::I)
    }

    /// Number of `Y` factors; its parity decides real vs imaginary entries.
    pub fn y_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l == PauliLetter::Y).count()
    }

    pub fn negated(&self) -> Self {
        PauliString {
            negative: !self.negative,
            letters: self.letters.clone(),
        }
    }

    /// The same word with positive sign.
    pub fn unsigned(&self) -> Self {
        PauliString {
            negative: false,
            letters: self.letters.clone(),
        }
    }

    /// Symplectic x bits, qubit 0 in bit 0.
    pub fn x_bits(&self) -> u64 {
        self.letters
            .iter()
            .enumerate()
            .fold(0, |acc, (i, l)| acc | (u64::from(l.sym_bits().0) << i))
    }

    /// Symplectic z bits, qubit 0 in bit 0.
    pub fn z_bits(&self) -> u64 {
        self.letters
            .iter()
            .enumerate()
            .fold(0, |acc, (i, l)| acc | (u64::from(l.sym_bits().1) << i))
    }

    /// The exact matrix `sign · σ_{k(1)} ⊗ … ⊗ σ_{k(n)}`, of dimension `2^n`.
    pub fn realize(&self) -> ExactMatrix {
        let mut m = self.letters[0].matrix();
        for l in &self.letters[1..] {
            m = m.kron(&l.matrix());
        }
        if self.negative {
            m.neg()
        } else {
            m
        }
    }
}

/// Single-letter product table: `σ_a σ_b = i^PHASE_EXP[a][b] σ_{LETTER_MUL[a][b]}`.
const LETTER_MUL: [[u8; 4]; 4] = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
];

const PHASE_EXP: [[u32; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 0, 1, 3],
    [0, 3, 0, 1],
    [0, 1, 3, 0],
];

/// A Pauli word together with a quarter-turn phase; the closure of
/// [`PauliString`] products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    pub phase: Phase,
    pub word: PauliString,
}

impl PhasedPauli {
    /// The exact matrix `phase · realize(word)`.
    pub fn realize(&self) -> ExactMatrix {
        self.word.realize().scale(self.phase.to_scalar())
    }
}

/// Product of two signed Pauli words via letterwise symplectic arithmetic.
///
/// Realize-compatible: `realize(p) · realize(q) = phase · realize(word)`.
pub fn string_product(p: &PauliString, q: &PauliString) -> Result<PhasedPauli, PauliError> {
    if p.n_qubits() != q.n_qubits() {
        return Err(PauliError::LengthMismatch {
            left: p.n_qubits(),
            right: q.n_qubits(),
        });
    }
    let mut exp = 0u32;
    let mut letters = Vec::with_capacity(p.n_qubits());
    for (a, b) in p.letters.iter().zip(&q.letters) {
        let (ai, bi) = (a.index(), b.index());
        exp += PHASE_EXP[ai][bi];
        letters.push(PauliLetter::from_index(LETTER_MUL[ai][bi] as usize));
    }
    if p.negative != q.negative {
        exp += 2;
    }
    Ok(PhasedPauli {
        phase: Phase::from_exponent(exp),
        word: PauliString {
            negative: false,
            letters,
        },
    })
}

/// True iff `realize(p) realize(q) = -realize(q) realize(p)`.
///
/// Computed as the symplectic form `<p.x, q.z> + <p.z, q.x> mod 2`; signs are
/// irrelevant to the result.
pub fn anticommutes(p: &PauliString, q: &PauliString) -> Result<bool, PauliError> {
    if p.n_qubits() != q.n_qubits() {
        return Err(PauliError::LengthMismatch {
            left: p.n_qubits(),
            right: q.n_qubits(),
        });
    }
    let form = (p.x_bits() & q.z_bits()).count_ones() + (p.z_bits() & q.x_bits()).count_ones();
    Ok(form % 2 == 1)
}

/// Pauli coefficients `c_w = Tr(realize(w) · A) / 2^n` in lexicographic word
/// order. For self-adjoint `A` all coefficients are real.
///
/// Panics if `A.dim()` is not a power of two at least 2.
pub fn pauli_coefficients(a: &ExactMatrix) -> Vec<ExactScalar> {
    let n = qubit_count(a.dim());
    let words = 4usize.pow(n as u32);
    (0..words)
        .map(|idx| {
            let w = PauliString::from_word_index(n, idx).realize();
            // Tr(W A) with W self-adjoint equals <W, A>
            crate::matrix::hs_inner(&w, a)
                .expect("dims match by construction")
                .div_pow2(n as u32)
        })
        .collect()
}

/// Inverse of [`pauli_coefficients`]: `Σ c_w · realize(w)`.
pub fn expand_coefficients(n: usize, coeffs: &[ExactScalar]) -> ExactMatrix {
    assert_eq!(coeffs.len(), 4usize.pow(n as u32), "coefficient count");
    let mut acc = ExactMatrix::zero(1 << n);
    for (idx, &c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = PauliString::from_word_index(n, idx).realize();
        acc = acc.add(&w.scale(c)).expect("same dim");
    }
    acc
}

/// Number of qubits for an ambient dimension, panicking on non-powers of two.
pub fn qubit_count(dim: usize) -> usize {
    assert!(
        dim >= 2 && dim.is_power_of_two(),
        "dimension {dim} is not a power of two >= 2"
    );
    dim.trailing_zeros() as usize
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Text form: optional leading `+`/`-` followed by letters from `IXYZ`.
    fn from_str(s: &str) -> Result<Self, PauliError> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if body.is_empty() {
            return Err(PauliError::Parse(s.to_string()));
        }
        let letters = body
            .chars()
            .map(|ch| match ch {
                'I' => Ok(PauliLetter::I),
                'X' => Ok(PauliLetter::X),
                'Y' => Ok(PauliLetter::Y),
                'Z' => Ok(PauliLetter::Z),
                _ => Err(PauliError::Parse(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PauliString { negative, letters })
    }
}
