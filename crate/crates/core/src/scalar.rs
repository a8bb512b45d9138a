//! Exact Gaussian rationals with power-of-two denominators.
//!
//! Every operator handled by this crate has entries of the form
//! `(a + b i) / 2^k` with integer `a`, `b`. This ring is closed under
//! addition, multiplication and conjugation, which is all the exact
//! verification paths need; true division is never required.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Gaussian rational `(re + i*im) / 2^den_pow2` in canonical form.
///
/// Canonical form: if both numerators are even and the denominator exponent
/// is positive, the fraction is reduced. This makes equality structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawExactScalar")]
pub struct ExactScalar {
    #[serde(rename = "re")]
    re_num: i64,
    #[serde(rename = "im")]
    im_num: i64,
    den_pow2: u32,
}

/// Wire form; re-canonicalized on ingestion.
#[derive(Deserialize)]
struct RawExactScalar {
    re: i64,
    im: i64,
    den_pow2: u32,
}

impl From<RawExactScalar> for ExactScalar {
    fn from(raw: RawExactScalar) -> Self {
        ExactScalar::new(raw.re, raw.im, raw.den_pow2)
    }
}

impl ExactScalar {
    pub const ZERO: ExactScalar = ExactScalar {
        re_num: 0,
        im_num: 0,
        den_pow2: 0,
    };
    pub const ONE: ExactScalar = ExactScalar {
        re_num: 1,
        im_num: 0,
        den_pow2: 0,
    };
    pub const I: ExactScalar = ExactScalar {
        re_num: 0,
        im_num: 1,
        den_pow2: 0,
    };

    pub fn new(re_num: i64, im_num: i64, den_pow2: u32) -> Self {
        ExactScalar {
            re_num,
            im_num,
            den_pow2,
        }
        .reduced()
    }

    pub fn from_int(v: i64) -> Self {
        ExactScalar {
            re_num: v,
            im_num: 0,
            den_pow2: 0,
        }
    }

    /// `1/2` as an exact scalar, the unit of the Hadamard alphabet.
    pub fn one_half() -> Self {
        ExactScalar::new(1, 0, 1)
    }

    /// `i/2` as an exact scalar.
    pub fn i_half() -> Self {
        ExactScalar::new(0, 1, 1)
    }

    fn reduced(mut self) -> Self {
        if self.re_num == 0 && self.im_num == 0 {
            self.den_pow2 = 0;
            return self;
        }
        while self.den_pow2 > 0 && self.re_num % 2 == 0 && self.im_num % 2 == 0 {
            self.re_num /= 2;
            self.im_num /= 2;
            self.den_pow2 -= 1;
        }
        self
    }

    pub fn re_num(&self) -> i64 {
        self.re_num
    }

    pub fn im_num(&self) -> i64 {
        self.im_num
    }

    pub fn den_pow2(&self) -> u32 {
        self.den_pow2
    }

    pub fn is_zero(&self) -> bool {
        self.re_num == 0 && self.im_num == 0
    }

    pub fn is_real(&self) -> bool {
        self.im_num == 0
    }

    /// Entries of a purely imaginary matrix satisfy this entrywise.
    pub fn is_imaginary(&self) -> bool {
        self.re_num == 0
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            re_num: self.re_num,
            im_num: -self.im_num,
            den_pow2: self.den_pow2,
        }
    }

    /// Multiply by `i`.
    pub fn times_i(&self) -> Self {
        ExactScalar {
            re_num: -self.im_num,
            im_num: self.re_num,
            den_pow2: self.den_pow2,
        }
    }

    /// Exact division by `2^k`.
    pub fn div_pow2(&self, k: u32) -> Self {
        ExactScalar {
            re_num: self.re_num,
            im_num: self.im_num,
            den_pow2: self.den_pow2 + k,
        }
        .reduced()
    }

    pub fn to_complex(&self) -> Complex64 {
        let d = (self.den_pow2 as f64).exp2();
        Complex64::new(self.re_num as f64 / d, self.im_num as f64 / d)
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        let den = self.den_pow2.max(rhs.den_pow2);
        let ls = 1i64 << (den - self.den_pow2);
        let rs = 1i64 << (den - rhs.den_pow2);
        ExactScalar {
            re_num: self.re_num * ls + rhs.re_num * rs,
            im_num: self.im_num * ls + rhs.im_num * rs,
            den_pow2: den,
        }
        .reduced()
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        self + (-rhs)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re_num: -self.re_num,
            im_num: -self.im_num,
            den_pow2: self.den_pow2,
        }
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar {
            re_num: self.re_num * rhs.re_num - self.im_num * rhs.im_num,
            im_num: self.re_num * rhs.im_num + self.im_num * rhs.re_num,
            den_pow2: self.den_pow2 + rhs.den_pow2,
        }
        .reduced()
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i)/2^{}", self.re_num, self.im_num, self.den_pow2)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.im_num, self.den_pow2) {
            (0, 0) => write!(f, "{}", self.re_num),
            (0, d) => write!(f, "{}/{}", self.re_num, 1i64 << d),
            (_, 0) if self.re_num == 0 => write!(f, "{}i", self.im_num),
            (_, d) if self.re_num == 0 => write!(f, "{}i/{}", self.im_num, 1i64 << d),
            (_, 0) => write!(f, "{}{:+}i", self.re_num, self.im_num),
            (_, d) => write!(f, "({}{:+}i)/{}", self.re_num, self.im_num, 1i64 << d),
        }
    }
}
