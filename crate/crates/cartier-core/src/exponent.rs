//! Exponent vectors (multi-indices) with checked 64-bit arithmetic.

use std::fmt;

use crate::error::{Error, Result};

/// Total degree or maximum norm of a polynomial: -inf exactly for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u64),
}

impl Degree {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(*d),
        }
    }

    pub fn max(self, other: Degree) -> Degree {
        std::cmp::max(self, other)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A multi-index alpha = (alpha_1, ..., alpha_n). The derived `Ord` compares
/// entries left to right, which gives the canonical storage order for
/// polynomial terms; monomial orders for division live in [`crate::order`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(exponents: Vec<u64>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The i-th unit multi-index, i.e. the exponent of x_i.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn total_degree(&self) -> Result<u64> {
        let mut sum = 0u64;
        for &a in &self.0 {
            sum = sum.checked_add(a).ok_or(Error::ExponentOverflow)?;
        }
        Ok(sum)
    }

    pub fn max_entry(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = Vec::with_capacity(self.len());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(ExponentVector(out))
    }

    /// Entry-wise scaling by k, checked.
    pub fn checked_scale(&self, k: u64) -> Result<ExponentVector> {
        let mut out = Vec::with_capacity(self.len());
        for &a in &self.0 {
            out.push(a.checked_mul(k).ok_or(Error::ExponentOverflow)?);
        }
        Ok(ExponentVector(out))
    }

    /// self - other, defined only when other divides self entry-wise.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        let mut out = Vec::with_capacity(self.len());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(b)?);
        }
        Some(ExponentVector(out))
    }

    /// x^self divides x^other.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// Entry-wise minimum, the exponent of gcd of monomials.
    pub fn gcd(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    /// Entry-wise maximum, the exponent of lcm of monomials.
    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a.min(b) == 0)
    }

    /// Digit decomposition alpha = q * r + alpha' with 0 <= alpha'_i < q.
    pub fn divmod_scalar(&self, q: u64) -> (ExponentVector, ExponentVector) {
        debug_assert!(q > 0);
        let mut quot = Vec::with_capacity(self.len());
        let mut rem = Vec::with_capacity(self.len());
        for &a in &self.0 {
            quot.push(a / q);
            rem.push(a % q);
        }
        (ExponentVector(quot), ExponentVector(rem))
    }
}
