//! The prime field F_p and the ambient polynomial ring description.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Deterministic trial-division primality test; p stays desk-scale here.
fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    p: u64,
    vars: Vec<String>,
}

/// The ring S = F_p[x_1, ..., x_n]: a prime characteristic together with an
/// ordered list of distinct variable names.
///
/// Contexts are cheap to clone and compare by content, so two independently
/// constructed contexts over the same data are interchangeable.
#[derive(Clone, Debug)]
pub struct RingContext {
    inner: Arc<RingInner>,
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for RingContext {}

impl RingContext {
    pub fn new<S: Into<String>>(p: u64, vars: Vec<S>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty()
                || !v.chars().next().unwrap().is_ascii_alphabetic()
                || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(RingContext {
            inner: Arc::new(RingInner { p, vars }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Number of variables n.
    pub fn n(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    /// Canonical residue of an arbitrary signed integer.
    pub fn scalar_from_i128(&self, v: i128) -> FpScalar {
        let p = self.inner.p as i128;
        FpScalar {
            value: (v.rem_euclid(p)) as u64,
        }
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.inner.p {
            s - self.inner.p
        } else {
            s
        }
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.inner.p - b
        }
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.inner.p - a
        }
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.inner.p as u128) as u64
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub(crate) fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        let mut base = a;
        let mut exp = self.inner.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// p^e with overflow reported, never wrapped.
    pub fn char_pow(&self, e: u32) -> Result<u64> {
        self.inner
            .p
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow)
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.inner.p, self.inner.vars.join(", "))
    }
}

/// A canonical residue in [0, p). Arithmetic goes through the owning
/// [`RingContext`], which knows p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpScalar {
    value: u64,
}

impl FpScalar {
    pub(crate) fn from_canonical(value: u64) -> Self {
        FpScalar { value }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
