//! Sparse multivariate polynomials over F_p with exact arithmetic.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so the zero-free
//! canonical form and a deterministic iteration order come for free.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::{Degree, ExponentVector};
use crate::order::MonomialOrder;
use crate::ring::{FpScalar, RingContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: RingContext,
    // Invariant: no zero coefficients are stored.
    terms: BTreeMap<ExponentVector, u64>,
}

impl Polynomial {
    pub fn zero(ctx: &RingContext) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &RingContext) -> Self {
        Polynomial::constant(ctx, 1)
    }

    pub fn constant(ctx: &RingContext, c: i128) -> Self {
        let c = ctx.scalar_from_i128(c).value();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(ExponentVector::zeros(ctx.n()), c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The variable x_i.
    pub fn variable(ctx: &RingContext, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(ExponentVector::unit(ctx.n(), i), 1);
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The monomial c * x^alpha, canonicalized.
    pub fn monomial(ctx: &RingContext, alpha: ExponentVector, c: i128) -> Result<Self> {
        if alpha.len() != ctx.n() {
            return Err(Error::ContextMismatch);
        }
        let c = ctx.scalar_from_i128(c).value();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(alpha, c);
        }
        Ok(Polynomial {
            ctx: ctx.clone(),
            terms,
        })
    }

    pub(crate) fn from_term_map(ctx: &RingContext, terms: BTreeMap<ExponentVector, u64>) -> Self {
        debug_assert!(terms.values().all(|&c| c != 0 && c < ctx.p()));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn context(&self) -> &RingContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in the canonical storage order (deterministic).
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, FpScalar)> {
        self.terms
            .iter()
            .map(|(e, &c)| (e, FpScalar::from_canonical(c)))
    }

    pub fn coefficient(&self, alpha: &ExponentVector) -> FpScalar {
        FpScalar::from_canonical(self.terms.get(alpha).copied().unwrap_or(0))
    }

    /// Single-term polynomials: monomials up to a scalar.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, FpScalar)> {
        if self.terms.len() == 1 {
            self.terms
                .iter()
                .next()
                .map(|(e, &c)| (e, FpScalar::from_canonical(c)))
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// All terms share one total degree (the zero polynomial qualifies).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.exponents().iter().sum::<u64>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    fn check_same_context(&self, other: &Polynomial) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_context(other)?;
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert(0);
            *entry = self.ctx.add(*entry, c);
            if *entry == 0 {
                terms.remove(e);
            }
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_context(other)?;
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert(0);
            *entry = self.ctx.sub(*entry, c);
            if *entry == 0 {
                terms.remove(e);
            }
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.clone(), self.ctx.neg(c)))
            .collect();
        Polynomial {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_context(other)?;
        let mut terms: BTreeMap<ExponentVector, u64> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea.checked_add(eb)?;
                let c = self.ctx.mul(ca, cb);
                let entry = terms.entry(e).or_insert(0);
                *entry = self.ctx.add(*entry, c);
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: FpScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, &a)| (e.clone(), self.ctx.mul(a, c.value())))
            .collect();
        Polynomial {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Multiply by the term c * x^alpha.
    pub fn mul_term(&self, alpha: &ExponentVector, c: FpScalar) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ctx));
        }
        let mut terms = BTreeMap::new();
        for (e, &a) in &self.terms {
            terms.insert(e.checked_add(alpha)?, self.ctx.mul(a, c.value()));
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Plain binary exponentiation f^k; also the independent cross-check for
    /// [`Polynomial::frobenius_pow`].
    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// f^(p^e), computed term-wise: exponents scale by p^e and coefficients
    /// are fixed points of Frobenius in F_p.
    pub fn frobenius_pow(&self, e: u32) -> Result<Polynomial> {
        if e == 0 {
            return Ok(self.clone());
        }
        let q = self.ctx.char_pow(e)?;
        let mut terms = BTreeMap::new();
        for (alpha, &c) in &self.terms {
            terms.insert(alpha.checked_scale(q)?, c);
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Largest single exponent over all terms; -inf for zero.
    pub fn max_norm(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| Degree::Finite(e.max_entry()))
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Largest term degree; -inf for zero.
    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| Degree::Finite(e.exponents().iter().sum()))
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Terms sorted descending under `ord` (the leading term first).
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(ExponentVector, u64)> {
        let mut v: Vec<(ExponentVector, u64)> =
            self.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
        v.sort_by(|a, b| ord.cmp_exponents(&b.0, &a.0));
        v
    }

    pub fn leading_exponent(&self, ord: &MonomialOrder) -> Option<&ExponentVector> {
        self.terms
            .keys()
            .max_by(|a, b| ord.cmp_exponents(a, b))
    }

    /// Monic rescaling with respect to `ord`; zero stays zero.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_exponent(ord) {
            None => self.clone(),
            Some(le) => {
                let lc = self.terms[le];
                if lc == 1 {
                    self.clone()
                } else {
                    let inv = self.ctx.inv(lc);
                    self.scale(FpScalar::from_canonical(inv))
                }
            }
        }
    }
}

/// Display uses descending grevlex with the declared variable order, so
/// formatting is deterministic and independent of construction history.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ord = MonomialOrder::grevlex(&self.ctx);
        let names = self.ctx.var_names();
        let mut first = true;
        for (alpha, c) in self.sorted_terms(&ord) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if alpha.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            let mut wrote = false;
            if c != 1 {
                write!(f, "{c}")?;
                wrote = true;
            }
            for (i, name) in names.iter().enumerate() {
                let a = alpha.get(i);
                if a == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if a == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{a}")?;
                }
            }
        }
        Ok(())
    }
}
