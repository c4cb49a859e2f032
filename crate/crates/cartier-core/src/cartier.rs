//! The Cartier operator kappa^e, operators kappa^e ∘ f, their composition
//! law, and the maximum-norm gauge with per-operator excess measurement.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exponent::{Degree, ExponentVector};
use crate::ideal::Ideal;
use crate::monomial_ideal;
use crate::parallel;
use crate::poly::Polynomial;
use crate::ring::RingContext;

/// Applies kappa^e to f: the term c*x^alpha survives as c*x^r exactly when
/// alpha = p^e*r + alpha' with every digit alpha'_i equal to p^e - 1.
/// Coefficients are fixed because lambda is the identity on F_p.
pub fn kappa_eval(e: u32, f: &Polynomial) -> Result<Polynomial> {
    if e == 0 {
        return Ok(f.clone());
    }
    let ctx = f.context().clone();
    let q = ctx.char_pow(e)?;
    let mut terms: BTreeMap<ExponentVector, u64> = BTreeMap::new();
    for (alpha, c) in f.terms() {
        let (r, rem) = alpha.divmod_scalar(q);
        if rem.exponents().iter().all(|&a| a == q - 1) {
            let entry = terms.entry(r).or_insert(0);
            *entry = ctx.add(*entry, c.value());
        }
    }
    terms.retain(|_, c| *c != 0);
    Ok(Polynomial::from_term_map(&ctx, terms))
}

/// The operator r -> kappa^e(f * r), stored in right-module coordinates
/// (level, multiplier). Level 0 with multiplier 1 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierOperator {
    level: u32,
    multiplier: Polynomial,
}

impl CartierOperator {
    pub fn new(level: u32, multiplier: Polynomial) -> Self {
        CartierOperator { level, multiplier }
    }

    pub fn identity(ctx: &RingContext) -> Self {
        CartierOperator {
            level: 0,
            multiplier: Polynomial::one(ctx),
        }
    }

    /// kappa^e itself.
    pub fn kappa(ctx: &RingContext, e: u32) -> Self {
        CartierOperator {
            level: e,
            multiplier: Polynomial::one(ctx),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn multiplier(&self) -> &Polynomial {
        &self.multiplier
    }

    pub fn context(&self) -> &RingContext {
        self.multiplier.context()
    }

    pub fn apply(&self, r: &Polynomial) -> Result<Polynomial> {
        if r.context() != self.context() {
            return Err(Error::ContextMismatch);
        }
        kappa_eval(self.level, &self.multiplier.mul(r)?)
    }

    /// Application on S/I: inputs and outputs are normal forms mod I. This
    /// is well defined on classes when the multiplier lies in the level-e
    /// colon ideal (I^[p^e] : I).
    pub fn apply_mod(&self, r: &Polynomial, quotient: Option<&Ideal>) -> Result<Polynomial> {
        match quotient {
            None => self.apply(r),
            Some(i) => {
                let ord = i.default_order();
                let image = self.apply(&i.normal_form(r, &ord)?)?;
                i.normal_form(&image, &ord)
            }
        }
    }

    /// Default probe window for [`gauge_excess`]: max_norm(f) + 2*p^e.
    /// Results always carry the window they were measured on.
    pub fn default_excess_window(&self) -> Result<u64> {
        let q = self.context().char_pow(self.level)?;
        let base = self.multiplier.max_norm().finite().unwrap_or(0);
        base.checked_add(2 * q).ok_or(Error::ExponentOverflow)
    }

    /// The product self * other = self ∘ F^a(other) in closed form:
    /// levels add and the multiplier is self_f^(p^b) * other_f.
    pub fn compose(&self, other: &CartierOperator) -> Result<CartierOperator> {
        if self.context() != other.context() {
            return Err(Error::ContextMismatch);
        }
        let level = self
            .level
            .checked_add(other.level)
            .ok_or(Error::ExponentOverflow)?;
        let multiplier = self
            .multiplier
            .frobenius_pow(other.level)?
            .mul(&other.multiplier)?;
        Ok(CartierOperator { level, multiplier })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    UpperBound,
}

/// A gauge value: the filtration degree of an element of S or S/I under the
/// maximum norm, -inf exactly for (classes of) zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaugeValue {
    pub value: Degree,
    pub exactness: Exactness,
}

/// The gauge of r. Without a quotient this is the maximum norm. For a
/// monomial quotient the normal form is the unique minimal-support
/// representative, so the value stays exact; for other quotients the
/// normal form only bounds the minimum over representatives from above.
pub fn gauge(r: &Polynomial, quotient: Option<&Ideal>) -> Result<GaugeValue> {
    match quotient {
        None => Ok(GaugeValue {
            value: r.max_norm(),
            exactness: Exactness::Exact,
        }),
        Some(i) => {
            let nf = i.normal_form(r, &i.default_order())?;
            let exactness = if i.is_monomial()? {
                Exactness::Exact
            } else {
                Exactness::UpperBound
            };
            Ok(GaugeValue {
                value: nf.max_norm(),
                exactness,
            })
        }
    }
}

/// Measures max over monomials r with max_norm(r) <= window of
/// delta(psi(r)) - delta(r)/p^e, in exact rational arithmetic. This is a
/// certified lower bound for the optimal per-operator constant K(psi) and
/// is monotone non-decreasing in the window. `None` encodes -inf (the
/// operator annihilated every probe).
pub fn gauge_excess(op: &CartierOperator, window: u64) -> Result<Option<BigRational>> {
    if op.level() == 0 {
        return Err(Error::InvalidLevel(
            "gauge excess needs an operator of level >= 1".into(),
        ));
    }
    let ctx = op.context().clone();
    let q = ctx.char_pow(op.level())?;
    if window < q {
        return Err(Error::InvalidWindow(format!(
            "window {window} is smaller than p^e = {q}"
        )));
    }
    if op.multiplier().is_zero() {
        return Ok(None);
    }
    let probes: Vec<ExponentVector> = monomial_ideal::monomials_in_box(ctx.n(), window).collect();
    let excesses = parallel::map_ordered(probes, |beta| -> Result<Option<BigRational>> {
        let shifted = op.multiplier().mul_term(&beta, ctx.scalar_from_i128(1))?;
        let image = kappa_eval(op.level(), &shifted)?;
        match image.max_norm() {
            Degree::NegInf => Ok(None),
            Degree::Finite(d) => {
                let num = BigInt::from(d) * BigInt::from(q) - BigInt::from(beta.max_entry());
                Ok(Some(BigRational::new(num, BigInt::from(q))))
            }
        }
    });
    let mut best: Option<BigRational> = None;
    for x in excesses {
        if let Some(v) = x? {
            best = Some(match best {
                None => v,
                Some(b) => b.max(v),
            });
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ctx2(p: u64) -> RingContext {
        RingContext::new(p, vec!["x", "y"]).unwrap()
    }

    fn poly(s: &str, ctx: &RingContext) -> Polynomial {
        parse_poly(s, ctx).unwrap()
    }

    #[test]
    fn kappa_digit_extraction() {
        let ctx = ctx2(2);
        assert_eq!(
            kappa_eval(1, &poly("x^3*y", &ctx)).unwrap(),
            poly("x", &ctx)
        );
        assert!(kappa_eval(1, &poly("x^2*y", &ctx)).unwrap().is_zero());
    }

    #[test]
    fn kappa_all_digits_maximal_gives_one() {
        for p in [2u64, 3, 5] {
            for e in 1u32..=2 {
                let ctx = ctx2(p);
                let q = p.pow(e);
                let m = Polynomial::monomial(
                    &ctx,
                    ExponentVector::new(vec![q - 1, q - 1]),
                    1,
                )
                .unwrap();
                assert_eq!(kappa_eval(e, &m).unwrap(), Polynomial::one(&ctx));
            }
        }
    }

    #[test]
    fn kappa_of_zero_and_level_zero() {
        let ctx = ctx2(3);
        assert!(kappa_eval(2, &Polynomial::zero(&ctx)).unwrap().is_zero());
        let f = poly("x^2 + y", &ctx);
        assert_eq!(kappa_eval(0, &f).unwrap(), f);
    }

    #[test]
    fn operator_application() {
        let ctx = ctx2(2);
        let kappa = CartierOperator::kappa(&ctx, 1);
        assert_eq!(kappa.apply(&poly("x^3*y", &ctx)).unwrap(), poly("x", &ctx));

        let psi = CartierOperator::new(1, poly("x", &ctx));
        assert_eq!(psi.apply(&poly("y", &ctx)).unwrap(), Polynomial::one(&ctx));

        let id = CartierOperator::identity(&ctx);
        let r = poly("x^4 + x*y", &ctx);
        assert_eq!(id.apply(&r).unwrap(), r);
    }

    #[test]
    fn composition_closed_form() {
        let ctx = ctx2(2);
        let phi = CartierOperator::new(1, poly("x", &ctx));
        let psi = CartierOperator::new(1, poly("y", &ctx));
        let prod = phi.compose(&psi).unwrap();
        assert_eq!(prod.level(), 2);
        assert_eq!(*prod.multiplier(), poly("x^2*y", &ctx));

        let id = CartierOperator::identity(&ctx);
        let back = id.compose(&psi).unwrap();
        assert_eq!(back, psi);

        let ctx3 = ctx2(3);
        let k = CartierOperator::kappa(&ctx3, 1);
        let kk = k.compose(&k).unwrap();
        assert_eq!(kk, CartierOperator::kappa(&ctx3, 2));
    }

    #[test]
    fn composition_agrees_with_double_application() {
        let ctx = ctx2(2);
        let phi = CartierOperator::new(1, poly("x", &ctx));
        let psi = CartierOperator::new(1, poly("y", &ctx));
        let prod = phi.compose(&psi).unwrap();
        for beta in monomial_ideal::monomials_in_box(2, 8) {
            let r = Polynomial::monomial(&ctx, beta, 1).unwrap();
            let direct = prod.apply(&r).unwrap();
            let nested = phi.apply(&psi.apply(&r).unwrap()).unwrap();
            assert_eq!(direct, nested);
        }
    }

    #[test]
    fn gauge_examples() {
        let ctx = ctx2(2);
        let g = gauge(&poly("x^3*y", &ctx), None).unwrap();
        assert_eq!(g.value, Degree::Finite(3));
        assert_eq!(g.exactness, Exactness::Exact);

        let i = Ideal::parse("[x^2]", &ctx).unwrap();
        let g = gauge(&poly("x^2 + x", &ctx), Some(&i)).unwrap();
        assert_eq!(g.value, Degree::Finite(1));
        assert_eq!(g.exactness, Exactness::Exact);

        let g = gauge(&Polynomial::zero(&ctx), None).unwrap();
        assert_eq!(g.value, Degree::NegInf);

        let j = Ideal::parse("[x^2 + y^3]", &ctx).unwrap();
        let g = gauge(&poly("y", &ctx), Some(&j)).unwrap();
        assert_eq!(g.exactness, Exactness::UpperBound);
    }

    #[test]
    fn gauge_excess_window_values() {
        let ctx1 = RingContext::new(2, vec!["x"]).unwrap();
        let kappa = CartierOperator::kappa(&ctx1, 1);
        let got = gauge_excess(&kappa, 16).unwrap().unwrap();
        assert_eq!(got, BigRational::new(BigInt::from(-1), BigInt::from(2)));

        let shift = CartierOperator::new(1, poly("x^2", &ctx1));
        let got = gauge_excess(&shift, 16).unwrap().unwrap();
        assert_eq!(got, BigRational::new(BigInt::from(1), BigInt::from(2)));

        let nil = CartierOperator::new(1, Polynomial::zero(&ctx1));
        assert_eq!(gauge_excess(&nil, 16).unwrap(), None);
    }

    #[test]
    fn default_window_covers_the_level() {
        let ctx = ctx2(3);
        let op = CartierOperator::new(2, poly("x^4*y", &ctx));
        assert_eq!(op.default_excess_window().unwrap(), 4 + 2 * 9);
        assert!(gauge_excess(&op, op.default_excess_window().unwrap()).is_ok());
    }

    #[test]
    fn gauge_excess_window_validation() {
        let ctx = ctx2(3);
        let kappa = CartierOperator::kappa(&ctx, 2);
        assert!(matches!(
            gauge_excess(&kappa, 8).unwrap_err(),
            Error::InvalidWindow(_)
        ));
        assert!(matches!(
            gauge_excess(&CartierOperator::identity(&ctx), 8).unwrap_err(),
            Error::InvalidLevel(_)
        ));
    }
}
