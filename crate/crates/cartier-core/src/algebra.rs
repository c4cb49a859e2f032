//! Algebra specifications: a characteristic, a variable set, an optional
//! quotient ideal, and a rule e -> generators of J_e describing the graded
//! pieces kappa^e * J_e. Levels are materialized lazily and cached.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::RingContext;
use crate::template::TemplatePolynomial;

/// The built-in family rules.
#[derive(Debug, Clone)]
pub enum AlgebraFamily {
    /// J_e = (1) for every e: the full algebra on S.
    Full,
    /// J_e = (f^(p^e - 1)): the algebra attached to a principal ideal.
    Principal(Polynomial),
    /// J_e = (I^[p^e] : I): the operators descending to S/I.
    Fedder(Ideal),
    /// J_e = (x^2, x*y^(e*p^e)) on two variables: the bundled example of
    /// unbounded gauge growth with bounded generator counts.
    PaperExample,
    /// Explicit per-level generator lists.
    Table(BTreeMap<u32, Vec<Polynomial>>),
    /// Generator templates evaluated per level (exponents in e, p, q).
    Template(Vec<TemplatePolynomial>),
}

impl AlgebraFamily {
    fn name(&self) -> &'static str {
        match self {
            AlgebraFamily::Full => "full",
            AlgebraFamily::Principal(_) => "principal",
            AlgebraFamily::Fedder(_) => "fedder",
            AlgebraFamily::PaperExample => "paper-example",
            AlgebraFamily::Table(_) => "table",
            AlgebraFamily::Template(_) => "template",
        }
    }
}

/// A violation of the subalgebra closure J_a^[p^b] * J_b ⊆ J_(a+b).
#[derive(Debug, Clone)]
pub struct SubalgebraViolation {
    pub level_a: u32,
    pub level_b: u32,
    /// A generator product that escapes J_(a+b).
    pub witness: Polynomial,
}

/// Outcome of [`CartierAlgebraSpec::validate`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub e_max: u32,
    pub closure_violation: Option<SubalgebraViolation>,
    /// First level 1 <= e <= e_max with J_e nonzero, if any.
    pub nonzero_level: Option<u32>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.closure_violation.is_none() && self.nonzero_level.is_some()
    }
}

/// An algebra of operators on S (or on S/I when a quotient is present),
/// described by its level rule. Immutable; levels cache internally, so
/// concurrent evaluation across levels is safe.
#[derive(Debug)]
pub struct CartierAlgebraSpec {
    ctx: RingContext,
    quotient: Option<Ideal>,
    family: AlgebraFamily,
    levels: Mutex<BTreeMap<u32, Arc<Ideal>>>,
}

impl Clone for CartierAlgebraSpec {
    fn clone(&self) -> Self {
        let levels = self.levels.lock().unwrap().clone();
        CartierAlgebraSpec {
            ctx: self.ctx.clone(),
            quotient: self.quotient.clone(),
            family: self.family.clone(),
            levels: Mutex::new(levels),
        }
    }
}

impl CartierAlgebraSpec {
    pub fn new(
        ctx: &RingContext,
        quotient: Option<Ideal>,
        family: AlgebraFamily,
    ) -> Result<Self> {
        if let Some(q) = &quotient {
            if q.context() != ctx {
                return Err(Error::ContextMismatch);
            }
        }
        match &family {
            AlgebraFamily::Principal(f) => {
                if f.context() != ctx {
                    return Err(Error::ContextMismatch);
                }
            }
            AlgebraFamily::Fedder(i) => {
                if i.context() != ctx {
                    return Err(Error::ContextMismatch);
                }
            }
            AlgebraFamily::PaperExample => {
                if ctx.n() != 2 {
                    return Err(Error::InvalidAlgebraSpec(
                        "paper-example needs exactly two variables".into(),
                    ));
                }
            }
            AlgebraFamily::Table(table) => {
                if table.contains_key(&0) {
                    return Err(Error::InvalidAlgebraSpec(
                        "level 0 is fixed to (1) and cannot appear in a table".into(),
                    ));
                }
                for gens in table.values() {
                    for g in gens {
                        if g.context() != ctx {
                            return Err(Error::ContextMismatch);
                        }
                    }
                }
            }
            AlgebraFamily::Template(ts) => {
                for t in ts {
                    if t.context() != ctx {
                        return Err(Error::ContextMismatch);
                    }
                }
            }
            AlgebraFamily::Full => {}
        }
        Ok(CartierAlgebraSpec {
            ctx: ctx.clone(),
            quotient,
            family,
            levels: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn context(&self) -> &RingContext {
        &self.ctx
    }

    pub fn quotient(&self) -> Option<&Ideal> {
        self.quotient.as_ref()
    }

    pub fn family(&self) -> &AlgebraFamily {
        &self.family
    }

    pub fn family_name(&self) -> &'static str {
        self.family.name()
    }

    /// Materializes J_e. J_0 = (1) for every family.
    pub fn component(&self, e: u32) -> Result<Arc<Ideal>> {
        if let Some(j) = self.levels.lock().unwrap().get(&e) {
            return Ok(j.clone());
        }
        let ideal = Arc::new(self.build_component(e)?);
        let mut cache = self.levels.lock().unwrap();
        Ok(cache.entry(e).or_insert(ideal).clone())
    }

    fn build_component(&self, e: u32) -> Result<Ideal> {
        if e == 0 {
            return Ok(Ideal::unit(&self.ctx));
        }
        match &self.family {
            AlgebraFamily::Full => Ok(Ideal::unit(&self.ctx)),
            AlgebraFamily::Principal(f) => {
                if f.is_zero() {
                    return Ok(Ideal::zero(&self.ctx));
                }
                Ok(Ideal::new(&self.ctx, vec![principal_multiplier(f, e)?])?)
            }
            AlgebraFamily::Fedder(i) => i.fedder(e),
            AlgebraFamily::PaperExample => {
                let q = self.ctx.char_pow(e)?;
                let eq = q.checked_mul(e as u64).ok_or(Error::ExponentOverflow)?;
                let x_sq = Polynomial::monomial(&self.ctx, ExponentVector::new(vec![2, 0]), 1)?;
                let xy = Polynomial::monomial(&self.ctx, ExponentVector::new(vec![1, eq]), 1)?;
                Ideal::new(&self.ctx, vec![x_sq, xy])
            }
            AlgebraFamily::Table(table) => {
                let gens = table.get(&e).ok_or(Error::MissingTableLevel(e))?;
                Ideal::new(&self.ctx, gens.clone())
            }
            AlgebraFamily::Template(ts) => {
                let gens = ts.iter().map(|t| t.eval(e)).collect::<Result<Vec<_>>>()?;
                Ideal::new(&self.ctx, gens)
            }
        }
    }

    /// Checks J_a^[p^b] * J_b ⊆ J_(a+b) for all a, b >= 1 with
    /// a + b <= e_max (generator-wise membership), and that some J_e with
    /// e <= e_max is nonzero. Violations are report content, not errors.
    pub fn validate(&self, e_max: u32) -> Result<ValidationReport> {
        if e_max < 1 {
            return Err(Error::InvalidWindow("e_max must be >= 1".into()));
        }
        let mut nonzero_level = None;
        for e in 1..=e_max {
            if !self.component(e)?.is_zero() {
                nonzero_level = Some(e);
                break;
            }
        }
        let mut closure_violation = None;
        'outer: for a in 1..e_max {
            for b in 1..=(e_max - a) {
                let ja = self.component(a)?;
                let jb = self.component(b)?;
                let target = self.component(a + b)?;
                for u in ja.generators() {
                    for v in jb.generators() {
                        let w = u.frobenius_pow(b)?.mul(v)?;
                        if !target.contains(&w)? {
                            closure_violation = Some(SubalgebraViolation {
                                level_a: a,
                                level_b: b,
                                witness: w,
                            });
                            break 'outer;
                        }
                    }
                }
            }
        }
        Ok(ValidationReport {
            e_max,
            closure_violation,
            nonzero_level,
        })
    }
}

/// f^(p^e - 1) through the base-p digit factorization
/// f^(p^e - 1) = prod_{i<e} (f^(p-1))^(p^i), which keeps every factor
/// sparse. Equal to plain binary powering, which the tests check.
pub(crate) fn principal_multiplier(f: &Polynomial, e: u32) -> Result<Polynomial> {
    let p = f.context().p();
    let base = f.pow(p - 1)?;
    let mut acc = Polynomial::one(f.context());
    for i in 0..e {
        acc = acc.mul(&base.frobenius_pow(i)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_template_list};

    fn ctx2(p: u64) -> RingContext {
        RingContext::new(p, vec!["x", "y"]).unwrap()
    }

    #[test]
    fn component_examples() {
        let ctx = ctx2(2);
        let fam = CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::PaperExample).unwrap();
        let j2 = fam.component(2).unwrap();
        assert!(j2.equals(&Ideal::parse("[x^2, x*y^8]", &ctx).unwrap()).unwrap());

        let full = CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::Full).unwrap();
        for e in 0..4 {
            assert!(full.component(e).unwrap().equals(&Ideal::unit(&ctx)).unwrap());
        }

        let fed = CartierAlgebraSpec::new(
            &ctx,
            None,
            AlgebraFamily::Fedder(Ideal::parse("[x*y]", &ctx).unwrap()),
        )
        .unwrap();
        assert!(fed
            .component(1)
            .unwrap()
            .equals(&Ideal::parse("[x*y]", &ctx).unwrap())
            .unwrap());
    }

    #[test]
    fn level_zero_is_always_unit() {
        let ctx = ctx2(3);
        let fam = CartierAlgebraSpec::new(
            &ctx,
            None,
            AlgebraFamily::Principal(parse_poly("x + y", &ctx).unwrap()),
        )
        .unwrap();
        assert!(fam.component(0).unwrap().equals(&Ideal::unit(&ctx)).unwrap());
    }

    #[test]
    fn principal_power_matches_binary_powering() {
        for p in [2u64, 3] {
            let ctx = ctx2(p);
            let f = parse_poly("x^2 + x*y + 1", &ctx).unwrap();
            for e in 0..=3u32 {
                let q = p.pow(e);
                assert_eq!(
                    principal_multiplier(&f, e).unwrap(),
                    f.pow(q - 1).unwrap(),
                    "p={p} e={e}"
                );
            }
        }
    }

    #[test]
    fn validation_accepts_the_bundled_families() {
        let ctx = ctx2(2);
        for family in [
            AlgebraFamily::Full,
            AlgebraFamily::PaperExample,
            AlgebraFamily::Principal(parse_poly("x + y", &ctx).unwrap()),
        ] {
            let spec = CartierAlgebraSpec::new(&ctx, None, family).unwrap();
            let report = spec.validate(4).unwrap();
            assert!(report.is_valid(), "{:?}", report.closure_violation);
        }
    }

    #[test]
    fn validation_flags_a_broken_table() {
        let ctx = ctx2(2);
        let mut table = BTreeMap::new();
        table.insert(1, vec![parse_poly("x", &ctx).unwrap()]);
        table.insert(2, vec![parse_poly("y", &ctx).unwrap()]);
        let spec = CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::Table(table)).unwrap();
        let report = spec.validate(2).unwrap();
        assert!(!report.is_valid());
        let v = report.closure_violation.unwrap();
        assert_eq!((v.level_a, v.level_b), (1, 1));
        assert_eq!(v.witness, parse_poly("x^3", &ctx).unwrap());
    }

    #[test]
    fn template_family_matches_builtin() {
        let ctx = ctx2(2);
        let ts = parse_template_list("[x^2, x*y^(e*q)]", &ctx).unwrap();
        let tpl = CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::Template(ts)).unwrap();
        let builtin = CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::PaperExample).unwrap();
        for e in 1..=4 {
            assert!(tpl
                .component(e)
                .unwrap()
                .equals(&builtin.component(e).unwrap())
                .unwrap());
        }
    }

    #[test]
    fn paper_example_needs_two_variables() {
        let ctx = RingContext::new(2, vec!["x", "y", "z"]).unwrap();
        assert!(matches!(
            CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::PaperExample).unwrap_err(),
            Error::InvalidAlgebraSpec(_)
        ));
    }
}
