//! Buchberger's algorithm with the normal selection strategy and the
//! coprime-leading-term and chain criteria. Exactness over speed: the
//! engine carries a work budget and aborts with an explicit error instead
//! of ever returning a wrong answer.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::monomial_ideal;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::RingContext;

/// Resource limits for the engine. Exceeding the budget is an error, never
/// a wrong answer.
#[derive(Debug, Clone)]
pub struct GroebnerConfig {
    /// Maximum number of S-pair reductions before aborting.
    pub max_spair_reductions: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_spair_reductions: 200_000,
        }
    }
}

/// Term list sorted descending under a fixed order; the working
/// representation inside the engine.
#[derive(Debug, Clone)]
struct SortedPoly {
    terms: Vec<(ExponentVector, u64)>,
}

impl SortedPoly {
    fn from_poly(p: &Polynomial, ord: &MonomialOrder) -> Self {
        SortedPoly {
            terms: p.sorted_terms(ord),
        }
    }

    fn to_poly(&self, ctx: &RingContext) -> Polynomial {
        let map = self.terms.iter().cloned().collect();
        Polynomial::from_term_map(ctx, map)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(ExponentVector, u64) {
        &self.terms[0]
    }

    /// self - c * x^shift * other, merging the sorted term lists.
    fn sub_scaled(
        &self,
        other: &SortedPoly,
        c: u64,
        shift: &ExponentVector,
        ord: &MonomialOrder,
        ctx: &RingContext,
    ) -> Result<SortedPoly> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let mut b_next: Option<(ExponentVector, u64)> = None;
        loop {
            if b_next.is_none() {
                if let Some((e, coeff)) = b.next() {
                    b_next = Some((e.checked_add(shift)?, ctx.mul(c, *coeff)));
                }
            }
            match (a.peek(), &b_next) {
                (None, None) => break,
                (Some((ea, ca)), None) => {
                    out.push(((*ea).clone(), *ca));
                    a.next();
                }
                (None, Some((eb, cb))) => {
                    let v = ctx.neg(*cb);
                    if v != 0 {
                        out.push((eb.clone(), v));
                    }
                    b_next = None;
                }
                (Some((ea, ca)), Some((eb, cb))) => match ord.cmp_exponents(ea, eb) {
                    Ordering::Greater => {
                        out.push(((*ea).clone(), *ca));
                        a.next();
                    }
                    Ordering::Less => {
                        let v = ctx.neg(*cb);
                        if v != 0 {
                            out.push((eb.clone(), v));
                        }
                        b_next = None;
                    }
                    Ordering::Equal => {
                        let v = ctx.sub(*ca, *cb);
                        if v != 0 {
                            out.push(((*ea).clone(), v));
                        }
                        a.next();
                        b_next = None;
                    }
                },
            }
        }
        Ok(SortedPoly { terms: out })
    }
}

/// Remainder of multivariate division of `f` by `divisors`.
fn divide(
    f: &SortedPoly,
    divisors: &[SortedPoly],
    ord: &MonomialOrder,
    ctx: &RingContext,
) -> Result<SortedPoly> {
    let mut rem: Vec<(ExponentVector, u64)> = Vec::new();
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let (le, lc) = work.lead().clone();
        for g in divisors {
            let (ge, gc) = g.lead();
            if ge.divides(&le) {
                let shift = le.checked_sub(ge).expect("divisibility checked");
                let c = ctx.mul(lc, ctx.inv(*gc));
                work = work.sub_scaled(g, c, &shift, ord, ctx)?;
                continue 'outer;
            }
        }
        // Leading term is irreducible: move it to the remainder.
        rem.push((le, lc));
        work.terms.remove(0);
    }
    Ok(SortedPoly { terms: rem })
}

/// Divides exactly: returns q with f = q * g, or an error if g does not
/// divide f.
pub(crate) fn exact_divide(
    f: &Polynomial,
    g: &Polynomial,
    ord: &MonomialOrder,
) -> Result<Polynomial> {
    let ctx = f.context().clone();
    if g.is_zero() {
        return Err(Error::ZeroColonDivisor);
    }
    let gs = SortedPoly::from_poly(g, ord);
    let mut work = SortedPoly::from_poly(f, ord);
    let mut quot = Polynomial::zero(&ctx);
    let (ge, gc) = gs.lead().clone();
    while !work.is_zero() {
        let (le, lc) = work.lead().clone();
        let Some(shift) = le.checked_sub(&ge) else {
            return Err(Error::InvalidRing(
                "exact division failed: not a multiple".into(),
            ));
        };
        let c = ctx.mul(lc, ctx.inv(gc));
        quot = quot.add(&Polynomial::monomial(&ctx, shift.clone(), c as i128)?)?;
        work = work.sub_scaled(&gs, c, &shift, ord, &ctx)?;
    }
    Ok(quot)
}

/// Normal form of `f` modulo a (Gröbner) basis.
pub(crate) fn normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<Polynomial> {
    let ctx = f.context().clone();
    let divisors: Vec<SortedPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(g, ord))
        .collect();
    if divisors.is_empty() {
        return Ok(f.clone());
    }
    let fs = SortedPoly::from_poly(f, ord);
    Ok(divide(&fs, &divisors, ord, &ctx)?.to_poly(&ctx))
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// The basis is unique for (ideal, order); the returned vector is sorted
/// ascending by leading monomial so the output is canonical as a sequence.
pub(crate) fn reduced_groebner_basis(
    gens: &[Polynomial],
    ord: &MonomialOrder,
    cfg: &GroebnerConfig,
    ctx: &RingContext,
) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<SortedPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(&g.monic(ord), ord))
        .collect();
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    // Monomial fast path: the minimal monomials already form the reduced
    // basis, for every order.
    if basis.iter().all(|g| g.terms.len() == 1) {
        let mins = monomial_ideal::minimal_monomials(
            basis.iter().map(|g| g.lead().0.clone()).collect(),
        );
        let mut out: Vec<Polynomial> = mins
            .into_iter()
            .map(|m| Polynomial::monomial(ctx, m, 1))
            .collect::<Result<_>>()?;
        out.sort_by(|a, b| {
            ord.cmp_exponents(
                a.leading_exponent(ord).unwrap(),
                b.leading_exponent(ord).unwrap(),
            )
        });
        return Ok(out);
    }

    // Pair queue under the normal strategy: smallest lcm first.
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert((i, j));
        }
    }

    let mut reductions = 0usize;
    while !pending.is_empty() {
        // Normal selection: minimal lcm of leading terms, ties by index.
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let lcm_ab = basis[a].lead().0.lcm(&basis[b].lead().0);
                let lcm_cd = basis[c].lead().0.lcm(&basis[d].lead().0);
                ord.cmp_exponents(&lcm_ab, &lcm_cd)
                    .then_with(|| (a, b).cmp(&(c, d)))
            })
            .unwrap();
        pending.remove(&(i, j));
        done.insert((i, j));

        let lt_i = &basis[i].lead().0;
        let lt_j = &basis[j].lead().0;
        // Buchberger 1: coprime leading terms reduce to zero.
        if lt_i.is_coprime_with(lt_j) {
            continue;
        }
        let lcm = lt_i.lcm(lt_j);
        // Buchberger 2 (chain): some k whose leading term divides the lcm,
        // with both side pairs already treated.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        reductions += 1;
        if reductions > cfg.max_spair_reductions {
            return Err(Error::WorkBudgetExceeded(cfg.max_spair_reductions));
        }

        // S-polynomial: both sides are monic here.
        let shift_i = lcm.checked_sub(lt_i).unwrap();
        let shift_j = lcm.checked_sub(lt_j).unwrap();
        let zero = SortedPoly { terms: Vec::new() };
        let left = zero.sub_scaled(&basis[i], ctx.neg(1), &shift_i, ord, ctx)?;
        let spoly = left.sub_scaled(&basis[j], 1, &shift_j, ord, ctx)?;
        let h = divide(&spoly, &basis, ord, ctx)?;
        if h.is_zero() {
            continue;
        }
        let hc = ctx.inv(h.lead().1);
        let h = if hc == 1 {
            h
        } else {
            SortedPoly {
                terms: h
                    .terms
                    .into_iter()
                    .map(|(e, c)| (e, ctx.mul(c, hc)))
                    .collect(),
            }
        };
        let new_index = basis.len();
        basis.push(h);
        for k in 0..new_index {
            pending.insert((k, new_index));
        }
    }

    // Minimalize: drop elements whose leading term is divisible by the
    // leading term of another survivor.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let li = &basis[i].lead().0;
            let lj = &basis[j].lead().0;
            if lj.divides(li) && (li != lj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<SortedPoly> = basis
        .into_iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(g, _)| g)
        .collect();
    minimal.sort_by(|a, b| ord.cmp_exponents(&a.lead().0, &b.lead().0));

    // Tail-reduce each element against the others; leading terms are
    // pairwise irreducible so they survive.
    for i in 0..minimal.len() {
        let others: Vec<SortedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        if !others.is_empty() {
            minimal[i] = divide(&minimal[i], &others, ord, ctx)?;
        }
    }

    Ok(minimal.into_iter().map(|g| g.to_poly(ctx)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn gb(p: u64, vars: Vec<&str>, gens: &[&str], ord_kind: &str) -> Vec<String> {
        let ctx = RingContext::new(p, vars).unwrap();
        let gens: Vec<Polynomial> = gens.iter().map(|s| parse_poly(s, &ctx).unwrap()).collect();
        let ord = match ord_kind {
            "lex" => MonomialOrder::lex(&ctx),
            _ => MonomialOrder::grevlex(&ctx),
        };
        reduced_groebner_basis(&gens, &ord, &GroebnerConfig::default(), &ctx)
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    #[test]
    fn single_generator_already_reduced() {
        assert_eq!(gb(2, vec!["x", "y"], &["x"], "grevlex"), vec!["x"]);
    }

    #[test]
    fn lex_basis_of_xy_minus_one_pair() {
        // S-polynomial of (xy - 1, y^2 - 1) reduces to x - y.
        let basis = gb(5, vec!["x", "y"], &["x*y - 1", "y^2 - 1"], "lex");
        assert_eq!(basis, vec!["y^2 + 4", "x + 4*y"]);
    }

    #[test]
    fn interreduction_extracts_y() {
        assert_eq!(
            gb(5, vec!["x", "y"], &["x^2", "x^2 + y"], "grevlex"),
            vec!["y", "x^2"]
        );
    }

    #[test]
    fn idempotent_on_reduced_input() {
        let ctx = RingContext::new(5, vec!["x", "y"]).unwrap();
        let ord = MonomialOrder::lex(&ctx);
        let cfg = GroebnerConfig::default();
        let gens = vec![
            parse_poly("x*y - 1", &ctx).unwrap(),
            parse_poly("y^2 - 1", &ctx).unwrap(),
        ];
        let basis = reduced_groebner_basis(&gens, &ord, &cfg, &ctx).unwrap();
        let again = reduced_groebner_basis(&basis, &ord, &cfg, &ctx).unwrap();
        assert_eq!(basis, again);
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = RingContext::new(7, vec!["x", "y", "z"]).unwrap();
        let ord = MonomialOrder::lex(&ctx);
        let cfg = GroebnerConfig {
            max_spair_reductions: 1,
        };
        let gens = vec![
            parse_poly("x^2 + y*z", &ctx).unwrap(),
            parse_poly("y^2 + x*z", &ctx).unwrap(),
            parse_poly("z^2 + x*y", &ctx).unwrap(),
        ];
        assert_eq!(
            reduced_groebner_basis(&gens, &ord, &cfg, &ctx).unwrap_err(),
            Error::WorkBudgetExceeded(1)
        );
    }

    #[test]
    fn exact_division() {
        let ctx = RingContext::new(5, vec!["x", "y"]).unwrap();
        let ord = MonomialOrder::grevlex(&ctx);
        let f = parse_poly("x^3*y + x^2*y^2", &ctx).unwrap();
        let g = parse_poly("x^2*y", &ctx).unwrap();
        assert_eq!(
            exact_divide(&f, &g, &ord).unwrap(),
            parse_poly("x + y", &ctx).unwrap()
        );
        let bad = parse_poly("x^3*y + y", &ctx).unwrap();
        assert!(exact_divide(&bad, &g, &ord).is_err());
    }
}
