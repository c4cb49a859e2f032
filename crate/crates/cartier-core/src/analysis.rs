//! Growth analysis of algebra specifications: complexity sequences
//! k_e - k_(e-1), the counting bound through binomial coefficients,
//! degree-growth fits, gauge-growth indicators g(e), and the consistency
//! check tying a bounded gauge to the complexity cap p^n.
//!
//! Every summary statistic here is a windowed indicator computed in exact
//! arithmetic and reported together with its window; none of them claims an
//! asymptotic result.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::CartierAlgebraSpec;
use crate::cartier::{gauge, Exactness, GaugeValue};
use crate::error::{Error, Result};
use crate::exponent::Degree;
use crate::ideal::Ideal;
use crate::parallel;
use crate::poly::Polynomial;

/// Trend of the root statistic over the last three positive levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Decreasing,
    Increasing,
    Flat,
    Mixed,
    Insufficient,
}

impl Trend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trend::Decreasing => "decreasing",
            Trend::Increasing => "increasing",
            Trend::Flat => "flat",
            Trend::Mixed => "mixed",
            Trend::Insufficient => "insufficient-data",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ComplexityRow {
    pub level: u32,
    /// k_e, cumulative from the k_0 = 1 baseline.
    pub cumulative: u64,
    /// delta k_e = k_e - k_(e-1): new generators at this level.
    pub new_generators: u64,
    /// d(J_e): max total degree over the canonical minimal generators.
    pub max_total_degree: Degree,
    /// Maximum-norm analogue of d(J_e).
    pub max_norm_degree: Degree,
}

/// Per-level complexity data plus windowed summary statistics.
///
/// Convention recorded in every rendered header: the level-0 piece
/// contributes exactly one generator (the identity), so k_0 = 1.
#[derive(Debug, Clone)]
pub struct ComplexityReport {
    pub e_max: u32,
    pub k0: u64,
    pub rows: Vec<ComplexityRow>,
    /// Windowed root statistic: the e_max-th root of the largest per-level
    /// increment over 2 <= e <= e_max (1 when no increments occur there),
    /// floored to a dyadic rational so it never overstates the root.
    pub cx_estimate: BigRational,
    /// log_p of `cx_estimate`, floored to the same dyadic grid.
    pub expf_estimate: BigRational,
    pub trend: Trend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeVerdict {
    BoundedEvidence,
    UnboundedEvidence,
    Inconclusive,
}

impl GaugeVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            GaugeVerdict::BoundedEvidence => "bounded-evidence",
            GaugeVerdict::UnboundedEvidence => "unbounded-evidence",
            GaugeVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GaugeRow {
    pub level: u32,
    /// Canonical minimal generators of J_e.
    pub generators: Vec<Polynomial>,
    /// Their gauges (mod the quotient, when present).
    pub gauges: Vec<GaugeValue>,
    /// g(e) = max_i delta(f_i) / p^e; None encodes -inf (zero level, or
    /// every generator vanished mod the quotient).
    pub g: Option<BigRational>,
}

#[derive(Debug, Clone)]
pub struct GaugeReport {
    pub e_max: u32,
    pub rows: Vec<GaugeRow>,
    /// sup of g(e) over the window.
    pub sup_g: Option<BigRational>,
    pub verdict: GaugeVerdict,
    /// For bounded-evidence: the implied window constant K = sup g(e).
    pub k_window: Option<BigRational>,
    /// For bounded-evidence: delta(f_i) <= K * p^e re-checked per generator.
    pub claim_check_ok: Option<bool>,
    /// All gauge values exact (no upper-bound flags)?
    pub all_exact: bool,
}

#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub gauge_verdict: GaugeVerdict,
    /// The implication only applies when the gauge evidence is bounded.
    pub applicable: bool,
    pub cx_estimate: BigRational,
    /// p^n, the cap the bounded-gauge implication asserts.
    pub cx_cap: BigUint,
    /// When applicable: cx_estimate <= p^n?
    pub consistent: Option<bool>,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct LemmaFit {
    /// Least integer t whose tail growth ratios stay within the tolerance
    /// 1 + 1/e_max; 0 when the window has no usable growth data.
    pub t: u32,
    /// K = max_e d(J_e) / p^(t*e) over levels with finite degree.
    pub k_constant: BigRational,
    /// exp_F <= t * n.
    pub expf_bound: u64,
    /// cx <= p^(t*n).
    pub cx_bound: BigUint,
    /// delta k_e <= C(n + d(J_e), n) at every level of the window.
    pub counting_ok: bool,
}

/// T_e = sum over a + b = e (a, b >= 1) of J_a^[p^b] * J_b: the degree-e
/// part of the subring generated below level e. Two-factor products
/// suffice: every piece of lower level already lies in the subring
/// generated by degrees < e, so longer products telescope through it (the
/// tests re-check this with three factors).
pub fn product_piece(spec: &CartierAlgebraSpec, e: u32) -> Result<Ideal> {
    if e < 2 {
        return Err(Error::InvalidLevel("product piece needs e >= 2".into()));
    }
    let ctx = spec.context();
    let mut gens: Vec<Polynomial> = Vec::new();
    for a in 1..e {
        let b = e - a;
        let ja = spec.component(a)?;
        let jb = spec.component(b)?;
        let basis_a = ja.reduced_basis(&ja.default_order())?;
        let basis_b = jb.reduced_basis(&jb.default_order())?;
        for u in basis_a.iter() {
            for v in basis_b.iter() {
                gens.push(u.frobenius_pow(b)?.mul(v)?);
            }
        }
    }
    let raw = Ideal::new(ctx, gens)?;
    // Interreduce monomial output to the canonical minimal generators.
    if let Some(mons) = raw.monomial_exponents()? {
        return crate::ideal::ideal_from_monomials(ctx, mons);
    }
    Ok(raw)
}

/// delta k_e: minimal generators of J_e modulo the subring piece T_e, as
/// counted by graded Nakayama. Monomial levels count minimal monomial
/// generators escaping T_e + m*J_e; principal levels contribute at most
/// one; homogeneous levels run exact linear algebra degree by degree.
pub fn new_generator_count(spec: &CartierAlgebraSpec, e: u32) -> Result<u64> {
    if e < 1 {
        return Err(Error::InvalidLevel("generator counts start at e = 1".into()));
    }
    let ctx = spec.context();
    let j = spec.component(e)?;
    if j.is_zero() {
        return Ok(0);
    }
    let t = if e == 1 {
        Ideal::zero(ctx)
    } else {
        product_piece(spec, e)?
    };

    if !t.is_zero() {
        if !j.contains_ideal(&t)? {
            return Err(Error::InvalidAlgebraSpec(format!(
                "T_{e} is not contained in J_{e}: the level rule is not a subalgebra"
            )));
        }
        // J_e ⊆ T_e already: nothing new at this level, for any ideal class.
        if t.contains_ideal(&j)? {
            return Ok(0);
        }
    }

    let minimal = j.minimal_generators()?;
    let blocker = t.sum(&Ideal::maximal(ctx).product(&j)?)?;

    if j.is_monomial()? || minimal.generators.len() == 1 {
        let mut count = 0;
        for g in &minimal.generators {
            if !blocker.contains(g)? {
                count += 1;
            }
        }
        return Ok(count);
    }

    if j.is_homogeneous()? && t.generators().iter().all(|g| g.is_homogeneous()) {
        return nakayama_count_mod(&j, &t);
    }

    Err(Error::UnsupportedIdealClass(
        "generator counting needs monomial, principal, or homogeneous levels".into(),
    ))
}

/// Sum over degrees d of dim (J / (m*J + T))_d by exact row reduction.
fn nakayama_count_mod(j: &Ideal, t: &Ideal) -> Result<u64> {
    use crate::linalg::RowSpace;
    use crate::monomial_ideal::monomials_of_degree;
    use std::collections::BTreeMap;

    let ctx = j.context();
    let n = ctx.n();
    let jbasis = j.reduced_basis(&j.default_order())?;
    let tbasis = t.reduced_basis(&t.default_order())?;
    let jdegs: Vec<u64> = jbasis
        .iter()
        .map(|g| g.total_degree().finite().expect("nonzero"))
        .collect();
    let tdegs: Vec<u64> = tbasis
        .iter()
        .map(|g| g.total_degree().finite().expect("nonzero"))
        .collect();
    let max_deg = *jdegs.iter().max().unwrap();

    let mut count = 0u64;
    for d in 0..=max_deg {
        let cols = monomials_of_degree(n, d);
        let index: BTreeMap<_, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let row_of = |g: &Polynomial| -> Vec<u64> {
            let mut row = vec![0u64; cols.len()];
            for (alpha, c) in g.terms() {
                row[*index.get(alpha).expect("degree matches")] = c.value();
            }
            row
        };
        let mut space = RowSpace::new(ctx, cols.len());
        // (m * J)_d: shifts of strictly positive degree.
        for (g, &dg) in jbasis.iter().zip(&jdegs) {
            if dg >= d {
                continue;
            }
            for m in monomials_of_degree(n, d - dg) {
                space.insert(row_of(&g.mul_term(&m, ctx.scalar_from_i128(1))?));
            }
        }
        // T_d: shifts of any degree.
        for (g, &dg) in tbasis.iter().zip(&tdegs) {
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(n, d - dg) {
                space.insert(row_of(&g.mul_term(&m, ctx.scalar_from_i128(1))?));
            }
        }
        // Degree-d elements of the reduced basis extend the span exactly
        // when they are new generators.
        for (g, &dg) in jbasis.iter().zip(&jdegs) {
            if dg == d && space.insert(row_of(g)) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// C(n + D, n): the number of monomials of total degree <= D in n
/// variables, in big-integer arithmetic.
pub fn monomial_count_bound(n: usize, max_degree: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=(n as u64) {
        num *= BigUint::from(max_degree + i);
        den *= BigUint::from(i);
    }
    num / den
}

struct LevelComplexity {
    new_generators: u64,
    max_total_degree: Degree,
    max_norm_degree: Degree,
}

fn complexity_level(spec: &CartierAlgebraSpec, e: u32) -> Result<LevelComplexity> {
    let j = spec.component(e)?;
    let minimal = j.minimal_generators()?;
    Ok(LevelComplexity {
        new_generators: new_generator_count(spec, e)?,
        max_total_degree: minimal.max_total_degree,
        max_norm_degree: minimal.max_norm,
    })
}

/// The full complexity report over the window 1..=e_max. The spec is
/// validated first; a broken closure is an error, not a report.
pub fn complexity_sequence(spec: &CartierAlgebraSpec, e_max: u32) -> Result<ComplexityReport> {
    if e_max < 1 {
        return Err(Error::InvalidWindow("e_max must be >= 1".into()));
    }
    let validation = spec.validate(e_max)?;
    if let Some(v) = &validation.closure_violation {
        return Err(Error::InvalidAlgebraSpec(format!(
            "subalgebra closure fails at (a, b) = ({}, {}): witness {}",
            v.level_a, v.level_b, v.witness
        )));
    }

    let levels: Vec<u32> = (1..=e_max).collect();
    let outcomes = parallel::map_ordered(levels, |e| complexity_level(spec, e));
    let mut rows = Vec::with_capacity(e_max as usize);
    let k0 = 1u64;
    let mut k = k0;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let data = outcome?;
        k += data.new_generators;
        rows.push(ComplexityRow {
            level: i as u32 + 1,
            cumulative: k,
            new_generators: data.new_generators,
            max_total_degree: data.max_total_degree,
            max_norm_degree: data.max_norm_degree,
        });
    }

    let (cx_estimate, expf_estimate) = cx_statistics(&rows, e_max, spec.context().p());
    let trend = root_trend(&rows);
    Ok(ComplexityReport {
        e_max,
        k0,
        rows,
        cx_estimate,
        expf_estimate,
        trend,
    })
}

const DYADIC_BITS: u32 = 10;

/// Floor of the e_max-th root of the largest increment over 2 <= e <= e_max
/// on the dyadic grid 2^-10, plus log_p of that estimate on the same grid.
fn cx_statistics(rows: &[ComplexityRow], e_max: u32, p: u64) -> (BigRational, BigRational) {
    let max_delta = rows
        .iter()
        .filter(|r| r.level >= 2 && r.new_generators > 0)
        .map(|r| r.new_generators)
        .max();
    let Some(max_delta) = max_delta else {
        return (BigRational::one(), BigRational::zero());
    };
    let scale = BigUint::one() << DYADIC_BITS;
    // Largest a with (a / 2^10)^e_max <= max_delta.
    let target = BigUint::from(max_delta) * (&scale).pow(e_max);
    let a = nth_root_floor(&target, e_max);
    let cx = BigRational::new(BigInt::from(a), BigInt::from(scale.clone()));

    // Largest c with p^(c / 2^10) <= cx, i.e. p^c <= cx^(2^10).
    let cx_num = cx.numer().to_biguint().expect("positive");
    let cx_den = cx.denom().to_biguint().expect("positive");
    let lhs_den = cx_den.pow(1u32 << DYADIC_BITS);
    let rhs = cx_num.pow(1u32 << DYADIC_BITS);
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one();
    let p_big = BigUint::from(p);
    while p_big.pow(biguint_to_u32(&hi)) * &lhs_den <= rhs {
        hi <<= 1;
    }
    while &lo + BigUint::one() < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if p_big.pow(biguint_to_u32(&mid)) * &lhs_den <= rhs {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let expf = BigRational::new(BigInt::from(lo), BigInt::from(scale));
    (cx, expf)
}

fn biguint_to_u32(v: &BigUint) -> u32 {
    u32::try_from(v).expect("exponent fits u32 at desk scale")
}

/// Floor of the k-th root of v by binary search.
fn nth_root_floor(v: &BigUint, k: u32) -> BigUint {
    if v.is_zero() {
        return BigUint::zero();
    }
    let mut lo = BigUint::one();
    let mut hi = BigUint::one() << (v.bits() as u32 / k + 2);
    while &lo + BigUint::one() < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if mid.pow(k) <= *v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Compares the per-level roots (delta k_e)^(1/e) over the last three
/// positive levels, exactly: a^(e') vs b^(e) decides a^(1/e) vs b^(1/e').
fn root_trend(rows: &[ComplexityRow]) -> Trend {
    let positive: Vec<(u32, u64)> = rows
        .iter()
        .filter(|r| r.new_generators > 0)
        .map(|r| (r.level, r.new_generators))
        .collect();
    if positive.len() < 3 {
        return Trend::Insufficient;
    }
    let tail = &positive[positive.len() - 3..];
    let cmp = |(ea, da): (u32, u64), (eb, db): (u32, u64)| {
        BigUint::from(da).pow(eb).cmp(&BigUint::from(db).pow(ea))
    };
    let c1 = cmp(tail[0], tail[1]);
    let c2 = cmp(tail[1], tail[2]);
    use std::cmp::Ordering::*;
    match (c1, c2) {
        (Greater, Greater) | (Greater, Equal) | (Equal, Greater) => Trend::Decreasing,
        (Less, Less) | (Less, Equal) | (Equal, Less) => Trend::Increasing,
        (Equal, Equal) => Trend::Flat,
        _ => Trend::Mixed,
    }
}

fn gauge_level(spec: &CartierAlgebraSpec, e: u32) -> Result<GaugeRow> {
    let j = spec.component(e)?;
    let minimal = j.minimal_generators()?;
    let q = spec.context().char_pow(e)?;
    let mut gauges = Vec::with_capacity(minimal.generators.len());
    let mut g: Option<BigRational> = None;
    for f in &minimal.generators {
        let value = gauge(f, spec.quotient())?;
        if let Degree::Finite(d) = value.value {
            let ratio = BigRational::new(BigInt::from(d), BigInt::from(q));
            g = Some(match g {
                None => ratio,
                Some(prev) => prev.max(ratio),
            });
        }
        gauges.push(value);
    }
    Ok(GaugeRow {
        level: e,
        generators: minimal.generators,
        gauges,
        g,
    })
}

/// Gauge growth over the window: g(e) = max_i delta(f_i)/p^e on the
/// canonical minimal generators of each level.
///
/// Verdicts look at the last three levels: strictly increasing g with
/// non-shrinking increments reads as unbounded evidence; non-increasing g,
/// or increasing g with strictly shrinking increments (a geometric
/// approach to a finite sup), reads as bounded evidence. Anything else,
/// or fewer than three usable levels, is inconclusive.
pub fn gauge_growth(spec: &CartierAlgebraSpec, e_max: u32) -> Result<GaugeReport> {
    if e_max < 1 {
        return Err(Error::InvalidWindow("e_max must be >= 1".into()));
    }
    let levels: Vec<u32> = (1..=e_max).collect();
    let outcomes = parallel::map_ordered(levels, |e| gauge_level(spec, e));
    let mut rows = Vec::with_capacity(e_max as usize);
    for outcome in outcomes {
        rows.push(outcome?);
    }

    let sup_g = rows
        .iter()
        .filter_map(|r| r.g.clone())
        .max();
    let verdict = gauge_verdict(&rows);
    let all_exact = rows
        .iter()
        .flat_map(|r| r.gauges.iter())
        .all(|g| g.exactness == Exactness::Exact);

    let (k_window, claim_check_ok) = if verdict == GaugeVerdict::BoundedEvidence {
        let k = sup_g.clone().unwrap_or_else(BigRational::zero);
        let mut ok = true;
        for row in &rows {
            let q = BigInt::from(spec.context().char_pow(row.level)?);
            for gv in &row.gauges {
                if let Degree::Finite(d) = gv.value {
                    if BigRational::from_integer(BigInt::from(d)) > &k * BigRational::from_integer(q.clone()) {
                        ok = false;
                    }
                }
            }
        }
        (Some(k), Some(ok))
    } else {
        (None, None)
    };

    Ok(GaugeReport {
        e_max,
        rows,
        sup_g,
        verdict,
        k_window,
        claim_check_ok,
        all_exact,
    })
}

fn gauge_verdict(rows: &[GaugeRow]) -> GaugeVerdict {
    if rows.len() < 3 {
        return GaugeVerdict::Inconclusive;
    }
    let tail = &rows[rows.len() - 3..];
    let (Some(g1), Some(g2), Some(g3)) = (&tail[0].g, &tail[1].g, &tail[2].g) else {
        return GaugeVerdict::Inconclusive;
    };
    if g1 < g2 && g2 < g3 {
        let first = g2 - g1;
        let second = g3 - g2;
        if second >= first {
            GaugeVerdict::UnboundedEvidence
        } else {
            GaugeVerdict::BoundedEvidence
        }
    } else if g3 <= g2 && g2 <= g1 {
        GaugeVerdict::BoundedEvidence
    } else {
        GaugeVerdict::Inconclusive
    }
}

/// Checks the bounded-gauge implication cx <= p^n on the window: applicable
/// only for bounded-evidence, and never claimed in reverse.
pub fn theorem_consistency_check(
    spec: &CartierAlgebraSpec,
    e_max: u32,
) -> Result<ConsistencyReport> {
    let complexity = complexity_sequence(spec, e_max)?;
    let gauges = gauge_growth(spec, e_max)?;
    let cap = BigUint::from(spec.context().p()).pow(spec.context().n() as u32);
    let applicable = gauges.verdict == GaugeVerdict::BoundedEvidence;
    let consistent = if applicable {
        let cap_rat = BigRational::from_integer(BigInt::from(cap.clone()));
        Some(complexity.cx_estimate <= cap_rat)
    } else {
        None
    };
    let note = match gauges.verdict {
        GaugeVerdict::BoundedEvidence => {
            "bounded gauge evidence: the window complexity statistic must stay under p^n".into()
        }
        GaugeVerdict::UnboundedEvidence => {
            "not applicable: gauge growth looks unbounded on this window; finite complexity here does not contradict the implication".into()
        }
        GaugeVerdict::Inconclusive => "not applicable: gauge evidence inconclusive".into(),
    };
    Ok(ConsistencyReport {
        gauge_verdict: gauges.verdict,
        applicable,
        cx_estimate: complexity.cx_estimate,
        cx_cap: cap,
        consistent,
        note,
    })
}

/// Fits the least integer t >= 0 such that the tail of d(J_e) grows no
/// faster than p^(t*e) up to the tolerance factor 1 + 1/e_max, and reports
/// the induced caps exp_F <= t*n and cx <= p^(t*n) together with the
/// per-level counting check delta k_e <= C(n + d(J_e), n).
pub fn lemma_fit(spec: &CartierAlgebraSpec, e_max: u32) -> Result<LemmaFit> {
    let complexity = complexity_sequence(spec, e_max)?;
    let n = spec.context().n();
    let p = spec.context().p();

    let positive: Vec<(u32, u64)> = complexity
        .rows
        .iter()
        .filter_map(|r| match r.max_total_degree {
            Degree::Finite(d) if d > 0 => Some((r.level, d)),
            _ => None,
        })
        .collect();

    // Tail growth quotients: d(J_e+1)/d(J_e) <= p^t * (1 + 1/e_max) for the
    // last two adjacent pairs of consecutive levels.
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for w in positive.windows(2) {
        if w[1].0 == w[0].0 + 1 {
            pairs.push((w[0].1, w[1].1));
        }
    }
    let tail_pairs: Vec<(u64, u64)> = pairs.iter().rev().take(2).cloned().collect();
    let mut t = 0u32;
    if !tail_pairs.is_empty() {
        let tol_num = BigUint::from(e_max as u64 + 1);
        let tol_den = BigUint::from(e_max as u64);
        loop {
            let pt = BigUint::from(p).pow(t);
            let ok = tail_pairs.iter().all(|(da, db)| {
                BigUint::from(*db) * &tol_den <= BigUint::from(*da) * &pt * &tol_num
            });
            if ok || t >= 64 {
                break;
            }
            t += 1;
        }
    }

    let mut k_constant = BigRational::zero();
    for row in &complexity.rows {
        if let Degree::Finite(d) = row.max_total_degree {
            let denom = BigUint::from(p).pow(t * row.level);
            let value = BigRational::new(BigInt::from(d), BigInt::from(denom));
            if value > k_constant {
                k_constant = value;
            }
        }
    }

    let mut counting_ok = true;
    for row in &complexity.rows {
        match row.max_total_degree {
            Degree::Finite(d) => {
                if BigUint::from(row.new_generators) > monomial_count_bound(n, d) {
                    counting_ok = false;
                }
            }
            Degree::NegInf => {
                if row.new_generators != 0 {
                    counting_ok = false;
                }
            }
        }
    }

    Ok(LemmaFit {
        t,
        k_constant,
        expf_bound: t as u64 * n as u64,
        cx_bound: BigUint::from(p).pow(t * n as u32),
        counting_ok,
    })
}
