//! Property tests for the algebraic invariants: ring axioms, Frobenius
//! routes, norm subadditivity, parser round trips, Gröbner idempotence,
//! generating-set independence, and the operator identities.

use proptest::prelude::*;

use cartier_core::{
    complexity_sequence, gauge, gauge_excess, gauge_growth, kappa_eval, parse_poly, product_piece,
    AlgebraFamily, CartierAlgebraSpec, CartierOperator, Degree, ExponentVector, GaugeVerdict,
    Ideal, MonomialOrder, Polynomial, RingContext,
};

fn var_names(n: usize) -> Vec<String> {
    ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
}

#[derive(Debug, Clone)]
struct Bundle {
    ctx: RingContext,
    polys: Vec<Polynomial>,
}

/// `count` random polynomials over a random small prime field.
fn bundle(count: usize, max_terms: usize, max_exp: u64) -> impl Strategy<Value = Bundle> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=3).prop_flat_map(move |(p, n)| {
        let term = (prop::collection::vec(0..=max_exp, n), 0..p);
        let poly = prop::collection::vec(term, 0..=max_terms);
        prop::collection::vec(poly, count).prop_map(move |raw| {
            let ctx = RingContext::new(p, var_names(n)).unwrap();
            let polys = raw
                .into_iter()
                .map(|terms| {
                    let mut acc = Polynomial::zero(&ctx);
                    for (exps, c) in terms {
                        let mono =
                            Polynomial::monomial(&ctx, ExponentVector::new(exps), c as i128)
                                .unwrap();
                        acc = acc.add(&mono).unwrap();
                    }
                    acc
                })
                .collect();
            Bundle { ctx, polys }
        })
    })
}

fn degree_sum(a: Degree, b: Degree) -> Degree {
    match (a, b) {
        (Degree::Finite(x), Degree::Finite(y)) => Degree::Finite(x + y),
        _ => Degree::NegInf,
    }
}

proptest! {
    #[test]
    fn ring_axioms(b in bundle(3, 5, 4)) {
        let [f, g, h] = &b.polys[..] else { unreachable!() };
        let left = f.add(g).unwrap().add(h).unwrap();
        let right = f.add(&g.add(h).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        prop_assert_eq!(f.mul(g).unwrap(), g.mul(f).unwrap());

        let dist_l = f.mul(&g.add(h).unwrap()).unwrap();
        let dist_r = f.mul(g).unwrap().add(&f.mul(h).unwrap()).unwrap();
        prop_assert_eq!(dist_l, dist_r);

        let assoc_l = f.mul(g).unwrap().mul(h).unwrap();
        let assoc_r = f.mul(&g.mul(h).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn frobenius_routes_agree(b in bundle(1, 6, 3), e in 1u32..=3) {
        let f = &b.polys[0];
        let p = b.ctx.p();
        let direct = f.frobenius_pow(e).unwrap();
        let mut iterated = f.clone();
        for _ in 0..e {
            iterated = iterated.frobenius_pow(1).unwrap();
        }
        prop_assert_eq!(&direct, &iterated);
        let by_pow = f.pow(p.pow(e)).unwrap();
        prop_assert_eq!(&direct, &by_pow);
    }

    #[test]
    fn norms_are_subadditive(b in bundle(2, 5, 4)) {
        let [f, g] = &b.polys[..] else { unreachable!() };
        let prod = f.mul(g).unwrap();
        prop_assert!(prod.max_norm() <= degree_sum(f.max_norm(), g.max_norm()));
        prop_assert!(prod.total_degree() <= degree_sum(f.total_degree(), g.total_degree()));
    }

    #[test]
    fn parse_format_round_trip(b in bundle(1, 6, 5)) {
        let f = &b.polys[0];
        let again = parse_poly(&f.to_string(), &b.ctx).unwrap();
        prop_assert_eq!(f, &again);
    }

    #[test]
    fn gauge_is_subadditive(b in bundle(2, 5, 4)) {
        let [r, s] = &b.polys[..] else { unreachable!() };
        let dr = gauge(r, None).unwrap().value;
        let ds = gauge(s, None).unwrap().value;
        let sum = gauge(&r.add(s).unwrap(), None).unwrap().value;
        prop_assert!(sum <= dr.max(ds));
        let prod = gauge(&r.mul(s).unwrap(), None).unwrap().value;
        prop_assert!(prod <= degree_sum(dr, ds));
    }

    #[test]
    fn kappa_is_additive(b in bundle(2, 5, 6), e in 1u32..=2) {
        let [f, g] = &b.polys[..] else { unreachable!() };
        let lhs = kappa_eval(e, &f.add(g).unwrap()).unwrap();
        let rhs = kappa_eval(e, f).unwrap().add(&kappa_eval(e, g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kappa_is_semilinear(b in bundle(2, 4, 4), e in 1u32..=2) {
        // kappa^e(g^(p^e) * f) = g * kappa^e(f)
        let [f, g] = &b.polys[..] else { unreachable!() };
        let twisted = g.frobenius_pow(e).unwrap().mul(f).unwrap();
        let lhs = kappa_eval(e, &twisted).unwrap();
        let rhs = g.mul(&kappa_eval(e, f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kappa_hits_every_monomial(b in bundle(0, 0, 0), e in 1u32..=2) {
        // kappa^e(x^(p^e*r + (p^e-1)*1)) = x^r over a window of targets r.
        let ctx = &b.ctx;
        let q = ctx.p().pow(e);
        for r in cartier_core::monomial_ideal::monomials_in_box(ctx.n(), 2) {
            let lifted = r.checked_scale(q).unwrap()
                .checked_add(&ExponentVector::new(vec![q - 1; ctx.n()])).unwrap();
            let image = kappa_eval(e, &Polynomial::monomial(ctx, lifted, 1).unwrap()).unwrap();
            prop_assert_eq!(image, Polynomial::monomial(ctx, r, 1).unwrap());
        }
    }



}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bimodule_relation_on_window(b in bundle(2, 3, 3)) {
        // The operator (e, f * r^(p^e)) acts as s -> r * psi(s).
        let [f, r] = &b.polys[..] else { unreachable!() };
        let ctx = &b.ctx;
        let e = 1u32;
        let psi = CartierOperator::new(e, f.clone());
        let twisted = CartierOperator::new(e, f.mul(&r.frobenius_pow(e).unwrap()).unwrap());
        for beta in cartier_core::monomial_ideal::monomials_in_box(ctx.n(), ctx.p() + 1) {
            let s = Polynomial::monomial(ctx, beta, 1).unwrap();
            let lhs = twisted.apply(&s).unwrap();
            let rhs = r.mul(&psi.apply(&s).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composition_law_on_window(b in bundle(2, 3, 3), a in 1u32..=2, c in 1u32..=2) {
        let [f, g] = &b.polys[..] else { unreachable!() };
        let ctx = &b.ctx;
        if ctx.p() == 5 && a + c > 2 {
            // Keep the probe window small.
            return Ok(());
        }
        let phi = CartierOperator::new(a, f.clone());
        let psi = CartierOperator::new(c, g.clone());
        let prod = phi.compose(&psi).unwrap();
        let window = ctx.p().pow(a + c) + 2;
        for beta in cartier_core::monomial_ideal::monomials_in_box(ctx.n().min(2), window) {
            let mut exps = beta.exponents().to_vec();
            exps.resize(ctx.n(), 0);
            let rmon = Polynomial::monomial(ctx, ExponentVector::new(exps), 1).unwrap();
            let direct = prod.apply(&rmon).unwrap();
            let nested = phi.apply(&psi.apply(&rmon).unwrap()).unwrap();
            prop_assert_eq!(direct, nested);
        }
    }

    #[test]
    fn kappa_excess_stays_nonpositive(b in bundle(0, 0, 0)) {
        let ctx = &b.ctx;
        let kappa = CartierOperator::kappa(ctx, 1);
        let excess = gauge_excess(&kappa, 2 * ctx.p()).unwrap().unwrap();
        prop_assert!(excess <= num_rational::BigRational::from_integer(0.into()));
    }

    #[test]
    fn groebner_is_idempotent(b in bundle(3, 3, 3)) {
        let ideal = Ideal::new(&b.ctx, b.polys.clone()).unwrap();
        let ord = MonomialOrder::grevlex(&b.ctx);
        let basis = ideal.reduced_basis(&ord).unwrap();
        let again = Ideal::new(&b.ctx, basis.as_ref().clone()).unwrap();
        let rebased = again.reduced_basis(&ord).unwrap();
        prop_assert_eq!(basis.as_ref(), rebased.as_ref());
    }

    #[test]
    fn membership_recognizes_combinations(b in bundle(4, 3, 3)) {
        let gens = vec![b.polys[0].clone(), b.polys[1].clone()];
        let ideal = Ideal::new(&b.ctx, gens.clone()).unwrap();
        let combo = b.polys[2].mul(&gens[0]).unwrap()
            .add(&b.polys[3].mul(&gens[1]).unwrap()).unwrap();
        prop_assert!(ideal.contains(&combo).unwrap());

        // Membership is order-independent.
        let lex = MonomialOrder::lex(&b.ctx);
        let grevlex = MonomialOrder::grevlex(&b.ctx);
        let probe = &b.polys[2];
        let in_lex = ideal.normal_form(probe, &lex).unwrap().is_zero();
        let in_grevlex = ideal.normal_form(probe, &grevlex).unwrap().is_zero();
        prop_assert_eq!(in_lex, in_grevlex);
    }

    #[test]
    fn bracket_power_ignores_presentation(b in bundle(4, 3, 3), e in 1u32..=2) {
        let gens = vec![b.polys[0].clone(), b.polys[1].clone()];
        let ideal = Ideal::new(&b.ctx, gens.clone()).unwrap();
        // Same ideal, redundant presentation.
        let mut padded = gens.clone();
        padded.push(b.polys[2].mul(&gens[0]).unwrap().add(&b.polys[3].mul(&gens[1]).unwrap()).unwrap());
        let other = Ideal::new(&b.ctx, padded).unwrap();
        prop_assert!(ideal.bracket_power(e).unwrap().equals(&other.bracket_power(e).unwrap()).unwrap());
    }

    #[test]
    fn fedder_ideal_contains_bracket_power(b in bundle(2, 2, 2)) {
        let ideal = Ideal::new(&b.ctx, b.polys.clone()).unwrap();
        if ideal.is_zero() {
            return Ok(());
        }
        let fed = ideal.fedder(1).unwrap();
        prop_assert!(fed.contains_ideal(&ideal.bracket_power(1).unwrap()).unwrap());
    }

    #[test]
    fn monomial_and_nakayama_counts_agree(exps in prop::collection::vec(prop::collection::vec(0u64..=6, 2), 1..=4)) {
        let ctx = RingContext::new(3, var_names(2)).unwrap();
        let gens: Vec<Polynomial> = exps.into_iter()
            .map(|v| Polynomial::monomial(&ctx, ExponentVector::new(v), 1).unwrap())
            .collect();
        let ideal = Ideal::new(&ctx, gens).unwrap();
        let combinatorial = ideal.minimal_generators().unwrap();
        let nakayama = ideal.minimal_generators_nakayama().unwrap();
        prop_assert_eq!(combinatorial.generators.len(), nakayama.generators.len());
        prop_assert_eq!(combinatorial.max_total_degree, nakayama.max_total_degree);
    }
}

// Analysis invariants on the bundled families (deterministic).

fn ctx2(p: u64) -> RingContext {
    RingContext::new(p, vec!["x", "y"]).unwrap()
}

#[test]
fn product_pieces_stay_inside_their_level() {
    for p in [2u64, 3] {
        let ctx = ctx2(p);
        let families = vec![
            AlgebraFamily::Full,
            AlgebraFamily::PaperExample,
            AlgebraFamily::Principal(parse_poly("x + y^2", &ctx).unwrap()),
            AlgebraFamily::Fedder(Ideal::parse("[x*y]", &ctx).unwrap()),
        ];
        for family in families {
            let spec = CartierAlgebraSpec::new(&ctx, None, family).unwrap();
            assert!(spec.validate(4).unwrap().is_valid());
            for e in 2..=4 {
                let t = product_piece(&spec, e).unwrap();
                let j = spec.component(e).unwrap();
                assert!(j.contains_ideal(&t).unwrap(), "T_{e} not inside J_{e}");
            }
        }
    }
}

#[test]
fn degree_one_families_stop_growing() {
    for p in [2u64, 3] {
        let ctx = ctx2(p);
        for f in ["x", "x + y", "x^2*y + x", "x^3 + y^3 + 1"] {
            let spec = CartierAlgebraSpec::new(
                &ctx,
                None,
                AlgebraFamily::Principal(parse_poly(f, &ctx).unwrap()),
            )
            .unwrap();
            let report = complexity_sequence(&spec, 4).unwrap();
            for row in &report.rows[1..] {
                assert_eq!(row.new_generators, 0, "p={p} f={f} e={}", row.level);
            }
        }
        let full = CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::Full).unwrap();
        let report = complexity_sequence(&full, 4).unwrap();
        for row in &report.rows[1..] {
            assert_eq!(row.new_generators, 0);
        }
    }
}

#[test]
fn generator_counts_ignore_presentation() {
    let ctx = ctx2(2);
    // The same levels, once minimal and once padded with redundant
    // generators, give identical complexity rows.
    let mut reports = Vec::new();
    let parse_table = |entries: &[(u32, &str)]| {
        let mut map = std::collections::BTreeMap::new();
        for (e, list) in entries {
            map.insert(*e, cartier_core::parse_ideal_list(list, &ctx).unwrap());
        }
        CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::Table(map)).unwrap()
    };
    let lean_spec = parse_table(&[(1, "[x^2, x*y^2]"), (2, "[x^2, x*y^8]")]);
    let padded_spec = parse_table(&[
        (1, "[x^2, x*y^2, x^3, x^2*y^2]"),
        (2, "[x^2, x*y^8, x^4, x^2*y^8, x^3*y^10]"),
    ]);
    for spec in [&lean_spec, &padded_spec] {
        let report = complexity_sequence(spec, 2).unwrap();
        reports.push(
            report
                .rows
                .iter()
                .map(|r| (r.new_generators, r.max_total_degree))
                .collect::<Vec<_>>(),
        );
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn claim_bound_holds_on_bounded_families() {
    for p in [2u64, 3] {
        let ctx = ctx2(p);
        for family in [
            AlgebraFamily::Full,
            AlgebraFamily::Principal(parse_poly("x + y", &ctx).unwrap()),
            AlgebraFamily::Principal(parse_poly("x^2 + x*y + y^2", &ctx).unwrap()),
        ] {
            let spec = CartierAlgebraSpec::new(&ctx, None, family).unwrap();
            let report = gauge_growth(&spec, 4).unwrap();
            assert_eq!(report.verdict, GaugeVerdict::BoundedEvidence);
            assert_eq!(report.claim_check_ok, Some(true));
            // The ceiling of sup g also caps every generator gauge.
            let sup = report.sup_g.clone().unwrap();
            let ceil = sup.ceil().to_integer();
            for row in &report.rows {
                let q = p.pow(row.level);
                for gv in &row.gauges {
                    if let Degree::Finite(d) = gv.value {
                        assert!(
                            num_bigint::BigInt::from(d) <= ceil.clone() * num_bigint::BigInt::from(q)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn groebner_cache_is_safe_under_concurrent_readers() {
    let ctx = RingContext::new(5, var_names(3)).unwrap();
    let gens = ["x*y - z^2", "y^2 - x*z", "x^2 - y*z"]
        .iter()
        .map(|s| parse_poly(s, &ctx).unwrap())
        .collect();
    let ideal = std::sync::Arc::new(Ideal::new(&ctx, gens).unwrap());
    let ord = MonomialOrder::grevlex(&ctx);
    let mut handles = Vec::new();
    for _ in 0..8 {
        let ideal = ideal.clone();
        let ord = ord.clone();
        handles.push(std::thread::spawn(move || {
            ideal.reduced_basis(&ord).unwrap().as_ref().clone()
        }));
    }
    let bases: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for b in &bases[1..] {
        assert_eq!(&bases[0], b);
    }
}

#[test]
fn bundled_example_gauge_law_holds_for_p2_and_p3() {
    for p in [2u64, 3] {
        let ctx = ctx2(p);
        let spec = CartierAlgebraSpec::new(&ctx, None, AlgebraFamily::PaperExample).unwrap();
        let report = gauge_growth(&spec, 5).unwrap();
        for (i, row) in report.rows.iter().enumerate() {
            let expected =
                num_rational::BigRational::from_integer(num_bigint::BigInt::from(i as u64 + 1));
            assert_eq!(row.g, Some(expected), "p={p} e={}", i + 1);
        }
        assert_eq!(report.verdict, GaugeVerdict::UnboundedEvidence);
    }
}
