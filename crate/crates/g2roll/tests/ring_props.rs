//! Property-based checks of the expression ring: exact ring axioms, the
//! Leibniz rule on every coordinate, canonical-form idempotence,
//! evaluation as a ring homomorphism and printing as a parse round-trip.

use g2roll::expr::hcoeff::HCoeff;
use g2roll::expr::hpoly::HPoly;
use g2roll::expr::{Expr, HarmKind};
use g2roll::{rat, Params, Rat, AN};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn hcoeff() -> impl Strategy<Value = HCoeff> {
    let num = proptest::collection::vec(small_rat(), 1..=3).prop_map(HPoly::from_coeffs);
    let den = prop_oneof![
        Just(HPoly::one()),
        Just(HPoly::var()),
        Just(HPoly::from_coeffs(vec![rat(1, 1), rat(0, 1), rat(1, 1)])),
    ];
    (num, den).prop_filter_map("non-zero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Some(HCoeff::new(n, d))
        }
    })
}

prop_compose! {
    fn term()(
        coeff in hcoeff(),
        pt in 0u32..=2,
        pp in 0u32..=2,
        pq in 0u32..=2,
        ppsi in 0u32..=1,
        k in 0u32..=3,
        sin in any::<bool>(),
    ) -> Expr {
        let mut e = Expr::from_hcoeff(&AN, coeff);
        for (idx, pow) in [(0, pt), (1, pp), (3, pq), (4, ppsi)] {
            if pow > 0 {
                e = e.mul(&Expr::var_pow(&AN, idx, pow));
            }
        }
        if k > 0 {
            let kind = if sin { HarmKind::Sin } else { HarmKind::Cos };
            e = e.mul(&Expr::harmonic(&AN, kind, k));
        }
        e
    }
}

fn expr() -> impl Strategy<Value = Expr> {
    proptest::collection::vec(term(), 1..=3).prop_map(|terms| Expr::sum(&AN, terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn add_commutative(a in expr(), b in expr()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn add_associative(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_commutative(a in expr(), b in expr()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_associative(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn distributive(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn additive_inverse(a in expr()) {
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn leibniz_rule_every_coordinate(a in expr(), b in expr()) {
        let prod = a.mul(&b);
        for idx in 0..5 {
            let lhs = prod.derive(idx);
            let rhs = a.derive(idx).mul(&b).add(&a.mul(&b.derive(idx)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn canonicalisation_idempotent(a in expr()) {
        prop_assert_eq!(a.renormalized(), a.clone());
        prop_assert_eq!(a.renormalized().renormalized(), a);
    }

    #[test]
    fn print_parse_round_trip(a in expr()) {
        let params = Params::from_ints(0, 1);
        let printed = a.to_string();
        let reparsed = Expr::parse(&printed, &params)
            .unwrap_or_else(|e| panic!("failed to reparse {printed:?}: {e}"));
        prop_assert_eq!(reparsed, a);
    }
}

#[test]
fn eval_is_multiplicative_at_thousand_points() {
    // eval(a * b) = eval(a) * eval(b) within 1e-10 relative, across 1000
    // random rational points spread over 10 expression pairs.
    let mut rng = g2roll::rng::Rng::new(2024);
    let params = Params::from_ints(1, 1);
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = expr();
    let mut checked = 0;
    for _ in 0..10 {
        let a = strategy.new_tree(&mut runner).unwrap().current();
        let b = strategy.new_tree(&mut runner).unwrap().current();
        let prod = a.mul(&b);
        let mut points = 0;
        while points < 100 {
            let p = g2roll::rng::sample_an_exact(&mut rng, &params);
            // Move to f64 coordinates with the angle synthesised from the
            // circle pair so harmonics and powers agree.
            let (c, s) = p.circle.clone().unwrap();
            let mut pf: Vec<f64> = p.coords.iter().map(g2roll::rng::rat_to_f64).collect();
            pf[4] = g2roll::rng::rat_to_f64(&s).atan2(g2roll::rng::rat_to_f64(&c));
            // The angle coordinate also appears polynomially; evaluating
            // the exact and floating routes consistently requires psi to
            // match the circle pair, so restrict to expressions where that
            // holds by construction: use eval on both sides.
            let (va, vb, vp) = match (a.eval(&pf), b.eval(&pf), prod.eval(&pf)) {
                (Ok(x), Ok(y), Ok(z)) => (x, y, z),
                _ => continue,
            };
            let scale = vp.abs().max(va.abs() * vb.abs()).max(1.0);
            assert!(
                (vp - va * vb).abs() <= 1e-10 * scale,
                "multiplicativity failed: {vp} vs {}",
                va * vb
            );
            points += 1;
            checked += 1;
        }
    }
    assert_eq!(checked, 1000);
}

#[test]
fn exact_eval_is_ring_homomorphism() {
    // The exact evaluation with independent circle coordinates is a ring
    // homomorphism: check additivity and multiplicativity exactly.
    let mut rng = g2roll::rng::Rng::new(77);
    let params = Params::from_ints(2, 1);
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = expr();
    for _ in 0..8 {
        let a = strategy.new_tree(&mut runner).unwrap().current();
        let b = strategy.new_tree(&mut runner).unwrap().current();
        let mut done = 0;
        while done < 10 {
            let p = g2roll::rng::sample_an_exact(&mut rng, &params);
            let (Ok(va), Ok(vb)) = (a.eval_exact(&p), b.eval_exact(&p)) else {
                continue;
            };
            assert_eq!(a.add(&b).eval_exact(&p).unwrap(), &va + &vb);
            assert_eq!(a.mul(&b).eval_exact(&p).unwrap(), &va * &vb);
            done += 1;
        }
    }
}
