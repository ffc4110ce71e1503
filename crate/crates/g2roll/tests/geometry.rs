//! Geometry-layer integration checks: rank growth at sampled points,
//! naturality of the pullback against pushforward, and the projection
//! examples.

use g2roll::expr::Expr;
use g2roll::geom::{lie_bracket, pair, pullback_oneform, rank_at, related_through, OneForm};
use g2roll::rng::{sample_an_f64, Rng};
use g2roll::rolling::AnChart;
use g2roll::{Params, AN, PC};

#[test]
fn growth_ranks_at_generic_points() {
    let params = Params::from_ints(0, 1);
    let chart = AnChart::build(&params);
    let x1 = &chart.x[0];
    let x2 = &chart.x[1];
    let b12 = lie_bracket(x1, x2);
    let b112 = lie_bracket(x1, &b12);
    let b212 = lie_bracket(x2, &b12);
    let mut rng = Rng::new(21);
    for _ in 0..20 {
        let p = sample_an_f64(&mut rng, &params);
        assert_eq!(rank_at(&[x1, x2], &p).unwrap(), 2);
        assert_eq!(rank_at(&[x1, x2, &b12], &p).unwrap(), 3);
        assert_eq!(rank_at(&[x1, x2, &b12, &b112, &b212], &p).unwrap(), 5);
    }
}

#[test]
fn pullback_pairing_naturality() {
    // <pi^* w, V> at p equals <w, dpi(V)> at pi(p) for projectable fields,
    // spot-checked numerically at 100 points of the locus.
    let params = Params::from_ints(0, 1);
    let chart = AnChart::build(&params);
    let algebra = g2roll::g2alg::generate_g2(&chart.generators(), Some(&params), 23).unwrap();
    let omega = OneForm::new(
        &PC,
        vec![
            Expr::cos(&PC, 2),
            Expr::var(&PC, 0),
            Expr::var(&PC, 1).mul(&Expr::sin(&PC, 1)),
        ],
    );
    let pulled = pullback_oneform(&chart.pi, &omega).unwrap();
    let mut rng = Rng::new(5);
    for name in ["L1", "L3", "L4", "H1"] {
        let field = algebra.field(name);
        let projected = related_through(&chart.pi, field).unwrap();
        // The pairing on the total space may carry fibre poles that only
        // cancel on the locus; restrict it exactly first, then compare the
        // two sides numerically.
        let lhs_expr = pair(&pulled, field)
            .substitute(&chart.pi.projection.as_ref().unwrap().bindings)
            .unwrap();
        let rhs_expr = pair(&omega, &projected);
        for _ in 0..25 {
            // Points on the locus {h = 0, q = -(kappa/2c) psi} (kappa = 0).
            let theta = rng.range(-2.0, 2.0);
            let phi = rng.range(-2.0, 2.0);
            let psi = rng.range(0.0, std::f64::consts::TAU);
            let p5 = [theta, phi, 0.0, 0.0, psi];
            let p3 = [theta, phi, psi];
            let lhs = lhs_expr.eval(&p5).unwrap();
            let rhs = rhs_expr.eval(&p3).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-10 * lhs.abs().max(rhs.abs()).max(1.0),
                "{name}: {lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn projection_examples() {
    // L1 = -d/dtheta pushes to itself; L3 projects to the listed field at
    // c = 1; S4 is rejected for failing tangency.
    let params = Params::from_ints(0, 1);
    let chart = AnChart::build(&params);
    let algebra = g2roll::g2alg::generate_g2(&chart.generators(), Some(&params), 23).unwrap();

    let l1 = related_through(&chart.pi, algebra.field("L1")).unwrap();
    assert_eq!(l1, g2roll::VectorField::coordinate(&PC, 0).neg());

    let l3 = related_through(&chart.pi, algebra.field("L3")).unwrap();
    let expected = g2roll::VectorField::new(
        &PC,
        vec![
            Expr::zero(&PC),
            Expr::var(&PC, 0).scale(&g2roll::rint(6)),
            Expr::parse("-6*sin(psi)^2", &params)
                .unwrap()
                .transport(&PC)
                .unwrap(),
        ],
    );
    assert_eq!(l3, expected);

    let err = related_through(&chart.pi, algebra.field("S4")).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("not related"), "unexpected error: {msg}");
}

#[test]
fn annihilator_pairings_from_both_presentations() {
    for params in Params::default_sweep() {
        let chart = AnChart::build(&params);
        // The flat-model forms annihilate the flat-model seeds, and the
        // pulled-back forms annihilate the rolling seeds.
        let flat_seeds = g2roll::rolling::flat_model_generators();
        for theta in &chart.theta_c {
            assert!(pair(theta, &flat_seeds[0]).is_zero());
            assert!(pair(theta, &flat_seeds[1]).is_zero());
        }
        let [s1, s2, _] = chart.generators();
        for theta in &chart.theta {
            assert!(pair(theta, &s1).is_zero());
            assert!(pair(theta, &s2).is_zero());
        }
    }
}

#[test]
fn bracket_chart_guard() {
    // Charts must match; mixing presentations is a programming error.
    let v = g2roll::VectorField::coordinate(&AN, 0);
    let w = g2roll::VectorField::coordinate(&PC, 0);
    let result = std::panic::catch_unwind(|| lie_bracket(&v, &w));
    assert!(result.is_err());
}
