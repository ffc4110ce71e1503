//! Numeric checks of the profile machinery: the cubic solver against the
//! first integrals with independently finite-differenced derivatives, the
//! general coframe against the exact tensor, and the Gauss curvatures.

use g2roll::rng::{rat_to_f64, Rng};
use g2roll::rolling::{
    first_integrals, gauss_curvature, lambda_mu, nurowski_coframe_general, profile_derivatives,
    real_cbrt, solve_h, x_of_h, CubicBranch, GeneralSurface, SurfaceMetric,
};
use g2roll::Params;

/// Sixth-order central first derivative.
fn fd1(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 3.0 * h) + 9.0 * f(x - 2.0 * h) - 45.0 * f(x - h) + 45.0 * f(x + h)
        - 9.0 * f(x + 2.0 * h)
        + f(x + 3.0 * h))
        / (60.0 * h)
}

/// Sixth-order central second derivative.
fn fd2(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (2.0 * f(x - 3.0 * h) - 27.0 * f(x - 2.0 * h) + 270.0 * f(x - h) - 490.0 * f(x)
        + 270.0 * f(x + h)
        - 27.0 * f(x + 2.0 * h)
        + 2.0 * f(x + 3.0 * h))
        / (180.0 * h * h)
}

#[test]
fn first_integrals_from_purely_numeric_derivatives() {
    // The independent oracle: differentiate the cubic-root branch itself by
    // finite differences (no closed derivative forms anywhere) and check
    // that the two first integrals reproduce (c^3, kappa). Anchors are
    // chosen away from the branch folds, where the profile derivative
    // stays moderate.
    let anchors = [1.1, 1.4, 0.7, 1.3];
    for (params, h0) in Params::default_sweep().into_iter().zip(anchors) {
        let c3 = rat_to_f64(&params.c3());
        let kappa = rat_to_f64(&params.kappa);
        let branch = CubicBranch::through_h(params.clone(), h0);
        let f = |x: f64| branch.at(x);
        let x0 = x_of_h(&params, h0);
        let step = 1e-3;
        let h = f(x0);
        let h1 = fd1(&f, x0, step);
        let h2 = fd2(&f, x0, step);
        let (i1, i2) = first_integrals(h, h1, h2, &params).unwrap();
        assert!(
            (i1 - c3).abs() < 1e-8 * c3.abs().max(1.0),
            "{params}: I1 = {i1}, c^3 = {c3}"
        );
        assert!((i2 - kappa).abs() < 1e-8, "{params}: I2 = {i2}");
    }
}

#[test]
fn branch_near_triple_point() {
    // kappa = 1, c = 1: the branch through h = sqrt(3) - 0.1 stays on its
    // root and keeps the integrals.
    let params = Params::from_ints(1, 1);
    let h0 = 3.0f64.sqrt() - 0.1;
    let branch = CubicBranch::through_h(params.clone(), h0);
    let f = |x: f64| branch.at(x);
    let x0 = x_of_h(&params, h0);
    let step = 2e-3;
    let (i1, i2) = first_integrals(f(x0), fd1(&f, x0, step), fd2(&f, x0, step), &params).unwrap();
    assert!((i1 - 1.0).abs() < 1e-8, "I1 = {i1}");
    assert!((i2 - 1.0).abs() < 1e-8, "I2 = {i2}");
}

#[test]
fn nonzero_integration_constant_shifts_the_branch() {
    // alpha translates the abscissa; the branch, integrals and residual
    // machinery must follow it.
    let params = Params::new(g2roll::rat(1, 2), g2roll::rint(1), g2roll::rat(3, 2)).unwrap();
    let h0 = 1.3;
    let x0 = x_of_h(&params, h0);
    let root = solve_h(&params, x0).nearest(h0);
    assert!((root - h0).abs() < 1e-12);
    let branch = CubicBranch::through_h(params.clone(), h0);
    let f = |x: f64| branch.at(x);
    let step = 1e-3;
    let (i1, i2) = first_integrals(f(x0), fd1(&f, x0, step), fd2(&f, x0, step), &params).unwrap();
    assert!((i1 - 1.0).abs() < 1e-8, "I1 = {i1}");
    assert!((i2 - 0.5).abs() < 1e-8, "I2 = {i2}");
    let res = g2roll::numcheck::ode_residual(&params, 30);
    assert!(res.max_abs < 1e-9);
}

#[test]
fn solve_h_examples() {
    let params = Params::from_ints(0, 1);
    let sol = solve_h(&params, -4.0 / 3.0);
    assert_eq!(sol.roots.len(), 1);
    assert!((sol.roots[0].0 - 2.0).abs() < 1e-12);
    let (h1, h2, _, _) = profile_derivatives(&params, 2.0);
    let (i1, i2) = first_integrals(2.0, h1, h2, &params).unwrap();
    assert!((i1 - 1.0).abs() < 1e-12);
    assert!(i2.abs() < 1e-12);

    let sol = solve_h(&Params::from_ints(1, 1), 0.0);
    let roots: Vec<f64> = sol.roots.iter().map(|r| r.0).collect();
    assert_eq!(roots.len(), 3);
    assert!(solve_h(&Params::from_ints(0, 1), 0.0).has_triple_root());
}

#[test]
fn general_coframe_matches_exact_tensor_on_solution_profiles() {
    // Evaluate the general-profile coframe along the cubic branch and
    // compare with the exact coordinate tensor after the x -> h change of
    // chart (dx = ((kappa c^2 - h^2)/(2 c^3)) dh).
    for params in Params::default_sweep() {
        let chart = g2roll::rolling::AnChart::build(&params);
        let kc2 = rat_to_f64(&params.kc2());
        let two_c3 = rat_to_f64(&params.two_c3());
        let branch = CubicBranch::through_h(params.clone(), 0.8);
        let surface = GeneralSurface::from_branch(branch);
        let mut rng = Rng::new(31);
        let mut checked = 0;
        while checked < 8 {
            let h = rng.range(0.55, 1.05);
            if (kc2 - h * h).abs() < 0.25 {
                continue;
            }
            let x = x_of_h(&params, h);
            let p_general = [
                rng.range(-1.5, 1.5),
                rng.range(-1.5, 1.5),
                x,
                rng.range(-1.5, 1.5),
                rng.range(0.0, std::f64::consts::TAU),
            ];
            let frame = nurowski_coframe_general(&surface, &p_general).unwrap();
            let p_exact = [p_general[0], p_general[1], h, p_general[3], p_general[4]];
            let exact = chart.gtilde.eval(&p_exact).unwrap();
            // Jacobian of (theta, phi, x, q, psi) -> (theta, phi, h, q, psi)
            // is the identity except dx/dh.
            let dxdh = (kc2 - h * h) / two_c3;
            for i in 0..5 {
                for j in 0..5 {
                    let mut v = frame.gtilde[i][j];
                    if i == 2 {
                        v *= dxdh;
                    }
                    if j == 2 {
                        v *= dxdh;
                    }
                    let scale = exact[i][j].abs().max(1.0);
                    assert!(
                        (v - exact[i][j]).abs() < 1e-8 * scale,
                        "{params} entry ({i},{j}): general {v} vs exact {}",
                        exact[i][j]
                    );
                }
            }
            // The profile solves the equation, so lambda vanishes here.
            let (lambda, _, _) = lambda_mu(&surface, x).unwrap();
            assert!(lambda.abs() < 1e-9);
            checked += 1;
        }
    }
}

#[test]
fn coframe_and_rescaled_metric_agree_on_solution_profiles() {
    // g from the coframe rows equals (h''/h)^{1/3} gtilde: checks the
    // theta_4/theta_5 corrections against the closed metric formula.
    let params = Params::from_ints(1, 1);
    let branch = CubicBranch::through_h(params.clone(), 0.7);
    let surface = GeneralSurface::from_branch(branch);
    let x = x_of_h(&params, 0.7);
    let p = [0.4, -0.8, x, 1.2, 2.1];
    let frame = nurowski_coframe_general(&surface, &p).unwrap();
    let h = 0.7f64;
    let h2 = profile_derivatives(&params, h).1;
    let scale = real_cbrt(h2 / h);
    for i in 0..5 {
        for j in 0..5 {
            assert!(
                (frame.g[i][j] - scale * frame.gtilde[i][j]).abs() < 1e-9,
                "entry ({i},{j})"
            );
        }
    }
}

#[test]
fn gauss_curvature_matches_closed_form() {
    // K = -8 c^6 / (kappa c^2 - h^2)^3 for the profile metric.
    for params in Params::default_sweep() {
        let kc2 = rat_to_f64(&params.kc2());
        let c6 = rat_to_f64(&params.c3()) * rat_to_f64(&params.c3());
        for h in [0.6, 0.9, 1.3] {
            if (kc2 - h * h).abs() < 0.2 {
                continue;
            }
            let k = gauss_curvature(&SurfaceMetric::Profile(&params), h).unwrap();
            let expected = -8.0 * c6 / (kc2 - h * h).powi(3);
            assert!(
                (k - expected).abs() < 1e-8 * expected.abs().max(1.0),
                "{params} at h={h}: {k} vs {expected}"
            );
        }
    }
    assert_eq!(gauss_curvature(&SurfaceMetric::Plane, 0.3).unwrap(), 0.0);
    let sphere = GeneralSurface::sphere();
    let k = gauss_curvature(&SurfaceMetric::Revolution(&sphere), 1.1).unwrap();
    assert!((k - 1.0).abs() < 1e-8);
}

#[test]
fn sphere_profile_fails_the_equation_but_kills_mu() {
    let s = GeneralSurface::sphere();
    for x in [0.4, 0.9, 1.3] {
        let [h, _, h2, _, _] = s.eval_all(x);
        let (lambda, _, mu) = lambda_mu(&s, x).unwrap();
        assert!((lambda + 3.0 * x.sin().powi(3)).abs() < 1e-10);
        assert!(mu.abs() < 1e-10);
        assert!((3.0 * h * h2 * h2 + lambda).abs() < 1e-10);
        assert!(g2roll::numcheck::ode_residual_surface(&s, x) > 0.1);
    }
}
