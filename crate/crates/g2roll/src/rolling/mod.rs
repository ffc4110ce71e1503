//! Factory for the concrete geometry of the rolling configuration space:
//! the annihilating coframe, the rank-2 distribution, the metric
//! representative of the conformal structure, the adapted flat-model and
//! Engel coordinate maps, the inclusion/projection of `R^2 x S^1`, and the
//! seed fields of the symmetry algebra.

mod cubic;
mod surface;

pub use cubic::{profile_derivatives, solve_h, x_of_h, CubicBranch, CubicSolution};
pub use surface::{
    first_integrals, gauss_curvature, lambda_mu, nurowski_coframe_general, real_cbrt, theta3_row,
    GeneralCoframe, GeneralSurface, RollingError, SurfaceMetric,
};

use crate::chart::{AN, C5, PC, R5};
use crate::expr::Expr;
use crate::geom::{pullback_oneform, CoordMap, OneForm, SymTensor, VectorField};
use crate::{rat, Params, Rat};

/// Everything the verification needs about the rolling chart at fixed
/// parameters. Immutable after construction.
pub struct AnChart {
    pub params: Params,
    /// The coframe `omega_1 .. omega_5`; the first three annihilate the
    /// distribution.
    pub omega: [OneForm; 5],
    /// The adapted 1-forms `Theta_1 .. Theta_3`, pulled back to the rolling
    /// chart through `cmap`.
    pub theta: [OneForm; 3],
    /// The same three forms on the flat-model chart, before pullback.
    pub theta_c: [OneForm; 3],
    /// The spanning fields `X^1, X^2` of the distribution.
    pub x: [VectorField; 2],
    /// The metric representative of the conformal structure, expanded in
    /// the coordinate basis.
    pub gtilde: SymTensor,
    /// Rolling chart -> flat-model coordinates `(c1 .. c5)`.
    pub cmap: CoordMap,
    /// Rolling chart -> Engel coordinates `(r1 .. r5)`.
    pub rmap: CoordMap,
    /// Inclusion of `R^2 x S^1` as `{h = 0, q = -(kappa/2c) psi}`.
    pub iota: CoordMap,
    /// Projection onto `R^2 x S^1`.
    pub pi: CoordMap,
}

fn p(text: &str, params: &Params) -> Expr {
    Expr::parse(text, params).unwrap_or_else(|e| panic!("bad builder expression {text:?}: {e}"))
}

impl AnChart {
    pub fn build(params: &Params) -> AnChart {
        let pr = params;
        let zero = Expr::zero(&AN);
        let one = Expr::one(&AN);

        // Annihilating coframe in the profile coordinate.
        let omega1 = OneForm::new(
            &AN,
            vec![
                one.clone(),
                zero.clone(),
                p("-cos(psi)*(kappa*c^2 - h^2)/(2*c^3)", pr),
                p("-sin(psi)*h", pr),
                zero.clone(),
            ],
        );
        let omega2 = OneForm::new(
            &AN,
            vec![
                zero.clone(),
                one.clone(),
                p("sin(psi)*(kappa*c^2 - h^2)/(2*c^3)", pr),
                p("-cos(psi)*h", pr),
                zero.clone(),
            ],
        );
        let omega3 = OneForm::new(
            &AN,
            vec![
                zero.clone(),
                zero.clone(),
                zero.clone(),
                p("2*c^3/(kappa*c^2 - h^2)", pr),
                one.clone(),
            ],
        );
        let omega4 = OneForm::new(
            &AN,
            vec![
                zero.clone(),
                zero.clone(),
                p("sin(psi)*(kappa*c^2 - h^2)/(2*c^3)", pr),
                p("-cos(psi)*h", pr),
                zero.clone(),
            ],
        );
        let omega5 = OneForm::new(
            &AN,
            vec![
                zero.clone(),
                zero.clone(),
                p("cos(psi)*(kappa*c^2 - h^2)/(2*c^3)", pr),
                p("sin(psi)*h", pr),
                zero.clone(),
            ],
        );

        // Spanning fields of the distribution.
        let x1 = VectorField::new(
            &AN,
            vec![
                one.clone(),
                zero.clone(),
                p("2*c^3*cos(psi)/(kappa*c^2 - h^2)", pr),
                p("sin(psi)/h", pr),
                p("-2*c^3*sin(psi)/((kappa*c^2 - h^2)*h)", pr),
            ],
        );
        let x2 = VectorField::new(
            &AN,
            vec![
                zero.clone(),
                one.clone(),
                p("-2*c^3*sin(psi)/(kappa*c^2 - h^2)", pr),
                p("cos(psi)/h", pr),
                p("-2*c^3*cos(psi)/((kappa*c^2 - h^2)*h)", pr),
            ],
        );

        // Flat-model coordinates.
        let cmap = CoordMap::new(
            &AN,
            &C5,
            vec![
                p(
                    "6*c^3*theta - 4*h*(2*c^3*q + kappa*c^2*psi)*sin(psi) \
                     - h*(3*c^2*kappa - h^2)*cos(psi)",
                    pr,
                ),
                p(
                    "6*c^3*phi - 4*h*(2*c^3*q + kappa*c^2*psi)*cos(psi) \
                     + h*(3*c^2*kappa - h^2)*sin(psi)",
                    pr,
                ),
                p("2*c^3*q + kappa*c^2*psi", pr),
                p("-sin(psi)*h", pr),
                p("cos(psi)*h", pr),
            ],
        );

        // Adapted 1-forms on the flat model, then pulled back.
        let c = |i: usize| Expr::var(&C5, i);
        let dc = |i: usize| OneForm::coordinate(&C5, i);
        let theta1_c = dc(0)
            .sub(&dc(2).scale_expr(&c(3).scale(&rat(2, 1))))
            .sub(&dc(3).scale_expr(&c(2).scale(&rat(4, 1))));
        let theta2_c = dc(1)
            .add(&dc(2).scale_expr(&c(4).scale(&rat(2, 1))))
            .add(&dc(4).scale_expr(&c(2).scale(&rat(4, 1))));
        let theta3_c = dc(2)
            .add(&dc(3).scale_expr(&c(4)))
            .sub(&dc(4).scale_expr(&c(3)));
        let theta = [
            pullback_oneform(&cmap, &theta1_c).expect("Theta_1 pullback"),
            pullback_oneform(&cmap, &theta2_c).expect("Theta_2 pullback"),
            pullback_oneform(&cmap, &theta3_c).expect("Theta_3 pullback"),
        ];

        // Engel coordinates.
        let rmap = CoordMap::new(
            &AN,
            &R5,
            vec![
                p("cos(psi)*h", pr),
                p("-sin(psi)*h", pr),
                p("2*c^3*q + kappa*c^2*psi", pr),
                p(
                    "-h*(2*c^3*q + kappa*c^2*psi)*cos(psi)/2 + 3*c^3*phi \
                     + h*(3*kappa*c^2 - h^2)*sin(psi)/2",
                    pr,
                ),
                p(
                    "-h*(2*c^3*q + kappa*c^2*psi)*sin(psi)/2 + 3*c^3*theta \
                     - h*(3*kappa*c^2 - h^2)*cos(psi)/2",
                    pr,
                ),
            ],
        );

        // Metric representative, expanded into the coordinate basis.
        let chi1 = OneForm::coordinate(&AN, 0);
        let chi2 = OneForm::coordinate(&AN, 1);
        let chi3 = OneForm::new(
            &AN,
            vec![
                zero.clone(),
                zero.clone(),
                p("(kappa*c^2 - h^2)/(2*c^3)", pr),
                zero.clone(),
                zero.clone(),
            ],
        );
        let chi4 = OneForm::new(
            &AN,
            vec![
                zero.clone(),
                zero.clone(),
                zero.clone(),
                p("h", pr),
                zero.clone(),
            ],
        );
        let minus_one = Expr::int(&AN, -1);
        let gtilde = SymTensor::from_products(
            &AN,
            &[
                (one.clone(), &chi1, &chi1),
                (one.clone(), &chi2, &chi2),
                (minus_one.clone(), &chi3, &chi3),
                (minus_one.clone(), &chi4, &chi4),
                (minus_one.clone(), &omega1, &omega1),
                (minus_one.clone(), &omega2, &omega2),
                (p("-(kappa*c^2 - h^2)*h*sin(psi)/c^3", pr), &omega1, &omega3),
                (p("-(kappa*c^2 - h^2)*h*cos(psi)/c^3", pr), &omega2, &omega3),
                (p("(kappa*c^2 - h^2)^3/(6*c^6)", pr), &omega3, &omega3),
            ],
        );

        // Inclusion and projection of the plane-circle locus
        // {h = 0, q = -(kappa/2c) psi}.
        let fibre_ratio: Rat = -&pr.kappa / (rat(2, 1) * &pr.c);
        let iota = CoordMap::new(
            &PC,
            &AN,
            vec![
                Expr::var(&PC, 0),
                Expr::var(&PC, 1),
                Expr::zero(&PC),
                Expr::var(&PC, 2).scale(&fibre_ratio),
                Expr::var(&PC, 2),
            ],
        );
        let pi = CoordMap::projection(
            &AN,
            &PC,
            vec![Expr::var(&AN, 0), Expr::var(&AN, 1), Expr::var(&AN, 4)],
            vec![
                Expr::var(&AN, 2),
                Expr::var(&AN, 3).sub(&Expr::var(&AN, 4).scale(&fibre_ratio)),
            ],
            vec![
                (2, Expr::zero(&AN)),
                (3, Expr::var(&AN, 4).scale(&fibre_ratio)),
            ],
        );

        AnChart {
            params: params.clone(),
            omega: [omega1, omega2, omega3, omega4, omega5],
            theta,
            theta_c: [theta1_c, theta2_c, theta3_c],
            x: [x1, x2],
            gtilde,
            cmap,
            rmap,
            iota,
            pi,
        }
    }

    /// The three seed fields of the symmetry algebra in rolling-chart
    /// coordinates.
    pub fn generators(&self) -> [VectorField; 3] {
        let pr = &self.params;
        let zero = Expr::zero(&AN);
        let s1 = VectorField::new(
            &AN,
            vec![
                zero.clone(),
                p("(kappa*c^2 - h^2)/(2*c^3)", pr),
                p("-sin(psi)", pr),
                p("(kappa*c^2 - h^2)*cos(psi)/(2*c^3*h)", pr),
                p("-cos(psi)/h", pr),
            ],
        );
        let s2 = VectorField::new(
            &AN,
            vec![
                p("(kappa*c^2 - h^2)/(2*c^3)", pr),
                zero.clone(),
                p("cos(psi)", pr),
                p("(kappa*c^2 - h^2)*sin(psi)/(2*c^3*h)", pr),
                p("-sin(psi)/h", pr),
            ],
        );
        let big = "(2*c^4*(2*c*q + kappa*psi)^2 - (3*kappa*c^2 - h^2)*(kappa*c^2 - h^2))";
        let s3 = VectorField::new(
            &AN,
            vec![
                p(
                    &format!(
                        "-3*(h^2 - kappa*c^2)*phi \
                         - 2*h*(kappa*c^2 - h^2)*(2*c*q + kappa*psi)*cos(psi)/c \
                         - h*{big}*sin(psi)/(2*c^3)"
                    ),
                    pr,
                ),
                p(
                    &format!(
                        "3*(h^2 - kappa*c^2)*theta \
                         - h*{big}*cos(psi)/(2*c^3) \
                         + 2*h*(kappa*c^2 - h^2)*(2*c*q + kappa*psi)*sin(psi)/c"
                    ),
                    pr,
                ),
                p(
                    "-4*c^2*h*(kappa*psi + 2*c*q) + 6*c^3*phi*cos(psi) + 6*c^3*theta*sin(psi)",
                    pr,
                ),
                p(
                    "-(c^4*(2*c*q + kappa*psi)^2 - (3*kappa*c^2 - h^2)*(kappa*c^2 - h^2))/(2*c^3) \
                     + 3*(h^2 - kappa*c^2)*theta*cos(psi)/h \
                     - 3*(h^2 - kappa*c^2)*phi*sin(psi)/h",
                    pr,
                ),
                p(
                    "-(3*kappa*c^2 - h^2) + 6*c^3*theta*cos(psi)/h - 6*c^3*phi*sin(psi)/h",
                    pr,
                ),
            ],
        );
        [s1, s2, s3]
    }
}

/// The rotation-translation fields of the flat model and the three seed
/// fields assembled from them (all polynomial, parameter-free).
pub fn flat_model_generators() -> [VectorField; 3] {
    let c = |i: usize| Expr::var(&C5, i);
    let zero = Expr::zero(&C5);
    let two = |e: &Expr| e.scale(&rat(2, 1));
    let four = |e: &Expr| e.scale(&rat(4, 1));
    // Z^1 = d/dc3 + 2 c5 d/dc2 - 2 c4 d/dc1
    let z1 = VectorField::new(
        &C5,
        vec![
            two(&c(3)).neg(),
            two(&c(4)),
            Expr::one(&C5),
            zero.clone(),
            zero.clone(),
        ],
    );
    // Z^2 = d/dc4 + 4 c3 d/dc1 - 2 c5 d/dc3
    let z2 = VectorField::new(
        &C5,
        vec![
            four(&c(2)),
            zero.clone(),
            two(&c(4)).neg(),
            Expr::one(&C5),
            zero.clone(),
        ],
    );
    // Z^3 = d/dc5 + 2 c4 d/dc3 - 4 c3 d/dc2
    let z3 = VectorField::new(
        &C5,
        vec![
            zero.clone(),
            four(&c(2)).neg(),
            two(&c(3)),
            zero.clone(),
            Expr::one(&C5),
        ],
    );
    let s1 = z2.add(&z1.scale_expr(&c(4)));
    let s2 = z3.sub(&z1.scale_expr(&c(3)));
    // P = c1 c5 + c2 c4 + c3^2
    let p = c(0).mul(&c(4)).add(&c(1).mul(&c(3))).add(&c(2).mul(&c(2)));
    let s3 = z2
        .scale_expr(&c(0))
        .neg()
        .add(&z3.scale_expr(&c(1)))
        .sub(&z1.scale_expr(&p));
    [s1, s2, s3]
}

/// The constant-coefficient split metric `2 dr1 dr5 + 2 dr2 dr4 + dr3^2` in
/// Engel coordinates.
pub fn engel_flat_metric() -> SymTensor {
    let dr = |i: usize| OneForm::coordinate(&R5, i);
    SymTensor::from_products(
        &R5,
        &[
            (Expr::int(&R5, 2), &dr(0), &dr(4)),
            (Expr::int(&R5, 2), &dr(1), &dr(3)),
            (Expr::one(&R5), &dr(2), &dr(2)),
        ],
    )
}
