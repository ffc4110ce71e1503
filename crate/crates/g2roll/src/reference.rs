//! Hand-transcribed coordinate expressions used as independent oracles.
//!
//! The generation pipeline in [`crate::g2alg`] produces every field from
//! Lie brackets of the three seeds. The lists here are written out term by
//! term instead, so that agreement between the two routes checks both the
//! bracket engine and the transcription. Terms are grouped by the trig
//! basis `(1, cos, sin, cos 2, sin 2, cos 3, sin 3)` of the fibre angle.

use crate::chart::{AN, C4, PC};
use crate::expr::Expr;
use crate::geom::VectorField;
use crate::{rint, Params, Rat};

/// Names of the 14 basis fields, in generation order: six short-root
/// fields, six long-root fields, two commuting fields spanning the Cartan
/// subalgebra.
pub const BASIS_NAMES: [&str; 14] = [
    "S1", "S2", "S3", "S4", "S5", "S6", "L1", "L2", "L3", "L4", "L5", "L6", "H1", "H2",
];

fn v(components: [&str; 5], params: &Params) -> VectorField {
    VectorField::new(
        &AN,
        components
            .iter()
            .map(|t| {
                Expr::parse(t, params)
                    .unwrap_or_else(|e| panic!("bad reference expression {t:?}: {e}"))
            })
            .collect(),
    )
}

/// The full basis at `kappa = 0`, `c = 1`, in rolling-chart coordinates,
/// ordered as [`BASIS_NAMES`].
pub fn unit_basis() -> Vec<VectorField> {
    let pr = &Params::from_ints(0, 1);
    let s1 = v(
        ["0", "-h^2/2", "-sin(psi)", "-h*cos(psi)/2", "-cos(psi)/h"],
        pr,
    );
    let s2 = v(
        ["-h^2/2", "0", "cos(psi)", "-h*sin(psi)/2", "-sin(psi)/h"],
        pr,
    );
    let s3 = v(
        [
            "-3*h^2*phi + 4*h^3*q*cos(psi) - h*(8*q^2 - h^4)*sin(psi)/2",
            "3*h^2*theta - h*(8*q^2 - h^4)*cos(psi)/2 - 4*h^3*q*sin(psi)",
            "-8*h*q + 6*phi*cos(psi) + 6*theta*sin(psi)",
            "-(4*q^2 - h^4)/2 + 3*h*theta*cos(psi) - 3*h*phi*sin(psi)",
            "h^2 + 6*theta*cos(psi)/h - 6*phi*sin(psi)/h",
        ],
        pr,
    );
    let s4 = v(["sin(psi)*h", "cos(psi)*h", "0", "1", "0"], pr);
    let s5 = v(
        [
            "2*q*h^2 + 6*theta*h*sin(psi) + 2*q*h^2*cos(2*psi)",
            "-(4*q^2 - h^4) + 6*theta*h*cos(psi) - 2*q*h^2*sin(2*psi)",
            "2*h^2*sin(psi) - 8*q*cos(psi)",
            "6*theta - 2*q*h*sin(psi) + h^3*cos(psi)",
            "8*q*sin(psi)/h",
        ],
        pr,
    );
    let s6 = v(
        [
            "-(4*q^2 - h^4) - 6*phi*h*sin(psi) + 2*q*h^2*sin(2*psi)",
            "-2*q*h^2 - 6*phi*h*cos(psi) + 2*q*h^2*cos(2*psi)",
            "-2*h^2*cos(psi) - 8*q*sin(psi)",
            "-6*phi + 2*q*h*cos(psi) + h^3*sin(psi)",
            "-8*q*cos(psi)/h",
        ],
        pr,
    );
    let l1 = v(["-1", "0", "0", "0", "0"], pr);
    let l2 = v(["0", "1", "0", "0", "0"], pr);
    let l3 = v(
        [
            "-h^3*(3*sin(psi) + sin(3*psi))/2",
            "6*theta + h^3*(3*cos(psi) - cos(3*psi))/2",
            "3*h*sin(2*psi)",
            "0",
            "-3 + 3*cos(2*psi)",
        ],
        pr,
    );
    let l4 = v(
        [
            "h^6 + 36*theta^2 - 9*h^3*phi*sin(psi) + 9*h^3*theta*cos(psi) \
             + 6*q*h^4*sin(2*psi) + 12*q^2*h^2*cos(2*psi) \
             + 3*h^3*theta*cos(3*psi) - 3*h^3*phi*sin(3*psi)",
            "-(2*q*(8*q^2 + 3*h^4) - 36*phi*theta) + 9*h^3*theta*sin(psi) \
             + 9*h^3*phi*cos(psi) - 12*q^2*h^2*sin(2*psi) + 6*q*h^4*cos(2*psi) \
             - 3*h^3*phi*cos(3*psi) - 3*h^3*theta*sin(3*psi)",
            "18*theta*h - 24*q*h^2*sin(psi) - 24*q^2*cos(psi) \
             + 18*h*phi*sin(2*psi) - 18*h*theta*cos(2*psi)",
            "36*theta*q - 24*q^2*h*sin(psi) + 6*q*h^3*cos(psi)",
            "-18*phi + 6*(h^4 + 4*q^2)*sin(psi)/h + 18*theta*sin(2*psi) \
             + 18*phi*cos(2*psi)",
        ],
        pr,
    );
    let l5 = v(
        [
            "-(2*q*(8*q^2 + 3*h^4) + 36*phi*theta) + 9*h^3*phi*cos(psi) \
             + 9*h^3*theta*sin(psi) - 6*q*h^4*cos(2*psi) + 12*q^2*h^2*sin(2*psi) \
             + 3*h^3*phi*cos(3*psi) + 3*h^3*theta*sin(3*psi)",
            "-(h^6 + 36*phi^2) - 9*h^3*theta*cos(psi) + 9*h^3*phi*sin(psi) \
             + 12*q^2*h^2*cos(2*psi) + 6*q*h^4*sin(2*psi) \
             + 3*h^3*theta*cos(3*psi) - 3*h^3*phi*sin(3*psi)",
            "-18*phi*h + 24*h^2*q*cos(psi) - 24*q^2*sin(psi) \
             - 18*h*phi*cos(2*psi) - 18*h*theta*sin(2*psi)",
            "-36*phi*q + 24*q^2*h*cos(psi) + 6*q*h^3*sin(psi)",
            "-18*theta - 6*(h^4 + 4*q^2)*cos(psi)/h - 18*theta*cos(2*psi) \
             + 18*phi*sin(2*psi)",
        ],
        pr,
    );
    let l6 = v(
        [
            "6*phi - h^3*(3*sin(psi) + sin(3*psi))/2",
            "h^3*(3*cos(psi) - cos(3*psi))/2",
            "3*h*sin(2*psi)",
            "0",
            "3 + 3*cos(2*psi)",
        ],
        pr,
    );
    let [h1, h2] = cartan_pair(pr);
    vec![s1, s2, s3, s4, s5, s6, l1, l2, l3, l4, l5, l6, h1, h2]
}

/// The two commuting fields spanning the Cartan subalgebra, at general
/// parameters.
pub fn cartan_pair(params: &Params) -> [VectorField; 2] {
    let h1 = v(
        [
            "h*(3*h^2 - 4*kappa*c^2)*cos(psi)/(2*c^3) + h^3*cos(3*psi)/(2*c^3)",
            "-6*phi + h*(3*h^2 - 8*kappa*c^2)*sin(psi)/(2*c^3) - h^3*sin(3*psi)/(2*c^3)",
            "-h - 3*h*cos(2*psi)",
            "-(2*c*q + kappa*psi)/c - 3*kappa*sin(2*psi)/(2*c)",
            "3*sin(2*psi)",
        ],
        params,
    );
    let h2 = v(
        [
            "-6*theta + 2*h*kappa*cos(psi)/c",
            "-6*phi - 2*h*kappa*sin(psi)/c",
            "-2*h",
            "-2*(2*c*q + kappa*psi)/c",
            "0",
        ],
        params,
    );
    [h1, h2]
}

/// The eight-field list on the hypersurface `{c3 = 0}` of the flat model:
/// the long-root fields and the Cartan pair, in `(c1, c2, c4, c5)`.
pub fn sl3_on_hypersurface() -> Vec<(&'static str, VectorField)> {
    let c = |i: usize| Expr::var(&C4, i);
    let k = |n: i64| Expr::int(&C4, n);
    let zero = Expr::zero(&C4);
    let six = |e: Expr| e.scale(&rint(6));
    let fields = vec![
        (
            "L1",
            VectorField::new(&C4, vec![k(-6), zero.clone(), zero.clone(), zero.clone()]),
        ),
        (
            "L2",
            VectorField::new(&C4, vec![zero.clone(), k(6), zero.clone(), zero.clone()]),
        ),
        (
            "L3",
            VectorField::new(
                &C4,
                vec![zero.clone(), six(c(0)), zero.clone(), six(c(2)).neg()],
            ),
        ),
        (
            "L4",
            VectorField::new(
                &C4,
                vec![
                    six(c(0).mul(&c(0))),
                    six(c(0).mul(&c(1))),
                    six(c(0).mul(&c(2))),
                    six(c(1).mul(&c(2))).neg(),
                ],
            ),
        ),
        (
            "L5",
            VectorField::new(
                &C4,
                vec![
                    six(c(0).mul(&c(1))).neg(),
                    six(c(1).mul(&c(1))).neg(),
                    six(c(0).mul(&c(3))),
                    six(c(1).mul(&c(3))).neg(),
                ],
            ),
        ),
        (
            "L6",
            VectorField::new(
                &C4,
                vec![six(c(1)), zero.clone(), six(c(3)).neg(), zero.clone()],
            ),
        ),
        (
            "H1",
            VectorField::new(
                &C4,
                vec![
                    zero.clone(),
                    six(c(1)).neg(),
                    c(2).scale(&rint(2)),
                    c(3).scale(&rint(-4)),
                ],
            ),
        ),
        (
            "H2",
            VectorField::new(
                &C4,
                vec![
                    six(c(0)).neg(),
                    six(c(1)).neg(),
                    c(2).scale(&rint(-2)),
                    c(3).scale(&rint(-2)),
                ],
            ),
        ),
    ];
    fields
}

/// The eight projected fields on `R^2 x S^1` at `c = 1`, in
/// `(theta, phi, psi)`.
pub fn sl3_projected() -> Vec<(&'static str, VectorField)> {
    let pr = &Params::from_ints(0, 1);
    let pc = |t: &str| {
        Expr::parse(t, pr)
            .unwrap_or_else(|e| panic!("bad projected expression {t:?}: {e}"))
            .transport(&PC)
            .expect("projected expressions live on the base")
    };
    let f =
        |comps: [&str; 3]| VectorField::new(&PC, comps.iter().map(|t| pc(t)).collect::<Vec<_>>());
    vec![
        ("L1", f(["-1", "0", "0"])),
        ("L2", f(["0", "1", "0"])),
        ("L3", f(["0", "6*theta", "-6*sin(psi)^2"])),
        (
            "L4",
            f([
                "36*theta^2",
                "36*theta*phi",
                "-36*(sin(psi)*phi - cos(psi)*theta)*sin(psi)",
            ]),
        ),
        (
            "L5",
            f([
                "-36*phi*theta",
                "-36*phi^2",
                "36*(sin(psi)*phi - cos(psi)*theta)*cos(psi)",
            ]),
        ),
        ("L6", f(["6*phi", "0", "6*cos(psi)^2"])),
        ("H1", f(["0", "-6*phi", "6*cos(psi)*sin(psi)"])),
        ("H2", f(["-6*theta", "-6*phi", "0"])),
    ]
}

/// Figure layout of the root diagram: antipodal partner and long/short
/// class for each non-Cartan basis field.
pub fn antipodal_pairs() -> [(&'static str, &'static str); 6] {
    [
        ("S1", "S5"),
        ("S2", "S6"),
        ("S3", "S4"),
        ("L1", "L4"),
        ("L2", "L5"),
        ("L3", "L6"),
    ]
}

/// Whether a basis name labels a long root in the diagram.
pub fn is_long_root(name: &str) -> bool {
    name.starts_with('L')
}

/// The derived Cartan element `(H2 - H1)/4` that spans the horizontal axis
/// of the root diagram. (Its companion `sqrt(3) (H1 + H2) / 12` is
/// irrational and is only ever used numerically.)
pub fn cartan_quarter_difference(h1: &VectorField, h2: &VectorField) -> VectorField {
    h2.sub(h1).scale(&Rat::new(1.into(), 4.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{lie_bracket, pair};
    use crate::rolling::AnChart;

    #[test]
    fn unit_basis_matches_general_seeds_at_unit_parameters() {
        let params = Params::from_ints(0, 1);
        let chart = AnChart::build(&params);
        let seeds = chart.generators();
        let listed = unit_basis();
        for (i, seed) in seeds.iter().enumerate() {
            assert_eq!(seed, &listed[i], "seed {}", BASIS_NAMES[i]);
        }
    }

    #[test]
    fn cartan_fields_commute() {
        for params in Params::default_sweep() {
            let [h1, h2] = cartan_pair(&params);
            assert!(lie_bracket(&h1, &h2).is_zero(), "params {params}");
        }
    }

    #[test]
    fn listed_fields_annihilated_via_distribution_brackets() {
        // Spot check: the Cartan pair preserves the distribution.
        let params = Params::from_ints(0, 1);
        let chart = AnChart::build(&params);
        for field in cartan_pair(&params) {
            for x in &chart.x {
                let b = lie_bracket(&field, x);
                for theta in &chart.theta {
                    assert!(pair(theta, &b).is_zero());
                }
            }
        }
    }
}
