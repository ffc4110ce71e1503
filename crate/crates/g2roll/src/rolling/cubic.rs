//! The cubic whose roots give the surface profile: solving
//! `h^3 - 3 kappa c^2 h + 6 c^3 (x + alpha) = 0` and following a root branch.

use crate::rng::rat_to_f64;
use crate::Params;

/// Real roots of the profile cubic at a given `x`, with multiplicities.
#[derive(Debug, Clone)]
pub struct CubicSolution {
    /// `(root, multiplicity)`, roots ascending, multiplicities summing to
    /// the number of real roots counted with multiplicity.
    pub roots: Vec<(f64, usize)>,
    /// Coefficients of the depressed cubic `t^3 + p t + q` that was solved.
    pub p: f64,
    pub q: f64,
}

impl CubicSolution {
    pub fn residual(&self, r: f64) -> f64 {
        r * r * r + self.p * r + self.q
    }

    fn scale(&self, r: f64) -> f64 {
        let m = r.abs().max(1.0);
        m * m * m + self.p.abs() * m + self.q.abs()
    }

    /// Relative residual of a root against the cubic.
    pub fn relative_residual(&self, r: f64) -> f64 {
        self.residual(r).abs() / self.scale(r)
    }

    pub fn has_triple_root(&self) -> bool {
        self.roots.iter().any(|&(_, m)| m == 3)
    }

    /// The real root closest to a reference value.
    pub fn nearest(&self, reference: f64) -> f64 {
        self.roots
            .iter()
            .map(|&(r, _)| r)
            .min_by(|a, b| {
                (a - reference)
                    .abs()
                    .partial_cmp(&(b - reference).abs())
                    .unwrap()
            })
            .expect("a cubic always has a real root")
    }
}

/// All real roots of `h^3 - 3 kappa c^2 h + 6 c^3 (x + alpha) = 0`.
pub fn solve_h(params: &Params, x: f64) -> CubicSolution {
    let kc2 = rat_to_f64(&params.kc2());
    let c3 = rat_to_f64(&params.c3());
    let alpha = rat_to_f64(&params.alpha);
    let p = -3.0 * kc2;
    let q = 6.0 * c3 * (x + alpha);
    let mut roots = real_roots(p, q);
    for r in &mut roots {
        *r = newton_polish(*r, p, q);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Cluster nearly equal roots into multiplicities.
    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.abs()));
    let cluster_tol = 1e-7 * scale;
    let mut clustered: Vec<(f64, usize)> = Vec::new();
    for r in roots {
        match clustered.last_mut() {
            Some((prev, mult)) if (r - *prev).abs() <= cluster_tol => {
                *prev = (*prev * *mult as f64 + r) / (*mult as f64 + 1.0);
                *mult += 1;
            }
            _ => clustered.push((r, 1)),
        }
    }
    CubicSolution {
        roots: clustered,
        p,
        q,
    }
}

/// Real roots of the depressed cubic `t^3 + p t + q`, with multiplicity by
/// repetition.
fn real_roots(p: f64, q: f64) -> Vec<f64> {
    if p == 0.0 && q == 0.0 {
        return vec![0.0, 0.0, 0.0];
    }
    let disc = -4.0 * p * p * p - 27.0 * q * q;
    let scale = p.abs().powi(3).max(q.abs().powi(2)).max(1e-300);
    if disc.abs() <= 1e-12 * scale {
        // Degenerate discriminant: double root a, simple root -2a.
        if p.abs() < 1e-300 {
            // p = q = 0 was handled; here q ~ 0 too.
            return vec![0.0, 0.0, 0.0];
        }
        let a = -3.0 * q / (2.0 * p);
        return vec![a, a, -2.0 * a];
    }
    if disc > 0.0 {
        // Three distinct real roots (p < 0 necessarily): trigonometric form.
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos();
        (0..3)
            .map(|k| m * ((phi - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos())
            .collect()
    } else {
        // One real root: Cardano, picking the non-cancelling cube root and
        // recovering the partner from u*v = -p/3.
        let half_q = q / 2.0;
        let rad = (half_q * half_q + p * p * p / 27.0).sqrt();
        let s = if q >= 0.0 {
            -half_q - rad
        } else {
            -half_q + rad
        };
        let u = s.cbrt();
        let v = if u.abs() > 1e-300 {
            -p / (3.0 * u)
        } else {
            0.0
        };
        vec![u + v]
    }
}

fn newton_polish(mut r: f64, p: f64, q: f64) -> f64 {
    for _ in 0..40 {
        let f = r * r * r + p * r + q;
        let df = 3.0 * r * r + p;
        if df.abs() < 1e-14 {
            break;
        }
        let step = f / df;
        r -= step;
        if step.abs() <= 1e-16 * r.abs().max(1.0) {
            break;
        }
    }
    r
}

/// Inverse of the cubic along a solution: `x(h) = kappa h / (2c) - h^3/(6c^3) - alpha`.
pub fn x_of_h(params: &Params, h: f64) -> f64 {
    let kappa = rat_to_f64(&params.kappa);
    let c = rat_to_f64(&params.c);
    let c3 = rat_to_f64(&params.c3());
    let alpha = rat_to_f64(&params.alpha);
    kappa * h / (2.0 * c) - h * h * h / (6.0 * c3) - alpha
}

/// Closed-form derivatives of the profile along a solution branch, as
/// functions of the profile value itself.
pub fn profile_derivatives(params: &Params, h: f64) -> (f64, f64, f64, f64) {
    let kc2 = rat_to_f64(&params.kc2());
    let c3 = rat_to_f64(&params.c3());
    let d = kc2 - h * h;
    let c6 = c3 * c3;
    let c9 = c6 * c3;
    let c12 = c6 * c6;
    let h1 = 2.0 * c3 / d;
    let h2 = 8.0 * c6 * h / d.powi(3);
    let h3 = 16.0 * c9 * (kc2 + 5.0 * h * h) / d.powi(5);
    let h4 = 640.0 * c12 * h * (kc2 + 2.0 * h * h) / d.powi(7);
    (h1, h2, h3, h4)
}

/// A continuous root branch of the profile cubic through an anchor point.
/// Evaluation walks from the anchor in bounded steps, always taking the
/// nearest root, which keeps the branch choice deterministic.
#[derive(Debug, Clone)]
pub struct CubicBranch {
    pub params: Params,
    anchor_x: f64,
    anchor_h: f64,
}

impl CubicBranch {
    pub fn through(params: Params, x0: f64, h0: f64) -> Self {
        let h = solve_h(&params, x0).nearest(h0);
        CubicBranch {
            params,
            anchor_x: x0,
            anchor_h: h,
        }
    }

    /// Branch through the point `(x(h0), h0)` of the solution curve.
    pub fn through_h(params: Params, h0: f64) -> Self {
        let x0 = x_of_h(&params, h0);
        CubicBranch::through(params, x0, h0)
    }

    pub fn at(&self, x: f64) -> f64 {
        let span = x - self.anchor_x;
        let steps = (span.abs() / 0.01).ceil().max(1.0) as usize;
        let dx = span / steps as f64;
        let mut cx = self.anchor_x;
        let mut ch = self.anchor_h;
        for _ in 0..steps {
            cx += dx;
            ch = solve_h(&self.params, cx).nearest(ch);
        }
        ch
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_root_case() {
        // kappa = 0, c = 1, x = -4/3: h^3 - 8 = 0 at h = 2.
        let params = Params::from_ints(0, 1);
        let sol = solve_h(&params, -4.0 / 3.0);
        assert_eq!(sol.roots.len(), 1);
        let (r, m) = sol.roots[0];
        assert_eq!(m, 1);
        assert!((r - 2.0).abs() < 1e-12);
        assert!(sol.relative_residual(r) < 1e-12);
    }

    #[test]
    fn triple_root_at_origin() {
        let params = Params::from_ints(0, 1);
        let sol = solve_h(&params, 0.0);
        assert!(sol.has_triple_root());
        assert_eq!(sol.roots, vec![(0.0, 3)]);
    }

    #[test]
    fn three_distinct_roots() {
        // kappa = 1, c = 1, x = 0: h(h^2 - 3) = 0.
        let params = Params::from_ints(1, 1);
        let sol = solve_h(&params, 0.0);
        let roots: Vec<f64> = sol.roots.iter().map(|&(r, _)| r).collect();
        assert_eq!(roots.len(), 3);
        let s3 = 3.0f64.sqrt();
        assert!((roots[0] + s3).abs() < 1e-12);
        assert!(roots[1].abs() < 1e-12);
        assert!((roots[2] - s3).abs() < 1e-12);
        for &(r, _) in &sol.roots {
            assert!(sol.relative_residual(r) < 1e-12);
        }
    }

    #[test]
    fn branch_is_consistent_with_inverse() {
        let params = Params::from_ints(1, 1);
        let branch = CubicBranch::through_h(params.clone(), 3.0f64.sqrt() - 0.1);
        for k in 0..20 {
            let h = 3.0f64.sqrt() - 0.1 - 0.002 * k as f64;
            let x = x_of_h(&params, h);
            assert!((branch.at(x) - h).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_derivatives_satisfy_first_integral_relations() {
        let params = Params::from_ints(0, 1);
        let (h1, h2, _, _) = profile_derivatives(&params, 2.0);
        assert!((h1 + 0.5).abs() < 1e-15);
        assert!((h2 + 0.25).abs() < 1e-15);
    }
}
