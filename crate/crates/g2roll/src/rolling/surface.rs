//! Numeric evaluators for a general surface-of-revolution profile `h(x)`:
//! the invariants `lambda`, `mu`, the conformal coframe, the metric
//! representative and the Gauss curvature of the rolling surfaces.

use super::cubic::{profile_derivatives, CubicBranch};
use crate::rng::rat_to_f64;
use crate::Params;

#[derive(Debug, thiserror::Error)]
pub enum RollingError {
    #[error("degenerate profile: h'' vanishes at the evaluation point")]
    DegenerateSecondDerivative,
    #[error("degenerate profile: h' vanishes at the evaluation point")]
    DegenerateFirstDerivative,
    #[error("singular locus: {0}")]
    Singular(String),
}

type Callback = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A surface-of-revolution profile given by callbacks for `h` and its first
/// four derivatives. The fourth derivative is required because `mu` involves
/// `lambda'`.
pub struct GeneralSurface {
    pub h: Callback,
    pub h1: Callback,
    pub h2: Callback,
    pub h3: Callback,
    pub h4: Callback,
}

impl GeneralSurface {
    pub fn new(h: Callback, h1: Callback, h2: Callback, h3: Callback, h4: Callback) -> Self {
        GeneralSurface { h, h1, h2, h3, h4 }
    }

    /// The unit sphere profile `h(x) = sin x`.
    pub fn sphere() -> Self {
        GeneralSurface {
            h: Box::new(f64::sin),
            h1: Box::new(f64::cos),
            h2: Box::new(|x| -x.sin()),
            h3: Box::new(|x| -x.cos()),
            h4: Box::new(f64::sin),
        }
    }

    /// The degenerate profile `h(x) = x` (a flat cone: `h'' = 0`).
    pub fn linear() -> Self {
        GeneralSurface {
            h: Box::new(|x| x),
            h1: Box::new(|_| 1.0),
            h2: Box::new(|_| 0.0),
            h3: Box::new(|_| 0.0),
            h4: Box::new(|_| 0.0),
        }
    }

    /// The profile cut out by the cubic along a fixed root branch, with
    /// derivatives taken from the closed forms in `h`.
    pub fn from_branch(branch: CubicBranch) -> Self {
        let params = branch.params.clone();
        let b1 = branch.clone();
        let b2 = branch.clone();
        let b3 = branch.clone();
        let b4 = branch.clone();
        let p1 = params.clone();
        let p2 = params.clone();
        let p3 = params.clone();
        let p4 = params;
        GeneralSurface {
            h: Box::new(move |x| branch.at(x)),
            h1: Box::new(move |x| profile_derivatives(&p1, b1.at(x)).0),
            h2: Box::new(move |x| profile_derivatives(&p2, b2.at(x)).1),
            h3: Box::new(move |x| profile_derivatives(&p3, b3.at(x)).2),
            h4: Box::new(move |x| profile_derivatives(&p4, b4.at(x)).3),
        }
    }

    pub fn eval_all(&self, x: f64) -> [f64; 5] {
        [
            (self.h)(x),
            (self.h1)(x),
            (self.h2)(x),
            (self.h3)(x),
            (self.h4)(x),
        ]
    }
}

/// The obstruction invariants of the profile at `x`:
/// `lambda = h''' h' h - h'' h'^2 - 3 h''^2 h` and
/// `mu = 15 lambda h''^2 h - 3 h' h'' (lambda' h - 3 lambda h') + 5 lambda^2`,
/// with `lambda'` expanded symbolically through the fourth derivative.
pub fn lambda_mu(s: &GeneralSurface, x: f64) -> Result<(f64, f64, f64), RollingError> {
    let [h, h1, h2, h3, h4] = s.eval_all(x);
    if h2.abs() < 1e-12 {
        return Err(RollingError::DegenerateSecondDerivative);
    }
    let lambda = h3 * h1 * h - h2 * h1 * h1 - 3.0 * h2 * h2 * h;
    let lambda_prime = h4 * h1 * h - 5.0 * h3 * h2 * h - 5.0 * h2 * h2 * h1;
    let mu = 15.0 * lambda * h2 * h2 * h - 3.0 * h1 * h2 * (lambda_prime * h - 3.0 * lambda * h1)
        + 5.0 * lambda * lambda;
    Ok((lambda, lambda_prime, mu))
}

/// First integrals of the profile equation: `I1 = h h'^3 / h''` (the
/// constant `c^3`) and `I2 = h^2/c^2 + 2c/h'` (the constant `kappa`).
pub fn first_integrals(
    h: f64,
    h1: f64,
    h2: f64,
    params: &Params,
) -> Result<(f64, f64), RollingError> {
    if !h2.is_finite() || h2.abs() < 1e-12 {
        return Err(RollingError::DegenerateSecondDerivative);
    }
    if !h1.is_finite() || h1.abs() < 1e-12 {
        return Err(RollingError::DegenerateFirstDerivative);
    }
    let c = rat_to_f64(&params.c);
    let i1 = h * h1 * h1 * h1 / h2;
    let i2 = h * h / (c * c) + 2.0 * c / h1;
    Ok((i1, i2))
}

/// Sign-preserving real cube root.
pub fn real_cbrt(x: f64) -> f64 {
    x.cbrt()
}

/// Numeric coframe and metric data of the conformal structure over the
/// chart `(theta, phi, x, q, psi)` for a general profile.
#[derive(Debug, Clone)]
pub struct GeneralCoframe {
    /// Rows `theta_1 .. theta_5` over the basis `(dtheta, dphi, dx, dq, dpsi)`.
    pub theta: [[f64; 5]; 5],
    /// Rows `omega_1 .. omega_5` over the same basis.
    pub omega: [[f64; 5]; 5],
    /// The representative `g = 2 t1 t5 - 2 t2 t4 + 4/3 t3^2`.
    pub g: [[f64; 5]; 5],
    /// The rescaled representative `(h''/h)^{-1/3} g`, assembled
    /// independently from the closed metric formula.
    pub gtilde: [[f64; 5]; 5],
}

fn sym_outer(a: &[f64; 5], b: &[f64; 5]) -> [[f64; 5]; 5] {
    let mut m = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            m[i][j] = 0.5 * (a[i] * b[j] + a[j] * b[i]);
        }
    }
    m
}

fn add_scaled(acc: &mut [[f64; 5]; 5], s: f64, m: &[[f64; 5]; 5]) {
    for i in 0..5 {
        for j in 0..5 {
            acc[i][j] += s * m[i][j];
        }
    }
}

/// Evaluate the conformal coframe and the metric representative at a point
/// `(theta, phi, x, q, psi)`; requires `h'' != 0` and `h' != 0`.
pub fn nurowski_coframe_general(
    s: &GeneralSurface,
    p: &[f64; 5],
) -> Result<GeneralCoframe, RollingError> {
    let x = p[2];
    let psi = p[4];
    let [h, h1, h2, _, _] = s.eval_all(x);
    if h2.abs() < 1e-12 {
        return Err(RollingError::DegenerateSecondDerivative);
    }
    if h1.abs() < 1e-12 {
        return Err(RollingError::DegenerateFirstDerivative);
    }
    let (lambda, _, mu) = lambda_mu(s, x)?;
    let (sn, cs) = psi.sin_cos();

    // chi_1 = dtheta, chi_2 = dphi, chi_3 = dx, chi_4 = h dq.
    let chi = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, h, 0.0],
    ];
    let mut omega = [[0.0; 5]; 5];
    // omega_1 = chi_1 - cos chi_3 - sin chi_4
    for j in 0..5 {
        omega[0][j] = chi[0][j] - cs * chi[2][j] - sn * chi[3][j];
        omega[1][j] = chi[1][j] + sn * chi[2][j] - cs * chi[3][j];
        omega[3][j] = sn * chi[2][j] - cs * chi[3][j];
        omega[4][j] = cs * chi[2][j] + sn * chi[3][j];
    }
    // omega_3 = dpsi + (h'/h) chi_4
    omega[2][4] = 1.0;
    omega[2][3] = h1 / h * h; // (h'/h) * h dq
    let omega = omega;

    // Coframe scalings and corrections.
    let cbrt_h_over_h2 = real_cbrt(h / h2);
    let cbrt_h2_over_h = real_cbrt(h2 / h);
    let a = lambda / (10.0 * h * h2 * h2);
    let b = mu / (30.0 * h * h1 * h1 * h2 * h2 * h2);
    let t_corr = (3.0 * h * h2 * h2 + lambda) / (3.0 * h1 * h2 * h2);

    let mut theta = [[0.0; 5]; 5];
    theta[0] = omega[0];
    theta[1] = omega[1];
    for j in 0..5 {
        theta[2][j] = cbrt_h_over_h2 * omega[2][j];
        theta[3][j] = cbrt_h2_over_h
            * (omega[3][j] + (a - b * cs * cs) * omega[1][j] + t_corr * cs * omega[2][j]);
        theta[4][j] = cbrt_h2_over_h
            * (omega[4][j] - (a - b * sn * sn) * omega[0][j] + 2.0 * b * cs * sn * omega[1][j]
                - t_corr * sn * omega[2][j]);
    }

    // g = 2 t1 t5 - 2 t2 t4 + 4/3 t3^2.
    let mut g = [[0.0; 5]; 5];
    add_scaled(&mut g, 2.0, &sym_outer(&theta[0], &theta[4]));
    add_scaled(&mut g, -2.0, &sym_outer(&theta[1], &theta[3]));
    add_scaled(&mut g, 4.0 / 3.0, &sym_outer(&theta[2], &theta[2]));

    // gtilde from the closed formula, assembled independently of the
    // theta_4/theta_5 corrections above.
    let mut gt = [[0.0; 5]; 5];
    add_scaled(&mut gt, 1.0, &sym_outer(&chi[0], &chi[0]));
    add_scaled(&mut gt, 1.0, &sym_outer(&chi[1], &chi[1]));
    add_scaled(&mut gt, -1.0, &sym_outer(&chi[2], &chi[2]));
    add_scaled(&mut gt, -1.0, &sym_outer(&chi[3], &chi[3]));
    let coeff12 = lambda / (5.0 * h * h2 * h2) + 1.0;
    add_scaled(&mut gt, -coeff12, &sym_outer(&omega[0], &omega[0]));
    add_scaled(&mut gt, -coeff12, &sym_outer(&omega[1], &omega[1]));
    let mut mixed = [0.0; 5];
    for j in 0..5 {
        mixed[j] = sn * omega[0][j] + cs * omega[1][j];
    }
    add_scaled(
        &mut gt,
        mu / (15.0 * h * h1 * h1 * h2 * h2 * h2),
        &sym_outer(&mixed, &mixed),
    );
    let cross = 2.0 * (3.0 * h * h2 * h2 + lambda) / (3.0 * h1 * h2 * h2);
    add_scaled(&mut gt, -cross, &sym_outer(&mixed, &omega[2]));
    add_scaled(
        &mut gt,
        4.0 * h / (3.0 * h2),
        &sym_outer(&omega[2], &omega[2]),
    );

    Ok(GeneralCoframe {
        theta,
        omega,
        g,
        gtilde: gt,
    })
}

/// The `theta_3 = (h/h'')^{1/3} omega_3` row alone, which stays defined
/// where `h' = 0` as long as `h'' != 0`. Returns `(theta_3, omega_3)` over
/// the basis `(dtheta, dphi, dx, dq, dpsi)`.
pub fn theta3_row(s: &GeneralSurface, x: f64) -> Result<([f64; 5], [f64; 5]), RollingError> {
    let [h, h1, h2, _, _] = s.eval_all(x);
    if h2.abs() < 1e-12 {
        return Err(RollingError::DegenerateSecondDerivative);
    }
    if h.abs() < 1e-12 {
        return Err(RollingError::Singular("h = 0".to_string()));
    }
    let omega3 = [0.0, 0.0, 0.0, h1, 1.0];
    let scale = real_cbrt(h / h2);
    let theta3 = [0.0, 0.0, 0.0, scale * h1, scale];
    Ok((theta3, omega3))
}

/// The warped surface metrics whose Gauss curvature the construction pins
/// down.
pub enum SurfaceMetric<'a> {
    /// The flat plane `dtheta^2 + dphi^2`.
    Plane,
    /// A surface of revolution `dx^2 + h(x)^2 dq^2`, evaluated at `x`.
    Revolution(&'a GeneralSurface),
    /// The profile form `((kappa c^2 - h^2)/(2 c^3))^2 dh^2 + h^2 dq^2`,
    /// evaluated at `h`.
    Profile(&'a Params),
}

/// Gauss curvature of a warped surface metric by the standard
/// warped-product formula, numerically.
pub fn gauss_curvature(metric: &SurfaceMetric<'_>, coord: f64) -> Result<f64, RollingError> {
    match metric {
        SurfaceMetric::Plane => Ok(0.0),
        SurfaceMetric::Revolution(s) => {
            let h = ((s.h)(coord), (s.h2)(coord));
            if h.0.abs() < 1e-12 {
                return Err(RollingError::Singular("h = 0".to_string()));
            }
            Ok(-h.1 / h.0)
        }
        SurfaceMetric::Profile(params) => {
            let kc2 = rat_to_f64(&params.kc2());
            let two_c3 = rat_to_f64(&params.two_c3());
            let h = coord;
            let f = |h: f64| (kc2 - h * h) / two_c3;
            if h.abs() < 1e-9 || f(h).abs() < 1e-9 {
                return Err(RollingError::Singular(
                    "h = 0 or kappa c^2 - h^2 = 0".to_string(),
                ));
            }
            // K = -(1/(f g)) d/dh (g'/f) with g(h) = h, via central
            // differences with one Richardson level.
            let d_inv_f = |step: f64| (1.0 / f(h + step) - 1.0 / f(h - step)) / (2.0 * step);
            let step = 1e-5 * h.abs().max(1.0);
            let coarse = d_inv_f(step);
            let fine = d_inv_f(step / 2.0);
            let deriv = (4.0 * fine - coarse) / 3.0;
            Ok(-deriv / (f(h) * h))
        }
    }
}
