//! Floating-point differential-geometry checks complementing the exact
//! layer: finite-difference curvature and Weyl tensors, growth vectors and
//! ODE residuals.
//!
//! Derivatives use central differences with step `1e-4` and one Richardson
//! extrapolation level. The conformally flat metrics must come out with
//! relative Weyl below `1e-6`; the sphere example must stay above `1e-2`,
//! four orders of magnitude apart.

use crate::geom::{lie_bracket, rank_at, SymTensor};
use crate::linalg;
use crate::rng::{rat_to_f64, Rng};
use crate::rolling::{
    nurowski_coframe_general, profile_derivatives, solve_h, x_of_h, AnChart, GeneralSurface,
};
use crate::Params;

#[derive(Debug, thiserror::Error)]
pub enum NumcheckError {
    #[error("point lies on the singular locus")]
    SingularPoint,
    #[error("metric is numerically singular at the point")]
    DegenerateMetric,
    #[error("finite-difference step failure: Riemann asymmetry {0:.3e}")]
    StepFailure(f64),
    #[error(transparent)]
    Expr(#[from] crate::expr::ExprError),
    #[error(transparent)]
    Rolling(#[from] crate::rolling::RollingError),
}

const FD_STEP: f64 = 1e-4;

pub type MetricFn = Box<dyn Fn(&[f64]) -> Vec<Vec<f64>> + Send + Sync>;
pub type LocusFn = Box<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// A metric supplied as a point-to-matrix callback with a singular-locus
/// predicate.
pub struct MetricCallback {
    pub dim: usize,
    pub component: MetricFn,
    pub singular: LocusFn,
}

impl MetricCallback {
    /// Wrap an exact coordinate-basis tensor on the rolling chart.
    pub fn from_tensor(tensor: SymTensor, params: &Params) -> MetricCallback {
        let kc2 = rat_to_f64(&params.kc2());
        MetricCallback {
            dim: tensor.chart.dim(),
            component: Box::new(move |p| tensor.eval(p).expect("metric evaluation off the poles")),
            singular: Box::new(move |p| p[2].abs() < 1e-6 || (kc2 - p[2] * p[2]).abs() < 1e-3),
        }
    }

    /// The constant split form `2 dr1 dr5 + 2 dr2 dr4 + dr3^2`.
    pub fn engel_flat() -> MetricCallback {
        let mat = vec![
            vec![0.0, 0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0, 0.0],
        ];
        MetricCallback {
            dim: 5,
            component: Box::new(move |_| mat.clone()),
            singular: Box::new(|_| false),
        }
    }

    /// The rescaled representative over a general profile, on the chart
    /// `(theta, phi, x, q, psi)`.
    pub fn general_profile(surface: GeneralSurface) -> MetricCallback {
        let surface = std::sync::Arc::new(surface);
        let s2 = surface.clone();
        MetricCallback {
            dim: 5,
            component: Box::new(move |p| {
                let arr = [p[0], p[1], p[2], p[3], p[4]];
                let frame = nurowski_coframe_general(&surface, &arr)
                    .expect("coframe defined off the singular locus");
                frame.gtilde.iter().map(|r| r.to_vec()).collect()
            }),
            singular: Box::new(move |p| {
                let [h, h1, h2, _, _] = s2.eval_all(p[2]);
                h.abs() < 1e-3 || h1.abs() < 1e-3 || h2.abs() < 1e-3
            }),
        }
    }

    /// Conformally rescale by `factor(p)^2`.
    pub fn conformally_scaled(
        self,
        factor: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> MetricCallback {
        let MetricCallback {
            dim,
            component,
            singular,
        } = self;
        MetricCallback {
            dim,
            component: Box::new(move |p| {
                let f = factor(p);
                let mut m = component(p);
                for row in &mut m {
                    for v in row.iter_mut() {
                        *v *= f * f;
                    }
                }
                m
            }),
            singular,
        }
    }
}

/// Curvature data at a point, all arrays flattened row-major in the index
/// order `(a, b, c, d)`.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub point: Vec<f64>,
    pub christoffel: Vec<f64>,
    pub riemann: Vec<f64>,
    pub ricci: Vec<f64>,
    pub scalar: f64,
    pub weyl: Vec<f64>,
    pub max_riemann: f64,
    pub max_weyl: f64,
    /// `max |Weyl| / max |Riemann|` (monitored against two regimes: below
    /// `1e-6` for conformally flat metrics, above `1e-2` for the sphere).
    pub weyl_rel: f64,
    pub riemann_asymmetry: f64,
}

impl CurvatureReport {
    /// One JSON line, flat arrays in row-major `(a,b,c,d)` order.
    pub fn to_json_line(&self) -> String {
        fn arr(v: &[f64]) -> String {
            let items: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
            format!("[{}]", items.join(","))
        }
        format!(
            "{{\"point\":{},\"christoffel\":{},\"riemann\":{},\"ricci\":{},\"scalar\":{},\"weyl\":{},\"max_riemann\":{},\"max_weyl\":{},\"weyl_rel\":{},\"riemann_asymmetry\":{}}}",
            arr(&self.point),
            arr(&self.christoffel),
            arr(&self.riemann),
            arr(&self.ricci),
            self.scalar,
            arr(&self.weyl),
            self.max_riemann,
            self.max_weyl,
            self.weyl_rel,
            self.riemann_asymmetry
        )
    }
}

fn invert(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for k in 0..n {
        let (pivot, max) = (k..n)
            .map(|r| (r, a[r][k].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if max < 1e-12 {
            return None;
        }
        a.swap(k, pivot);
        inv.swap(k, pivot);
        let d = a[k][k];
        for j in 0..n {
            a[k][j] /= d;
            inv[k][j] /= d;
        }
        for r in 0..n {
            if r == k {
                continue;
            }
            let f = a[r][k];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                a[r][j] -= f * a[k][j];
                inv[r][j] -= f * inv[k][j];
            }
        }
    }
    Some(inv)
}

/// Richardson-extrapolated central difference of a vector-valued function.
fn diff<F: Fn(&[f64]) -> Vec<f64>>(f: &F, p: &[f64], dir: usize, step: f64) -> Vec<f64> {
    let at = |s: f64| {
        let mut q = p.to_vec();
        q[dir] += s;
        f(&q)
    };
    let central = |h: f64| -> Vec<f64> {
        let plus = at(h);
        let minus = at(-h);
        plus.iter()
            .zip(&minus)
            .map(|(a, b)| (a - b) / (2.0 * h))
            .collect()
    };
    let coarse = central(step);
    let fine = central(step / 2.0);
    fine.iter()
        .zip(&coarse)
        .map(|(f4, f1)| (4.0 * f4 - f1) / 3.0)
        .collect()
}

fn christoffel_at(m: &MetricCallback, p: &[f64]) -> Result<Vec<f64>, NumcheckError> {
    let n = m.dim;
    let g = (m.component)(p);
    let ginv = invert(&g).ok_or(NumcheckError::DegenerateMetric)?;
    // dg[d][i][j] = d_d g_ij, flat.
    let flat_metric = |q: &[f64]| -> Vec<f64> {
        let g = (m.component)(q);
        g.into_iter().flatten().collect()
    };
    let mut dg = vec![0.0; n * n * n];
    for d in 0..n {
        let row = diff(&flat_metric, p, d, FD_STEP);
        dg[d * n * n..(d + 1) * n * n].copy_from_slice(&row);
    }
    let dgat = |d: usize, i: usize, j: usize| dg[d * n * n + i * n + j];
    let mut gamma = vec![0.0; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut acc = 0.0;
                for d in 0..n {
                    acc += ginv[a][d] * (dgat(b, d, c) + dgat(c, d, b) - dgat(d, b, c));
                }
                gamma[(a * n + b) * n + c] = 0.5 * acc;
            }
        }
    }
    Ok(gamma)
}

/// Full curvature report at a point: Christoffels and Riemann by central
/// finite differences, Weyl by the five-dimensional decomposition.
pub fn weyl_at(m: &MetricCallback, p: &[f64]) -> Result<CurvatureReport, NumcheckError> {
    let n = m.dim;
    assert_eq!(n, 5, "curvature reports are five-dimensional");
    if (m.singular)(p) {
        return Err(NumcheckError::SingularPoint);
    }
    let g = (m.component)(p);
    let ginv = invert(&g).ok_or(NumcheckError::DegenerateMetric)?;
    let gamma = christoffel_at(m, p)?;
    let gat = |a: usize, b: usize, c: usize| gamma[(a * n + b) * n + c];

    // dGamma[d][a][b][c] = d_d Gamma^a_bc.
    let gamma_fn = |q: &[f64]| christoffel_at(m, q).expect("Christoffel off the singular locus");
    let mut dgamma = vec![0.0; n * n * n * n];
    for d in 0..n {
        let row = diff(&gamma_fn, p, d, FD_STEP);
        dgamma[d * n * n * n..(d + 1) * n * n * n].copy_from_slice(&row);
    }
    let dgat = |d: usize, a: usize, b: usize, c: usize| dgamma[((d * n + a) * n + b) * n + c];

    // R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db
    //           - Gamma^a_de Gamma^e_cb.
    let mut riem_up = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut acc = dgat(c, a, d, b) - dgat(d, a, c, b);
                    for e in 0..n {
                        acc += gat(a, c, e) * gat(e, d, b) - gat(a, d, e) * gat(e, c, b);
                    }
                    riem_up[((a * n + b) * n + c) * n + d] = acc;
                }
            }
        }
    }
    // Lower the first index.
    let mut riem = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut acc = 0.0;
                    for e in 0..n {
                        acc += g[a][e] * riem_up[((e * n + b) * n + c) * n + d];
                    }
                    riem[((a * n + b) * n + c) * n + d] = acc;
                }
            }
        }
    }
    let rat = |a: usize, b: usize, c: usize, d: usize| riem[((a * n + b) * n + c) * n + d];
    let max_riemann = riem.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    // Symmetry residuals flag a failed step.
    let mut asym = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    asym = asym.max((rat(a, b, c, d) + rat(b, a, c, d)).abs());
                    asym = asym.max((rat(a, b, c, d) + rat(a, b, d, c)).abs());
                    asym = asym.max((rat(a, b, c, d) - rat(c, d, a, b)).abs());
                }
            }
        }
    }
    if asym > 1e-6 * max_riemann.max(1e-3) {
        return Err(NumcheckError::StepFailure(asym));
    }

    // Ricci, scalar, Weyl (n = 5).
    let mut ricci = vec![0.0; n * n];
    for b in 0..n {
        for d in 0..n {
            let mut acc = 0.0;
            for a in 0..n {
                acc += riem_up[((a * n + b) * n + a) * n + d];
            }
            ricci[b * n + d] = acc;
        }
    }
    let mut scalar = 0.0;
    for b in 0..n {
        for d in 0..n {
            scalar += ginv[b][d] * ricci[b * n + d];
        }
    }
    let ric = |a: usize, b: usize| ricci[a * n + b];
    let nm2 = (n - 2) as f64;
    let nm1 = (n - 1) as f64;
    let mut weyl = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let schouten_part = (g[a][c] * ric(b, d) - g[a][d] * ric(b, c)
                        + g[b][d] * ric(a, c)
                        - g[b][c] * ric(a, d))
                        / nm2;
                    let scalar_part =
                        scalar * (g[a][c] * g[b][d] - g[a][d] * g[b][c]) / (nm1 * nm2);
                    weyl[((a * n + b) * n + c) * n + d] =
                        rat(a, b, c, d) - schouten_part + scalar_part;
                }
            }
        }
    }
    let max_weyl = weyl.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let weyl_rel = if max_riemann > 0.0 {
        max_weyl / max_riemann
    } else {
        0.0
    };
    Ok(CurvatureReport {
        point: p.to_vec(),
        christoffel: gamma,
        riemann: riem,
        ricci,
        scalar,
        weyl,
        max_riemann,
        max_weyl,
        weyl_rel,
        riemann_asymmetry: asym,
    })
}

/// Growth-vector verdict at one point of the exact rolling chart.
pub fn growth_vector_at(
    chart: &AnChart,
    p: &[f64],
) -> Result<(usize, usize, usize), NumcheckError> {
    let x1 = &chart.x[0];
    let x2 = &chart.x[1];
    let b12 = lie_bracket(x1, x2);
    let b112 = lie_bracket(x1, &b12);
    let b212 = lie_bracket(x2, &b12);
    let r1 = rank_at(&[x1, x2], p)?;
    let r2 = rank_at(&[x1, x2, &b12], p)?;
    let r3 = rank_at(&[x1, x2, &b12, &b112, &b212], p)?;
    Ok((r1, r2, r3))
}

/// Growth-vector verdicts at `count` random generic points.
pub fn growth_vector(
    chart: &AnChart,
    seed: u64,
    count: usize,
) -> Result<Vec<(usize, usize, usize)>, NumcheckError> {
    let mut rng = Rng::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let p = crate::rng::sample_an_f64(&mut rng, &chart.params);
        out.push(growth_vector_at(chart, &p)?);
    }
    Ok(out)
}

/// A field on the general-profile chart `(theta, phi, x, q, psi)` given by
/// a component callback.
pub type NumField = Box<dyn Fn(&[f64; 5]) -> [f64; 5] + Send + Sync>;

/// The spanning fields of the distribution over a general profile.
pub fn general_distribution(surface: std::sync::Arc<GeneralSurface>) -> [NumField; 2] {
    let s1 = surface.clone();
    let v1: NumField = Box::new(move |p| {
        let (sn, cs) = p[4].sin_cos();
        let h = (s1.h)(p[2]);
        let h1 = (s1.h1)(p[2]);
        [1.0, 0.0, cs, sn / h, -sn * h1 / h]
    });
    let v2: NumField = Box::new(move |p| {
        let (sn, cs) = p[4].sin_cos();
        let h = (surface.h)(p[2]);
        let h1 = (surface.h1)(p[2]);
        [0.0, 1.0, -sn, cs / h, -cs * h1 / h]
    });
    [v1, v2]
}

/// Numeric Lie bracket of callback fields by Richardson-extrapolated
/// central differences.
pub fn numeric_bracket<'a>(
    v: &'a (dyn Fn(&[f64; 5]) -> [f64; 5] + Send + Sync),
    w: &'a (dyn Fn(&[f64; 5]) -> [f64; 5] + Send + Sync),
    step: f64,
) -> impl Fn(&[f64; 5]) -> [f64; 5] + Send + Sync + 'a {
    move |p| {
        let vp = v(p);
        let wp = w(p);
        let mut out = [0.0; 5];
        for j in 0..5 {
            let dwj = partial(w, p, j, step);
            let dvj = partial(v, p, j, step);
            for i in 0..5 {
                out[i] += vp[j] * dwj[i] - wp[j] * dvj[i];
            }
        }
        out
    }
}

fn partial(
    f: &(dyn Fn(&[f64; 5]) -> [f64; 5] + Send + Sync),
    p: &[f64; 5],
    dir: usize,
    step: f64,
) -> [f64; 5] {
    let eval = |s: f64| {
        let mut q = *p;
        q[dir] += s;
        f(&q)
    };
    let central = |h: f64| {
        let plus = eval(h);
        let minus = eval(-h);
        let mut d = [0.0; 5];
        for i in 0..5 {
            d[i] = (plus[i] - minus[i]) / (2.0 * h);
        }
        d
    };
    let coarse = central(step);
    let fine = central(step / 2.0);
    let mut out = [0.0; 5];
    for i in 0..5 {
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    out
}

/// Growth vector of the general-profile distribution at a point, all
/// brackets numeric.
pub fn growth_vector_general(
    surface: std::sync::Arc<GeneralSurface>,
    p: &[f64; 5],
) -> (usize, usize, usize) {
    let [v1, v2] = general_distribution(surface);
    type FieldRef<'a> = &'a (dyn Fn(&[f64; 5]) -> [f64; 5] + Send + Sync);
    let rows = |fields: &[FieldRef<'_>]| -> Vec<Vec<f64>> {
        fields.iter().map(|f| f(p).to_vec()).collect()
    };
    let b12 = numeric_bracket(&*v1, &*v2, 1e-4);
    let r1 = linalg::numeric_rank(&rows(&[&*v1, &*v2]), 1e-9);
    let r2 = linalg::numeric_rank(&rows(&[&*v1, &*v2, &b12]), 1e-9);
    // Second-level brackets differentiate a finite-difference closure, so a
    // coarser step keeps the noise below the rank threshold.
    let b112 = numeric_bracket(&*v1, &b12, 1e-3);
    let b212 = numeric_bracket(&*v2, &b12, 1e-3);
    let r3 = linalg::numeric_rank(&rows(&[&*v1, &*v2, &b12, &b112, &b212]), 1e-7);
    (r1, r2, r3)
}

/// Residuals of the third-order profile equation
/// `h''' h' h - 3 h''^2 h - h'' h'^2` along the cubic solution branch.
#[derive(Debug, Clone, Copy)]
pub struct OdeResidual {
    pub max_abs: f64,
    /// Residual normalised by the magnitude sum of the three terms, which
    /// is the meaningful figure near the singular locus where the terms
    /// individually blow up like `(kappa c^2 - h^2)^{-6}`.
    pub max_rel: f64,
    pub samples: usize,
}

/// Maximum residual along the branch, sampling `samples` profile values in
/// `[0.5, 1.5]` kept a margin `|kappa c^2 - h^2| >= 0.3` away from the
/// singular locus (inside that margin the individual terms reach `1e9` and
/// double precision cannot certify an absolute bound).
pub fn ode_residual(params: &Params, samples: usize) -> OdeResidual {
    let kc2 = rat_to_f64(&params.kc2());
    let mut worst_abs = 0.0f64;
    let mut worst_rel = 0.0f64;
    let mut taken = 0;
    let mut h = 0.5;
    while taken < samples {
        if (kc2 - h * h).abs() >= 0.3 {
            let x = x_of_h(params, h);
            let root = solve_h(params, x).nearest(h);
            let (h1, h2, h3, _) = profile_derivatives(params, root);
            let t1 = h3 * h1 * root;
            let t2 = 3.0 * h2 * h2 * root;
            let t3 = h2 * h1 * h1;
            let res = (t1 - t2 - t3).abs();
            worst_abs = worst_abs.max(res);
            worst_rel = worst_rel.max(res / (t1.abs() + t2.abs() + t3.abs()).max(1e-300));
            taken += 1;
        }
        h += 1.0 / samples as f64;
        if h > 1.5 {
            h = 0.5 + (h - 1.5) * 0.37;
        }
    }
    OdeResidual {
        max_abs: worst_abs,
        max_rel: worst_rel,
        samples: taken,
    }
}

/// Residual of the profile equation for an arbitrary surface at `x`.
pub fn ode_residual_surface(s: &GeneralSurface, x: f64) -> f64 {
    let [h, h1, h2, h3, _] = s.eval_all(x);
    (h3 * h1 * h - 3.0 * h2 * h2 * h - h2 * h1 * h1).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_metric_has_no_weyl() {
        let m = MetricCallback::engel_flat();
        let p = [0.3, -0.4, 1.1, 0.2, 0.9];
        let report = weyl_at(&m, &p).unwrap();
        assert!(report.max_weyl < 1e-8, "max weyl {}", report.max_weyl);
        assert!(report.max_riemann < 1e-8);
    }

    #[test]
    fn exact_metric_is_conformally_flat_numerically() {
        let params = Params::from_ints(0, 1);
        let chart = AnChart::build(&params);
        let m = MetricCallback::from_tensor(chart.gtilde.clone(), &params);
        let mut rng = Rng::new(9);
        for _ in 0..3 {
            let p = crate::rng::sample_an_f64(&mut rng, &params);
            let report = weyl_at(&m, &p).unwrap();
            assert!(
                report.weyl_rel < 1e-6,
                "relative weyl {} at {:?}",
                report.weyl_rel,
                p
            );
            assert!(report.max_riemann > 1e-4, "metric should be curved");
        }
    }

    #[test]
    fn sphere_metric_is_not_conformally_flat() {
        let m = MetricCallback::general_profile(GeneralSurface::sphere());
        let p = [0.3, -0.2, 0.8, 0.5, 1.3];
        let report = weyl_at(&m, &p).unwrap();
        assert!(report.weyl_rel > 1e-2, "relative weyl {}", report.weyl_rel);
    }

    #[test]
    fn growth_vector_on_exact_chart() {
        let params = Params::from_ints(1, 1);
        let chart = AnChart::build(&params);
        for verdict in growth_vector(&chart, 4, 10).unwrap() {
            assert_eq!(verdict, (2, 3, 5));
        }
    }

    #[test]
    fn growth_vector_sphere_and_degenerate() {
        let sphere = std::sync::Arc::new(GeneralSurface::sphere());
        let p = [0.1, 0.2, 0.7, -0.4, 1.9];
        assert_eq!(growth_vector_general(sphere, &p), (2, 3, 5));
        // h(x) = x has h'' = 0: the first bracket already degenerates.
        let linear = std::sync::Arc::new(GeneralSurface::linear());
        let v = growth_vector_general(linear, &p);
        assert_eq!(v.0, 2);
        assert_eq!(v.1, 2, "bracket rank stays 2 for the flat profile");
    }

    #[test]
    fn ode_residuals() {
        for params in Params::default_sweep() {
            let res = ode_residual(&params, 50);
            assert_eq!(res.samples, 50);
            assert!(res.max_abs < 1e-9, "{params}: abs {:.3e}", res.max_abs);
            assert!(res.max_rel < 1e-12, "{params}: rel {:.3e}", res.max_rel);
        }
        let sphere = GeneralSurface::sphere();
        let res = ode_residual_surface(&sphere, 0.9);
        let expected = 3.0 * 0.9f64.sin().powi(3);
        assert!((res - expected).abs() < 1e-12);
        assert!(res > 0.1);
    }

    #[test]
    fn weyl_scales_conformally() {
        // Under g -> f^2 g the lower-index Weyl tensor scales by f^2; spot
        // check on the sphere metric, whose Weyl tensor is genuinely
        // non-zero.
        let p = [0.4, -0.7, 0.9, 0.6, 2.0];
        let base = MetricCallback::general_profile(GeneralSurface::sphere());
        let plain = weyl_at(&base, &p).unwrap();
        let scaled_metric = MetricCallback::general_profile(GeneralSurface::sphere())
            .conformally_scaled(|q| 1.0 + 0.3 * q[2]);
        let scaled = weyl_at(&scaled_metric, &p).unwrap();
        let f2 = (1.0 + 0.3 * p[2]) * (1.0 + 0.3 * p[2]);
        let norm = plain
            .weyl
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(1e-300);
        for (a, b) in plain.weyl.iter().zip(&scaled.weyl) {
            assert!(
                (f2 * a - b).abs() < 1e-5 * f2 * norm,
                "conformal scaling violated: {a} vs {b}"
            );
        }
    }

    #[test]
    fn json_line_shape() {
        let m = MetricCallback::engel_flat();
        let report = weyl_at(&m, &[0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let line = report.to_json_line();
        assert!(line.starts_with('{') && line.ends_with('}'));
        assert!(line.contains("\"weyl\":["));
        let parsed_len = report.riemann.len();
        assert_eq!(parsed_len, 625);
    }
}
