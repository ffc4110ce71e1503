//! Vector fields, 1-forms and symmetric 2-tensors over a chart, with the
//! exact operations the verification needs: Lie brackets, pairings,
//! pullbacks along coordinate maps, pushforwards along projections and
//! numeric rank sampling.

use crate::chart::Chart;
use crate::expr::{Expr, ExprError};
use crate::linalg;
use crate::Rat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GeomError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("component count {got} does not match chart dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("charts differ: {left} vs {right}")]
    ChartMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("field is not related through the map: {reason} (component {component})")]
    NotRelated { component: String, reason: String },
}

/// A vector field; `components[i]` multiplies the coordinate derivation of
/// the chart coordinate `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub chart: &'static Chart,
    pub components: Vec<Expr>,
}

/// A 1-form; `components[i]` multiplies the coordinate differential of the
/// chart coordinate `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    pub chart: &'static Chart,
    pub components: Vec<Expr>,
}

fn check_components(chart: &'static Chart, comps: &[Expr]) -> Result<(), GeomError> {
    if comps.len() != chart.dim() {
        return Err(GeomError::Dimension {
            expected: chart.dim(),
            got: comps.len(),
        });
    }
    for c in comps {
        if !std::ptr::eq(c.chart, chart) {
            return Err(GeomError::ChartMismatch {
                left: chart.name,
                right: c.chart.name,
            });
        }
    }
    Ok(())
}

impl VectorField {
    pub fn new(chart: &'static Chart, components: Vec<Expr>) -> Self {
        check_components(chart, &components).expect("malformed vector field");
        VectorField { chart, components }
    }

    pub fn zero(chart: &'static Chart) -> Self {
        VectorField {
            chart,
            components: vec![Expr::zero(chart); chart.dim()],
        }
    }

    /// The coordinate field `d/dx_i`.
    pub fn coordinate(chart: &'static Chart, idx: usize) -> Self {
        let mut v = VectorField::zero(chart);
        v.components[idx] = Expr::one(chart);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Expr::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            chart: self.chart,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            chart: self.chart,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            chart: self.chart,
            components: self.components.iter().map(Expr::neg).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> VectorField {
        VectorField {
            chart: self.chart,
            components: self.components.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn scale_expr(&self, e: &Expr) -> VectorField {
        VectorField {
            chart: self.chart,
            components: self.components.iter().map(|c| c.mul(e)).collect(),
        }
    }

    /// Apply the field as a derivation to a scalar.
    pub fn apply(&self, f: &Expr) -> Expr {
        let mut acc = Expr::zero(self.chart);
        for (j, comp) in self.components.iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            acc = acc.add(&comp.mul(&f.derive(j)));
        }
        acc
    }

    /// Evaluate all components at a floating point.
    pub fn eval(&self, p: &[f64]) -> Result<Vec<f64>, ExprError> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    pub fn eval_exact(&self, p: &crate::chart::ExactPoint) -> Result<Vec<Rat>, ExprError> {
        self.components.iter().map(|c| c.eval_exact(p)).collect()
    }
}

impl OneForm {
    pub fn new(chart: &'static Chart, components: Vec<Expr>) -> Self {
        check_components(chart, &components).expect("malformed 1-form");
        OneForm { chart, components }
    }

    pub fn zero(chart: &'static Chart) -> Self {
        OneForm {
            chart,
            components: vec![Expr::zero(chart); chart.dim()],
        }
    }

    /// The coordinate differential `dx_i`.
    pub fn coordinate(chart: &'static Chart, idx: usize) -> Self {
        let mut w = OneForm::zero(chart);
        w.components[idx] = Expr::one(chart);
        w
    }

    /// The differential of a scalar function.
    pub fn differential(f: &Expr) -> OneForm {
        OneForm {
            chart: f.chart,
            components: (0..f.chart.dim()).map(|i| f.derive(i)).collect(),
        }
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm {
            chart: self.chart,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm {
            chart: self.chart,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale_expr(&self, e: &Expr) -> OneForm {
        OneForm {
            chart: self.chart,
            components: self.components.iter().map(|c| c.mul(e)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> OneForm {
        OneForm {
            chart: self.chart,
            components: self.components.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Expr::is_zero)
    }
}

/// Exact pairing `omega(V)`.
pub fn pair(omega: &OneForm, v: &VectorField) -> Expr {
    assert!(std::ptr::eq(omega.chart, v.chart), "chart mismatch in pair");
    let mut acc = Expr::zero(omega.chart);
    for (w, x) in omega.components.iter().zip(&v.components) {
        acc = acc.add(&w.mul(x));
    }
    acc
}

/// Exact Lie bracket `[V, W]^i = sum_j (V^j d_j W^i - W^j d_j V^i)`.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> VectorField {
    assert!(std::ptr::eq(v.chart, w.chart), "chart mismatch in bracket");
    let chart = v.chart;
    let components = (0..chart.dim())
        .map(|i| {
            let mut acc = Expr::zero(chart);
            for j in 0..chart.dim() {
                if !v.components[j].is_zero() {
                    acc = acc.add(&v.components[j].mul(&w.components[i].derive(j)));
                }
                if !w.components[j].is_zero() {
                    acc = acc.sub(&w.components[j].mul(&v.components[i].derive(j)));
                }
            }
            acc
        })
        .collect();
    VectorField { chart, components }
}

/// A symmetric 2-tensor stored as a full matrix of expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    pub chart: &'static Chart,
    pub mat: Vec<Vec<Expr>>,
}

impl SymTensor {
    pub fn zero(chart: &'static Chart) -> Self {
        SymTensor {
            chart,
            mat: vec![vec![Expr::zero(chart); chart.dim()]; chart.dim()],
        }
    }

    /// Accumulate `coeff * sym(alpha, beta)` where the symmetric product of
    /// two 1-forms carries the conventional one-half: `alpha beta =
    /// (alpha (x) beta + beta (x) alpha) / 2`, so `alpha^2 = alpha (x) alpha`.
    pub fn from_products(chart: &'static Chart, parts: &[(Expr, &OneForm, &OneForm)]) -> Self {
        let mut t = SymTensor::zero(chart);
        let half = crate::rat(1, 2);
        for (coeff, a, b) in parts {
            for i in 0..chart.dim() {
                for j in 0..chart.dim() {
                    let prod = a.components[i]
                        .mul(&b.components[j])
                        .add(&b.components[i].mul(&a.components[j]))
                        .scale(&half)
                        .mul(coeff);
                    t.mat[i][j] = t.mat[i][j].add(&prod);
                }
            }
        }
        t
    }

    pub fn add(&self, other: &SymTensor) -> SymTensor {
        SymTensor {
            chart: self.chart,
            mat: self
                .mat
                .iter()
                .zip(&other.mat)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &SymTensor) -> SymTensor {
        SymTensor {
            chart: self.chart,
            mat: self
                .mat
                .iter()
                .zip(&other.mat)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.sub(b)).collect())
                .collect(),
        }
    }

    pub fn scale_expr(&self, e: &Expr) -> SymTensor {
        SymTensor {
            chart: self.chart,
            mat: self
                .mat
                .iter()
                .map(|r| r.iter().map(|a| a.mul(e)).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(|r| r.iter().all(Expr::is_zero))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.chart.dim();
        (0..n).all(|i| (0..i).all(|j| self.mat[i][j] == self.mat[j][i]))
    }

    pub fn eval(&self, p: &[f64]) -> Result<Vec<Vec<f64>>, ExprError> {
        self.mat
            .iter()
            .map(|row| row.iter().map(|e| e.eval(p)).collect())
            .collect()
    }
}

/// Extra data carried by a projection map: the functions cutting out the
/// target locus inside the source, and the corresponding substitution that
/// restricts a source expression to the locus.
#[derive(Debug, Clone)]
pub struct ProjectionData {
    pub constraints: Vec<Expr>,
    pub bindings: Vec<(usize, Expr)>,
}

/// A coordinate map: each target coordinate expressed in the source ring.
#[derive(Debug, Clone)]
pub struct CoordMap {
    pub source: &'static Chart,
    pub target: &'static Chart,
    pub images: Vec<Expr>,
    pub projection: Option<ProjectionData>,
}

impl CoordMap {
    pub fn new(source: &'static Chart, target: &'static Chart, images: Vec<Expr>) -> Self {
        assert_eq!(
            images.len(),
            target.dim(),
            "one image per target coordinate"
        );
        for img in &images {
            assert!(
                std::ptr::eq(img.chart, source),
                "images must lie in the source ring"
            );
        }
        CoordMap {
            source,
            target,
            images,
            projection: None,
        }
    }

    pub fn projection(
        source: &'static Chart,
        target: &'static Chart,
        images: Vec<Expr>,
        constraints: Vec<Expr>,
        bindings: Vec<(usize, Expr)>,
    ) -> Self {
        let mut m = CoordMap::new(source, target, images);
        m.projection = Some(ProjectionData {
            constraints,
            bindings,
        });
        m
    }

    pub fn identity(chart: &'static Chart) -> Self {
        CoordMap::new(
            chart,
            chart,
            (0..chart.dim()).map(|i| Expr::var(chart, i)).collect(),
        )
    }

    /// Compose a target-chart scalar with the map, producing a source-chart
    /// scalar. The target's rational coordinate may map to a rational
    /// constant or to the source's rational coordinate; the target's angle
    /// must map to the source's angle.
    pub fn compose(&self, f: &Expr) -> Result<Expr, GeomError> {
        if !std::ptr::eq(f.chart, self.target) {
            return Err(GeomError::ChartMismatch {
                left: self.target.name,
                right: f.chart.name,
            });
        }
        let src = self.source;
        // Validate the special roles once.
        let rational_image: Option<RationalImage> = match self.target.rational {
            None => None,
            Some(i) => {
                let img = &self.images[i];
                if let Some(r) = img.as_constant() {
                    Some(RationalImage::Constant(r))
                } else if src.rational.is_some() && img == &Expr::var(src, src.rational.unwrap()) {
                    Some(RationalImage::Identity)
                } else {
                    Some(RationalImage::Unsupported)
                }
            }
        };
        let angle_ok = match self.target.angle {
            None => true,
            Some(i) => src.angle.is_some() && self.images[i] == Expr::var(src, src.angle.unwrap()),
        };
        let mut acc = Expr::zero(src);
        // Cache of image powers per coordinate.
        let mut powers: Vec<Vec<Expr>> = self
            .images
            .iter()
            .map(|img| vec![Expr::one(src), img.clone()])
            .collect();
        for t in f.terms() {
            let mut factor = match (&rational_image, self.target.rational) {
                (None, _) | (_, None) => {
                    Expr::constant(src, t.coeff.as_rat().expect("constant coefficient"))
                }
                (Some(RationalImage::Identity), Some(_)) => Expr::from_hcoeff(src, t.coeff.clone()),
                (Some(RationalImage::Constant(r)), Some(i)) => {
                    if t.coeff.is_polynomial() || !t.coeff.pole_at(r) {
                        Expr::constant(src, t.coeff.eval_rat(r).expect("checked pole"))
                    } else {
                        return Err(GeomError::Expr(ExprError::SingularSubstitution {
                            binding: format!("{} -> {}", self.target.coords[i], r),
                        }));
                    }
                }
                (Some(RationalImage::Unsupported), Some(i)) => {
                    if t.coeff.as_rat().is_some() {
                        Expr::constant(src, t.coeff.as_rat().unwrap())
                    } else {
                        return Err(GeomError::Expr(ExprError::UnsupportedSubstitution {
                            coord: self.target.coords[i].to_string(),
                            reason: "profile coordinate must map to a constant or itself"
                                .to_string(),
                        }));
                    }
                }
            };
            for (i, &p) in t.pows.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                while powers[i].len() <= p as usize {
                    let next = powers[i].last().unwrap().mul(&self.images[i]);
                    powers[i].push(next);
                }
                factor = factor.mul(&powers[i][p as usize]);
            }
            if !t.harm.is_unit() {
                if !angle_ok {
                    return Err(GeomError::Expr(ExprError::UnsupportedSubstitution {
                        coord: self.target.coords[self.target.angle.unwrap()].to_string(),
                        reason: "harmonics only transport along the identity on the angle"
                            .to_string(),
                    }));
                }
                let h = Expr::harmonic(src, t.harm.kind, t.harm.k);
                factor = factor.mul(&h);
            }
            acc = acc.add(&factor);
        }
        Ok(acc)
    }

    /// The Jacobian `J[i][j] = d(image_i)/d(source_j)` of the map.
    pub fn jacobian(&self) -> Vec<Vec<Expr>> {
        self.images
            .iter()
            .map(|img| (0..self.source.dim()).map(|j| img.derive(j)).collect())
            .collect()
    }
}

enum RationalImage {
    Constant(Rat),
    Identity,
    Unsupported,
}

/// Pullback of a target-chart 1-form: `(m^* w)_j = sum_i (w_i o m) J[i][j]`.
pub fn pullback_oneform(m: &CoordMap, omega: &OneForm) -> Result<OneForm, GeomError> {
    if !std::ptr::eq(omega.chart, m.target) {
        return Err(GeomError::ChartMismatch {
            left: m.target.name,
            right: omega.chart.name,
        });
    }
    let jac = m.jacobian();
    let mut comps = vec![Expr::zero(m.source); m.source.dim()];
    for (i, w) in omega.components.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let wi = m.compose(w)?;
        for (j, comp) in comps.iter_mut().enumerate() {
            if jac[i][j].is_zero() {
                continue;
            }
            *comp = comp.add(&wi.mul(&jac[i][j]));
        }
    }
    Ok(OneForm {
        chart: m.source,
        components: comps,
    })
}

/// Pullback of a target-chart symmetric 2-tensor through the map.
pub fn pullback_metric(m: &CoordMap, g: &SymTensor) -> Result<SymTensor, GeomError> {
    if !std::ptr::eq(g.chart, m.target) {
        return Err(GeomError::ChartMismatch {
            left: m.target.name,
            right: g.chart.name,
        });
    }
    let jac = m.jacobian();
    let n = m.source.dim();
    let mut out = SymTensor::zero(m.source);
    for (a, row) in g.mat.iter().enumerate() {
        for (b, entry) in row.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let composed = m.compose(entry)?;
            for j in 0..n {
                if jac[a][j].is_zero() {
                    continue;
                }
                let partial = composed.mul(&jac[a][j]);
                for k in 0..n {
                    if jac[b][k].is_zero() {
                        continue;
                    }
                    out.mat[j][k] = out.mat[j][k].add(&partial.mul(&jac[b][k]));
                }
            }
        }
    }
    Ok(out)
}

/// Pushforward of a source field through a projection map. Tangency to the
/// target locus is checked exactly first; the result must be expressible on
/// the target chart after restricting the fibre coordinates.
pub fn related_through(m: &CoordMap, v: &VectorField) -> Result<VectorField, GeomError> {
    if !std::ptr::eq(v.chart, m.source) {
        return Err(GeomError::ChartMismatch {
            left: m.source.name,
            right: v.chart.name,
        });
    }
    let proj = m
        .projection
        .as_ref()
        .expect("related_through needs a projection map");
    for (k, constraint) in proj.constraints.iter().enumerate() {
        let deriv = v.apply(constraint);
        let on_locus = deriv
            .substitute(&proj.bindings)
            .map_err(|e| GeomError::NotRelated {
                component: format!("constraint {k}"),
                reason: e.to_string(),
            })?;
        if !on_locus.is_zero() {
            return Err(GeomError::NotRelated {
                component: format!("constraint {k}"),
                reason: format!("field is not tangent: residual {on_locus}"),
            });
        }
    }
    let mut comps = Vec::with_capacity(m.target.dim());
    for (i, img) in m.images.iter().enumerate() {
        let pushed = v.apply(img);
        let restricted = pushed
            .substitute(&proj.bindings)
            .map_err(|e| GeomError::NotRelated {
                component: m.target.coords[i].to_string(),
                reason: e.to_string(),
            })?;
        let transported = restricted
            .transport(m.target)
            .map_err(|e| GeomError::NotRelated {
                component: m.target.coords[i].to_string(),
                reason: format!("depends on a fibre coordinate: {e}"),
            })?;
        comps.push(transported);
    }
    Ok(VectorField {
        chart: m.target,
        components: comps,
    })
}

/// Whether `w` on the target chart corresponds to `v` on the source chart
/// through the (locally invertible) map: `v(m_i) = w^i o m` for all `i`.
pub fn is_related(m: &CoordMap, v: &VectorField, w: &VectorField) -> Result<bool, GeomError> {
    if !std::ptr::eq(v.chart, m.source) || !std::ptr::eq(w.chart, m.target) {
        return Err(GeomError::ChartMismatch {
            left: m.source.name,
            right: v.chart.name,
        });
    }
    for (i, img) in m.images.iter().enumerate() {
        let lhs = v.apply(img);
        let rhs = m.compose(&w.components[i])?;
        if !lhs.sub(&rhs).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numeric rank of a family of fields at a point, with relative
/// singular-value threshold `1e-9`.
pub fn rank_at(fields: &[&VectorField], p: &[f64]) -> Result<usize, ExprError> {
    let rows = fields
        .iter()
        .map(|f| f.eval(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(linalg::numeric_rank(&rows, 1e-9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{AN, C5};
    use crate::{rat, rint, Params};

    #[test]
    fn coordinate_fields_commute() {
        let t = VectorField::coordinate(&AN, 0);
        let p = VectorField::coordinate(&AN, 1);
        assert!(lie_bracket(&t, &p).is_zero());
    }

    #[test]
    fn pairing_of_coordinates() {
        let dtheta = OneForm::coordinate(&AN, 0);
        let dt = VectorField::coordinate(&AN, 0);
        assert_eq!(pair(&dtheta, &dt).as_constant(), Some(rint(1)));
    }

    #[test]
    fn bracket_bilinear_antisymmetric() {
        let params = Params::from_ints(1, 1);
        let v = VectorField::new(
            &AN,
            vec![
                Expr::parse("h^2*sin(psi)", &params).unwrap(),
                Expr::parse("theta*q", &params).unwrap(),
                Expr::parse("cos(2*psi)", &params).unwrap(),
                Expr::parse("1/2", &params).unwrap(),
                Expr::parse("phi", &params).unwrap(),
            ],
        );
        let w = VectorField::new(
            &AN,
            vec![
                Expr::parse("q^2", &params).unwrap(),
                Expr::parse("sin(psi)*h", &params).unwrap(),
                Expr::parse("theta", &params).unwrap(),
                Expr::parse("psi*cos(psi)", &params).unwrap(),
                Expr::parse("(1 - h^2)/(2*h)", &params).unwrap(),
            ],
        );
        let vw = lie_bracket(&v, &w);
        let wv = lie_bracket(&w, &v);
        assert!(vw.add(&wv).is_zero());
        // Bilinearity over a rational scalar.
        let left = lie_bracket(&v.scale(&rat(3, 2)), &w);
        assert_eq!(left, vw.scale(&rat(3, 2)));
    }

    #[test]
    fn pullback_of_identity_map_is_identity() {
        let id = CoordMap::identity(&AN);
        let params = Params::from_ints(2, 1);
        let omega = OneForm::new(
            &AN,
            vec![
                Expr::parse("sin(psi)", &params).unwrap(),
                Expr::parse("theta*h", &params).unwrap(),
                Expr::parse("(kappa*c^2 - h^2)/(2*c^3)", &params).unwrap(),
                Expr::parse("q", &params).unwrap(),
                Expr::parse("1", &params).unwrap(),
            ],
        );
        assert_eq!(pullback_oneform(&id, &omega).unwrap(), omega);
        let g = SymTensor::from_products(
            &AN,
            &[
                (Expr::one(&AN), &omega, &omega),
                (
                    Expr::parse("h", &params).unwrap(),
                    &OneForm::coordinate(&AN, 0),
                    &OneForm::coordinate(&AN, 3),
                ),
            ],
        );
        assert_eq!(pullback_metric(&id, &g).unwrap(), g);
    }

    #[test]
    fn differential_matches_gradient() {
        let params = Params::from_ints(0, 1);
        let f = Expr::parse("theta^2*h + q*cos(psi)", &params).unwrap();
        let df = OneForm::differential(&f);
        assert_eq!(df.components[0], Expr::parse("2*theta*h", &params).unwrap());
        assert_eq!(df.components[2], Expr::parse("theta^2", &params).unwrap());
        assert_eq!(
            df.components[4],
            Expr::parse("-q*sin(psi)", &params).unwrap()
        );
    }

    #[test]
    fn compose_through_simple_map() {
        // Map AN -> C5 sending c4 -> -sin(psi) h, c5 -> cos(psi) h; compose
        // the polynomial c4^2 + c5^2 and expect h^2.
        let params = Params::from_ints(0, 1);
        let images = vec![
            Expr::zero(&AN),
            Expr::zero(&AN),
            Expr::zero(&AN),
            Expr::parse("-sin(psi)*h", &params).unwrap(),
            Expr::parse("cos(psi)*h", &params).unwrap(),
        ];
        let m = CoordMap::new(&AN, &C5, images);
        let f = Expr::var_pow(&C5, 3, 2).add(&Expr::var_pow(&C5, 4, 2));
        let composed = m.compose(&f).unwrap();
        assert_eq!(composed, Expr::var_pow(&AN, 2, 2));
    }

    #[test]
    fn rank_of_coordinate_fields() {
        let fields: Vec<VectorField> = (0..3).map(|i| VectorField::coordinate(&AN, i)).collect();
        let refs: Vec<&VectorField> = fields.iter().collect();
        let p = [0.3, -1.2, 0.9, 0.1, 2.0];
        assert_eq!(rank_at(&refs, &p).unwrap(), 3);
    }
}
