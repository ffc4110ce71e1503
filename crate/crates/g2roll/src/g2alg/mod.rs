//! Bracket-generation of the 14-dimensional split `g2` symmetry algebra
//! from three seed fields, with exact structure constants, Killing form,
//! root decomposition, the `sl3` hypersurface restriction and its
//! projection to `R^2 x S^1`.
//!
//! Structure constants are found by solving an exact linear system built
//! from evaluations at random rational points, then *verified* by exact
//! subtraction in the expression ring; sampling only proposes candidates,
//! it never certifies them.

mod phi;

pub use phi::{
    dihedral_group_order, phi_map, rescaling_identity_holds, sixfold_identity_holds, swap_map,
};

use crate::chart::{Chart, ExactPoint, C4, PC};
use crate::expr::Expr;
use crate::geom::{lie_bracket, pair, related_through, CoordMap, VectorField};
use crate::linalg::RatMat;
use crate::reference::{self, BASIS_NAMES};
use crate::rng::{sample_an_exact, sample_poly_exact, Rng};
use crate::rolling::AnChart;
use crate::{Params, Rat};
use num_traits::Zero;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("generated fields do not span a {expected}-dimensional space (rank {got})")]
    RankDeficient { expected: usize, got: usize },
    #[error("closure failure at bracket [{left}, {right}]: {detail}")]
    ClosureFailure {
        left: String,
        right: String,
        detail: String,
    },
    #[error("the adjoint action of {name} is not diagonal on the basis")]
    NonSemisimpleAction { name: String },
    #[error("restriction obstruction: {0}")]
    Restriction(String),
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
    #[error(transparent)]
    Expr(#[from] crate::expr::ExprError),
}

/// Exact structure-constant tensor `c[i][j][k]`: the coefficient of basis
/// element `k` in `[b_i, b_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructTensor {
    pub dim: usize,
    c: Vec<Rat>,
}

impl StructTensor {
    fn zeros(dim: usize) -> Self {
        StructTensor {
            dim,
            c: vec![Rat::zero(); dim * dim * dim],
        }
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        self.c[(i * self.dim + j) * self.dim + k] = v;
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| *self.at(i, j, k) == -self.at(j, i, k))))
    }

    /// Exact Jacobi identity `sum_m (c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l) = 0`.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = Rat::zero();
                        for m in 0..n {
                            acc += self.at(i, j, m) * self.at(m, k, l);
                            acc += self.at(j, k, m) * self.at(m, i, l);
                            acc += self.at(k, i, m) * self.at(m, j, l);
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Killing form `B_ij = sum_{k,l} c_ik^l c_jl^k`, exact.
    pub fn killing(&self) -> RatMat {
        let n = self.dim;
        RatMat::from_fn(n, n, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..n {
                for l in 0..n {
                    acc += self.at(i, k, l) * self.at(j, l, k);
                }
            }
            acc
        })
    }

    /// The sub-tensor on a subset of basis indices; `None` if the subset is
    /// not closed under the bracket.
    pub fn subalgebra(&self, indices: &[usize]) -> Option<StructTensor> {
        let m = indices.len();
        let mut sub = StructTensor::zeros(m);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                for k in 0..self.dim {
                    let v = self.at(i, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    let pos = indices.iter().position(|&x| x == k)?;
                    sub.set(a, b, pos, v.clone());
                }
            }
        }
        Some(sub)
    }
}

/// A Lie algebra of concrete vector fields with an exactly verified
/// structure-constant tensor.
pub struct LieAlgebra {
    pub chart: &'static Chart,
    pub names: Vec<&'static str>,
    pub basis: Vec<VectorField>,
    pub structure: StructTensor,
}

/// Solves `sum_k x_k basis_k = target` through exact evaluation at sampled
/// rational points. The candidate solution is only trusted after the caller
/// re-verifies it by exact subtraction in the ring.
struct BasisSampler {
    points: Vec<ExactPoint>,
    pivot_rows: Vec<usize>,
    inv: RatMat,
    full: RatMat,
}

impl BasisSampler {
    fn new(basis: &[VectorField], points: Vec<ExactPoint>) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let dim = basis[0].chart.dim();
        let rows = points.len() * dim;
        let mut full = RatMat::zeros(rows, n);
        for (pi, pt) in points.iter().enumerate() {
            for (k, field) in basis.iter().enumerate() {
                let vals = field.eval_exact(pt)?;
                for (d, v) in vals.into_iter().enumerate() {
                    *full.at_mut(pi * dim + d, k) = v;
                }
            }
        }
        let pivot_rows = full.independent_rows();
        if pivot_rows.len() < n {
            return Err(AlgebraError::RankDeficient {
                expected: n,
                got: pivot_rows.len(),
            });
        }
        let sub = RatMat::from_fn(n, n, |i, j| full.at(pivot_rows[i], j).clone());
        let inv = sub.inverse().ok_or(AlgebraError::RankDeficient {
            expected: n,
            got: n - 1,
        })?;
        Ok(BasisSampler {
            points,
            pivot_rows,
            inv,
            full,
        })
    }

    fn solve(&self, target: &VectorField) -> Result<Vec<Rat>, AlgebraError> {
        let dim = target.chart.dim();
        let mut rhs_all = Vec::with_capacity(self.points.len() * dim);
        for pt in &self.points {
            rhs_all.extend(target.eval_exact(pt)?);
        }
        let rhs: Vec<Rat> = self
            .pivot_rows
            .iter()
            .map(|&r| rhs_all[r].clone())
            .collect();
        let x = self.inv.mul_vec(&rhs);
        // Consistency on every sampled row before the ring-level check.
        for (r, want) in rhs_all.iter().enumerate() {
            let mut acc = Rat::zero();
            for (k, xv) in x.iter().enumerate() {
                acc += self.full.at(r, k) * xv;
            }
            if &acc != want {
                return Err(AlgebraError::ClosureFailure {
                    left: String::new(),
                    right: String::new(),
                    detail: format!("sampled row {r} inconsistent"),
                });
            }
        }
        Ok(x)
    }
}

fn combination(basis: &[VectorField], coeffs: &[Rat]) -> VectorField {
    let mut acc = VectorField::zero(basis[0].chart);
    for (b, x) in basis.iter().zip(coeffs) {
        if !x.is_zero() {
            acc = acc.add(&b.scale(x));
        }
    }
    acc
}

/// Exact sample points suitable for a chart: the rolling chart needs its
/// genericity box, polynomial charts take plain rationals.
fn chart_points(
    chart: &'static Chart,
    params: Option<&Params>,
    rng: &mut Rng,
    count: usize,
) -> Vec<ExactPoint> {
    (0..count)
        .map(|_| match params {
            Some(p) if std::ptr::eq(chart, &crate::chart::AN) => sample_an_exact(rng, p),
            _ => sample_poly_exact(rng, chart),
        })
        .collect()
}

/// Bracket-generate a fourteen-dimensional algebra from three seed fields:
/// the six short-root fields, six long-root fields and the commuting pair,
/// then solve and verify every structure constant exactly.
pub fn generate_g2(
    seeds: &[VectorField; 3],
    params: Option<&Params>,
    seed: u64,
) -> Result<LieAlgebra, AlgebraError> {
    let chart = seeds[0].chart;
    let s1 = seeds[0].clone();
    let s2 = seeds[1].clone();
    let s3 = seeds[2].clone();
    let s4 = lie_bracket(&s1, &s2);
    let s5 = lie_bracket(&s2, &s3);
    let s6 = lie_bracket(&s3, &s1);
    let l1 = lie_bracket(&s1, &s4);
    let l2 = lie_bracket(&s2, &s4);
    let l3 = lie_bracket(&s2, &s5);
    let l4 = lie_bracket(&s3, &s5);
    let l5 = lie_bracket(&s3, &s6);
    let l6 = lie_bracket(&s1, &s6);
    let h1 = lie_bracket(&s2, &s6);
    let h2 = lie_bracket(&s4, &s3);
    let basis = vec![s1, s2, s3, s4, s5, s6, l1, l2, l3, l4, l5, l6, h1, h2];
    let structure = solve_structure(&basis, chart, params, seed)?;
    Ok(LieAlgebra {
        chart,
        names: BASIS_NAMES.to_vec(),
        basis,
        structure,
    })
}

/// Solve and exactly verify the full structure-constant tensor of a closed
/// family of fields.
pub fn solve_structure(
    basis: &[VectorField],
    chart: &'static Chart,
    params: Option<&Params>,
    seed: u64,
) -> Result<StructTensor, AlgebraError> {
    let n = basis.len();
    let mut rng = Rng::new(seed);
    // Enough points for an overdetermined system, grown on rank deficiency.
    let mut count = (2 * n).div_ceil(chart.dim()) + 4;
    let sampler = loop {
        match BasisSampler::new(basis, chart_points(chart, params, &mut rng, count)) {
            Ok(s) => break s,
            Err(AlgebraError::RankDeficient { got, .. }) if count < 16 * n => {
                let _ = got;
                count *= 2;
            }
            Err(e) => return Err(e),
        }
    };
    let mut structure = StructTensor::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let bracket = lie_bracket(&basis[i], &basis[j]);
            let coeffs = sampler.solve(&bracket).map_err(|e| match e {
                AlgebraError::ClosureFailure { detail, .. } => AlgebraError::ClosureFailure {
                    left: BASIS_NAMES.get(i).unwrap_or(&"?").to_string(),
                    right: BASIS_NAMES.get(j).unwrap_or(&"?").to_string(),
                    detail,
                },
                other => other,
            })?;
            // The sampled solution is a candidate; certify by exact
            // subtraction in the ring.
            let residual = bracket.sub(&combination(basis, &coeffs));
            if !residual.is_zero() {
                return Err(AlgebraError::ClosureFailure {
                    left: BASIS_NAMES.get(i).unwrap_or(&"?").to_string(),
                    right: BASIS_NAMES.get(j).unwrap_or(&"?").to_string(),
                    detail: "exact residual is non-zero".to_string(),
                });
            }
            for (k, v) in coeffs.into_iter().enumerate() {
                if !v.is_zero() {
                    structure.set(i, j, k, v.clone());
                    structure.set(j, i, k, -v);
                }
            }
        }
    }
    Ok(structure)
}

impl LieAlgebra {
    pub fn killing_form(&self) -> RatMat {
        self.structure.killing()
    }

    pub fn field(&self, name: &str) -> &VectorField {
        let idx = self
            .names
            .iter()
            .position(|n| *n == name)
            .unwrap_or_else(|| panic!("no basis field named {name}"));
        &self.basis[idx]
    }

    /// Numeric dimension of the span of the basis *as fields*: the rank of
    /// the matrix whose rows stack each field's components over `count`
    /// random points.
    pub fn span_rank(&self, params: Option<&Params>, seed: u64, count: usize) -> usize {
        let mut rng = Rng::new(seed);
        let mut rows: Vec<Vec<f64>> = vec![Vec::new(); self.basis.len()];
        let mut used = 0;
        while used < count {
            let p: Vec<f64> = match params {
                Some(pr) if std::ptr::eq(self.chart, &crate::chart::AN) => {
                    crate::rng::sample_an_f64(&mut rng, pr).to_vec()
                }
                _ => (0..self.chart.dim())
                    .map(|_| rng.range(-2.0, 2.0))
                    .collect(),
            };
            let evals: Result<Vec<Vec<f64>>, _> = self.basis.iter().map(|b| b.eval(&p)).collect();
            let Ok(evals) = evals else { continue };
            for (row, vals) in rows.iter_mut().zip(evals) {
                row.extend(vals);
            }
            used += 1;
        }
        crate::linalg::numeric_rank(&rows, 1e-9)
    }
}

/// One root vector of the decomposition: the pair of exact adjoint
/// eigenvalues and its Killing length data.
#[derive(Debug, Clone)]
pub struct RootVector {
    pub name: &'static str,
    pub index: usize,
    pub eigen: (Rat, Rat),
    pub length_sq: Rat,
    pub long: bool,
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub roots: Vec<RootVector>,
    /// Killing form restricted to the Cartan pair, exact.
    pub cartan_gram: RatMat,
}

impl RootDatum {
    /// Root coordinates in a Killing-orthonormal frame of the Cartan dual;
    /// in these coordinates the diagram is the regular hexagram.
    pub fn positions(&self) -> Vec<(f64, f64)> {
        let g = self.cartan_gram.inverse().expect("nondegenerate Cartan");
        let to = crate::rng::rat_to_f64;
        let a = to(g.at(0, 0));
        let b = to(g.at(0, 1));
        let d = to(g.at(1, 1));
        // Lower Cholesky of the inverse Gram: positions u = L^T alpha.
        let l11 = a.sqrt();
        let l21 = b / l11;
        let l22 = (d - l21 * l21).sqrt();
        self.roots
            .iter()
            .map(|r| {
                let a1 = to(&r.eigen.0);
                let a2 = to(&r.eigen.1);
                (l11 * a1 + l21 * a2, l22 * a2)
            })
            .collect()
    }

    /// Largest deviation of any pairwise root angle from a multiple of 30
    /// degrees, radians.
    pub fn max_angle_deviation(&self) -> f64 {
        let pos = self.positions();
        let mut worst: f64 = 0.0;
        for (i, a) in pos.iter().enumerate() {
            for b in pos.iter().skip(i + 1) {
                let ang = (a.1.atan2(a.0) - b.1.atan2(b.0)).rem_euclid(std::f64::consts::PI / 6.0);
                let dev = ang.min(std::f64::consts::PI / 6.0 - ang);
                worst = worst.max(dev);
            }
        }
        worst
    }
}

/// Simultaneous exact eigen-decomposition of the adjoint action of the
/// Cartan pair on the twelve root fields.
pub fn root_decomposition(algebra: &LieAlgebra) -> Result<RootDatum, AlgebraError> {
    let n = algebra.basis.len();
    let (ih1, ih2) = (n - 2, n - 1);
    let st = &algebra.structure;
    if (0..n).any(|k| !st.at(ih1, ih2, k).is_zero()) {
        return Err(AlgebraError::NonSemisimpleAction {
            name: "the Cartan pair does not commute".to_string(),
        });
    }
    let killing = algebra.killing_form();
    let gram = RatMat::from_fn(2, 2, |i, j| killing.at(ih1 + i, ih1 + j).clone());
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| AlgebraError::NonSemisimpleAction {
            name: "degenerate Cartan Killing block".to_string(),
        })?;
    let mut roots = Vec::new();
    for l in 0..n - 2 {
        for k in 0..n {
            if k != l && (!st.at(ih1, l, k).is_zero() || !st.at(ih2, l, k).is_zero()) {
                return Err(AlgebraError::NonSemisimpleAction {
                    name: algebra.names[l].to_string(),
                });
            }
        }
        let eigen = (st.at(ih1, l, l).clone(), st.at(ih2, l, l).clone());
        let alpha = [eigen.0.clone(), eigen.1.clone()];
        let dual = gram_inv.mul_vec(&alpha);
        let length_sq = &alpha[0] * &dual[0] + &alpha[1] * &dual[1];
        roots.push(RootVector {
            name: algebra.names[l],
            index: l,
            eigen,
            length_sq,
            long: false,
        });
    }
    // Classify long/short by the exact length ratio.
    let min_len = roots
        .iter()
        .map(|r| r.length_sq.clone())
        .min()
        .expect("twelve roots");
    for r in &mut roots {
        r.long = r.length_sq != min_len;
    }
    Ok(RootDatum {
        roots,
        cartan_gram: gram,
    })
}

/// Exact dimension of the centralizer of the Cartan pair inside the
/// algebra: the kernel of the stacked adjoint actions of `H1` and `H2` on
/// the span of the basis.
pub fn cartan_centralizer_dimension(algebra: &LieAlgebra) -> usize {
    let n = algebra.basis.len();
    let (ih1, ih2) = (n - 2, n - 1);
    let st = &algebra.structure;
    // Rows: the image coordinates of ad(H1) and ad(H2); columns: the basis.
    let stacked = RatMat::from_fn(2 * n, n, |row, col| {
        if row < n {
            st.at(ih1, col, row).clone()
        } else {
            st.at(ih2, col, row - n).clone()
        }
    });
    n - stacked.rank()
}

/// Exact check that a field preserves the distribution: all pairings of the
/// adapted coframe with brackets against the spanning fields vanish.
pub fn symmetry_check(v: &VectorField, chart: &AnChart) -> bool {
    chart.x.iter().all(|x| {
        let b = lie_bracket(v, x);
        chart.theta.iter().all(|theta| pair(theta, &b).is_zero())
    })
}

/// The restriction of the long-root/Cartan subalgebra to the hypersurface
/// `{c3 = 0}` and its further projection to `R^2 x S^1`.
pub struct Sl3Data {
    /// The eight fields on `(c1, c2, c4, c5)`, paired with their names.
    pub hypersurface: Vec<(&'static str, VectorField)>,
    /// The eight projected fields on `(theta, phi, psi)`.
    pub projected: Vec<(&'static str, VectorField)>,
    /// Structure constants of the restricted presentation, exactly equal to
    /// the corresponding sub-tensor of the parent algebra.
    pub structure: StructTensor,
}

/// Indices of the `sl3` subalgebra members in the fourteen-element basis.
pub fn sl3_indices() -> Vec<usize> {
    (6..14).collect()
}

/// Restrict the eight flat-model fields to `{c3 = 0}`, verify the result
/// against the transcribed list, and check closure with the parent
/// structure constants.
pub fn sl3_restrict(flat_algebra: &LieAlgebra, seed: u64) -> Result<Sl3Data, AlgebraError> {
    assert!(
        std::ptr::eq(flat_algebra.chart, &crate::chart::C5),
        "restriction acts on the flat-model presentation"
    );
    let c5 = &crate::chart::C5;
    let restriction = CoordMap::projection(
        c5,
        &C4,
        vec![
            Expr::var(c5, 0),
            Expr::var(c5, 1),
            Expr::var(c5, 3),
            Expr::var(c5, 4),
        ],
        vec![Expr::var(c5, 2)],
        vec![(2, Expr::zero(c5))],
    );
    let mut hypersurface = Vec::new();
    for &idx in &sl3_indices() {
        let name = flat_algebra.names[idx];
        let restricted = related_through(&restriction, &flat_algebra.basis[idx])
            .map_err(|e| AlgebraError::Restriction(format!("{name}: {e}")))?;
        hypersurface.push((name, restricted));
    }
    // The restriction must reproduce the transcribed list exactly.
    for ((name, got), (_, expected)) in hypersurface.iter().zip(reference::sl3_on_hypersurface()) {
        if got != &expected {
            return Err(AlgebraError::Restriction(format!(
                "{name} restricts to {:?}, expected {:?}",
                got.components, expected.components
            )));
        }
    }
    // Closure on the hypersurface with the same structure constants as the
    // parent subalgebra.
    let fields: Vec<VectorField> = hypersurface.iter().map(|(_, f)| f.clone()).collect();
    let structure = solve_structure(&fields, &C4, None, seed)?;
    let parent = flat_algebra
        .structure
        .subalgebra(&sl3_indices())
        .ok_or_else(|| AlgebraError::Restriction("subalgebra is not closed".to_string()))?;
    if structure != parent {
        return Err(AlgebraError::Restriction(
            "restricted structure constants differ from the parent subalgebra".to_string(),
        ));
    }
    Ok(Sl3Data {
        hypersurface,
        projected: Vec::new(),
        structure,
    })
}

/// Project the `sl3` fields of the rolling-chart presentation onto
/// `R^2 x S^1` through the bundle projection, and verify the structure
/// constants survive unchanged.
pub fn project_to_plane_circle(
    rolling_algebra: &LieAlgebra,
    chart: &AnChart,
    data: &mut Sl3Data,
    seed: u64,
) -> Result<(), AlgebraError> {
    let mut projected = Vec::new();
    for &idx in &sl3_indices() {
        let name = rolling_algebra.names[idx];
        let field = related_through(&chart.pi, &rolling_algebra.basis[idx])
            .map_err(|e| AlgebraError::Restriction(format!("{name}: {e}")))?;
        projected.push((name, field));
    }
    let fields: Vec<VectorField> = projected.iter().map(|(_, f)| f.clone()).collect();
    let structure = solve_structure(&fields, &PC, None, seed)?;
    if structure != data.structure {
        return Err(AlgebraError::Restriction(
            "projected structure constants differ from the hypersurface presentation".to_string(),
        ));
    }
    data.projected = projected;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rolling::flat_model_generators;
    use num_traits::One;

    #[test]
    fn struct_tensor_subalgebra_detects_nonclosure() {
        // so(3)-like toy tensor: [e0,e1]=e2, cyclic.
        let mut t = StructTensor::zeros(3);
        let one = Rat::one();
        t.set(0, 1, 2, one.clone());
        t.set(1, 0, 2, -one.clone());
        t.set(1, 2, 0, one.clone());
        t.set(2, 1, 0, -one.clone());
        t.set(2, 0, 1, one.clone());
        t.set(0, 2, 1, -one.clone());
        assert!(t.is_antisymmetric());
        assert!(t.jacobi_holds());
        assert!(t.subalgebra(&[0, 1]).is_none());
        assert!(t.subalgebra(&[0, 1, 2]).is_some());
    }

    #[test]
    fn flat_model_generation_closes() {
        let seeds = flat_model_generators();
        let algebra = generate_g2(&seeds, None, 17).unwrap();
        assert_eq!(algebra.basis.len(), 14);
        assert!(algebra.structure.is_antisymmetric());
        assert!(algebra.structure.jacobi_holds());
        // [S1, S2] = S4 exactly, with no other contribution.
        for k in 0..14 {
            let expected = if k == 3 { Rat::one() } else { Rat::zero() };
            assert_eq!(*algebra.structure.at(0, 1, k), expected);
        }
        // The Cartan pair commutes.
        for k in 0..14 {
            assert!(algebra.structure.at(12, 13, k).is_zero());
        }
        assert_eq!(algebra.span_rank(None, 3, 20), 14);
    }
}
