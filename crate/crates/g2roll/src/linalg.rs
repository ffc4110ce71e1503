//! Exact rational linear algebra and the few dense floating-point routines
//! the numeric layer needs (Jacobi eigenvalues, singular-value ranks).

use crate::Rat;
use num_traits::{One, Signed, Zero};

/// Dense matrix of exact rationals, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = RatMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let pivot = (rank..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m.at(rank, col).clone();
            for r in rank + 1..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &inv;
                for c in col..m.cols {
                    let sub = &factor * m.at(rank, c);
                    *m.at_mut(r, c) -= sub;
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Exact determinant (square matrices).
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !m.at(r, k).is_zero());
            let Some(p) = pivot else {
                return Rat::zero();
            };
            if p != k {
                m.swap_rows(k, p);
                det = -det;
            }
            let d = m.at(k, k).clone();
            det *= &d;
            for r in k + 1..n {
                if m.at(r, k).is_zero() {
                    continue;
                }
                let factor = m.at(r, k) / &d;
                for c in k..n {
                    let sub = &factor * m.at(k, c);
                    *m.at_mut(r, c) -= sub;
                }
            }
        }
        det
    }

    /// Exact inverse; `None` if singular.
    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() });
        for k in 0..n {
            let p = (k..n).find(|&r| !a.at(r, k).is_zero())?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let d = a.at(k, k).clone();
            for c in 0..n {
                *a.at_mut(k, c) /= &d;
                *inv.at_mut(k, c) /= &d;
            }
            for r in 0..n {
                if r == k || a.at(r, k).is_zero() {
                    continue;
                }
                let factor = a.at(r, k).clone();
                for c in 0..n {
                    let s = &factor * a.at(k, c);
                    *a.at_mut(r, c) -= s;
                    let s = &factor * inv.at(k, c);
                    *inv.at_mut(r, c) -= s;
                }
            }
        }
        Some(inv)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += self.at(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    /// Indices of a maximal set of linearly independent rows.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut m = self.clone();
        let mut order: Vec<usize> = (0..m.rows).collect();
        let mut picked = Vec::new();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let pivot = (rank..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap_rows(rank, p);
            order.swap(rank, p);
            picked.push(order[rank]);
            let inv = m.at(rank, col).clone();
            for r in rank + 1..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &inv;
                for c in col..m.cols {
                    let sub = &factor * m.at(rank, c);
                    *m.at_mut(r, c) -= sub;
                }
            }
            rank += 1;
            col += 1;
        }
        picked
    }

    /// Signature `(positive, negative, zero)` of a symmetric matrix by
    /// Lagrange congruence diagonalisation, exact.
    pub fn congruence_signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric());
        let n = self.rows;
        let mut m = self.clone();
        let mut pos = 0;
        let mut neg = 0;
        let mut zero = 0;
        let mut active: Vec<usize> = (0..n).collect();
        while let Some(&lead) = active.first() {
            // Prefer a non-zero diagonal pivot among the active block.
            let diag = active.iter().copied().find(|&i| !m.at(i, i).is_zero());
            let pivot = match diag {
                Some(i) => i,
                None => {
                    // All diagonal entries vanish; find an off-diagonal entry
                    // and fold it onto the diagonal with a row+col addition.
                    let mut found = None;
                    'outer: for (a_pos, &i) in active.iter().enumerate() {
                        for &j in active.iter().skip(a_pos + 1) {
                            if !m.at(i, j).is_zero() {
                                found = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    match found {
                        Some((i, j)) => {
                            for k in 0..n {
                                let v = m.at(j, k).clone();
                                *m.at_mut(i, k) += v;
                            }
                            for k in 0..n {
                                let v = m.at(k, j).clone();
                                *m.at_mut(k, i) += v;
                            }
                            i
                        }
                        None => {
                            zero += active.len();
                            break;
                        }
                    }
                }
            };
            let d = m.at(pivot, pivot).clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            // Clear the pivot row/column on the remaining active block.
            let others: Vec<usize> = active.iter().copied().filter(|&i| i != pivot).collect();
            for &r in &others {
                if m.at(r, pivot).is_zero() {
                    continue;
                }
                let factor = m.at(r, pivot) / &d;
                for &c in &others {
                    let sub = &factor * m.at(pivot, c);
                    *m.at_mut(r, c) -= sub;
                }
                *m.at_mut(r, pivot) = Rat::zero();
                *m.at_mut(pivot, r) = Rat::zero();
            }
            active.retain(|&i| i != pivot);
            let _ = lead;
        }
        (pos, neg, zero)
    }
}

/// Solve `A x = b` exactly; `None` when inconsistent. Free variables (if the
/// system is underdetermined) are set to zero.
pub fn solve_exact(a: &RatMat, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows, b.len());
    let mut m = RatMat::from_fn(a.rows, a.cols + 1, |i, j| {
        if j < a.cols {
            a.at(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..a.cols {
        let Some(p) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        let d = m.at(rank, col).clone();
        for c in col..=a.cols {
            *m.at_mut(rank, c) /= &d;
        }
        for r in 0..m.rows {
            if r == rank || m.at(r, col).is_zero() {
                continue;
            }
            let factor = m.at(r, col).clone();
            for c in col..=a.cols {
                let sub = &factor * m.at(rank, c);
                *m.at_mut(r, c) -= sub;
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    // Inconsistency: a zero row with non-zero rhs.
    for r in rank..m.rows {
        if !m.at(r, a.cols).is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); a.cols];
    for (row, &col) in pivot_cols.iter().enumerate() {
        x[col] = m.at(row, a.cols).clone();
    }
    Some(x)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(sym: &[Vec<f64>]) -> Vec<f64> {
    let n = sym.len();
    let mut a: Vec<Vec<f64>> = sym.to_vec();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-300_f64.max(1e-15 * frobenius(&a)) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-30 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

fn frobenius(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

/// Singular values of a rectangular matrix, descending.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = rows.len();
    let n = rows[0].len();
    // Work with the smaller Gram matrix.
    let k = n.min(m);
    let gram: Vec<Vec<f64>> = if n <= m {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..m).map(|r| rows[r][i] * rows[r][j]).sum())
                    .collect()
            })
            .collect()
    } else {
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..n).map(|c| rows[i][c] * rows[j][c]).sum())
                    .collect()
            })
            .collect()
    };
    let mut eig = jacobi_eigenvalues(&gram);
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eig.truncate(k);
    eig.into_iter().map(|l| l.max(0.0).sqrt()).collect()
}

/// Numeric rank with a relative singular-value threshold.
pub fn numeric_rank(rows: &[Vec<f64>], rel_tol: f64) -> usize {
    let sv = singular_values(rows);
    let Some(&max) = sv.first() else { return 0 };
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    #[test]
    fn rank_and_det() {
        let m = RatMat::from_fn(3, 3, |i, j| rint((i * 3 + j) as i64));
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), rint(0));
        let id = RatMat::from_fn(3, 3, |i, j| if i == j { rint(2) } else { rint(0) });
        assert_eq!(id.det(), rint(8));
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMat::from_fn(3, 3, |i, j| rint([[2, 1, 0], [1, 3, 1], [0, 1, 2]][i][j]));
        let inv = m.inverse().unwrap();
        for i in 0..3 {
            let e: Vec<Rat> = (0..3)
                .map(|j| if i == j { rint(1) } else { rint(0) })
                .collect();
            let col = inv.mul_vec(&m.mul_vec(&e));
            assert_eq!(col, e);
        }
    }

    #[test]
    fn solve_consistency() {
        let a = RatMat::from_fn(3, 2, |i, j| rint([[1, 0], [0, 1], [1, 1]][i][j]));
        let b = vec![rint(2), rint(3), rint(5)];
        assert_eq!(solve_exact(&a, &b), Some(vec![rint(2), rint(3)]));
        let bad = vec![rint(2), rint(3), rint(6)];
        assert_eq!(solve_exact(&a, &bad), None);
    }

    #[test]
    fn signature_of_indefinite_form() {
        // diag(1, -2, 0) plus an off-diagonal hyperbolic block.
        let mut m = RatMat::zeros(4, 4);
        *m.at_mut(0, 0) = rint(1);
        *m.at_mut(1, 1) = rint(-2);
        *m.at_mut(2, 3) = rat(1, 2);
        *m.at_mut(3, 2) = rat(1, 2);
        assert_eq!(m.congruence_signature(), (2, 2, 0));
    }

    #[test]
    fn numeric_rank_thresholds() {
        let rows = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1e-3, 0.0],
            vec![1.0, 1e-3, 0.0],
        ];
        assert_eq!(numeric_rank(&rows, 1e-9), 2);
        // Exact spectrum of A^T A: {2 + 2e-6 - l2, l2, 0} with
        // l1 l2 = 3e-6 and l1 + l2 = 2 + 2e-6.
        let tr: f64 = 2.0 + 2e-6;
        let l2 = (tr - (tr * tr - 4.0 * 3e-6).sqrt()) / 2.0;
        let sv = singular_values(&rows);
        assert!((sv[0] - (tr - l2).sqrt()).abs() < 1e-12);
        assert!((sv[1] - l2.sqrt()).abs() < 1e-12);
        assert!(sv[2].abs() < 1e-12);
    }
}
