//! The conformal-inversion map on the hypersurface coordinates
//! `(c1, c2, c4, c5)` and the dihedral group it generates together with the
//! coordinate swap.

use crate::chart::C4;
use crate::expr::Expr;
use crate::geom::{OneForm, SymTensor};
use crate::rng::Rng;
use crate::{rat, rint, Rat};
use num_traits::Zero;

/// `phi(c1, c2, c4, c5) = (c6/(3 c4), c5/c4, c1/c4, -3/c4)` with
/// `c6 = c1 c5 + c2 c4`; undefined where `c4 = 0`.
pub fn phi_map(p: &[Rat; 4]) -> Option<[Rat; 4]> {
    let [c1, c2, c4, c5] = p;
    if c4.is_zero() {
        return None;
    }
    let c6 = c1 * c5 + c2 * c4;
    Some([c6 / (rat(3, 1) * c4), c5 / c4, c1 / c4, rint(-3) / c4])
}

/// The symmetry `(c1, c2, c4, c5) -> (c2, c1, c5, c4)`.
pub fn swap_map(p: &[Rat; 4]) -> [Rat; 4] {
    [p[1].clone(), p[0].clone(), p[3].clone(), p[2].clone()]
}

fn random_point(rng: &mut Rng) -> [Rat; 4] {
    [
        rng.rat_nonzero(-3, 3, 7),
        rng.rat_nonzero(-3, 3, 7),
        rng.rat_nonzero(-3, 3, 7),
        rng.rat_nonzero(-3, 3, 7),
    ]
}

/// Whether the six-fold composition of `phi` is the identity on `count`
/// random rational points (orbits hitting `c4 = 0` are resampled).
pub fn sixfold_identity_holds(seed: u64, count: usize) -> bool {
    let mut rng = Rng::new(seed);
    let mut checked = 0;
    'outer: while checked < count {
        let start = random_point(&mut rng);
        let mut p = start.clone();
        for _ in 0..6 {
            match phi_map(&p) {
                Some(next) => p = next,
                None => continue 'outer,
            }
        }
        if p != start {
            return false;
        }
        checked += 1;
    }
    true
}

/// Order of the group generated by `phi` and the swap, acting on the
/// coordinate functions *up to constant rescalings* — the quotient in which
/// the construction determines the root fields. Two words are identified
/// when each pulled-back coordinate function agrees up to a non-zero
/// constant, observed on a tuple of random sample points. As raw point maps
/// the words differ by diagonal rescalings and generate an infinite group;
/// every such diagonal preserves the split form conformally, which makes
/// the quotient well defined. Returns `None` if an orbit leaves the domain
/// of `phi`.
pub fn dihedral_group_order(seed: u64, samples: usize, cap: usize) -> Option<usize> {
    let mut rng = Rng::new(seed);
    let base: Vec<[Rat; 4]> = (0..samples).map(|_| random_point(&mut rng)).collect();
    // A word w is carried as the image tuple (w(p_1), .., w(p_n)); its class
    // is the per-coordinate projective normalisation of those values.
    let class = |tuple: &Vec<[Rat; 4]>| -> Vec<Vec<Rat>> {
        (0..4)
            .map(|i| {
                let vals: Vec<Rat> = tuple.iter().map(|p| p[i].clone()).collect();
                let lead = vals
                    .iter()
                    .find(|x| !x.is_zero())
                    .cloned()
                    .unwrap_or_else(|| crate::rint(1));
                vals.iter().map(|x| x / &lead).collect()
            })
            .collect()
    };
    type State = (Vec<[Rat; 4]>, Vec<Vec<Rat>>);
    let mut elements: Vec<State> = vec![(base.clone(), class(&base))];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        let tuple = elements[idx].0.clone();
        let phi_t: Option<Vec<[Rat; 4]>> = tuple.iter().map(phi_map).collect();
        let swap_t: Vec<[Rat; 4]> = tuple.iter().map(swap_map).collect();
        for next in [phi_t?, swap_t] {
            let st = class(&next);
            if !elements.iter().any(|(_, s)| s == &st) {
                elements.push((next, st));
                frontier.push(elements.len() - 1);
                if elements.len() > cap {
                    return Some(elements.len());
                }
            }
        }
    }
    Some(elements.len())
}

/// Exact check of the conformal-rescaling identity behind `phi`: with
/// `c6 = c1 c5 + c2 c4` and `dS^2 = 2 dc1 dc5 + 2 dc2 dc4`,
///
/// ```text
/// (1/c4^2) dS^2 = 2 d(c6/(3 c4)) d(-3/c4) + 2 d(c5/c4) d(c1/c4)
/// ```
///
/// verified with denominators cleared: multiplying through by `c4^4` turns
/// both sides into polynomial tensors on the hypersurface chart.
pub fn rescaling_identity_holds() -> bool {
    let c = |i: usize| Expr::var(&C4, i);
    let dc = |i: usize| OneForm::coordinate(&C4, i);
    let (c1, c2, c4, c5) = (c(0), c(1), c(2), c(3));
    let c6 = c1.mul(&c5).add(&c2.mul(&c4));
    let dc6 = OneForm::differential(&c6);
    // Cleared left side: c4^2 (2 dc1 dc5 + 2 dc2 dc4).
    let c4sq = c4.mul(&c4);
    let lhs = SymTensor::from_products(
        &C4,
        &[
            (c4sq.scale(&rat(2, 1)), &dc(0), &dc(3)),
            (c4sq.scale(&rat(2, 1)), &dc(1), &dc(2)),
        ],
    );
    // Cleared right side: 2 (c4 dc6 - c6 dc4) dc4 + 2 (c4 dc5 - c5 dc4)(c4 dc1 - c1 dc4).
    let a = dc6.scale_expr(&c4).sub(&dc(2).scale_expr(&c6));
    let b = dc(3).scale_expr(&c4).sub(&dc(2).scale_expr(&c5));
    let d = dc(0).scale_expr(&c4).sub(&dc(2).scale_expr(&c1));
    let two = Expr::int(&C4, 2);
    let rhs = SymTensor::from_products(&C4, &[(two.clone(), &a, &dc(2)), (two, &b, &d)]);
    lhs.sub(&rhs).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_of_ones() {
        let p = [rint(1), rint(1), rint(1), rint(1)];
        let img = phi_map(&p).unwrap();
        assert_eq!(img, [rat(2, 3), rint(1), rint(1), rint(-3)]);
    }

    #[test]
    fn sixfold_identity() {
        assert!(sixfold_identity_holds(97, 100));
    }

    #[test]
    fn group_has_order_twelve() {
        assert_eq!(dihedral_group_order(5, 6, 40), Some(12));
    }

    #[test]
    fn rescaling_identity() {
        assert!(rescaling_identity_holds());
    }
}
