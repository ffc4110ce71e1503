//! Small deterministic PRNG and point samplers.
//!
//! The verification suites must be reproducible byte-for-byte under a fixed
//! seed, so we use a self-contained splitmix64 generator instead of a
//! platform-dependent source.

use crate::{rat, Params, Rat};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            state: seed.wrapping_add(0x9e3779b97f4a7c15),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.f64()
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Random rational `k / den` with `k` in `[lo*den, hi*den]`.
    pub fn rat_in(&mut self, lo: i64, hi: i64, den: i64) -> Rat {
        let span = ((hi - lo) * den + 1) as u64;
        let k = lo * den + self.below(span) as i64;
        rat(k, den)
    }

    /// Random non-zero rational with the same shape.
    pub fn rat_nonzero(&mut self, lo: i64, hi: i64, den: i64) -> Rat {
        loop {
            let r = self.rat_in(lo, hi, den);
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// Rational point on the unit circle via the tangent half-angle
    /// parametrisation: `t -> ((1-t^2)/(1+t^2), 2t/(1+t^2))`.
    pub fn circle_point(&mut self) -> (Rat, Rat) {
        let t = self.rat_in(-3, 3, 7);
        let one = rat(1, 1);
        let t2 = &t * &t;
        let den = &one + &t2;
        ((&one - &t2) / &den, (rat(2, 1) * &t) / &den)
    }
}

/// A floating-point point of the rolling chart `(theta, phi, h, q, psi)`
/// inside the generic sampling box: `theta, phi, q` in `[-2, 2]`, `psi` in
/// `[0, 2 pi)`, `h` in `[0.5, 1.5]` with `|kappa c^2 - h^2| > 0.1`.
pub fn sample_an_f64(rng: &mut Rng, params: &Params) -> [f64; 5] {
    let kc2 = rat_to_f64(&params.kc2());
    loop {
        let h = rng.range(0.5, 1.5);
        if (kc2 - h * h).abs() <= 0.1 {
            continue;
        }
        return [
            rng.range(-2.0, 2.0),
            rng.range(-2.0, 2.0),
            h,
            rng.range(-2.0, 2.0),
            rng.range(0.0, std::f64::consts::TAU),
        ];
    }
}

/// An exact rational sample point of the rolling chart. The angle coordinate
/// carries both a rational value (for polynomial occurrences) and a rational
/// point on the unit circle (for the harmonics); the two are independent,
/// which is sound because evaluation is a ring homomorphism for any circle
/// point.
pub fn sample_an_exact(rng: &mut Rng, params: &Params) -> crate::ExactPoint {
    let kc2 = params.kc2();
    let h = loop {
        let h = rng.rat_nonzero(-2, 2, 8);
        let d = &kc2 - &h * &h;
        if !d.is_zero() && d.abs() > rat(1, 10) {
            break h;
        }
    };
    let coords = vec![
        rng.rat_in(-2, 2, 8),
        rng.rat_in(-2, 2, 8),
        h,
        rng.rat_in(-2, 2, 8),
        rng.rat_in(-2, 2, 8),
    ];
    crate::ExactPoint {
        coords,
        circle: Some(rng.circle_point()),
    }
}

/// Exact rational sample point for a polynomial chart (harmonic data is
/// attached only when the chart has an angle coordinate).
pub fn sample_poly_exact(rng: &mut Rng, chart: &crate::Chart) -> crate::ExactPoint {
    let coords = (0..chart.dim()).map(|_| rng.rat_in(-2, 2, 8)).collect();
    let circle = chart.angle.map(|_| rng.circle_point());
    crate::ExactPoint { coords, circle }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("rational fits in f64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn circle_points_are_on_circle() {
        let mut rng = Rng::new(3);
        for _ in 0..50 {
            let (c, s) = rng.circle_point();
            assert_eq!(&c * &c + &s * &s, rat(1, 1));
        }
    }

    #[test]
    fn an_box_respects_genericity() {
        let params = Params::from_ints(1, 1);
        let mut rng = Rng::new(11);
        for _ in 0..200 {
            let p = sample_an_f64(&mut rng, &params);
            assert!((1.0 - p[2] * p[2]).abs() > 0.1);
            assert!(p[2] >= 0.5 && p[2] <= 1.5);
        }
    }
}
