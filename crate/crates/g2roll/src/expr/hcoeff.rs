//! Reduced rational functions in the profile coordinate: the coefficient
//! field of the expression ring.

use super::hpoly::HPoly;
use crate::Rat;
use num_traits::{One, Zero};

/// A fraction of polynomials, stored reduced: `gcd(num, den) = 1`, the
/// denominator is monic and never zero; zero is `0/1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HCoeff {
    num: HPoly,
    den: HPoly,
}

impl HCoeff {
    pub fn new(num: HPoly, den: HPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut c = HCoeff { num, den };
        c.reduce();
        c
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = HPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        // Make the denominator monic, folding its leading coefficient into
        // the numerator.
        let lead = self.den.leading().expect("non-zero denominator").clone();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn zero() -> Self {
        HCoeff {
            num: HPoly::zero(),
            den: HPoly::one(),
        }
    }

    pub fn one() -> Self {
        HCoeff {
            num: HPoly::one(),
            den: HPoly::one(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        HCoeff {
            num: HPoly::constant(r),
            den: HPoly::one(),
        }
    }

    pub fn from_poly(p: HPoly) -> Self {
        HCoeff {
            num: p,
            den: HPoly::one(),
        }
    }

    /// The monomial `x^k`.
    pub fn var_pow(k: usize) -> Self {
        HCoeff::from_poly(HPoly::monomial(Rat::one(), k))
    }

    pub fn num(&self) -> &HPoly {
        &self.num
    }

    pub fn den(&self) -> &HPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &HCoeff) -> HCoeff {
        HCoeff::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &HCoeff) -> HCoeff {
        HCoeff::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> HCoeff {
        HCoeff {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &HCoeff) -> HCoeff {
        HCoeff::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, r: &Rat) -> HCoeff {
        if r.is_zero() {
            return HCoeff::zero();
        }
        HCoeff {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    /// Division; `None` when dividing by zero.
    pub fn div(&self, other: &HCoeff) -> Option<HCoeff> {
        if other.is_zero() {
            return None;
        }
        Some(HCoeff::new(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    /// Quotient-rule derivative with respect to the profile coordinate.
    pub fn derivative(&self) -> HCoeff {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        HCoeff::new(num, self.den.mul(&self.den))
    }

    /// Exact evaluation; `None` at a pole.
    pub fn eval_rat(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval_rat(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rat(x) / d)
    }

    /// Whether the (reduced) denominator vanishes at `x`.
    pub fn pole_at(&self, x: &Rat) -> bool {
        self.den.eval_rat(x).is_zero()
    }

    pub fn eval_f64(&self, x: f64) -> Option<f64> {
        let d = self.den.eval_f64(x);
        if d.abs() < 1e-300 {
            return None;
        }
        Some(self.num.eval_f64(x) / d)
    }
}
