//! Univariate polynomials over the rationals, used for the numerators and
//! denominators of coefficients in the profile coordinate.

use crate::Rat;
use num_traits::{One, Signed, Zero};

/// Dense polynomial; `coeffs[k]` is the coefficient of degree `k`. The
/// representation is normalised: no trailing zero coefficients, the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HPoly {
    coeffs: Vec<Rat>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        HPoly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        if r.is_zero() {
            HPoly::zero()
        } else {
            HPoly { coeffs: vec![r] }
        }
    }

    /// The monomial `r * x^k`.
    pub fn monomial(r: Rat, k: usize) -> Self {
        if r.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = r;
        HPoly { coeffs }
    }

    pub fn var() -> Self {
        HPoly::monomial(Rat::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = HPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        HPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        HPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> HPoly {
        HPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &HPoly) -> HPoly {
        if self.is_zero() || other.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        HPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, r: &Rat) -> HPoly {
        if r.is_zero() {
            return HPoly::zero();
        }
        HPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &HPoly) -> (HPoly, HPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() / &lead;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let sub = divisor.mul(&HPoly::monomial(factor, shift));
            rem = rem.sub(&sub);
        }
        (HPoly::from_coeffs(quot), rem)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &HPoly) -> HPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> HPoly {
        match self.leading() {
            None => HPoly::zero(),
            Some(l) => {
                let inv = Rat::one() / l;
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> HPoly {
        if self.coeffs.len() <= 1 {
            return HPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(k.into()))
            .collect();
        HPoly::from_coeffs(coeffs)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::rng::rat_to_f64(c);
        }
        acc
    }

    /// Render with the given variable name, e.g. `2*h^3 - h + 1/2`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let lead_one = mag.is_one();
            match (k, lead_one) {
                (0, _) => out.push_str(&mag.to_string()),
                (_, false) => {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                (_, true) => {}
            }
            if k == 1 {
                out.push_str(var);
            } else if k > 1 {
                out.push_str(&format!("{var}^{k}"));
            }
        }
        out
    }

    /// Number of terms with non-zero coefficient.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn p(coeffs: &[i64]) -> HPoly {
        HPoly::from_coeffs(coeffs.iter().map(|&c| rint(c)).collect())
    }

    #[test]
    fn div_rem_exact() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let num = p(&[-1, 0, 1]);
        let den = p(&[-1, 1]);
        let (q, r) = num.div_rem(&den);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[0, 0, 2]); // 2 x^2
        let b = p(&[0, 4]); // 4 x
        assert_eq!(a.gcd(&b), p(&[0, 1]));
    }

    #[test]
    fn derivative_and_eval() {
        let f = p(&[1, -2, 3]); // 3x^2 - 2x + 1
        assert_eq!(f.derivative(), p(&[-2, 6]));
        assert_eq!(f.eval_rat(&rat(1, 2)), rat(3, 4));
        assert!((f.eval_f64(0.5) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn render_round_shape() {
        let f = p(&[1, 0, -2]);
        assert_eq!(f.render("h"), "-2*h^2 + 1");
        assert_eq!(HPoly::var().render("h"), "h");
        assert_eq!(HPoly::zero().render("h"), "0");
    }
}
