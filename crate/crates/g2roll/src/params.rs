//! The exact constants of the surface family.

use crate::{rat, rint, Rat};
use num_traits::Zero;
use std::fmt;

/// The constants `kappa`, `c` (and the integration constant `alpha`) of an
/// An-Nurowski surface, fixed as exact rationals for a whole verification
/// session. `c` must be non-zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub kappa: Rat,
    pub c: Rat,
    pub alpha: Rat,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParamsError {
    #[error("the homothety constant c must be non-zero")]
    ZeroC,
}

impl Params {
    pub fn new(kappa: Rat, c: Rat, alpha: Rat) -> Result<Self, ParamsError> {
        if c.is_zero() {
            return Err(ParamsError::ZeroC);
        }
        Ok(Params { kappa, c, alpha })
    }

    /// Convenience constructor from small integers, `alpha = 0`.
    pub fn from_ints(kappa: i64, c: i64) -> Self {
        Params::new(rint(kappa), rint(c), rint(0)).expect("non-zero c")
    }

    /// `kappa * c^2`
    pub fn kc2(&self) -> Rat {
        &self.kappa * &self.c * &self.c
    }

    /// `c^3`
    pub fn c3(&self) -> Rat {
        &self.c * &self.c * &self.c
    }

    /// `2 c^3`
    pub fn two_c3(&self) -> Rat {
        rat(2, 1) * self.c3()
    }

    /// `6 c^6`
    pub fn six_c6(&self) -> Rat {
        rat(6, 1) * self.c3() * self.c3()
    }

    /// The default parameter sweep: one representative of each qualitative
    /// class (`kappa = 0`, `kappa > 0`, `kappa < 0`) plus a second positive
    /// value, all with `alpha = 0`.
    pub fn default_sweep() -> Vec<Params> {
        vec![
            Params::from_ints(0, 1),
            Params::from_ints(1, 1),
            Params::from_ints(2, 1),
            Params::from_ints(-1, 2),
        ]
    }

    pub fn label(&self) -> String {
        format!("kappa={} c={} alpha={}", self.kappa, self.c, self.alpha)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.kappa, self.c, self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_c() {
        assert_eq!(
            Params::new(rint(1), rint(0), rint(0)),
            Err(ParamsError::ZeroC)
        );
    }

    #[test]
    fn derived_constants() {
        let p = Params::from_ints(2, 3);
        assert_eq!(p.kc2(), rint(18));
        assert_eq!(p.c3(), rint(27));
        assert_eq!(p.two_c3(), rint(54));
        assert_eq!(p.six_c6(), rint(6 * 729));
    }
}
