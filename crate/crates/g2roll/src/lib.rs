//! Exact verification engine for the rolling distribution of an An-Nurowski
//! surface on the plane and its split `g2` symmetry algebra.
//!
//! The library is organised in layers:
//!
//! * [`expr`] — an exact, canonically normalised expression ring. Elements are
//!   finite sums of terms `r(h) * x^a * cos(k ψ)` where `r` is a reduced
//!   rational function of the distinguished coordinate, `x^a` a monomial in
//!   the remaining chart coordinates and the trailing factor a single harmonic
//!   of the fibre angle. All coefficients are arbitrary-precision rationals,
//!   so equality of expressions is decidable and every identity below is
//!   checked *exactly*, not numerically.
//! * [`geom`] — vector fields, 1-forms, symmetric 2-tensors, Lie brackets,
//!   pairings and pullbacks over a chart, plus numeric rank sampling.
//! * [`rolling`] — the factory for the concrete geometry: annihilating
//!   coframes, the rolling distribution, the Nurowski metric representative,
//!   the flat (Engel) coordinates, the cubic solving the profile ODE and the
//!   general-profile numeric coframe.
//! * [`g2alg`] — bracket-generation of the 14-dimensional split `g2` algebra
//!   from three seed fields, exact structure constants, Killing form, root
//!   decomposition, the `sl3` restriction and its projection to `R^2 x S^1`.
//! * [`numcheck`] — floating-point cross-checks: finite-difference Weyl
//!   tensors, growth vectors and ODE residuals.
//!
//! The constants `kappa` and `c` of the surface family are fixed exact
//! rationals per [`Params`] value; sweeps re-run the whole verification at
//! several parameter choices.

pub mod chart;
pub mod expr;
pub mod g2alg;
pub mod geom;
pub mod linalg;
pub mod numcheck;
pub mod params;
pub mod reference;
pub mod rng;
pub mod rolling;

pub use chart::{Chart, ExactPoint, AN, C4, C5, PC, R5};
pub use expr::{Expr, ExprError};
pub use geom::{CoordMap, OneForm, SymTensor, VectorField};
pub use params::Params;

/// Arbitrary-precision rational number used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for a small rational constant.
pub fn rat(p: i64, q: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer rational.
pub fn rint(p: i64) -> Rat {
    rat(p, 1)
}
