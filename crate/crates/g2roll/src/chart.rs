//! Coordinate charts.
//!
//! Every expression, field and form carries a reference to the chart it
//! lives on. A chart fixes the coordinate names and the two distinguished
//! roles the expression ring supports:
//!
//! * at most one *rational* coordinate, allowed to appear in denominators
//!   (the profile coordinate `h` of the rolling chart);
//! * at most one *angle* coordinate whose harmonics `cos(k psi)`,
//!   `sin(k psi)` are tracked in exact product-to-sum normal form (the
//!   circle fibre `psi`).

use crate::Rat;

#[derive(Debug, PartialEq, Eq)]
pub struct Chart {
    pub name: &'static str,
    pub coords: &'static [&'static str],
    /// Index of the coordinate rational functions are formed in, if any.
    pub rational: Option<usize>,
    /// Index of the coordinate carrying harmonics, if any.
    pub angle: Option<usize>,
}

impl Chart {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| *c == name)
    }

    pub fn is_rational(&self, idx: usize) -> bool {
        self.rational == Some(idx)
    }

    pub fn is_angle(&self, idx: usize) -> bool {
        self.angle == Some(idx)
    }
}

/// The rolling chart `(theta, phi, h, q, psi)` of the circle twistor bundle:
/// plane coordinates, surface profile coordinate, surface angle, fibre angle.
pub static AN: Chart = Chart {
    name: "an",
    coords: &["theta", "phi", "h", "q", "psi"],
    rational: Some(2),
    angle: Some(4),
};

/// The flat-model coordinates `(c1, .., c5)` adapted to the Cartan
/// distribution; all components polynomial.
pub static C5: Chart = Chart {
    name: "c5",
    coords: &["c1", "c2", "c3", "c4", "c5"],
    rational: None,
    angle: None,
};

/// The hypersurface chart `(c1, c2, c4, c5)` of `{c3 = 0}`.
pub static C4: Chart = Chart {
    name: "c4",
    coords: &["c1", "c2", "c4", "c5"],
    rational: None,
    angle: None,
};

/// Engel coordinates `(r1, .., r5)` in which the conformal structure is the
/// constant-coefficient split metric.
pub static R5: Chart = Chart {
    name: "r5",
    coords: &["r1", "r2", "r3", "r4", "r5"],
    rational: None,
    angle: None,
};

/// The base `R^2 x S^1` chart `(theta, phi, psi)` of the configuration space
/// without the surface.
pub static PC: Chart = Chart {
    name: "pc",
    coords: &["theta", "phi", "psi"],
    rational: None,
    angle: Some(2),
};

/// An exact rational evaluation point. `coords` gives the rational value of
/// every chart coordinate (including the angle coordinate, for its
/// polynomial occurrences); `circle` gives the rational `(cos, sin)` pair
/// the harmonics are evaluated at. Keeping the two independent preserves the
/// ring-homomorphism property of evaluation for any point on the rational
/// circle.
#[derive(Debug, Clone)]
pub struct ExactPoint {
    pub coords: Vec<Rat>,
    pub circle: Option<(Rat, Rat)>,
}

impl ExactPoint {
    pub fn new(coords: Vec<Rat>, circle: Option<(Rat, Rat)>) -> Self {
        ExactPoint { coords, circle }
    }
}
