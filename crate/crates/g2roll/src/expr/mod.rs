//! The exact expression ring.
//!
//! An [`Expr`] over a chart is a canonical sorted sum of [`Term`]s. Each term
//! is a reduced rational function of the chart's rational coordinate, times a
//! monomial in the chart coordinates, times a single harmonic `cos(k psi)` or
//! `sin(k psi)` of the chart's angle coordinate. Multiplication normalises
//! harmonic products with the product-to-sum identities, so two expressions
//! are equal as functions iff their term lists are identical — the zero test
//! is exact and free.

pub mod hcoeff;
pub mod hpoly;
mod parse;

pub use parse::parse;

use crate::chart::{Chart, ExactPoint};
use crate::{Params, Rat};
use hcoeff::HCoeff;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error(
        "divisor at byte {offset} does not reduce to a rational multiple of a polynomial in {var}"
    )]
    BadDivisor { offset: usize, var: &'static str },
    #[error("charts differ: {left} vs {right}")]
    ChartMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("singular substitution: a reduced denominator vanishes under {binding}")]
    SingularSubstitution { binding: String },
    #[error("unsupported substitution for coordinate {coord}: {reason}")]
    UnsupportedSubstitution { coord: String, reason: String },
    #[error("pole at evaluation point (coordinate {coord})")]
    PoleAtPoint { coord: &'static str },
    #[error("evaluation point has wrong dimension: expected {expected}, got {got}")]
    PointDimension { expected: usize, got: usize },
    #[error("expression uses coordinate {coord} absent from chart {chart}")]
    MissingCoordinate {
        coord: &'static str,
        chart: &'static str,
    },
}

/// Kind of a harmonic factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HarmKind {
    Cos,
    Sin,
}

/// A single harmonic `cos(k psi)` / `sin(k psi)`. The canonical unit factor
/// is `cos(0 psi) = 1`; `sin(0 psi)` never occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Harm {
    pub kind: HarmKind,
    pub k: u32,
}

impl Harm {
    pub const UNIT: Harm = Harm {
        kind: HarmKind::Cos,
        k: 0,
    };

    pub fn cos(k: u32) -> Harm {
        Harm {
            kind: HarmKind::Cos,
            k,
        }
    }

    pub fn sin(k: u32) -> Harm {
        assert!(k >= 1, "sin(0 psi) is not canonical");
        Harm {
            kind: HarmKind::Sin,
            k,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.kind == HarmKind::Cos && self.k == 0
    }

    /// Fold `cos`/`sin` of a possibly negative multiple into canonical form;
    /// returns `None` for `sin(0)`.
    fn fold(kind: HarmKind, m: i64) -> Option<(Rat, Harm)> {
        match kind {
            HarmKind::Cos => Some((Rat::one(), Harm::cos(m.unsigned_abs() as u32))),
            HarmKind::Sin => {
                if m == 0 {
                    None
                } else if m > 0 {
                    Some((Rat::one(), Harm::sin(m as u32)))
                } else {
                    Some((-Rat::one(), Harm::sin((-m) as u32)))
                }
            }
        }
    }

    /// Product-to-sum expansion; the returned scalars already include the
    /// one-half factors and the parity signs.
    fn product(self, other: Harm) -> Vec<(Rat, Harm)> {
        if self.is_unit() {
            return vec![(Rat::one(), other)];
        }
        if other.is_unit() {
            return vec![(Rat::one(), self)];
        }
        let j = self.k as i64;
        let k = other.k as i64;
        let half = crate::rat(1, 2);
        let pieces: [(HarmKind, i64, Rat); 2] = match (self.kind, other.kind) {
            (HarmKind::Cos, HarmKind::Cos) => [
                (HarmKind::Cos, j - k, half.clone()),
                (HarmKind::Cos, j + k, half),
            ],
            (HarmKind::Sin, HarmKind::Sin) => [
                (HarmKind::Cos, j - k, half.clone()),
                (HarmKind::Cos, j + k, -half),
            ],
            (HarmKind::Sin, HarmKind::Cos) => [
                (HarmKind::Sin, j + k, half.clone()),
                (HarmKind::Sin, j - k, half),
            ],
            (HarmKind::Cos, HarmKind::Sin) => [
                (HarmKind::Sin, j + k, half.clone()),
                (HarmKind::Sin, j - k, -half),
            ],
        };
        pieces
            .into_iter()
            .filter_map(|(kind, m, s)| Harm::fold(kind, m).map(|(sign, h)| (s * sign, h)))
            .filter(|(s, _)| !s.is_zero())
            .collect()
    }
}

/// Monomial key of a term: coordinate exponents plus the harmonic factor.
type TermKey = (Vec<u32>, Harm);

/// One canonical term.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: HCoeff,
    pub pows: Vec<u32>,
    pub harm: Harm,
}

impl Term {
    fn key(&self) -> TermKey {
        (self.pows.clone(), self.harm)
    }
}

/// A canonically normalised element of the expression ring over a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub chart: &'static Chart,
    terms: Vec<Term>,
}

impl Expr {
    fn from_map(chart: &'static Chart, map: BTreeMap<TermKey, HCoeff>) -> Expr {
        let terms = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((pows, harm), coeff)| Term { coeff, pows, harm })
            .collect();
        Expr { chart, terms }
    }

    fn collect(chart: &'static Chart, terms: impl IntoIterator<Item = Term>) -> Expr {
        let mut map: BTreeMap<TermKey, HCoeff> = BTreeMap::new();
        for t in terms {
            if t.coeff.is_zero() {
                continue;
            }
            debug_assert_eq!(t.pows.len(), chart.dim());
            debug_assert!(chart.rational.is_none_or(|i| t.pows[i] == 0));
            match map.entry(t.key()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(t.coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&t.coeff);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Expr::from_map(chart, map)
    }

    pub fn zero(chart: &'static Chart) -> Expr {
        Expr {
            chart,
            terms: Vec::new(),
        }
    }

    pub fn one(chart: &'static Chart) -> Expr {
        Expr::constant(chart, Rat::one())
    }

    pub fn constant(chart: &'static Chart, r: Rat) -> Expr {
        if r.is_zero() {
            return Expr::zero(chart);
        }
        Expr {
            chart,
            terms: vec![Term {
                coeff: HCoeff::from_rat(r),
                pows: vec![0; chart.dim()],
                harm: Harm::UNIT,
            }],
        }
    }

    pub fn int(chart: &'static Chart, n: i64) -> Expr {
        Expr::constant(chart, crate::rint(n))
    }

    /// The coordinate function of index `idx`.
    pub fn var(chart: &'static Chart, idx: usize) -> Expr {
        Expr::var_pow(chart, idx, 1)
    }

    pub fn var_named(chart: &'static Chart, name: &str) -> Expr {
        let idx = chart
            .coord_index(name)
            .unwrap_or_else(|| panic!("chart {} has no coordinate {name}", chart.name));
        Expr::var(chart, idx)
    }

    pub fn var_pow(chart: &'static Chart, idx: usize, k: u32) -> Expr {
        assert!(idx < chart.dim());
        if k == 0 {
            return Expr::one(chart);
        }
        if chart.is_rational(idx) {
            return Expr::from_hcoeff(chart, HCoeff::var_pow(k as usize));
        }
        let mut pows = vec![0; chart.dim()];
        pows[idx] = k;
        Expr {
            chart,
            terms: vec![Term {
                coeff: HCoeff::one(),
                pows,
                harm: Harm::UNIT,
            }],
        }
    }

    pub fn from_hcoeff(chart: &'static Chart, c: HCoeff) -> Expr {
        assert!(
            chart.rational.is_some() || c.as_rat().is_some(),
            "chart {} has no rational coordinate",
            chart.name
        );
        if c.is_zero() {
            return Expr::zero(chart);
        }
        Expr {
            chart,
            terms: vec![Term {
                coeff: c,
                pows: vec![0; chart.dim()],
                harm: Harm::UNIT,
            }],
        }
    }

    /// The harmonic `cos(k psi)` or `sin(k psi)` of the chart angle.
    pub fn harmonic(chart: &'static Chart, kind: HarmKind, k: u32) -> Expr {
        assert!(chart.angle.is_some(), "chart {} has no angle", chart.name);
        if kind == HarmKind::Sin && k == 0 {
            return Expr::zero(chart);
        }
        let harm = if k == 0 { Harm::UNIT } else { Harm { kind, k } };
        Expr {
            chart,
            terms: vec![Term {
                coeff: HCoeff::one(),
                pows: vec![0; chart.dim()],
                harm,
            }],
        }
    }

    pub fn cos(chart: &'static Chart, k: u32) -> Expr {
        Expr::harmonic(chart, HarmKind::Cos, k)
    }

    pub fn sin(chart: &'static Chart, k: u32) -> Expr {
        Expr::harmonic(chart, HarmKind::Sin, k)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of the expression if it is a rational constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let t = &self.terms[0];
                if t.harm.is_unit() && t.pows.iter().all(|&p| p == 0) {
                    t.coeff.as_rat()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The expression as a rational function of the profile coordinate
    /// alone, if it involves no other coordinate and no harmonic.
    pub fn as_hcoeff(&self) -> Option<HCoeff> {
        match self.terms.len() {
            0 => Some(HCoeff::zero()),
            1 => {
                let t = &self.terms[0];
                if t.harm.is_unit() && t.pows.iter().all(|&p| p == 0) {
                    Some(t.coeff.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn check_chart(&self, other: &Expr) -> Result<(), ExprError> {
        if !std::ptr::eq(self.chart, other.chart) {
            return Err(ExprError::ChartMismatch {
                left: self.chart.name,
                right: other.chart.name,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Expr) -> Expr {
        self.check_chart(other).expect("chart mismatch in add");
        Expr::collect(
            self.chart,
            self.terms.iter().chain(other.terms.iter()).cloned(),
        )
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Expr {
        Expr {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.neg(),
                    pows: t.pows.clone(),
                    harm: t.harm,
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        self.check_chart(other).expect("chart mismatch in mul");
        let mut out = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let coeff = a.coeff.mul(&b.coeff);
                if coeff.is_zero() {
                    continue;
                }
                let pows: Vec<u32> = a.pows.iter().zip(&b.pows).map(|(x, y)| x + y).collect();
                for (s, harm) in a.harm.product(b.harm) {
                    out.push(Term {
                        coeff: coeff.scale(&s),
                        pows: pows.clone(),
                        harm,
                    });
                }
            }
        }
        Expr::collect(self.chart, out)
    }

    pub fn scale(&self, r: &Rat) -> Expr {
        if r.is_zero() {
            return Expr::zero(self.chart);
        }
        Expr {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.scale(r),
                    pows: t.pows.clone(),
                    harm: t.harm,
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Expr {
        let mut acc = Expr::one(self.chart);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divide by an expression that reduces to a rational function of the
    /// profile coordinate; `None` otherwise (or dividing by zero).
    pub fn div_hcoeff_expr(&self, divisor: &Expr) -> Option<Expr> {
        let d = divisor.as_hcoeff()?;
        if d.is_zero() {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Some(Term {
                    coeff: t.coeff.div(&d)?,
                    pows: t.pows.clone(),
                    harm: t.harm,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Expr::collect(self.chart, terms))
    }

    /// Exact partial derivative with respect to the chart coordinate `idx`.
    /// On the angle coordinate the derivative acts on both the power and the
    /// harmonic factor; on the rational coordinate it is the quotient rule.
    pub fn derive(&self, idx: usize) -> Expr {
        assert!(idx < self.chart.dim());
        let mut out = Vec::new();
        for t in &self.terms {
            if self.chart.is_rational(idx) {
                let d = t.coeff.derivative();
                if !d.is_zero() {
                    out.push(Term {
                        coeff: d,
                        pows: t.pows.clone(),
                        harm: t.harm,
                    });
                }
                continue;
            }
            // Power part.
            let e = t.pows[idx];
            if e > 0 {
                let mut pows = t.pows.clone();
                pows[idx] = e - 1;
                out.push(Term {
                    coeff: t.coeff.scale(&crate::rint(e as i64)),
                    pows,
                    harm: t.harm,
                });
            }
            // Harmonic part, only on the angle coordinate.
            if self.chart.is_angle(idx) && t.harm.k > 0 {
                let k = t.harm.k;
                let (scale, harm) = match t.harm.kind {
                    HarmKind::Cos => (crate::rint(-(k as i64)), Harm::sin(k)),
                    HarmKind::Sin => (crate::rint(k as i64), Harm::cos(k)),
                };
                out.push(Term {
                    coeff: t.coeff.scale(&scale),
                    pows: t.pows.clone(),
                    harm,
                });
            }
        }
        Expr::collect(self.chart, out)
    }

    pub fn derive_named(&self, name: &str) -> Expr {
        let idx = self
            .chart
            .coord_index(name)
            .unwrap_or_else(|| panic!("chart {} has no coordinate {name}", self.chart.name));
        self.derive(idx)
    }

    /// Simultaneous substitution of chart coordinates by expressions of the
    /// same chart. Polynomial coordinates accept arbitrary images; the
    /// rational coordinate accepts only a rational constant (with a pole
    /// check on every reduced denominator); the angle coordinate accepts
    /// only itself.
    ///
    /// The polynomial bindings are applied and reduced before the profile
    /// binding, so a denominator only counts as a pole if it survives the
    /// cancellations the other substitutions produce.
    pub fn substitute(&self, bindings: &[(usize, Expr)]) -> Result<Expr, ExprError> {
        let (profile, poly): (Vec<_>, Vec<_>) = bindings
            .iter()
            .cloned()
            .partition(|(idx, _)| self.chart.is_rational(*idx));
        if !profile.is_empty() && !poly.is_empty() {
            let reduced = self.substitute_inner(&poly)?;
            return reduced.substitute_inner(&profile);
        }
        self.substitute_inner(bindings)
    }

    fn substitute_inner(&self, bindings: &[(usize, Expr)]) -> Result<Expr, ExprError> {
        for (idx, img) in bindings {
            img.check_chart(self)?;
            let name = self.chart.coords[*idx];
            if self.chart.is_angle(*idx) {
                if img != &Expr::var(self.chart, *idx) {
                    return Err(ExprError::UnsupportedSubstitution {
                        coord: name.to_string(),
                        reason: "harmonics only transport along the identity on the angle"
                            .to_string(),
                    });
                }
            } else if self.chart.is_rational(*idx) && img.as_constant().is_none() {
                return Err(ExprError::UnsupportedSubstitution {
                    coord: name.to_string(),
                    reason: "the profile coordinate only substitutes to a rational constant"
                        .to_string(),
                });
            }
        }
        let rational_binding: Option<Rat> = bindings.iter().find_map(|(idx, img)| {
            if self.chart.is_rational(*idx) {
                img.as_constant()
            } else {
                None
            }
        });
        let mut acc = Expr::zero(self.chart);
        for t in &self.terms {
            // Coefficient: evaluate at the substituted profile value if any.
            let coeff_expr = match &rational_binding {
                Some(r) => {
                    let v = t
                        .coeff
                        .eval_rat(r)
                        .ok_or_else(|| ExprError::SingularSubstitution {
                            binding: format!(
                                "{} -> {}",
                                self.chart.coords[self.chart.rational.unwrap()],
                                r
                            ),
                        })?;
                    Expr::constant(self.chart, v)
                }
                None => Expr::from_hcoeff(self.chart, t.coeff.clone()),
            };
            let mut term_expr = coeff_expr;
            for (i, &p) in t.pows.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let image = bindings.iter().find(|(idx, _)| *idx == i);
                let factor = match image {
                    Some((_, img)) => img.pow(p),
                    None => Expr::var_pow(self.chart, i, p),
                };
                term_expr = term_expr.mul(&factor);
            }
            if !t.harm.is_unit() {
                term_expr = term_expr.mul(&Expr {
                    chart: self.chart,
                    terms: vec![Term {
                        coeff: HCoeff::one(),
                        pows: vec![0; self.chart.dim()],
                        harm: t.harm,
                    }],
                });
            }
            acc = acc.add(&term_expr);
        }
        Ok(acc)
    }

    pub fn substitute_named(&self, bindings: &[(&str, Expr)]) -> Result<Expr, ExprError> {
        let resolved = bindings
            .iter()
            .map(|(name, e)| {
                let idx = self.chart.coord_index(name).unwrap_or_else(|| {
                    panic!("chart {} has no coordinate {name}", self.chart.name)
                });
                (idx, e.clone())
            })
            .collect::<Vec<_>>();
        self.substitute(&resolved)
    }

    /// Move the expression to another chart by matching coordinate names.
    /// Fails when a coordinate in actual use has no counterpart with the
    /// same role on the target chart.
    pub fn transport(&self, target: &'static Chart) -> Result<Expr, ExprError> {
        if std::ptr::eq(self.chart, target) {
            return Ok(self.clone());
        }
        // Build the index map lazily; unused coordinates need no match.
        let mut index_map: Vec<Option<usize>> = vec![None; self.chart.dim()];
        let require = |i: usize, index_map: &mut Vec<Option<usize>>| -> Result<usize, ExprError> {
            if let Some(j) = index_map[i] {
                return Ok(j);
            }
            let name = self.chart.coords[i];
            let j = target
                .coord_index(name)
                .ok_or(ExprError::MissingCoordinate {
                    coord: name,
                    chart: target.name,
                })?;
            index_map[i] = Some(j);
            Ok(j)
        };
        let mut out = Vec::new();
        for t in &self.terms {
            if !t.coeff.is_polynomial() || t.coeff.num().degree().unwrap_or(0) > 0 {
                // Profile coordinate in use.
                let i = self.chart.rational.expect("coefficient uses profile");
                let j = require(i, &mut index_map)?;
                if !target.is_rational(j) {
                    return Err(ExprError::MissingCoordinate {
                        coord: self.chart.coords[i],
                        chart: target.name,
                    });
                }
            }
            if !t.harm.is_unit() {
                let i = self.chart.angle.expect("harmonic without angle");
                let j = require(i, &mut index_map)?;
                if !target.is_angle(j) {
                    return Err(ExprError::MissingCoordinate {
                        coord: self.chart.coords[i],
                        chart: target.name,
                    });
                }
            }
            let mut pows = vec![0u32; target.dim()];
            for (i, &p) in t.pows.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let j = require(i, &mut index_map)?;
                pows[j] = p;
            }
            out.push(Term {
                coeff: t.coeff.clone(),
                pows,
                harm: t.harm,
            });
        }
        Ok(Expr::collect(target, out))
    }

    /// Floating evaluation at a chart point.
    pub fn eval(&self, p: &[f64]) -> Result<f64, ExprError> {
        if p.len() != self.chart.dim() {
            return Err(ExprError::PointDimension {
                expected: self.chart.dim(),
                got: p.len(),
            });
        }
        let mut acc = 0.0;
        for t in &self.terms {
            let mut v = match self.chart.rational {
                Some(i) => t.coeff.eval_f64(p[i]).ok_or(ExprError::PoleAtPoint {
                    coord: self.chart.coords[i],
                })?,
                None => t
                    .coeff
                    .as_rat()
                    .map(|r| crate::rng::rat_to_f64(&r))
                    .expect("constant coefficient on chart without profile"),
            };
            for (i, &e) in t.pows.iter().enumerate() {
                if e > 0 {
                    v *= p[i].powi(e as i32);
                }
            }
            if !t.harm.is_unit() {
                let psi = p[self.chart.angle.expect("harmonic without angle")];
                let arg = t.harm.k as f64 * psi;
                v *= match t.harm.kind {
                    HarmKind::Cos => arg.cos(),
                    HarmKind::Sin => arg.sin(),
                };
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point. Harmonics are evaluated at the
    /// point's rational circle pair through the multiple-angle recurrence.
    pub fn eval_exact(&self, p: &ExactPoint) -> Result<Rat, ExprError> {
        if p.coords.len() != self.chart.dim() {
            return Err(ExprError::PointDimension {
                expected: self.chart.dim(),
                got: p.coords.len(),
            });
        }
        let max_k = self.terms.iter().map(|t| t.harm.k).max().unwrap_or(0);
        let table = p.circle.as_ref().map(|(c, s)| {
            // cos(k psi), sin(k psi) for k = 0..=max_k.
            let mut cs = Vec::with_capacity(max_k as usize + 1);
            cs.push((Rat::one(), Rat::zero()));
            for k in 1..=max_k as usize {
                let (ck, sk) = &cs[k - 1];
                cs.push((ck * c - sk * s, sk * c + ck * s));
            }
            cs
        });
        let mut acc = Rat::zero();
        for t in &self.terms {
            let mut v = match self.chart.rational {
                Some(i) => t
                    .coeff
                    .eval_rat(&p.coords[i])
                    .ok_or(ExprError::PoleAtPoint {
                        coord: self.chart.coords[i],
                    })?,
                None => t
                    .coeff
                    .as_rat()
                    .expect("constant coefficient on chart without profile"),
            };
            for (i, &e) in t.pows.iter().enumerate() {
                for _ in 0..e {
                    v *= &p.coords[i];
                }
            }
            if !t.harm.is_unit() {
                let table = table.as_ref().ok_or(ExprError::PoleAtPoint {
                    coord: "psi (no circle point given)",
                })?;
                let (ck, sk) = &table[t.harm.k as usize];
                v *= match t.harm.kind {
                    HarmKind::Cos => ck,
                    HarmKind::Sin => sk,
                };
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Sum of several expressions on one chart.
    pub fn sum(chart: &'static Chart, items: impl IntoIterator<Item = Expr>) -> Expr {
        items
            .into_iter()
            .fold(Expr::zero(chart), |acc, e| acc.add(&e))
    }

    /// Parse an expression in the rolling-chart grammar; `kappa` and `c` are
    /// replaced by the exact rationals of `params`.
    pub fn parse(text: &str, params: &Params) -> Result<Expr, ExprError> {
        parse::parse(text, params)
    }

    /// Rough size measure used by tests and diagnostics.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Rebuild the canonical form from the raw term list (normalisation is
    /// idempotent, so this is the identity on well-formed values).
    pub fn renormalized(&self) -> Expr {
        Expr::collect(self.chart, self.terms.iter().cloned())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let hvar = self.chart.rational.map(|i| self.chart.coords[i]);
        let angle = self.chart.angle.map(|i| self.chart.coords[i]);
        let mut first = true;
        for t in &self.terms {
            // Sign comes from the leading numerator coefficient.
            let negative = t
                .coeff
                .num()
                .leading()
                .map(|l| l.is_negative())
                .unwrap_or(false);
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let num = if negative {
                t.coeff.num().neg()
            } else {
                t.coeff.num().clone()
            };
            let mut pieces: Vec<String> = Vec::new();
            let num_is_one = num.is_one();
            if !num_is_one || t.coeff.den().is_one() {
                let rendered = num.render(hvar.unwrap_or("h"));
                if num.term_count() > 1 {
                    pieces.push(format!("({rendered})"));
                } else if !num_is_one {
                    pieces.push(rendered);
                }
            }
            for (i, &e) in t.pows.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self.chart.coords[i];
                if e == 1 {
                    pieces.push(name.to_string());
                } else {
                    pieces.push(format!("{name}^{e}"));
                }
            }
            if !t.harm.is_unit() {
                let a = angle.unwrap_or("psi");
                let func = match t.harm.kind {
                    HarmKind::Cos => "cos",
                    HarmKind::Sin => "sin",
                };
                if t.harm.k == 1 {
                    pieces.push(format!("{func}({a})"));
                } else {
                    pieces.push(format!("{func}({}*{a})", t.harm.k));
                }
            }
            if pieces.is_empty() {
                pieces.push(num.render(hvar.unwrap_or("h")));
            }
            write!(f, "{}", pieces.join("*"))?;
            if !t.coeff.den().is_one() {
                let den = t.coeff.den();
                let rendered = den.render(hvar.unwrap_or("h"));
                if den.term_count() > 1 {
                    write!(f, "/({rendered})")?;
                } else {
                    write!(f, "/{rendered}")?;
                }
            }
        }
        Ok(())
    }
}

/// Convert an exact rational to the nearest f64 (used by displays and
/// numeric layers).
pub fn rat_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational fits in f64")
}
