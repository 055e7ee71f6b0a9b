//! Catalog of potential shapes and the envelope/shift constructions.
//!
//! A shape f is admissible when it is non-positive, not identically zero,
//! attractive (monotone non-decreasing on [0, ∞)) and vanishes at infinity.
//! Potentials are V = v·f with coupling v > 0; one-dimensional callers map
//! x → |x| since every shape is even. Shapes are immutable after
//! construction and freely shareable across threads.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::PhysicalContext;

/// Tail tolerance defining the numerical support radius: |f(r) − floor| below
/// this counts as "vanished". Sets the shooting matching radius
/// deterministically.
pub const TAIL_EPS: f64 = 1e-12;

/// A potential shape. All values are ≤ 0; `inner`/`floor` fields are shape
/// values (the coupling multiplies them).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    /// Unit-depth well: −1 for r ≤ t, 0 elsewhere.
    SquareWell { t: f64 },
    /// Flat well with arbitrary inner value and exterior floor,
    /// inner ≤ floor ≤ 0.
    ShiftedSquareWell { t: f64, inner: f64, floor: f64 },
    /// −1/(1 + e^{(r − radius)/q}); the steepness parametrization
    /// b = 1/q covers the other convention in use.
    WoodsSaxon { q: f64, radius: f64 },
    /// −e^{−r/range}.
    Exponential { range: f64 },
    /// Piecewise-linear interpolation of (radius, value) samples; the tail
    /// clamps to the last value.
    Tabulated(Tabulated),
    /// f₁ + a·(f₂ − f₁) with bridging parameter a ∈ [0, 1]; pointwise between
    /// the two shapes when they are ordered.
    Blend {
        lower: Box<Shape>,
        upper: Box<Shape>,
        a: f64,
    },
    /// f − s: the base shape shifted down by a constant s ≥ 0. Not a member
    /// of the admissible class (its floor is −s), but the solvers accept it
    /// through the same machinery the shifted square well needs.
    Shifted { base: Box<Shape>, s: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tabulated {
    rs: Vec<f64>,
    vs: Vec<f64>,
}

impl Shape {
    pub fn square_well(t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidShape(format!("halfwidth t = {t} must be > 0")));
        }
        Ok(Shape::SquareWell { t })
    }

    pub fn shifted_square_well(t: f64, inner: f64, floor: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidShape(format!("halfwidth t = {t} must be > 0")));
        }
        if !(inner < 0.0 && inner <= floor && floor <= 0.0) {
            return Err(Error::InvalidShape(format!(
                "well values must satisfy inner <= floor <= 0 with inner < 0 \
                 (got inner = {inner}, floor = {floor})"
            )));
        }
        Ok(Shape::ShiftedSquareWell { t, inner, floor })
    }

    /// Woods-Saxon with range parameter q (larger q = softer edge).
    pub fn woods_saxon(q: f64) -> Result<Self> {
        Self::woods_saxon_with_radius(q, 1.0)
    }

    pub fn woods_saxon_with_radius(q: f64, radius: f64) -> Result<Self> {
        if !(q > 0.0) || !(radius > 0.0) {
            return Err(Error::InvalidShape(format!(
                "Woods-Saxon needs q > 0 and radius > 0 (got q = {q}, radius = {radius})"
            )));
        }
        Ok(Shape::WoodsSaxon { q, radius })
    }

    /// Woods-Saxon from the steepness parametrization f = −1/(1 + e^{b(r−radius)}).
    pub fn woods_saxon_steepness(b: f64, radius: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::InvalidShape(format!("steepness b = {b} must be > 0")));
        }
        Self::woods_saxon_with_radius(1.0 / b, radius)
    }

    pub fn exponential(range: f64) -> Result<Self> {
        if !(range > 0.0) {
            return Err(Error::InvalidShape(format!("range a = {range} must be > 0")));
        }
        Ok(Shape::Exponential { range })
    }

    pub fn blend(lower: Shape, upper: Shape, a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidShape(format!(
                "bridging parameter a = {a} must lie in [0, 1]"
            )));
        }
        Ok(Shape::Blend {
            lower: Box::new(lower),
            upper: Box::new(upper),
            a,
        })
    }

    /// f − s for s ≥ 0 (Lemma-style constant downward shift).
    pub fn shifted(self, s: f64) -> Result<Self> {
        if !(s >= 0.0) {
            return Err(Error::InvalidShape(format!("shift s = {s} must be >= 0")));
        }
        Ok(Shape::Shifted {
            base: Box::new(self),
            s,
        })
    }

    /// Shape value at radius r ≥ 0.
    pub fn evaluate(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        match self {
            Shape::SquareWell { t } => {
                if r <= *t {
                    -1.0
                } else {
                    0.0
                }
            }
            Shape::ShiftedSquareWell { t, inner, floor } => {
                if r <= *t {
                    *inner
                } else {
                    *floor
                }
            }
            Shape::WoodsSaxon { q, radius } => -1.0 / (1.0 + ((r - radius) / q).exp()),
            Shape::Exponential { range } => -(-r / range).exp(),
            Shape::Tabulated(tab) => tab.evaluate(r),
            Shape::Blend { lower, upper, a } => {
                let f1 = lower.evaluate(r);
                f1 + a * (upper.evaluate(r) - f1)
            }
            Shape::Shifted { base, s } => base.evaluate(r) - s,
        }
    }

    /// Limit value as r → ∞ (0 for every admissible class member).
    pub fn floor(&self) -> f64 {
        match self {
            Shape::SquareWell { .. } | Shape::WoodsSaxon { .. } | Shape::Exponential { .. } => 0.0,
            Shape::ShiftedSquareWell { floor, .. } => *floor,
            Shape::Tabulated(tab) => *tab.vs.last().unwrap(),
            Shape::Blend { lower, upper, a } => {
                let f1 = lower.floor();
                f1 + a * (upper.floor() - f1)
            }
            Shape::Shifted { base, s } => base.floor() - s,
        }
    }

    /// Deepest value, f(0) = inf f.
    pub fn inf_value(&self) -> f64 {
        self.evaluate(0.0)
    }

    /// Radius beyond which |f(r) − floor| < eps.
    pub fn support_radius(&self, eps: f64) -> f64 {
        let eps = eps.clamp(1e-300, 0.5);
        match self {
            Shape::SquareWell { t } | Shape::ShiftedSquareWell { t, .. } => *t,
            Shape::WoodsSaxon { q, radius } => radius + q * (1.0 / eps - 1.0).ln(),
            Shape::Exponential { range } => range * (1.0 / eps).ln(),
            Shape::Tabulated(tab) => *tab.rs.last().unwrap(),
            Shape::Blend { lower, upper, .. } => {
                lower.support_radius(eps).max(upper.support_radius(eps))
            }
            Shape::Shifted { base, .. } => base.support_radius(eps),
        }
    }

    /// Radii where the shape jumps. These are inserted as integration mesh
    /// nodes so the discontinuity never sits inside an RK4 step.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Shape::SquareWell { t } | Shape::ShiftedSquareWell { t, .. } => vec![*t],
            Shape::Blend { lower, upper, .. } => {
                let mut b = lower.breakpoints();
                b.extend(upper.breakpoints());
                b.sort_by(|a, b| a.partial_cmp(b).unwrap());
                b.dedup();
                b
            }
            Shape::Shifted { base, .. } => base.breakpoints(),
            _ => Vec::new(),
        }
    }

    /// Checks the admissible-class conditions: non-positive, not identically
    /// zero, monotone non-decreasing on [0, ∞), vanishing at infinity.
    /// Monotonicity and sign are sampled on a dense grid for the kinds that
    /// are not flat by construction.
    pub fn validate(&self) -> Result<()> {
        if self.inf_value() >= 0.0 {
            return Err(Error::InvalidShape(
                "shape is identically zero or positive at the origin \
                 (violates class conditions 1 and 3)"
                    .into(),
            ));
        }
        if self.floor().abs() > TAIL_EPS {
            return Err(Error::InvalidShape(format!(
                "shape does not vanish at infinity: floor = {} (violates class condition 5)",
                self.floor()
            )));
        }
        let r_max = self.support_radius(TAIL_EPS).max(1e-6) * 1.5;
        let n = 4096;
        let mut prev = self.inf_value();
        for i in 1..=n {
            let r = r_max * i as f64 / n as f64;
            let f = self.evaluate(r);
            if f > 1e-15 {
                return Err(Error::InvalidShape(format!(
                    "shape is positive at r = {r} (violates class condition 3)"
                )));
            }
            if f < prev - 1e-12 {
                return Err(Error::InvalidShape(format!(
                    "shape is not monotone non-decreasing at r = {r} \
                     (violates class condition 4, attractiveness)"
                )));
            }
            prev = f;
        }
        Ok(())
    }

    /// Canonical descriptor used for curve metadata and config hashes.
    pub fn id(&self) -> String {
        let mut s = String::new();
        self.write_id(&mut s);
        s
    }

    fn write_id(&self, out: &mut String) {
        match self {
            Shape::SquareWell { t } => {
                let _ = write!(out, "square-well:t={t}");
            }
            Shape::ShiftedSquareWell { t, inner, floor } => {
                let _ = write!(out, "shifted-square-well:t={t},inner={inner},floor={floor}");
            }
            Shape::WoodsSaxon { q, radius } => {
                let _ = write!(out, "woods-saxon:q={q},radius={radius}");
            }
            Shape::Exponential { range } => {
                let _ = write!(out, "exponential:a={range}");
            }
            Shape::Tabulated(tab) => {
                let _ = write!(out, "tabulated:n={},r_last={}", tab.rs.len(), tab.rs.last().unwrap());
            }
            Shape::Blend { lower, upper, a } => {
                let _ = write!(out, "blend:a={a}[");
                lower.write_id(out);
                out.push('|');
                upper.write_id(out);
                out.push(']');
            }
            Shape::Shifted { base, s } => {
                let _ = write!(out, "shifted:s={s}[");
                base.write_id(out);
                out.push(']');
            }
        }
    }
}

impl Tabulated {
    /// Builds a tabulated shape from (radius, value) samples. Radii must be
    /// strictly increasing, values non-positive and monotone non-decreasing.
    pub fn new(rs: Vec<f64>, vs: Vec<f64>) -> Result<Self> {
        if rs.len() != vs.len() || rs.len() < 2 {
            return Err(Error::Table(format!(
                "need at least two (radius, value) pairs, got {} radii and {} values",
                rs.len(),
                vs.len()
            )));
        }
        if rs[0] < 0.0 {
            return Err(Error::Table(format!("radii must be >= 0, got {}", rs[0])));
        }
        for i in 1..rs.len() {
            if rs[i] <= rs[i - 1] {
                return Err(Error::Table(format!(
                    "radii must strictly increase: r[{}] = {} after {}",
                    i,
                    rs[i],
                    rs[i - 1]
                )));
            }
            if vs[i] < vs[i - 1] - 1e-14 {
                return Err(Error::Table(format!(
                    "values must be monotone non-decreasing: v[{}] = {} after {}",
                    i,
                    vs[i],
                    vs[i - 1]
                )));
            }
        }
        if vs.iter().any(|&v| v > 0.0) {
            return Err(Error::Table("values must be <= 0".into()));
        }
        Ok(Self { rs, vs })
    }

    /// Loads the two-column text format: one `radius value` pair per line,
    /// blank lines and `#` comments skipped.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str_table(&text)
    }

    pub fn from_str_table(text: &str) -> Result<Self> {
        let mut rs = Vec::new();
        let mut vs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (r, v) = match (it.next(), it.next(), it.next()) {
                (Some(r), Some(v), None) => (r, v),
                _ => {
                    return Err(Error::Table(format!(
                        "line {}: expected exactly two columns, got {:?}",
                        lineno + 1,
                        line
                    )))
                }
            };
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Table(format!("line {}: {e}", lineno + 1)))
            };
            rs.push(parse(r)?);
            vs.push(parse(v)?);
        }
        Self::new(rs, vs)
    }

    fn evaluate(&self, r: f64) -> f64 {
        if r <= self.rs[0] {
            return self.vs[0];
        }
        if r >= *self.rs.last().unwrap() {
            return *self.vs.last().unwrap();
        }
        let i = match self
            .rs
            .binary_search_by(|probe| probe.partial_cmp(&r).unwrap())
        {
            Ok(i) => return self.vs[i],
            Err(i) => i,
        };
        let (r0, r1) = (self.rs[i - 1], self.rs[i]);
        let (v0, v1) = (self.vs[i - 1], self.vs[i]);
        v0 + (v1 - v0) * (r - r0) / (r1 - r0)
    }
}

/// Square-well upper envelope touching the shape at t2:
/// g(r) = f(t2) for r ≤ t2, 0 elsewhere; satisfies f ≤ g pointwise.
pub fn outer_envelope(shape: &Shape, t2: f64) -> Result<Shape> {
    if !(t2 > 0.0) {
        return Err(Error::InvalidShape(format!("t2 = {t2} must be > 0")));
    }
    let depth = shape.evaluate(t2);
    if depth >= 0.0 {
        return Err(Error::DegenerateWell(format!(
            "outer envelope at t2 = {t2} has zero depth (f(t2) = {depth})"
        )));
    }
    Shape::shifted_square_well(t2, depth, 0.0)
}

/// Shifted square-well lower envelope touching the shape at t1:
/// g(r) = f(0) for r ≤ t1, f(t1) elsewhere; satisfies g ≤ f pointwise.
/// The floor takes the outside limit f(t1⁺) so that a square well is its own
/// envelope at contact.
pub fn inner_envelope(shape: &Shape, t1: f64) -> Result<Shape> {
    if !(t1 > 0.0) {
        return Err(Error::InvalidShape(format!("t1 = {t1} must be > 0")));
    }
    let inner = shape.inf_value();
    let floor = shape.evaluate(t1 * (1.0 + 1e-12) + 1e-300);
    if inner >= floor {
        return Err(Error::DegenerateWell(format!(
            "inner envelope at t1 = {t1} has zero depth (f(0) = {inner}, f(t1) = {floor})"
        )));
    }
    Shape::shifted_square_well(t1, inner, floor)
}

/// Energy of the same state under the potential v·(f − s): E₁ = E − v·s.
/// Checks the shift-lemma precondition |E + v·s| < m.
pub fn shift_energy(e: f64, v: f64, s: f64, ctx: &PhysicalContext) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidShape(format!("shift s = {s} must be >= 0")));
    }
    if !((e + v * s).abs() < ctx.m()) {
        return Err(Error::EnergyOutOfRange {
            e: e + v * s,
            m: ctx.m(),
        });
    }
    Ok(e - v * s)
}
