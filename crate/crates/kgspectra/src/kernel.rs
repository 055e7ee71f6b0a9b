//! Domain types and shared numerical contracts.
//!
//! Everything here is an immutable value type; instances can be shared and
//! sent between threads freely.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative amplitude below which a wave-function sample counts as zero for
/// node counting, so a grazing zero is not double-counted.
pub const NODE_AMPLITUDE_EPS: f64 = 1e-12;

/// Default concavity tolerance as a fraction of max |v| on a curve; absorbs
/// root-finder noise without masking genuine convexity.
pub const CONCAVITY_TOL_FRAC: f64 = 1e-6;

/// Parity of a one-dimensional state, fixed by its node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Quantum-number context: spatial dimension `d`, angular momentum `l`
/// (`l = 0` in one dimension) and node count `n` of the reduced wave
/// function on (0, ∞).
///
/// In one dimension `n` counts nodes on the whole line and fixes the parity
/// of the state: even `n` ↔ even state, odd `n` ↔ odd state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Channel {
    d: u32,
    l: u32,
    n: u32,
}

impl Channel {
    pub fn new(d: u32, l: u32, n: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidChannel(format!("d = {d} must be >= 1")));
        }
        if d == 1 && l != 0 {
            return Err(Error::InvalidChannel(format!(
                "l = {l} must be 0 when d = 1"
            )));
        }
        Ok(Self { d, l, n })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Same quantum numbers, different node count.
    pub fn with_n(&self, n: u32) -> Self {
        Self { n, ..*self }
    }

    /// Centrifugal coefficient Q = (2l+d−1)(2l+d−3)/4 of the reduced radial
    /// equation. Zero for d = 1 by convention (no centrifugal term), and
    /// −1/4 for the d = 2 s-wave.
    pub fn centrifugal_q(&self) -> f64 {
        if self.d == 1 {
            return 0.0;
        }
        let a = (2 * self.l + self.d) as f64;
        (a - 1.0) * (a - 3.0) / 4.0
    }

    /// Small-r exponent p of the reduced wave function, φ ∝ r^p with
    /// p = (2l+d−1)/2. Satisfies p(p−1) = Q.
    pub fn reduced_power(&self) -> f64 {
        (2 * self.l + self.d - 1) as f64 / 2.0
    }

    /// The d = 2, l = 0 channel needs the non-reduced radial equation: the
    /// reduced form has Q = −1/4 and the comparison machinery breaks on it.
    pub fn needs_nonreduced(&self) -> bool {
        self.d == 2 && self.l == 0
    }

    /// Parity of a one-dimensional state; `None` for d > 1.
    pub fn parity(&self) -> Option<Parity> {
        if self.d != 1 {
            return None;
        }
        Some(if self.n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        })
    }

    /// Node count on the open half line (0, ∞), which is what an outward
    /// integration sees. Equals `n` for d > 1; for d = 1 the origin node of
    /// odd states is excluded and line nodes come in mirror pairs.
    pub fn interior_nodes(&self) -> u32 {
        if self.d == 1 {
            self.n / 2
        } else {
            self.n
        }
    }
}

/// Mass context in natural units (ħ = c = 1). Every admissible bound-state
/// energy satisfies |E| < m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalContext {
    m: f64,
}

impl PhysicalContext {
    pub fn new(m: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidChannel(format!("mass m = {m} must be > 0")));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// Exterior decay constant k = √(m² − E²) of the free tail
    /// φ ∝ e^{−k r}. Rejects |E| ≥ m: no bound state there.
    pub fn asymptotic_k(&self, e: f64) -> Result<f64> {
        if !(e.abs() < self.m) {
            return Err(Error::EnergyOutOfRange { e, m: self.m });
        }
        Ok((self.m * self.m - e * e).sqrt())
    }
}

/// One solved eigenpair (E, v) with its expectation values and solver
/// diagnostics. `f_mean` and `f2_mean` are ⟨f⟩ = ∫ f φ² and ⟨f²⟩ = ∫ f² φ²
/// over the normalized reduced wave function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub e: f64,
    pub v: f64,
    pub n: u32,
    pub f_mean: f64,
    pub f2_mean: f64,
    pub norm_residual: f64,
    pub match_residual: f64,
}

impl SpectralPoint {
    /// Checks the point invariants: |E| < m, v > 0, the spectral inequality
    /// 2E⟨f⟩ < v⟨f²⟩, and the expectation-value ranges ⟨f⟩ ∈ [inf f, 0],
    /// ⟨f²⟩ ∈ [0, (inf f)²].
    pub fn validate(&self, m: f64, inf_f: f64) -> Result<()> {
        if !(self.e.abs() < m) {
            return Err(Error::EnergyOutOfRange { e: self.e, m });
        }
        if !(self.v > 0.0) {
            return Err(Error::InequalityViolated(format!(
                "coupling v = {} must be > 0",
                self.v
            )));
        }
        if !(2.0 * self.e * self.f_mean < self.v * self.f2_mean) {
            return Err(Error::InequalityViolated(format!(
                "2E<f> = {} must be < v<f^2> = {}",
                2.0 * self.e * self.f_mean,
                self.v * self.f2_mean
            )));
        }
        let tol = 1e-9 * (1.0 + inf_f.abs());
        if self.f_mean > tol || self.f_mean < inf_f - tol {
            return Err(Error::InequalityViolated(format!(
                "<f> = {} outside [{inf_f}, 0]",
                self.f_mean
            )));
        }
        if self.f2_mean < -tol || self.f2_mean > inf_f * inf_f + tol {
            return Err(Error::InequalityViolated(format!(
                "<f^2> = {} outside [0, {}]",
                self.f2_mean,
                inf_f * inf_f
            )));
        }
        Ok(())
    }

    /// Denominator E⟨f⟩ − v⟨f²⟩ of the slope formula; negative for every
    /// valid point.
    pub fn slope_denominator(&self) -> f64 {
        self.e * self.f_mean - self.v * self.f2_mean
    }
}

/// A swept set of spectral points representing v = G(E) for one channel and
/// one shape, strictly ordered by E. Grid energies where the state does not
/// exist are recorded as gaps, not interpolated.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralCurve {
    pub channel: Channel,
    pub shape_id: String,
    pub points: Vec<SpectralPoint>,
    pub gaps: Vec<f64>,
}

impl SpectralCurve {
    pub fn new(channel: Channel, shape_id: impl Into<String>) -> Self {
        Self {
            channel,
            shape_id: shape_id.into(),
            points: Vec::new(),
            gaps: Vec::new(),
        }
    }

    /// Appends a solved point, enforcing the strictly-increasing-E order.
    pub fn push(&mut self, p: SpectralPoint) -> Result<()> {
        if let Some(last) = self.points.last() {
            if p.e <= last.e {
                return Err(Error::InvalidChannel(format!(
                    "curve energies must strictly increase: {} after {}",
                    p.e, last.e
                )));
            }
        }
        self.points.push(p);
        Ok(())
    }

    pub fn max_abs_v(&self) -> f64 {
        self.points.iter().fold(0.0, |a, p| a.max(p.v.abs()))
    }

    /// Default concavity tolerance for this curve.
    pub fn concavity_tol(&self) -> f64 {
        CONCAVITY_TOL_FRAC * self.max_abs_v()
    }
}

/// A reduced wave function sampled on a strictly increasing radial grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialSolution {
    pub grid: Vec<f64>,
    pub phi: Vec<f64>,
    pub nodes: u32,
    pub logderiv_at_match: f64,
    pub normalized: bool,
}

impl RadialSolution {
    /// Trapezoid integral of φ² over the grid.
    pub fn norm_integral(&self) -> f64 {
        trapezoid(&self.grid, &self.phi, |p| p * p)
    }

    /// Rescales φ so the trapezoid integral of φ² equals 1. The logarithmic
    /// derivative is invariant under the joint scaling.
    pub fn normalize(&mut self) {
        let norm = self.norm_integral();
        if norm > 0.0 {
            let s = 1.0 / norm.sqrt();
            for p in &mut self.phi {
                *p *= s;
            }
            self.normalized = true;
        }
    }

    /// Recounts strict sign changes of the samples.
    pub fn count_nodes(&self) -> u32 {
        count_sign_changes(&self.phi)
    }
}

/// Trapezoid rule for ∫ g(φ) dr over a (possibly non-uniform) grid.
pub fn trapezoid(grid: &[f64], phi: &[f64], g: impl Fn(f64) -> f64) -> f64 {
    debug_assert_eq!(grid.len(), phi.len());
    let mut acc = 0.0;
    for i in 1..grid.len() {
        acc += 0.5 * (grid[i] - grid[i - 1]) * (g(phi[i]) + g(phi[i - 1]));
    }
    acc
}

/// Strict sign changes of a sample sequence, ignoring endpoint zeros.
/// Samples below `NODE_AMPLITUDE_EPS` times the maximum amplitude are
/// treated as zero and never double-counted.
pub fn count_sign_changes(phi: &[f64]) -> u32 {
    let max_amp = phi.iter().fold(0.0_f64, |a, &p| a.max(p.abs()));
    if max_amp == 0.0 {
        return 0;
    }
    let thresh = NODE_AMPLITUDE_EPS * max_amp;
    let mut nodes = 0;
    let mut last_sign = 0i8;
    for &p in phi {
        if p.abs() < thresh {
            continue;
        }
        let s = if p > 0.0 { 1 } else { -1 };
        if last_sign != 0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}
