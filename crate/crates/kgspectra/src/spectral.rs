//! Spectral-curve tracing and the executable forms of the curve theorems:
//! concavity/unimodality, the slope-sign monotonicity structure, and
//! pointwise curve ordering for ordered shape pairs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactwell::{self, WellShape};
use crate::kernel::{Channel, PhysicalContext, SpectralCurve, SpectralPoint};
use crate::potentials::Shape;
use crate::shooting::{self, ShootConfig};

/// Which solver backs a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolverKind {
    /// Closed-form square-well matching (flat shapes only).
    Exact,
    /// RK4 shooting (any bounded shape).
    Shoot,
}

impl SolverKind {
    pub fn name(&self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::Shoot => "shoot",
        }
    }
}

/// Default energy grid: `points` uniform samples on (−m + 10⁻³, m − 10⁻³).
/// The endpoint offsets avoid the |E| = m singular limit.
pub fn default_e_grid(m: f64, points: usize) -> Vec<f64> {
    let lo = -m + 1e-3;
    let hi = m - 1e-3;
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1).max(1) as f64)
        .collect()
}

/// Traces v = G(E) over the grid. Grid energies where the state does not
/// exist are recorded as gaps, never interpolated. Shooting traces
/// warm-start each solve from the neighboring point's coupling.
pub fn trace_curve(
    shape: &Shape,
    channel: &Channel,
    ctx: &PhysicalContext,
    e_grid: &[f64],
    solver: SolverKind,
    cfg: &ShootConfig,
) -> Result<SpectralCurve> {
    for pair in e_grid.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::Curve(format!(
                "energy grid must strictly increase ({} after {})",
                pair[1], pair[0]
            )));
        }
    }
    let well = match solver {
        SolverKind::Exact => Some(WellShape::from_shape(shape)?),
        SolverKind::Shoot => None,
    };
    let mut curve = SpectralCurve::new(*channel, shape.id());
    let mut warm_v: Option<f64> = None;
    for &e in e_grid {
        let solved: Result<SpectralPoint> = match solver {
            SolverKind::Exact => exactwell::solve_v(e, well.as_ref().unwrap(), ctx, channel),
            SolverKind::Shoot => {
                let mut local = *cfg;
                local.v_bracket = warm_v
                    .map(|v| (v * 0.7, v * 1.4))
                    .or(cfg.v_bracket);
                shooting::solve_v_shoot(e, shape, channel, ctx, &local)
            }
        };
        match solved {
            Ok(p) => {
                warm_v = Some(p.v);
                curve.push(p)?;
            }
            Err(
                Error::NoBoundState(_)
                | Error::EvanescentInterior { .. }
                | Error::EnergyOutOfRange { .. },
            ) => {
                curve.gaps.push(e);
            }
            Err(other) => return Err(other),
        }
    }
    Ok(curve)
}

/// Concavity and unimodality diagnostics of a traced curve.
#[derive(Debug, Clone, Serialize)]
pub struct ConcavityReport {
    /// Largest positive second divided difference found (0 if none).
    pub max_positive_second_diff: f64,
    /// Tolerance it was compared against (10⁻⁶ · max |v|).
    pub tol: f64,
    pub concave: bool,
    /// Sign changes in the first differences (≤ 1 for a unimodal curve).
    pub first_diff_sign_changes: usize,
    pub unimodal: bool,
    /// Estimated maximum location (quadratic fit through the discrete peak).
    pub e_cr: f64,
    pub v_cr: f64,
    /// |E_cr − v_cr·⟨f⟩_cr|: the critical-point identity residual.
    pub critical_identity_residual: f64,
    /// Whether the maximum is interior to the grid. A curve that is still
    /// rising at the first grid energy has its true maximum outside
    /// (−m + offset, m − offset); the critical-point identity only applies
    /// to interior maxima where the slope vanishes.
    pub interior_maximum: bool,
}

pub fn concavity_report(curve: &SpectralCurve) -> Result<ConcavityReport> {
    let pts = &curve.points;
    if pts.len() < 3 {
        return Err(Error::Curve(format!(
            "concavity needs at least 3 points, curve has {}",
            pts.len()
        )));
    }
    let vmax = curve.max_abs_v();
    let tol = curve.concavity_tol();

    let mut worst = 0.0_f64;
    for w in pts.windows(3) {
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        let s1 = (b.v - a.v) / (b.e - a.e);
        let s2 = (c.v - b.v) / (c.e - b.e);
        let second = (s2 - s1) / (c.e - a.e);
        worst = worst.max(second);
    }

    let noise = 1e-9 * vmax;
    let mut sign_changes = 0usize;
    let mut last = 0i8;
    for w in pts.windows(2) {
        let diff = w[1].v - w[0].v;
        if diff.abs() < noise {
            continue;
        }
        let s = if diff > 0.0 { 1 } else { -1 };
        if last != 0 && s != last {
            sign_changes += 1;
        }
        last = s;
    }

    // discrete peak, refined by a parabola through its neighbors
    let i_max = pts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.v.partial_cmp(&b.1.v).unwrap())
        .unwrap()
        .0;
    let interior_maximum = i_max > 0 && i_max + 1 < pts.len();
    let (e_cr, v_cr, f_cr) = if !interior_maximum {
        let p = &pts[i_max];
        (p.e, p.v, p.f_mean)
    } else {
        let (a, b, c) = (&pts[i_max - 1], &pts[i_max], &pts[i_max + 1]);
        let d1 = (c.v - a.v) / (c.e - a.e);
        let d2 = (c.v - 2.0 * b.v + a.v) / ((c.e - b.e) * (b.e - a.e));
        let e_cr = if d2 < 0.0 { b.e - d1 / d2 } else { b.e };
        let e_cr = e_cr.clamp(a.e, c.e);
        // interpolate v and ⟨f⟩ linearly onto e_cr
        let (lo, hi) = if e_cr <= b.e { (a, b) } else { (b, c) };
        let t = (e_cr - lo.e) / (hi.e - lo.e);
        (
            e_cr,
            lo.v + t * (hi.v - lo.v),
            lo.f_mean + t * (hi.f_mean - lo.f_mean),
        )
    };

    Ok(ConcavityReport {
        max_positive_second_diff: worst,
        tol,
        concave: worst <= tol,
        first_diff_sign_changes: sign_changes,
        unimodal: sign_changes <= 1,
        e_cr,
        v_cr,
        critical_identity_residual: (e_cr - v_cr * f_cr).abs(),
        interior_maximum,
    })
}

/// One monotonicity violation: a consecutive pair moving the wrong way for
/// its sign of E − v⟨f⟩.
#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityViolation {
    pub e_left: f64,
    pub e_right: f64,
    pub v_left: f64,
    pub v_right: f64,
    /// true when both points sit on the E ≥ v⟨f⟩ (descending) side.
    pub descending_side: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub pairs_checked: usize,
    pub violations: Vec<MonotonicityViolation>,
}

/// Partitions the grid by the sign of E − v⟨f⟩ and checks that v is
/// non-increasing where E ≥ v⟨f⟩ and increasing where E < v⟨f⟩.
/// Pairs straddling the critical point are skipped.
pub fn monotonicity_check(curve: &SpectralCurve) -> MonotonicityReport {
    let tol = 1e-9 * curve.max_abs_v();
    let mut pairs = 0;
    let mut violations = Vec::new();
    for w in curve.points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let da = a.e - a.v * a.f_mean;
        let db = b.e - b.v * b.f_mean;
        if da >= 0.0 && db >= 0.0 {
            pairs += 1;
            if b.v > a.v + tol {
                violations.push(MonotonicityViolation {
                    e_left: a.e,
                    e_right: b.e,
                    v_left: a.v,
                    v_right: b.v,
                    descending_side: true,
                });
            }
        } else if da < 0.0 && db < 0.0 {
            pairs += 1;
            if b.v < a.v - tol {
                violations.push(MonotonicityViolation {
                    e_left: a.e,
                    e_right: b.e,
                    v_left: a.v,
                    v_right: b.v,
                    descending_side: false,
                });
            }
        }
    }
    MonotonicityReport {
        pairs_checked: pairs,
        violations,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    /// Largest G₁(E) − G₂(E) over the common energies (negative when the
    /// ordering holds strictly).
    pub max_violation: f64,
    pub energies_compared: usize,
    pub ordered: bool,
}

/// Checks G₁(E) ≤ G₂(E) + tol at every common grid energy of two curves
/// traced for pointwise-ordered shapes f₁ ≤ f₂. The shape ordering itself is
/// validated on a dense radial grid first.
pub fn compare_curves(
    curve1: &SpectralCurve,
    shape1: &Shape,
    curve2: &SpectralCurve,
    shape2: &Shape,
    tol: f64,
) -> Result<ComparisonReport> {
    if curve1.channel != curve2.channel {
        return Err(Error::Curve(format!(
            "curves belong to different channels: {:?} vs {:?}",
            curve1.channel, curve2.channel
        )));
    }
    validate_ordered(shape1, shape2)?;
    let mut max_violation = f64::NEG_INFINITY;
    let mut compared = 0usize;
    let mut j = 0usize;
    for p1 in &curve1.points {
        while j < curve2.points.len() && curve2.points[j].e < p1.e - 1e-12 {
            j += 1;
        }
        if j >= curve2.points.len() {
            break;
        }
        let p2 = &curve2.points[j];
        if (p2.e - p1.e).abs() <= 1e-12 {
            compared += 1;
            max_violation = max_violation.max(p1.v - p2.v);
        }
    }
    if compared == 0 {
        return Err(Error::Curve("curves share no grid energies".into()));
    }
    Ok(ComparisonReport {
        max_violation,
        energies_compared: compared,
        ordered: max_violation <= tol,
    })
}

/// Dense-grid verification that f₁ ≤ f₂ pointwise (tolerance covers the
/// envelope right-limit convention at flat-well edges).
pub fn validate_ordered(shape1: &Shape, shape2: &Shape) -> Result<()> {
    let sup = shape1
        .support_radius(1e-12)
        .max(shape2.support_radius(1e-12));
    let n = 10_000;
    for i in 0..=n {
        let r = 1.2 * sup * i as f64 / n as f64;
        let (f1, f2) = (shape1.evaluate(r), shape2.evaluate(r));
        if f1 > f2 + 1e-11 {
            return Err(Error::UnorderedShapes(format!(
                "f1(r) = {f1} > f2(r) = {f2} at r = {r}"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Dataset serialization
// ---------------------------------------------------------------------------

/// Metadata stamped into every dataset: shape, channel, solver, grid and the
/// deterministic configuration hash.
#[derive(Debug, Clone, Serialize)]
pub struct CurveMeta {
    pub shape: String,
    pub d: u32,
    pub l: u32,
    pub n: u32,
    pub m: f64,
    pub solver: String,
    pub version: String,
    pub config_hash: String,
}

impl CurveMeta {
    pub fn new(
        shape: &Shape,
        channel: &Channel,
        ctx: &PhysicalContext,
        solver: SolverKind,
        grid_desc: &str,
    ) -> Self {
        let canonical = format!(
            "shape={};d={};l={};n={};m={};solver={};grid={}",
            shape.id(),
            channel.d(),
            channel.l(),
            channel.n(),
            ctx.m(),
            solver.name(),
            grid_desc
        );
        Self {
            shape: shape.id(),
            d: channel.d(),
            l: channel.l(),
            n: channel.n(),
            m: ctx.m(),
            solver: solver.name().to_string(),
            version: crate::VERSION.to_string(),
            config_hash: config_hash(&canonical),
        }
    }
}

/// First 16 hex digits of the SHA-256 of the canonical configuration string.
pub fn config_hash(canonical: &str) -> String {
    let digest = Sha256::digest(canonical.as_bytes());
    let mut s = String::with_capacity(16);
    for b in &digest[..8] {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// Fixed 12-significant-digit float formatting shared by every dataset
/// writer; identical flags therefore produce byte-identical files.
pub fn fmt_g(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders a curve as CSV with `#` comment headers carrying the tool version
/// and config hash. Gap energies appear as comment rows in grid order.
pub fn curve_csv(curve: &SpectralCurve, meta: &CurveMeta) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# kgspectra {} config_hash={}",
        meta.version, meta.config_hash
    );
    let _ = writeln!(
        out,
        "# shape={} channel=d{}l{}n{} m={} solver={}",
        meta.shape, meta.d, meta.l, meta.n, meta.m, meta.solver
    );
    let _ = writeln!(out, "E,v,n,f_mean,f2_mean,slope");
    let mut gaps = curve.gaps.iter().peekable();
    for p in &curve.points {
        while let Some(&&g) = gaps.peek() {
            if g < p.e {
                let _ = writeln!(out, "# gap E={} (no bound state)", fmt_g(g));
                gaps.next();
            } else {
                break;
            }
        }
        let slope = shooting::slope_ve(p).unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_g(p.e),
            fmt_g(p.v),
            p.n,
            fmt_g(p.f_mean),
            fmt_g(p.f2_mean),
            fmt_g(slope)
        );
    }
    for g in gaps {
        let _ = writeln!(out, "# gap E={} (no bound state)", fmt_g(*g));
    }
    out
}

/// JSON document with metadata, points and gaps.
pub fn curve_json(curve: &SpectralCurve, meta: &CurveMeta) -> serde_json::Value {
    serde_json::json!({
        "meta": meta,
        "points": curve.points,
        "gaps": curve.gaps,
    })
}
