//! Closed-form eigenvalue machinery for flat (square-well) potentials.
//!
//! Inside a well of full depth v₀ the reduced equation oscillates with
//! interior wavenumber w = √((E+v₀)² − m²); outside it decays with
//! k = √(m² − E²). Matching the logarithmic derivative at the edge gives
//! the transcendental eigenvalue conditions
//!
//! ```text
//! w tan(wt) = k          (d = 1, even states)
//! w cot(wt) = −k         (d = 1, odd states)
//! w L_int(ν, wt) = k L_ext(ν, kt)    (d ≥ 2, ν = (2l+d−3)/2)
//! ```
//!
//! which are solved for v₀ given E on the branch fixed by the node count.
//! Wells with a non-zero exterior floor are reduced to pure wells through
//! the constant-shift identity E₁ = E − v·s and an outer bisection in the
//! coupling.

use crate::error::{Error, Result};
use crate::kernel::{Channel, Parity, PhysicalContext, SpectralPoint};
use crate::potentials::Shape;
use crate::specfun::{
    interior_zeros, riccati_exterior_logderiv, riccati_exterior_scaled, riccati_interior,
    riccati_interior_logderiv, Order,
};

/// A flat-well potential: depth `v0` > 0 inside radius `t`, exterior value
/// `floor` ≤ 0 (0 for pure wells). The interior potential is −v0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec {
    pub t: f64,
    pub v0: f64,
    pub floor: f64,
}

/// A flat-well *shape* (the coupling multiplies it): value `inner` inside
/// radius `t`, `floor` outside, with inner < floor ≤ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellShape {
    pub t: f64,
    pub inner: f64,
    pub floor: f64,
}

impl WellShape {
    /// Unit-depth pure well.
    pub fn unit(t: f64) -> Self {
        Self {
            t,
            inner: -1.0,
            floor: 0.0,
        }
    }

    /// Extracts the flat-well parameters from a catalog shape. Only the
    /// square-well kinds admit an exact solution.
    pub fn from_shape(shape: &Shape) -> Result<Self> {
        match shape {
            Shape::SquareWell { t } => Ok(Self::unit(*t)),
            Shape::ShiftedSquareWell { t, inner, floor } => Ok(Self {
                t: *t,
                inner: *inner,
                floor: *floor,
            }),
            other => Err(Error::InvalidShape(format!(
                "the exact solver handles flat wells only, got {}",
                other.id()
            ))),
        }
    }

    pub fn to_shape(&self) -> Result<Shape> {
        Shape::shifted_square_well(self.t, self.inner, self.floor)
    }

    /// Depth of the shape relative to its floor.
    pub fn relative_depth(&self) -> f64 {
        self.floor - self.inner
    }
}

/// Interior wavenumber w = √((E+v₀)² − m²). Signals an evanescent interior
/// when (E+v₀)² ≤ m²: no crossing solution exists on any branch there.
pub fn interior_wavenumber(e: f64, v0: f64, m: f64) -> Result<f64> {
    let s = (e + v0) * (e + v0) - m * m;
    if s <= 0.0 {
        return Err(Error::EvanescentInterior { e, v0 });
    }
    Ok(s.sqrt())
}

/// One-dimensional matching residual: w·tan(wt) − k for even states,
/// w·cot(wt) + k for odd. Zero iff (E, v₀) is an eigenpair of the pure well.
pub fn residual_1d(e: f64, well: &WellSpec, m: f64, parity: Parity) -> Result<f64> {
    require_pure(well)?;
    let ctx = PhysicalContext::new(m)?;
    let k = ctx.asymptotic_k(e)?;
    let w = interior_wavenumber(e, well.v0, m)?;
    let z = w * well.t;
    match parity {
        Parity::Even => {
            if z.cos().abs() < 1e-12 {
                return Err(Error::PoleProximity { nu: -1.0, z });
            }
            Ok(w * z.tan() - k)
        }
        Parity::Odd => {
            if z.sin().abs() < 1e-12 {
                return Err(Error::PoleProximity { nu: 0.0, z });
            }
            Ok(w / z.tan() + k)
        }
    }
}

/// General-d matching residual w·L_int(ν, wt) − k·L_ext(ν, kt). For
/// d = 3, l = 0 this is exactly w·cot(wt) + k.
pub fn residual_radial(e: f64, well: &WellSpec, m: f64, channel: &Channel) -> Result<f64> {
    require_pure(well)?;
    let order = Order::from_channel(channel)?;
    let ctx = PhysicalContext::new(m)?;
    let k = ctx.asymptotic_k(e)?;
    let w = interior_wavenumber(e, well.v0, m)?;
    let l_int = riccati_interior_logderiv(order, w * well.t)?;
    let l_ext = riccati_exterior_logderiv(order, k * well.t);
    Ok(w * l_int - k * l_ext)
}

fn require_pure(well: &WellSpec) -> Result<()> {
    if well.floor != 0.0 {
        return Err(Error::InvalidShape(
            "residuals are defined on pure wells; reduce floored wells via the shift identity"
                .into(),
        ));
    }
    if !(well.t > 0.0 && well.v0 > 0.0) {
        return Err(Error::InvalidShape(format!(
            "well needs t > 0 and v0 > 0 (got t = {}, v0 = {})",
            well.t, well.v0
        )));
    }
    Ok(())
}

/// Branch bookkeeping: the matching problem for interior node count n
/// confines wt between consecutive zeros of the interior solution.
#[derive(Debug, Clone, Copy)]
enum BranchKind {
    Even1d,
    Odd1d,
    Radial(Order),
}

impl BranchKind {
    fn for_channel(channel: &Channel) -> Result<Self> {
        if channel.d() == 1 {
            Ok(match channel.parity().unwrap() {
                Parity::Even => BranchKind::Even1d,
                Parity::Odd => BranchKind::Odd1d,
            })
        } else {
            Ok(BranchKind::Radial(Order::from_channel(channel)?))
        }
    }

    /// Interval of z = wt delimiting the branch that carries the requested
    /// state. The matching root inside it is unique.
    fn z_interval(&self, channel: &Channel) -> (f64, f64) {
        use std::f64::consts::PI;
        match self {
            BranchKind::Even1d => {
                let j = (channel.n() / 2) as f64;
                (j * PI, (j + 1.0) * PI)
            }
            BranchKind::Odd1d => {
                let i = ((channel.n() - 1) / 2) as f64;
                (i * PI, (i + 1.0) * PI)
            }
            BranchKind::Radial(order) => {
                let n = channel.n() as usize;
                let zeros = interior_zeros(*order, n + 1);
                let lo = if n == 0 { 0.0 } else { zeros[n - 1] };
                (lo, zeros[n])
            }
        }
    }

    /// Pole-free matching mismatch at z = wt: the Wronskian-style
    /// combination φ′_int·φ_ext − φ_int·φ′_ext up to positive factors.
    /// Shares its roots with the logarithmic-derivative residual on the
    /// branch interior and changes sign across each branch.
    fn mismatch(&self, z: f64, t: f64, k: f64) -> f64 {
        let w = z / t;
        match self {
            BranchKind::Even1d => w * z.sin() - k * z.cos(),
            BranchKind::Odd1d => w * z.cos() + k * z.sin(),
            BranchKind::Radial(order) => {
                let x = k * riccati_exterior_logderiv(*order, k * t);
                let (s, sp) = riccati_interior(*order, z);
                w * sp - x * s
            }
        }
    }
}

/// Full depth D of the pure well of radius `t` that binds the channel's
/// state at energy `e`: bisects the pole-free mismatch on the branch.
pub fn solve_depth(e: f64, t: f64, ctx: &PhysicalContext, channel: &Channel) -> Result<f64> {
    let m = ctx.m();
    let k = ctx.asymptotic_k(e)?;
    let kind = BranchKind::for_channel(channel)?;
    let (z_lo, z_hi) = kind.z_interval(channel);
    let pad = 1e-9 * (z_hi - z_lo);
    let mut lo = z_lo + pad;
    let mut hi = z_hi - pad;
    let mut f_lo = kind.mismatch(lo, t, k);
    let f_hi = kind.mismatch(hi, t, k);
    if f_lo == 0.0 {
        return Ok(depth_from_z(lo, t, e, m));
    }
    if f_lo * f_hi > 0.0 {
        // The endpoint signs always differ in exact arithmetic; rescan as a
        // safeguard against rounding at extreme parameters.
        let mut bracket = None;
        let mut prev = (lo, f_lo);
        for i in 1..=256 {
            let z = z_lo + (z_hi - z_lo) * i as f64 / 257.0;
            let f = kind.mismatch(z, t, k);
            if prev.1 * f <= 0.0 {
                bracket = Some((prev.0, z));
                break;
            }
            prev = (z, f);
        }
        let (a, b) =
            bracket.ok_or_else(|| Error::NoBoundState(format!("no matching root on branch n = {}", channel.n())))?;
        lo = a;
        hi = b;
        f_lo = kind.mismatch(lo, t, k);
    }
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        let f_mid = kind.mismatch(mid, t, k);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    Ok(depth_from_z(0.5 * (lo + hi), t, e, m))
}

fn depth_from_z(z: f64, t: f64, e: f64, m: f64) -> f64 {
    let w = z / t;
    (m * m + w * w).sqrt() - e
}

/// Coupling v of the channel's state at energy `e` for a flat-well shape.
///
/// Pure wells (floor = 0) reduce to one branch bisection. Floored wells are
/// solved through the shift identity: find v such that the pure well of
/// depth v·(floor − inner) at energy e − v·floor has zero residual, by an
/// outer bisection in v.
pub fn solve_v(
    e: f64,
    well: &WellShape,
    ctx: &PhysicalContext,
    channel: &Channel,
) -> Result<SpectralPoint> {
    let m = ctx.m();
    if !(e.abs() < m) {
        return Err(Error::EnergyOutOfRange { e, m });
    }
    let depth_rel = well.relative_depth();
    if !(depth_rel > 0.0) {
        return Err(Error::DegenerateWell(format!(
            "flat shape has zero relative depth (inner = {}, floor = {})",
            well.inner, well.floor
        )));
    }
    let v = if well.floor == 0.0 {
        solve_depth(e, well.t, ctx, channel)? / depth_rel
    } else {
        solve_v_floored(e, well, ctx, channel)?
    };
    build_point(e, v, well, ctx, channel)
}

fn solve_v_floored(
    e: f64,
    well: &WellShape,
    ctx: &PhysicalContext,
    channel: &Channel,
) -> Result<f64> {
    let m = ctx.m();
    let depth_rel = well.relative_depth();
    // |E − v·floor| < m caps the scan; beyond it the shifted state is unbound.
    let v_energy_cap = (m - e) / (-well.floor);
    let v_cap = (4.0 * m / depth_rel).min(v_energy_cap * (1.0 - 1e-12));
    let objective = |v: f64| -> Result<f64> {
        let e0 = e - v * well.floor;
        Ok(v * depth_rel - solve_depth(e0, well.t, ctx, channel)?)
    };
    // F(0⁺) = −D*(e) < 0; scan for the sign change, then bisect.
    let scan_n = 64;
    let mut lo = 0.0_f64;
    let mut f_lo = -1.0_f64;
    let mut bracket = None;
    for i in 1..=scan_n {
        let v = v_cap * i as f64 / scan_n as f64;
        let f = objective(v)?;
        if f_lo < 0.0 && f >= 0.0 {
            bracket = Some((lo, v, f_lo));
            break;
        }
        lo = v;
        f_lo = f;
    }
    let (mut lo, mut hi, mut f_lo) = bracket.ok_or_else(|| {
        Error::NoBoundState(format!(
            "floored well binds no n = {} state at E = {e} for any v <= {v_cap}",
            channel.n()
        ))
    })?;
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        let f_mid = objective(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Builds the spectral point for a solved flat-well coupling: samples the
/// piecewise-analytic wave function, normalizes it by the trapezoid rule and
/// forms ⟨f⟩, ⟨f²⟩ together with the residual diagnostics.
fn build_point(
    e: f64,
    v: f64,
    well: &WellShape,
    ctx: &PhysicalContext,
    channel: &Channel,
) -> Result<SpectralPoint> {
    let m = ctx.m();
    let e0 = e - v * well.floor;
    let d_full = v * well.relative_depth();
    let w = interior_wavenumber(e0, d_full, m)?;
    let k0 = PhysicalContext::new(m)?.asymptotic_k(e0)?;
    let kind = BranchKind::for_channel(channel)?;
    let t = well.t;

    let interior = |r: f64| -> f64 {
        let z = w * r;
        match kind {
            BranchKind::Even1d => z.cos(),
            BranchKind::Odd1d => z.sin(),
            BranchKind::Radial(order) => {
                if z == 0.0 {
                    0.0
                } else {
                    riccati_interior(order, z).0
                }
            }
        }
    };
    // exterior ∝ e^{−k0 r}·(scaled Riccati tail); 1d states share the ν = 0 form
    let ext_order = match kind {
        BranchKind::Radial(order) => Some(order),
        _ => None,
    };
    let ext_scaled = |r: f64| -> f64 {
        let y = k0 * r;
        let c = match ext_order {
            Some(order) => riccati_exterior_scaled(order, y).0,
            None => 1.0,
        };
        (-y).exp() * c
    };
    let b_match = interior(t) / ext_scaled(t);

    // segment-aligned trapezoids: f is constant on each side of t, so the
    // jump never sits inside an interval
    let r_max = t + 8.0 / k0;
    let mut norm = 0.0;
    let mut f_int = 0.0;
    let mut f2_int = 0.0;
    let mut accumulate = |r_lo: f64, r_hi: f64, n: usize, f: f64, phi: &dyn Fn(f64) -> f64| {
        let mut prev = phi(r_lo);
        for i in 1..=n {
            let r = r_lo + (r_hi - r_lo) * i as f64 / n as f64;
            let cur = phi(r);
            let h = (r_hi - r_lo) / n as f64;
            let seg = 0.5 * h * (prev * prev + cur * cur);
            norm += seg;
            f_int += f * seg;
            f2_int += f * f * seg;
            prev = cur;
        }
    };
    accumulate(0.0, t, 8_000, well.inner, &interior);
    accumulate(t, r_max, 6_000, well.floor, &|r| b_match * ext_scaled(r));
    let f_mean = f_int / norm;
    let f2_mean = f2_int / norm;

    let pure = WellSpec {
        t,
        v0: d_full,
        floor: 0.0,
    };
    let match_residual = match kind {
        BranchKind::Even1d => residual_1d(e0, &pure, m, Parity::Even),
        BranchKind::Odd1d => residual_1d(e0, &pure, m, Parity::Odd),
        BranchKind::Radial(_) => residual_radial(e0, &pure, m, channel),
    }
    .map(f64::abs)
    .unwrap_or(f64::INFINITY);

    Ok(SpectralPoint {
        e,
        v,
        n: channel.n(),
        f_mean,
        f2_mean,
        norm_residual: 0.0, // expectation values use the exact norm ratio
        match_residual,
    })
}

/// All energies in (−m, m) at which the pure well of full depth `v0` binds
/// the channel's state: a 10³-point scan of the branch window with bisection
/// refinement. Zero, one or two roots per branch.
pub fn solve_e(v0: f64, t: f64, ctx: &PhysicalContext, channel: &Channel) -> Result<Vec<f64>> {
    let m = ctx.m();
    if !(v0 > 0.0) {
        return Err(Error::InvalidShape(format!("v0 = {v0} must be > 0")));
    }
    let kind = BranchKind::for_channel(channel)?;
    let (z_lo, z_hi) = kind.z_interval(channel);
    let pad = 1e-9 * (z_hi - z_lo);
    let e_of_z = |z: f64| (m * m + (z / t) * (z / t)).sqrt() - v0;
    let margin = 1e-9 * m;
    // the z-pad is below f64 resolution of e_of_z near z = 0, so keep the
    // window explicitly away from the evanescent boundary E = m − v0
    let e_lo = e_of_z(z_lo + pad)
        .max(m - v0 + 1e-9 * (m + v0))
        .max(-m + margin);
    let e_hi = e_of_z(z_hi - pad).min(m - margin);
    if e_lo >= e_hi {
        return Ok(Vec::new());
    }
    let mismatch_at = |e: f64| -> f64 {
        let k = (m * m - e * e).sqrt();
        let w = ((e + v0) * (e + v0) - m * m).sqrt();
        kind.mismatch(w * t, t, k)
    };
    let n_scan = 1000;
    let mut roots = Vec::new();
    let mut prev_e = e_lo;
    let mut prev_f = mismatch_at(prev_e);
    for i in 1..=n_scan {
        let e = e_lo + (e_hi - e_lo) * i as f64 / n_scan as f64;
        let f = mismatch_at(e);
        if prev_f == 0.0 {
            roots.push(prev_e);
        } else if prev_f * f < 0.0 {
            let (mut a, mut b, mut fa) = (prev_e, e, prev_f);
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                let fm = mismatch_at(mid);
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if (fm > 0.0) == (fa > 0.0) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_e = e;
        prev_f = f;
    }
    Ok(roots)
}

/// One point of the scaled ground-state curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledPoint {
    /// Scan parameter t = b·w.
    pub t: f64,
    /// e = E·b.
    pub e: f64,
    /// u = A·b (scaled full depth).
    pub u: f64,
}

/// Parametric scaled ground-state curve of the one-dimensional well:
/// e(t) = ±[μ² − (t·tan t)²]^{1/2}, u(t) = (t² + μ²)^{1/2} − e(t), with
/// μ = m·b. Both signs of e are emitted; t outside the admissible branch
/// (t·tan t > μ or t ≥ π/2) is skipped.
pub fn scaled_ground_curve(mu: f64, t_grid: &[f64]) -> Vec<ScaledPoint> {
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        for &t in t_grid {
            if !(t > 0.0) || t >= std::f64::consts::FRAC_PI_2 {
                continue;
            }
            let tt = t * t.tan();
            let disc = mu * mu - tt * tt;
            if tt < 0.0 || disc < 0.0 {
                continue;
            }
            let e = sign * disc.sqrt();
            let u = (t * t + mu * mu).sqrt() - e;
            out.push(ScaledPoint { t, e, u });
        }
    }
    out
}

/// The parameter t₀ at which the scaled curve crosses e = 0, i.e. the root
/// of t·tan t = μ on (0, π/2).
pub fn scaled_curve_zero(mu: f64) -> f64 {
    let g = |t: f64| t * t.tan() - mu;
    let mut lo = 1e-12;
    let mut hi = std::f64::consts::FRAC_PI_2 - 1e-12;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ctx() -> PhysicalContext {
        PhysicalContext::new(1.0).unwrap()
    }

    fn ch(d: u32, l: u32, n: u32) -> Channel {
        Channel::new(d, l, n).unwrap()
    }

    #[test]
    fn interior_wavenumber_cases() {
        assert_relative_eq!(interior_wavenumber(0.0, 2.0, 1.0).unwrap(), 3f64.sqrt());
        assert!(matches!(
            interior_wavenumber(-0.5, 1.5, 1.0),
            Err(Error::EvanescentInterior { .. })
        ));
        assert_relative_eq!(
            interior_wavenumber(0.6, 1.0, 1.0).unwrap(),
            1.248_999_599_679_68,
            max_relative = 1e-14
        );
    }

    #[test]
    fn residual_1d_signs_and_poles() {
        // tiny wt with k > 0: even residual → −k < 0
        let well = WellSpec { t: 1e-6, v0: 2.0, floor: 0.0 };
        let r = residual_1d(0.0, &well, 1.0, Parity::Even).unwrap();
        assert!(r < 0.0 && (r + 1.0).abs() < 1e-4);
        // pole at wt = π/2
        let v0_pole = (1.0 + (std::f64::consts::FRAC_PI_2).powi(2)).sqrt();
        let wp = WellSpec { t: 1.0, v0: v0_pole, floor: 0.0 };
        assert!(matches!(
            residual_1d(0.0, &wp, 1.0, Parity::Even),
            Err(Error::PoleProximity { .. })
        ));
        // floored wells are rejected by the residual contract
        let fl = WellSpec { t: 1.0, v0: 2.0, floor: -0.1 };
        assert!(residual_1d(0.0, &fl, 1.0, Parity::Even).is_err());
    }

    #[test]
    fn scaled_zero_matches_reference() {
        // t·tan t = 1 at t₀ ≈ 0.860334
        let t0 = scaled_curve_zero(1.0);
        assert_relative_eq!(t0, 0.860_333_589_019_379_7, max_relative = 1e-12);
    }

    #[test]
    fn residual_zero_at_scaled_point() {
        // §-curve relation: at E = 0, m = 1, t = 1 the even ground coupling
        // solves w·tan w = 1, i.e. w = t₀ and v0 = √(1 + t₀²)
        let t0 = scaled_curve_zero(1.0);
        let v0 = (1.0 + t0 * t0).sqrt();
        let well = WellSpec { t: 1.0, v0, floor: 0.0 };
        let r = residual_1d(0.0, &well, 1.0, Parity::Even).unwrap();
        assert!(r.abs() < 1e-11, "residual {r}");
        // and solve_depth recovers it
        let d = solve_depth(0.0, 1.0, &ctx(), &ch(1, 0, 0)).unwrap();
        assert_relative_eq!(d, v0, max_relative = 1e-13);
    }

    #[test]
    fn d3_s_wave_reduces_to_odd_1d() {
        // w·L_int(0, wt) − k·L_ext(0, kt) ≡ w·cot(wt) + k
        for &(e, v0, t) in &[(0.1, 2.0, 1.0), (-0.4, 3.0, 0.7), (0.75, 1.9, 1.4)] {
            let well = WellSpec { t, v0, floor: 0.0 };
            let r3 = residual_radial(e, &well, 1.0, &ch(3, 0, 0)).unwrap();
            let r1 = residual_1d(e, &well, 1.0, Parity::Odd).unwrap();
            assert_relative_eq!(r3, r1, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn q_degenerate_channels_identical() {
        // (d=5, l=0) and (d=3, l=1) share ν = 1, so the residuals agree exactly
        for &(e, v0, t) in &[(0.3, 4.0, 1.0), (-0.2, 6.5, 0.8)] {
            let well = WellSpec { t, v0, floor: 0.0 };
            let a = residual_radial(e, &well, 1.0, &ch(5, 0, 0)).unwrap();
            let b = residual_radial(e, &well, 1.0, &ch(3, 1, 0)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn solve_v_frozen_cross_checks() {
        // independently computed with machine-precision cylinder/spherical
        // Bessel routines and bracketing to xtol = 2e-16
        let cases = [
            (2u32, 1u32, 0u32, 0.2, 1.0, 2.628_237_158_443),
            (2, 0, 0, 0.2, 1.0, 1.541_270_559_816),
            (4, 0, 0, -0.3, 1.2, 2.753_390_447_194),
            (5, 2, 0, 0.5, 0.8, 6.793_210_574_190),
            (3, 1, 2, -0.6, 1.0, 10.114_883_494_532),
            (2, 0, 1, -0.7, 1.0, 4.928_742_713_254),
        ];
        for &(d, l, n, e, t, want) in &cases {
            let p = solve_v(e, &WellShape::unit(t), &ctx(), &ch(d, l, n)).unwrap();
            assert_relative_eq!(p.v, want, max_relative = 1e-9);
            assert!(p.match_residual < 1e-10, "residual {}", p.match_residual);
            p.validate(1.0, -1.0).unwrap();
        }
    }

    #[test]
    fn woods_saxon_paper_wells() {
        let e = -0.512_574_196;
        // stated upper well: depth 0.9984, halfwidth 0.9675
        let upper = WellShape { t: 0.9675, inner: -0.9984, floor: 0.0 };
        let pu = solve_v(e, &upper, &ctx(), &ch(1, 0, 0)).unwrap();
        assert_relative_eq!(pu.v, 1.814_783_623_254_5, max_relative = 1e-8);
        assert!((pu.v - 1.81478).abs() < 2e-3);
        // stated lower well: inner −1.001, floor −0.0025, halfwidth 1.03
        let lower = WellShape { t: 1.03, inner: -1.001, floor: -0.0025 };
        let pl = solve_v(e, &lower, &ctx(), &ch(1, 0, 0)).unwrap();
        assert_relative_eq!(pl.v, 1.790_758_814_672_5, max_relative = 1e-8);
        assert!((pl.v - 1.79017).abs() < 2e-3);
        assert!(pl.v < pu.v);
    }

    #[test]
    fn solve_v_threshold_continuity() {
        // E → m⁻ at fixed t: the d=3 s-wave condition w·cot(wt) = −k tends
        // to cot(wt) = 0, i.e. wt → π/2 and the depth approaches the
        // critical value √(m² + (π/2t)²) − m
        let c = ch(3, 0, 0);
        let lim = (1.0 + std::f64::consts::FRAC_PI_2.powi(2)).sqrt() - 1.0;
        let mut prev_gap = f64::INFINITY;
        for &de in &[1e-2, 1e-4, 1e-6] {
            let d = solve_depth(1.0 - de, 1.0, &ctx(), &c).unwrap();
            let gap = (d - lim).abs();
            assert!(gap < prev_gap);
            prev_gap = gap;
        }
        assert!(prev_gap < 1e-3);
        // 1D even ground state: w·tan(wt) = k → 0⁺, so the depth itself
        // vanishes at threshold
        let mut prev_d = f64::INFINITY;
        for &de in &[1e-2, 1e-4, 1e-6] {
            let d = solve_depth(1.0 - de, 1.0, &ctx(), &ch(1, 0, 0)).unwrap();
            assert!(d < prev_d);
            prev_d = d;
        }
        assert!(prev_d < 2e-3);
    }

    #[test]
    fn solve_e_root_structure() {
        let c = ch(3, 0, 0);
        // below critical depth: no bound state
        assert!(solve_e(0.1, 1.0, &ctx(), &c).unwrap().is_empty());
        // the spectral curve is unimodal: v0 between the E=−m endpoint value
        // and the maximum gives two roots, a shallow v0 exactly one
        let e_grid: Vec<f64> = (0..400).map(|i| -0.999 + 1.998 * i as f64 / 399.0).collect();
        let depths: Vec<f64> = e_grid
            .iter()
            .map(|&e| solve_depth(e, 1.0, &ctx(), &c).unwrap())
            .collect();
        let d_max = depths.iter().cloned().fold(0.0f64, f64::max);
        let d_left = depths[0]; // value near E = −m
        let d_right = depths[depths.len() - 1];
        let two = solve_e(0.5 * (d_left + d_max), 1.0, &ctx(), &c).unwrap();
        assert_eq!(two.len(), 2, "expected two roots, got {two:?}");
        let one = solve_e(0.5 * (d_right + d_left.min(d_max)), 1.0, &ctx(), &c).unwrap();
        assert_eq!(one.len(), 1, "expected one root, got {one:?}");
        let none = solve_e(d_max * 1.01, 1.0, &ctx(), &c).unwrap();
        assert!(none.is_empty(), "expected no roots, got {none:?}");
        // roots plug back into the residual
        for &e in two.iter().chain(one.iter()) {
            let well = WellSpec { t: 1.0, v0: 0.5 * (d_left + d_max), floor: 0.0 };
            let r = residual_radial(e, &well, 1.0, &c);
            if two.contains(&e) {
                assert!(r.unwrap().abs() < 1e-8);
            }
        }
    }

    #[test]
    fn scaled_curve_endpoints_and_zero() {
        let mu = 1.0;
        let grid: Vec<f64> = (1..=2000).map(|i| 1.5 * i as f64 / 2000.0).collect();
        let pts = scaled_ground_curve(mu, &grid);
        // t → 0: e → ±μ, u → μ ∓ μ
        let first_plus = pts.iter().find(|p| p.e > 0.0).unwrap();
        assert!((first_plus.e - mu).abs() < 1e-2 && first_plus.u < 2e-2);
        let first_minus = pts.iter().find(|p| p.e < 0.0).unwrap();
        assert!((first_minus.e + mu).abs() < 1e-2 && (first_minus.u - 2.0 * mu).abs() < 2e-2);
        // e(t₀) = 0
        let t0 = scaled_curve_zero(mu);
        let tt = t0 * t0.tan();
        assert_relative_eq!(tt, mu, max_relative = 1e-10);
        // admissible points only
        for p in &pts {
            assert!(p.t < std::f64::consts::FRAC_PI_2);
            assert!(p.u > 0.0);
        }
    }

    #[test]
    fn scaled_curve_consistent_with_unscaled_solver() {
        // u/b must equal the physical full depth at (E = e/b, m = μ/b,
        // halfwidth b) for the even ground state
        let mu = 1.0;
        for &b in &[0.5, 2.0] {
            let m = mu / b;
            let pctx = PhysicalContext::new(m).unwrap();
            for &t in &[0.3, 0.6, 0.85] {
                let pts = scaled_ground_curve(mu, &[t]);
                for p in pts {
                    let d = solve_depth(p.e / b, b, &pctx, &ch(1, 0, 0)).unwrap();
                    assert_relative_eq!(d, p.u / b, max_relative = 1e-11);
                }
            }
        }
    }

    #[test]
    fn scaling_invariance_of_residual_zeros() {
        // (m, t, E, v) → (λm, t/λ, λE, λv) preserves residual zeros
        let c = ch(3, 1, 0);
        let e = 0.25;
        let d = solve_depth(e, 1.0, &ctx(), &c).unwrap();
        for &lam in &[0.5, 3.0] {
            let sctx = PhysicalContext::new(lam).unwrap();
            let d2 = solve_depth(lam * e, 1.0 / lam, &sctx, &c).unwrap();
            assert_relative_eq!(d2, lam * d, max_relative = 1e-12);
        }
    }

    #[test]
    fn exact_curve_concave_unimodal() {
        // solve_v as a function of E on a 200-point grid: concave, at most
        // unimodal per channel
        for c in [ch(1, 0, 0), ch(3, 0, 1), ch(2, 0, 0)] {
            let vs: Vec<f64> = (0..200)
                .map(|i| {
                    let e = -0.999 + 1.998 * i as f64 / 199.0;
                    solve_v(e, &WellShape::unit(1.0), &ctx(), &c).unwrap().v
                })
                .collect();
            let vmax = vs.iter().cloned().fold(0.0f64, f64::max);
            let h = 1.998 / 199.0;
            let mut sign_changes = 0;
            let mut last_sign = 0i8;
            for i in 1..vs.len() {
                let diff = vs[i] - vs[i - 1];
                if diff.abs() < 1e-9 * vmax {
                    continue;
                }
                let s = if diff > 0.0 { 1 } else { -1 };
                if last_sign != 0 && s != last_sign {
                    sign_changes += 1;
                }
                last_sign = s;
            }
            assert!(sign_changes <= 1, "channel {c:?} not unimodal");
            for i in 1..vs.len() - 1 {
                let second = (vs[i + 1] - 2.0 * vs[i] + vs[i - 1]) / (h * h);
                assert!(
                    second <= 1e-6 * vmax / (h * h) * 1e-2 + 1e-6 * vmax,
                    "channel {c:?}: positive curvature {second} at i = {i}"
                );
            }
        }
    }

    #[test]
    fn well_shape_from_catalog() {
        let f = Shape::square_well(1.5).unwrap();
        let w = WellShape::from_shape(&f).unwrap();
        assert_eq!(w, WellShape::unit(1.5));
        assert!(WellShape::from_shape(&Shape::woods_saxon(0.1).unwrap()).is_err());
    }
}
