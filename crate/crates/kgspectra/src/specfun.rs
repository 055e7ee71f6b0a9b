//! Riccati-Bessel logarithmic derivatives of real order for the exact
//! square-well matching problem.
//!
//! The interior solution of the reduced radial equation inside a flat well
//! is S_ν(z) = z·j_ν(z) ("Handbook of Mathematical Functions", eq. 10.3.2);
//! the decaying exterior partner at real argument is Ĉ_ν(y) = y·k̂_ν(y)
//! built from the modified spherical Bessel function of the second kind
//! (eq. 10.2.4). Channel orders are ν = (2l + d − 3)/2, so only two families
//! occur: integer ν for odd d (elementary sin/cos and e^{−y} forms) and
//! half-odd ν for even d, which maps onto integer-order cylinder functions
//! J_p and K_p with p = ν + 1/2 = l + (d − 2)/2.

use crate::error::{Error, Result};
use crate::kernel::Channel;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// Order ν ≥ −1/2 of the Riccati-Bessel pair, as produced by a channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order {
    nu: f64,
    family: Family,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Family {
    /// Integer ν (odd d): S_ν reduces to sin/cos polynomials.
    Spherical(u32),
    /// Half-odd ν (even d): S_ν = √(πz/2)·J_p(z) with cylinder order p = ν + 1/2.
    Cylinder(u32),
}

impl Order {
    /// ν = (2l + d − 3)/2 for a d ≥ 2 channel.
    pub fn from_channel(ch: &Channel) -> Result<Self> {
        if ch.d() < 2 {
            return Err(Error::InvalidChannel(
                "Riccati-Bessel orders are defined for d >= 2 (d = 1 uses parity forms)".into(),
            ));
        }
        let two_nu = 2 * ch.l() as i64 + ch.d() as i64 - 3;
        Self::from_two_nu(two_nu)
    }

    /// Order from a raw ν; 2ν must be an integer ≥ −1.
    pub fn from_nu(nu: f64) -> Result<Self> {
        let two_nu = (2.0 * nu).round();
        if (2.0 * nu - two_nu).abs() > 1e-9 {
            return Err(Error::InvalidChannel(format!(
                "unsupported Riccati-Bessel order nu = {nu}: 2nu must be an integer"
            )));
        }
        Self::from_two_nu(two_nu as i64)
    }

    fn from_two_nu(two_nu: i64) -> Result<Self> {
        if two_nu < -1 {
            return Err(Error::InvalidChannel(format!(
                "order nu = {} must be >= -1/2",
                two_nu as f64 / 2.0
            )));
        }
        let nu = two_nu as f64 / 2.0;
        let family = if two_nu % 2 == 0 {
            Family::Spherical((two_nu / 2) as u32)
        } else {
            Family::Cylinder(((two_nu + 1) / 2) as u32)
        };
        Ok(Self { nu, family })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

/// Interior Riccati-Bessel function S_ν(z) = z·j_ν(z) and its derivative.
pub fn riccati_interior(order: Order, z: f64) -> (f64, f64) {
    debug_assert!(z > 0.0);
    match order.family {
        Family::Spherical(n) => riccati_s_spherical(n, z),
        Family::Cylinder(p) => {
            let (jp, jpd) = cyl_j_and_deriv(p, z);
            let pref = (FRAC_PI_2 * z).sqrt();
            (pref * jp, pref * (jpd + jp / (2.0 * z)))
        }
    }
}

/// d/dz ln S_ν(z). Signals pole proximity when |S_ν(z)| is below the
/// underflow guard; callers treat such poles as branch boundaries.
pub fn riccati_interior_logderiv(order: Order, z: f64) -> Result<f64> {
    let (s, sp) = riccati_interior(order, z);
    if s.abs() < 1e-300 {
        return Err(Error::PoleProximity {
            nu: order.nu,
            z,
        });
    }
    Ok(sp / s)
}

/// Scaled exterior pair (e^y·Ĉ_ν(y), e^y·Ĉ_ν′(y)) with Ĉ_ν(y) = y·k̂_ν(y).
/// The e^y scaling avoids underflow deep in the tail; ratios and the
/// matching condition are unaffected.
pub fn riccati_exterior_scaled(order: Order, y: f64) -> (f64, f64) {
    let c = riccati_exterior_value_scaled(order, y);
    (c, c * riccati_exterior_logderiv(order, y))
}

fn riccati_exterior_value_scaled(order: Order, y: f64) -> f64 {
    debug_assert!(y > 0.0);
    match order.family {
        Family::Spherical(n) => {
            let (_, cn) = exterior_c_pair(n, y);
            FRAC_PI_2 * cn
        }
        Family::Cylinder(p) => {
            let kp = cyl_k_scaled(p, y).1;
            (FRAC_PI_2 * y).sqrt() * kp
        }
    }
}

/// d/dy ln Ĉ_ν(y) for the decaying exterior solution. Tends to −1 as
/// y → ∞ (exactly −1 for ν = 0) and is negative for ν ≥ 0 at every y.
/// The ν = −1/2 order is the one exception: √y·K₀(y) still grows for
/// y < ln(1/y)-ish territory (y ≲ 0.135), where the log-derivative is
/// positive before it decreases toward −1 from above.
pub fn riccati_exterior_logderiv(order: Order, y: f64) -> f64 {
    debug_assert!(y > 0.0);
    match order.family {
        Family::Spherical(n) => {
            // Ĉ_n′ = −(Ĉ_{n−1} + (n/y)·Ĉ_n), with Ĉ_{−1} = Ĉ_0.
            let (cm1, cn) = exterior_c_pair(n, y);
            -cm1 / cn - n as f64 / y
        }
        Family::Cylinder(p) => {
            // d/dy ln √y·K_p(y) = 1/(2y) − (K_{p−1} + K_{p+1})/(2 K_p).
            let (km1, kp, kp1) = cyl_k_triple(p, y);
            0.5 / y - (km1 + kp1) / (2.0 * kp)
        }
    }
}

/// First `count` positive zeros of S_ν, enumerated by bracketing sign
/// changes; these delimit the eigenvalue branches (node count ↔ branch
/// index).
pub fn interior_zeros(order: Order, count: usize) -> Vec<f64> {
    let mut zeros = Vec::with_capacity(count);
    let step = 0.25;
    let mut z = step;
    let mut prev = riccati_interior(order, z).0;
    while zeros.len() < count {
        let z2 = z + step;
        let cur = riccati_interior(order, z2).0;
        if prev == 0.0 {
            zeros.push(z);
        } else if prev * cur < 0.0 {
            zeros.push(bisect_zero(order, z, z2));
        }
        z = z2;
        prev = cur;
        debug_assert!(z < 1e4, "zero scan ran away for nu = {}", order.nu);
    }
    zeros
}

fn bisect_zero(order: Order, mut lo: f64, mut hi: f64) -> f64 {
    let slo = riccati_interior(order, lo).0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let smid = riccati_interior(order, mid).0;
        if smid == 0.0 {
            return mid;
        }
        if (smid > 0.0) == (slo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// Integer spherical order: elementary family.
// ---------------------------------------------------------------------------

/// (S_n(z), S_n′(z)) for integer order. Downward recurrence from
/// n + 30 + ⌈z⌉ normalized against the elementary j_0/j_1 values at the end;
/// power-series fallback for small z.
fn riccati_s_spherical(n: u32, z: f64) -> (f64, f64) {
    if n == 0 {
        return (z.sin(), z.cos());
    }
    if z < 0.12 * (n as f64 + 1.0) {
        return riccati_s_series_spherical(n, z);
    }
    let nmax = n as usize + 30 + z.ceil() as usize;
    let n = n as usize;
    let mut j_up = 0.0_f64; // j̃_{k+1}
    let mut j_cur = 1e-300_f64; // j̃_k, starting at k = nmax
    let mut cap_n = 0.0_f64;
    let mut cap_nm1 = 0.0_f64;
    let mut j0 = 0.0_f64;
    let mut j1 = 0.0_f64;
    for k in (1..=nmax).rev() {
        let j_down = (2 * k + 1) as f64 / z * j_cur - j_up;
        j_up = j_cur;
        j_cur = j_down;
        let idx = k - 1; // j_cur now holds j̃_idx
        if idx == n {
            cap_n = j_cur;
        }
        if idx == n - 1 {
            cap_nm1 = j_cur;
        }
        if idx == 1 {
            j1 = j_cur;
        }
        if idx == 0 {
            j0 = j_cur;
        }
        if j_cur.abs() > 1e250 {
            let s = 1e-250;
            j_up *= s;
            j_cur *= s;
            cap_n *= s;
            cap_nm1 *= s;
            j1 *= s;
        }
    }
    let true_j0 = z.sin() / z;
    let true_j1 = z.sin() / (z * z) - z.cos() / z;
    let alpha = if true_j0.abs() >= true_j1.abs() {
        true_j0 / j0
    } else {
        true_j1 / j1
    };
    let jn = alpha * cap_n;
    let jnm1 = alpha * cap_nm1;
    // S_n = z·j_n, S_n′ = z·j_{n−1} − n·j_n
    (z * jn, z * jnm1 - n as f64 * jn)
}

fn riccati_s_series_spherical(n: u32, z: f64) -> (f64, f64) {
    // S_n(z) = z^{n+1}/(2n+1)!! · Σ_k a_k,  a_0 = 1,
    // a_{k+1} = a_k · (−z²/2) / ((k+1)(2n+2k+3))
    let mut dfact = 1.0_f64;
    let mut i = 1u32;
    while i <= 2 * n + 1 {
        dfact *= i as f64;
        i += 2;
    }
    let nf = n as f64;
    let mut a = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut dsum = nf + 1.0;
    for k in 0..200 {
        let kf = k as f64;
        a *= -z * z / 2.0 / ((kf + 1.0) * (2.0 * nf + 2.0 * kf + 3.0));
        sum += a;
        dsum += a * (nf + 1.0 + 2.0 * (kf + 1.0));
        if a.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    let zp = z.powi(n as i32);
    (zp * z * sum / dfact, zp * dsum / dfact)
}

/// Scaled exterior recurrence for integer spherical order: c_n = e^y·Ĉ_n/(π/2)
/// with c_0 = 1, c_1 = 1 + 1/y and c_{k+1} = c_{k−1} + ((2k+1)/y)·c_k
/// ("Handbook of Mathematical Functions", eq. 10.2.18; upward is the stable
/// direction for the growing-in-order decaying family). Returns
/// (c_{n−1}, c_n), with c_{−1} = c_0.
fn exterior_c_pair(n: u32, y: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 1.0);
    }
    let mut prev = 1.0_f64; // c_0
    let mut cur = 1.0 + 1.0 / y; // c_1
    for k in 1..n {
        let next = prev + (2 * k + 1) as f64 / y * cur;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

// ---------------------------------------------------------------------------
// Integer cylinder order (even d): J_p and K_p.
// ---------------------------------------------------------------------------

/// (J_p(z), J_p′(z)).
fn cyl_j_and_deriv(p: u32, z: f64) -> (f64, f64) {
    if z < 6.0 {
        let jp = cyl_j_series(p, z);
        let jd = if p == 0 {
            -cyl_j_series(1, z)
        } else {
            cyl_j_series(p - 1, z) - p as f64 / z * jp
        };
        return (jp, jd);
    }
    let (jp, jpm1_or_j1) = cyl_j_miller(p, z);
    let jd = if p == 0 {
        -jpm1_or_j1
    } else {
        jpm1_or_j1 - p as f64 / z * jp
    };
    (jp, jd)
}

fn cyl_j_series(p: u32, z: f64) -> f64 {
    let pf = p as f64;
    let mut pref = 1.0_f64;
    for i in 1..=p {
        pref *= z / 2.0 / i as f64;
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..200 {
        let kf = k as f64;
        term *= -z * z / 4.0 / ((kf + 1.0) * (pf + kf + 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    pref * sum
}

/// Miller downward recurrence with the Σ-rule normalization
/// J_0 + 2J_2 + 2J_4 + … = 1. Returns (J_p, J_{p−1}); for p = 0 the second
/// slot carries J_1.
fn cyl_j_miller(p: u32, z: f64) -> (f64, f64) {
    let p = p as usize;
    let nmax = (p + 30 + z.ceil() as usize) & !1; // even start
    let mut j_up = 0.0_f64;
    let mut j_cur = 1e-300_f64;
    let mut cap_p = if p == nmax { j_cur } else { 0.0 };
    let mut cap_aux = 0.0_f64; // J_{p−1}, or J_1 when p = 0
    let aux = if p == 0 { 1 } else { p - 1 };
    let mut norm = if nmax % 2 == 0 { 2.0 * j_cur } else { 0.0 };
    for k in (1..=nmax).rev() {
        let j_down = (2 * k) as f64 / z * j_cur - j_up;
        j_up = j_cur;
        j_cur = j_down;
        let idx = k - 1;
        if idx == p {
            cap_p = j_cur;
        }
        if idx == aux {
            cap_aux = j_cur;
        }
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * j_cur;
        } else if idx == 0 {
            norm += j_cur;
        }
        if j_cur.abs() > 1e250 {
            let s = 1e-250;
            j_up *= s;
            j_cur *= s;
            cap_p *= s;
            cap_aux *= s;
            norm *= s;
        }
    }
    (cap_p / norm, cap_aux / norm)
}

/// (e^y·K_{p−1}, e^y·K_p, e^y·K_{p+1}) by upward recurrence from the scaled
/// (K_0, K_1) seed; K_{−1} = K_1.
fn cyl_k_triple(p: u32, y: f64) -> (f64, f64, f64) {
    let (k0, k1) = k0_k1_scaled(y);
    if p == 0 {
        return (k1, k0, k1);
    }
    let mut km1 = k0;
    let mut kc = k1;
    for j in 1..p {
        let kn = km1 + 2.0 * j as f64 / y * kc;
        km1 = kc;
        kc = kn;
    }
    let kp1 = km1 + 2.0 * p as f64 / y * kc;
    (km1, kc, kp1)
}

fn cyl_k_scaled(p: u32, y: f64) -> (f64, f64) {
    let (km1, kp, _) = cyl_k_triple(p, y);
    (km1, kp)
}

/// Scaled modified Bessel pair (e^y·K_0(y), e^y·K_1(y)): classical series
/// for y ≤ 2, Thompson-Barnett continued fraction (CF2) beyond.
fn k0_k1_scaled(y: f64) -> (f64, f64) {
    if y <= 2.0 {
        let (k0, k1) = k0_k1_series(y);
        let ey = y.exp();
        (k0 * ey, k1 * ey)
    } else {
        k0_k1_cf2(y)
    }
}

fn k0_k1_series(y: f64) -> (f64, f64) {
    let x2 = y * y / 4.0;
    let lg = (y / 2.0).ln();
    // I_0 and K_0
    let mut q = 1.0_f64;
    let mut i0 = 1.0_f64;
    let mut k0sum = 0.0_f64;
    let mut h = 0.0_f64;
    for k in 1..200 {
        let kf = k as f64;
        q *= x2 / (kf * kf);
        h += 1.0 / kf;
        i0 += q;
        k0sum += q * h;
        if q < 1e-18 * i0 {
            break;
        }
    }
    let k0 = -(lg + EULER_GAMMA) * i0 + k0sum;
    // I_1 and K_1
    let mut r = 1.0_f64;
    let mut i1 = 1.0_f64; // Σ terms of I_1/(y/2)
    let mut psum = 1.0 - 2.0 * EULER_GAMMA; // (ψ(1) + ψ(2)) with ψ(1) = −γ
    let mut ksum = psum;
    let mut hk = 0.0_f64;
    for k in 1..200 {
        let kf = k as f64;
        r *= x2 / (kf * (kf + 1.0));
        hk += 1.0 / kf;
        let hk1 = hk + 1.0 / (kf + 1.0);
        psum = -2.0 * EULER_GAMMA + hk + hk1;
        i1 += r;
        ksum += r * psum;
        if r < 1e-18 * i1 {
            break;
        }
    }
    let i1v = 0.5 * y * i1;
    let k1 = 1.0 / y + lg * i1v - 0.25 * y * ksum;
    (k0, k1)
}

/// CF2 evaluation of the scaled K_0, K_1 for y > 2 (Thompson & Barnett;
/// the μ = 0 case of the standard fractional-order algorithm).
fn k0_k1_cf2(y: f64) -> (f64, f64) {
    const EPS: f64 = 1e-16;
    let a1 = 0.25_f64; // 1/4 − μ² with μ = 0
    let xi = 1.0 / y;
    let mut b = 2.0 * (1.0 + y);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0_f64;
    let mut q2 = 1.0_f64;
    let mut a = -a1;
    let mut c = a1;
    let mut q = c;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        a -= 2.0 * (i as f64 - 1.0);
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    let h = a1 * h;
    // e^y K_0 = √(π/2y)/s,   K_1 = K_0 (y + 1/2 − h)/y
    let k0 = (FRAC_PI_2 * xi).sqrt() / s;
    let k1 = k0 * (y + 0.5 - h) * xi;
    (k0, k1)
}
