//! Discrete spectra of the Klein-Gordon equation with attractive bounded
//! vector potentials in d ≥ 1 spatial dimensions.
//!
//! The eigenvalue problem treated here is the radial Klein-Gordon equation
//! in natural units (ħ = c = 1),
//!
//! ```text
//! φ″(r) = [m² − (E − v f(r))² + Q/r²] φ(r),    Q = (2l+d−1)(2l+d−3)/4,
//! ```
//!
//! with a potential V = v·f split into a coupling v > 0 and a shape f that is
//! non-positive, attractive (monotone non-decreasing on [0, ∞)) and vanishes
//! at infinity. Bound states exist for |E| < m. Instead of the two-valued
//! E(v), the crate works with the single-valued spectral function v = G(E),
//! which is concave and at most unimodal in E.
//!
//! Module map:
//! - [`kernel`]: domain types (channels, spectral points and curves, radial
//!   solutions) and the shared numerical contracts.
//! - [`potentials`]: the shape catalog plus square-well envelope and
//!   energy-shift constructions.
//! - [`specfun`]: interior and exterior Riccati-Bessel logarithmic
//!   derivatives used by the exact square-well solver.
//! - [`exactwell`]: closed-form square-well eigenvalue machinery, including
//!   the scaled ground-state curve.
//! - [`shooting`]: RK4 shooting solver for arbitrary bounded shapes, with
//!   expectation values and the analytic slope v_E.
//! - [`spectral`]: curve tracing, concavity/monotonicity/comparison reports,
//!   CSV/JSON serialization.
//! - [`bounds`]: optimized square-well envelope bounds G_L(E) ≤ G(E) ≤ G_U(E).

pub mod bounds;
pub mod error;
pub mod exactwell;
pub mod kernel;
pub mod potentials;
pub mod shooting;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use kernel::{Channel, PhysicalContext, RadialSolution, SpectralCurve, SpectralPoint};
pub use potentials::Shape;

/// Crate version string recorded in dataset headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
