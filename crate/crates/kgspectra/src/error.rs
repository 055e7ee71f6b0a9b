//! Error type shared by all solver modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Quantum numbers outside the supported domain (d ≥ 1, l ≥ 0, l = 0 when d = 1).
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    /// Bound states require |E| < m (relative to the potential floor).
    #[error("requires |E| < m: E = {e}, m = {m}")]
    EnergyOutOfRange { e: f64, m: f64 },

    /// A shape parameter or class condition is violated.
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// The requested state does not exist for any admissible coupling.
    #[error("no bound state: {0}")]
    NoBoundState(String),

    /// (E + v0)² ≤ m²: the well interior is not oscillatory, so the branch
    /// carries no crossing solution.
    #[error("evanescent interior: (E + v0)^2 <= m^2 at E = {e}, v0 = {v0}")]
    EvanescentInterior { e: f64, v0: f64 },

    /// The interior Riccati-Bessel function is too close to one of its zeros
    /// for a meaningful logarithmic derivative.
    #[error("logarithmic-derivative pole near z = {z} (order {nu})")]
    PoleProximity { nu: f64, z: f64 },

    /// Envelope construction produced a well of zero depth.
    #[error("degenerate well: {0}")]
    DegenerateWell(String),

    /// Curve comparison requires pointwise-ordered shapes.
    #[error("shapes are not pointwise ordered: {0}")]
    UnorderedShapes(String),

    /// The denominator E⟨f⟩ − v⟨f²⟩ came out non-negative, which the spectral
    /// inequality 2E⟨f⟩ < v⟨f²⟩ forbids; indicates a solver defect.
    #[error("spectral inequality violated: {0}")]
    InequalityViolated(String),

    /// Malformed tabulated-shape input.
    #[error("shape table: {0}")]
    Table(String),

    /// A curve operation's precondition failed (too few points, unordered
    /// grid, mismatched channels).
    #[error("curve: {0}")]
    Curve(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
