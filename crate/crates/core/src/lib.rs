//! Measurement-uncertainty toolkit for binary (±1-valued) qubit observables.
//!
//! Everything in this crate is parametrized on the Bloch sphere: a state is a
//! vector **r** with ‖r‖ ≤ 1, and a two-outcome POVM is a bias `e0` together
//! with a vector **e** such that the `+` effect is ½(e0·𝟙 + **e**·σ).
//! On top of these primitives the crate provides
//!
//! * [`transport`] — Wasserstein-2 approximation errors between binary outcome
//!   distributions, in closed form and by explicit coupling minimization;
//! * [`compat`] — joint-measurability decisions, unsharpness, explicit joint
//!   observables, and the covariant/plane reductions;
//! * [`tradeoff`] — the additive error trade-off relation with its tight bound
//!   and optimal compatible approximator pair, the error-product bound, the
//!   additive preparation uncertainty relations, and the smearing analysis
//!   with its discrete Heisenberg–Weyl covariant joint observable;
//! * [`noiseop`] — noise-operator error quantities ε computed from moment
//!   operators, their closed forms and trade-off relations;
//! * [`experiments`] — the Vienna-type projective scheme and the Toronto-type
//!   CNOT pointer-coupling scheme, with a full two-qubit simulation;
//! * [`montecarlo`] — seeded finite-shot sampling and empirical error analysis;
//! * [`verify`] — randomized sweep suites certifying the inequalities;
//! * [`oracle`] — independent brute-force certification routes used by tests.
//!
//! All analytic results are cross-checked against a 2×2 complex matrix backend
//! ([`matrix`]); the two routes are kept independent so each certifies the
//! other.

pub mod bloch;
pub mod compat;
pub mod experiments;
pub mod matrix;
pub mod montecarlo;
pub mod noiseop;
pub mod oracle;
pub mod tradeoff;
pub mod transport;
pub mod verify;

pub use bloch::{BinaryObservable, BlochVector, Outcome, QubitState};
pub use compat::JointObservable;
pub use matrix::{HermitianMatrix2, Matrix2};
pub use tradeoff::TradeoffReport;

use thiserror::Error;

/// Tolerance thresholds used by construction checks and boundary decisions.
///
/// Optimizers and saturating constructions sit exactly on compatibility and
/// positivity boundaries, so every boundary decision carries a small slack.
pub mod tol {
    /// Slack accepted on positivity, compatibility, and probability bounds.
    /// Absorbs rounding from grid/gradient searches that land on a boundary.
    pub const BOUNDARY: f64 = 1e-12;

    /// Deviation from unit norm accepted for axis vectors of sharp targets.
    pub const UNIT_NORM: f64 = 1e-9;

    /// Hermiticity defect accepted when constructing a Hermitian matrix.
    pub const HERMITICITY: f64 = 1e-12;

    /// Required agreement between analytic closed forms and the matrix
    /// backend; disagreement beyond this signals a bug, not rounding.
    pub const BACKEND_AGREEMENT: f64 = 1e-12;

    /// |slack| below which a trade-off relation counts as saturated.
    pub const SATURATION: f64 = 1e-6;

    /// Positivity floor for POVMs reconstructed by the two-qubit simulation;
    /// a violation beyond this signals a backend bug rather than rounding.
    pub const SIMULATION_POSITIVITY: f64 = 1e-10;
}

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// State Bloch vector leaves the unit ball.
    #[error("state Bloch vector has norm {norm}, which exceeds 1")]
    InvalidState { norm: f64 },

    /// Effect positivity ‖e‖ ≤ min(e0, 2−e0) violated.
    #[error("effect positivity violated: |e| = {norm_e} exceeds min(e0, 2-e0) = {cap}")]
    InvalidObservable { norm_e: f64, cap: f64 },

    /// Outcome labels must satisfy v+ > v-.
    #[error("outcome values must satisfy v_plus > v_minus, got ({v_plus}, {v_minus})")]
    InvalidValues { v_plus: f64, v_minus: f64 },

    /// Operation defined only for the canonical ±1 outcome labels.
    #[error("operation requires outcome values +1/-1, got ({v_plus}, {v_minus})")]
    NonCanonicalValues { v_plus: f64, v_minus: f64 },

    /// A unit vector was required.
    #[error("expected a unit vector, got norm {norm}")]
    NotUnit { norm: f64 },

    /// An unbiased (e0 = 1) observable was required.
    #[error("observable must be unbiased (e0 = 1), got e0 = {e0}")]
    Biased { e0: f64 },

    /// A sharp (projection-valued) observable was required.
    #[error("observable must be sharp, got e0 = {e0}, |e| = {norm_e}")]
    NotSharp { e0: f64, norm_e: f64 },

    /// Two orthogonal vectors were required.
    #[error("vectors must be orthogonal, got inner product {dot}")]
    NotOrthogonal { dot: f64 },

    /// The approximator pair admits no joint observable.
    #[error("pair is not jointly measurable: |c-d| + |c+d| = {criterion} > 2")]
    IncompatiblePair { criterion: f64 },

    /// Two collinear vectors do not span a plane.
    #[error("vectors are collinear and do not span a plane")]
    DegeneratePlane,

    /// Matrix fails the Hermiticity check.
    #[error("matrix is not Hermitian: defect {defect}")]
    NotHermitian { defect: f64 },

    /// An operator that must be positive semidefinite is not.
    #[error("positivity violated in {context}: minimal eigenvalue {min_eig}")]
    PositivityViolation { context: &'static str, min_eig: f64 },

    /// Probabilities were negative or did not normalize.
    #[error("invalid probability data for {context}: {detail}")]
    InvalidProbability { context: &'static str, detail: f64 },

    /// A numeric parameter fell outside its documented range.
    #[error("parameter {name} = {value} outside allowed range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
