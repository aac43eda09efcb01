//! Bloch-parametrized qubit states and binary observables.
//!
//! A qubit state is ρ = ½(𝟙 + **r**·σ) with ‖r‖ ≤ 1. A binary observable
//! maps outcome +1 to the effect E₊ = ½(e0·𝟙 + **e**·σ) and −1 to its
//! complement; positivity is equivalent to ‖e‖ ≤ min(e0, 2−e0) ≤ 1. The
//! observable is *sharp* (projection valued) iff e0 = 1 and ‖e‖ = 1, and
//! *unbiased* (covariant under the outcome swap) iff e0 = 1.
//!
//! Outcome labels are stored per observable so general two-valued outcome
//! sets are representable, but all trade-off formulas assume the canonical
//! ±1 labels and the corresponding operations reject anything else.

use serde::{Deserialize, Serialize};

use crate::matrix::{HermitianMatrix2, Matrix2};
use crate::{tol, Error, Result};

/// A real 3-vector on (or off) the Bloch sphere.
///
/// No normalization is ever applied silently; constructors of states and
/// observables check norms explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 3]> for BlochVector {
    fn from(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(v: BlochVector) -> Self {
        [v.x, v.y, v.z]
    }
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };
    pub const X: BlochVector = BlochVector {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: BlochVector = BlochVector {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: BlochVector = BlochVector {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &BlochVector) -> BlochVector {
        BlochVector::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= tol::UNIT_NORM
    }

    /// Fails with [`Error::NotUnit`] unless ‖v‖ = 1 within [`tol::UNIT_NORM`].
    pub fn require_unit(&self) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::NotUnit { norm: self.norm() })
        }
    }

    /// v / ‖v‖; fails on the zero vector.
    pub fn normalized(&self) -> Result<BlochVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::DegeneratePlane);
        }
        Ok(*self * (1.0 / n))
    }
}

impl std::ops::Add for BlochVector {
    type Output = BlochVector;
    fn add(self, rhs: BlochVector) -> BlochVector {
        BlochVector::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for BlochVector {
    type Output = BlochVector;
    fn sub(self, rhs: BlochVector) -> BlochVector {
        BlochVector::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Neg for BlochVector {
    type Output = BlochVector;
    fn neg(self) -> BlochVector {
        BlochVector::new(-self.x, -self.y, -self.z)
    }
}

impl std::ops::Mul<f64> for BlochVector {
    type Output = BlochVector;
    fn mul(self, s: f64) -> BlochVector {
        BlochVector::new(self.x * s, self.y * s, self.z * s)
    }
}

/// A qubit state ρ = ½(𝟙 + **r**·σ); mixed states (‖r‖ < 1) included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct QubitState {
    r: BlochVector,
}

#[derive(Deserialize)]
struct RawState {
    r: BlochVector,
}

impl TryFrom<RawState> for QubitState {
    type Error = Error;
    fn try_from(raw: RawState) -> Result<Self> {
        QubitState::new(raw.r)
    }
}

impl QubitState {
    /// Fails if ‖r‖ > 1 beyond [`tol::BOUNDARY`].
    pub fn new(r: BlochVector) -> Result<Self> {
        let norm = r.norm();
        if norm > 1.0 + tol::BOUNDARY {
            return Err(Error::InvalidState { norm });
        }
        Ok(Self { r })
    }

    /// Pure state along a unit vector.
    pub fn pure(r: BlochVector) -> Result<Self> {
        r.require_unit()?;
        Ok(Self { r })
    }

    pub fn maximally_mixed() -> Self {
        Self {
            r: BlochVector::ZERO,
        }
    }

    pub fn bloch(&self) -> BlochVector {
        self.r
    }

    /// Density matrix ½(𝟙 + r·σ).
    pub fn density_matrix(&self) -> Matrix2 {
        Matrix2::from_pauli(0.5, 0.5 * self.r.x, 0.5 * self.r.y, 0.5 * self.r.z)
    }
}

/// Measurement outcome of a binary observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    /// Index used for count arrays: `Plus` ↦ 0, `Minus` ↦ 1.
    pub fn index(&self) -> usize {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Plus => write!(f, "+"),
            Outcome::Minus => write!(f, "-"),
        }
    }
}

/// A two-outcome qubit POVM, E₊ = ½(e0·𝟙 + **e**·σ), E₋ = 𝟙 − E₊,
/// with outcome labels attached (canonically +1 and −1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawObservable")]
pub struct BinaryObservable {
    e0: f64,
    e: BlochVector,
    value_plus: f64,
    value_minus: f64,
}

#[derive(Deserialize)]
struct RawObservable {
    e0: f64,
    e: BlochVector,
    #[serde(default = "default_value_plus")]
    value_plus: f64,
    #[serde(default = "default_value_minus")]
    value_minus: f64,
}

fn default_value_plus() -> f64 {
    1.0
}

fn default_value_minus() -> f64 {
    -1.0
}

impl TryFrom<RawObservable> for BinaryObservable {
    type Error = Error;
    fn try_from(raw: RawObservable) -> Result<Self> {
        BinaryObservable::with_values(raw.e0, raw.e, raw.value_plus, raw.value_minus)
    }
}

impl BinaryObservable {
    /// Observable with canonical ±1 outcome labels.
    ///
    /// Positivity ‖e‖ ≤ min(e0, 2−e0) is enforced with slack
    /// [`tol::BOUNDARY`], so optimizer output sitting exactly on the
    /// positivity boundary is accepted.
    pub fn new(e0: f64, e: BlochVector) -> Result<Self> {
        Self::with_values(e0, e, 1.0, -1.0)
    }

    /// Observable with general outcome labels v₊ > v₋.
    pub fn with_values(e0: f64, e: BlochVector, value_plus: f64, value_minus: f64) -> Result<Self> {
        if !(value_plus > value_minus) {
            return Err(Error::InvalidValues {
                v_plus: value_plus,
                v_minus: value_minus,
            });
        }
        let cap = e0.min(2.0 - e0);
        let norm_e = e.norm();
        if !(norm_e <= cap + tol::BOUNDARY) {
            return Err(Error::InvalidObservable { norm_e, cap });
        }
        Ok(Self {
            e0,
            e,
            value_plus,
            value_minus,
        })
    }

    /// Sharp (projection-valued) observable along a unit axis.
    pub fn sharp(axis: BlochVector) -> Result<Self> {
        axis.require_unit()?;
        Self::new(1.0, axis)
    }

    /// Unbiased (covariant) observable: e0 = 1, any ‖e‖ ≤ 1.
    pub fn unbiased(e: BlochVector) -> Result<Self> {
        Self::new(1.0, e)
    }

    /// The trivial coin: both effects equal ½𝟙.
    pub fn trivial_coin() -> Self {
        Self {
            e0: 1.0,
            e: BlochVector::ZERO,
            value_plus: 1.0,
            value_minus: -1.0,
        }
    }

    pub fn bias(&self) -> f64 {
        self.e0
    }

    pub fn vector(&self) -> BlochVector {
        self.e
    }

    pub fn value(&self, outcome: Outcome) -> f64 {
        match outcome {
            Outcome::Plus => self.value_plus,
            Outcome::Minus => self.value_minus,
        }
    }

    pub fn values(&self) -> (f64, f64) {
        (self.value_plus, self.value_minus)
    }

    pub fn has_canonical_values(&self) -> bool {
        self.value_plus == 1.0 && self.value_minus == -1.0
    }

    /// Fails unless the outcome labels are exactly +1 and −1.
    pub fn require_canonical_values(&self) -> Result<()> {
        if self.has_canonical_values() {
            Ok(())
        } else {
            Err(Error::NonCanonicalValues {
                v_plus: self.value_plus,
                v_minus: self.value_minus,
            })
        }
    }

    pub fn is_unbiased(&self) -> bool {
        (self.e0 - 1.0).abs() <= tol::BOUNDARY
    }

    pub fn require_unbiased(&self) -> Result<()> {
        if self.is_unbiased() {
            Ok(())
        } else {
            Err(Error::Biased { e0: self.e0 })
        }
    }

    pub fn is_sharp(&self) -> bool {
        self.is_unbiased() && (self.e.norm() - 1.0).abs() <= tol::UNIT_NORM
    }

    pub fn require_sharp(&self) -> Result<()> {
        if self.is_sharp() {
            Ok(())
        } else {
            Err(Error::NotSharp {
                e0: self.e0,
                norm_e: self.e.norm(),
            })
        }
    }

    /// The same device with the two outcomes relabeled: +1 now reports the
    /// old − effect, so the bias goes e0 ↦ 2−e0 and the vector flips.
    pub fn outcome_swapped(&self) -> Self {
        Self {
            e0: 2.0 - self.e0,
            e: -self.e,
            value_plus: self.value_plus,
            value_minus: self.value_minus,
        }
    }

    /// Outcome probability tr[ρ E_outcome] = ½(e0 + r·e) for `+`.
    ///
    /// The result is clamped to [0, 1] to absorb boundary rounding; within
    /// the positivity domain the closed form cannot leave [0, 1] by more
    /// than that rounding.
    pub fn probability(&self, outcome: Outcome, state: &QubitState) -> f64 {
        let raw = match outcome {
            Outcome::Plus => 0.5 * (self.e0 + state.bloch().dot(&self.e)),
            Outcome::Minus => 0.5 * ((2.0 - self.e0) - state.bloch().dot(&self.e)),
        };
        raw.clamp(0.0, 1.0)
    }

    /// Effect matrix ½(e0·𝟙 + e·σ) for `+`, or its complement for `−`.
    pub fn effect(&self, outcome: Outcome) -> HermitianMatrix2 {
        match outcome {
            Outcome::Plus => HermitianMatrix2::from_pauli(
                0.5 * self.e0,
                0.5 * self.e.x,
                0.5 * self.e.y,
                0.5 * self.e.z,
            ),
            Outcome::Minus => HermitianMatrix2::from_pauli(
                0.5 * (2.0 - self.e0),
                -0.5 * self.e.x,
                -0.5 * self.e.y,
                -0.5 * self.e.z,
            ),
        }
    }

    /// Reads an observable off its `+` effect matrix.
    pub fn from_effect(effect: &HermitianMatrix2) -> Result<Self> {
        let (t, x, y, z) = effect.pauli_components();
        Self::new(2.0 * t, BlochVector::new(2.0 * x, 2.0 * y, 2.0 * z))
    }
}

/// Operator norm of the commutator of the two `+` effects, ‖[E₊, F₊]‖.
///
/// Restricted to unbiased observables, where it evaluates to ½‖e × f‖; the
/// matrix backend recomputes the norm independently and must agree to
/// [`tol::BACKEND_AGREEMENT`].
pub fn commutator_norm(a: &BinaryObservable, b: &BinaryObservable) -> Result<f64> {
    a.require_unbiased()?;
    b.require_unbiased()?;
    let analytic = 0.5 * a.vector().cross(&b.vector()).norm();
    let comm = Matrix2::commutator(
        a.effect(Outcome::Plus).matrix(),
        b.effect(Outcome::Plus).matrix(),
    );
    let numeric = comm.operator_norm();
    assert!(
        (analytic - numeric).abs() <= tol::BACKEND_AGREEMENT,
        "commutator norm mismatch: analytic {analytic} vs matrix backend {numeric}"
    );
    Ok(analytic)
}
