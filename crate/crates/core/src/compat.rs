//! Joint measurability of binary qubit observables.
//!
//! Two unbiased observables with vectors **c**, **d** are jointly measurable
//! iff ‖c−d‖ + ‖c+d‖ ≤ 2, which is equivalent to the unsharpness criterion
//! U(C)² U(D)² ≥ ‖c×d‖². When the criterion holds an explicit joint
//! observable exists with effects G_{kℓ} = ¼[(1 ± ⟨c,d⟩)𝟙 + (±c ± d)·σ].
//!
//! Biased pairs are handled through two error-non-increasing reductions:
//! averaging with the outcome-swapped observable (covariant symmetrization)
//! and projecting the vectors into the plane of the target axes. Both
//! preserve joint measurability, so the unbiased criterion decides every
//! trade-off question that arises here.

use serde::{Deserialize, Serialize};

use crate::bloch::{BinaryObservable, BlochVector, Outcome};
use crate::matrix::{HermitianMatrix2, Matrix2};
use crate::{tol, Error, Result};

/// Degree of incompatibility ‖a−b‖ + ‖a+b‖ − 2 of two sharp target axes.
///
/// Zero iff the targets are compatible (collinear axes); the maximum
/// 2√2 − 2 is reached for orthogonal axes.
pub fn degree_of_incompatibility(a: &BlochVector, b: &BlochVector) -> Result<f64> {
    a.require_unit()?;
    b.require_unit()?;
    Ok((*a - *b).norm() + (*a + *b).norm() - 2.0)
}

/// Joint-measurability criterion ‖c−d‖ + ‖c+d‖ ≤ 2 for unbiased observables,
/// decided with [`tol::BOUNDARY`] slack.
pub fn is_compatible_unbiased(c: &BlochVector, d: &BlochVector) -> bool {
    compatibility_criterion(c, d) <= 2.0 + tol::BOUNDARY
}

/// The left-hand side ‖c−d‖ + ‖c+d‖ of the compatibility criterion.
pub fn compatibility_criterion(c: &BlochVector, d: &BlochVector) -> f64 {
    (*c - *d).norm() + (*c + *d).norm()
}

/// Unsharpness U(C) = √(1 − ‖c‖²) of an unbiased observable: zero for sharp
/// observables, one for the trivial coin.
pub fn unsharpness(c: &BlochVector) -> f64 {
    (1.0 - c.norm_sq()).max(0.0).sqrt()
}

/// Both sides of the unsharpness form of the compatibility criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnsharpnessCriterion {
    /// U(C)² U(D)².
    pub lhs: f64,
    /// ‖c × d‖².
    pub rhs: f64,
    /// lhs ≥ rhs (with boundary slack).
    pub holds: bool,
}

/// Evaluates U(C)² U(D)² ≥ ‖c×d‖², the unsharpness form of the criterion:
/// noncommuting unbiased observables are compatible iff sufficiently unsharp.
/// The verdict agrees with [`is_compatible_unbiased`] away from the boundary.
pub fn compat_equiv_unsharpness(c: &BlochVector, d: &BlochVector) -> UnsharpnessCriterion {
    let lhs = (1.0 - c.norm_sq()).max(0.0) * (1.0 - d.norm_sq()).max(0.0);
    let rhs = c.cross(d).norm_sq();
    UnsharpnessCriterion {
        lhs,
        rhs,
        holds: lhs >= rhs - tol::BOUNDARY,
    }
}

/// One effect of a joint observable in Bloch form: G = ¼(w·𝟙 + g·σ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointComponent {
    pub weight: f64,
    pub vector: BlochVector,
}

impl JointComponent {
    pub fn matrix(&self) -> HermitianMatrix2 {
        HermitianMatrix2::from_pauli(
            0.25 * self.weight,
            0.25 * self.vector.x,
            0.25 * self.vector.y,
            0.25 * self.vector.z,
        )
    }
}

/// A four-outcome joint observable G_{kℓ}, k,ℓ = ±, whose marginals are two
/// binary observables.
///
/// Components are stored both in Bloch form (weight, vector) and as matrices;
/// the matrix form is authoritative for positivity decisions. Outcome order
/// is (+,+), (+,−), (−,+), (−,−).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawJoint")]
pub struct JointObservable {
    components: [JointComponent; 4],
}

#[derive(Deserialize)]
struct RawJoint {
    components: [JointComponent; 4],
}

impl TryFrom<RawJoint> for JointObservable {
    type Error = Error;
    fn try_from(raw: RawJoint) -> Result<Self> {
        JointObservable::from_components(raw.components)
    }
}

/// Outcome order used by [`JointObservable`]: (+,+), (+,−), (−,+), (−,−).
pub const JOINT_OUTCOMES: [(Outcome, Outcome); 4] = [
    (Outcome::Plus, Outcome::Plus),
    (Outcome::Plus, Outcome::Minus),
    (Outcome::Minus, Outcome::Plus),
    (Outcome::Minus, Outcome::Minus),
];

impl JointObservable {
    /// Validates positivity (min eigenvalue ≥ −[`tol::BOUNDARY`], on the
    /// matrices) and normalization Σ G_{kℓ} = 𝟙.
    pub fn from_components(components: [JointComponent; 4]) -> Result<Self> {
        let joint = Self { components };
        joint.validate()?;
        Ok(joint)
    }

    /// Builds a joint observable from four effect matrices, extracting the
    /// Bloch form from their Pauli components.
    pub fn from_matrices(effects: [HermitianMatrix2; 4]) -> Result<Self> {
        let mut components = [JointComponent {
            weight: 0.0,
            vector: BlochVector::ZERO,
        }; 4];
        for (slot, eff) in components.iter_mut().zip(effects.iter()) {
            let (t, x, y, z) = eff.pauli_components();
            *slot = JointComponent {
                weight: 4.0 * t,
                vector: BlochVector::new(4.0 * x, 4.0 * y, 4.0 * z),
            };
        }
        Self::from_components(components)
    }

    fn validate(&self) -> Result<()> {
        let mut sum = Matrix2::zero();
        for comp in &self.components {
            let m = comp.matrix();
            let min_eig = m.min_eigenvalue();
            if min_eig < -tol::BOUNDARY {
                return Err(Error::PositivityViolation {
                    context: "joint observable effect",
                    min_eig,
                });
            }
            sum = sum + *m.matrix();
        }
        let defect = sum.max_abs_diff(&Matrix2::identity());
        if defect > 1e-12 {
            return Err(Error::InvalidProbability {
                context: "joint observable normalization",
                detail: defect,
            });
        }
        Ok(())
    }

    pub fn component(&self, k: Outcome, l: Outcome) -> &JointComponent {
        &self.components[2 * k.index() + l.index()]
    }

    pub fn components(&self) -> &[JointComponent; 4] {
        &self.components
    }

    pub fn effect(&self, k: Outcome, l: Outcome) -> HermitianMatrix2 {
        self.component(k, l).matrix()
    }

    /// Smallest eigenvalue over the four effects.
    pub fn min_eigenvalue(&self) -> f64 {
        self.components
            .iter()
            .map(|comp| comp.matrix().min_eigenvalue())
            .fold(f64::INFINITY, f64::min)
    }

    /// First marginal C: C_k = G_{k,+} + G_{k,−}.
    pub fn marginal_first(&self) -> Result<BinaryObservable> {
        let plus =
            self.effect(Outcome::Plus, Outcome::Plus) + self.effect(Outcome::Plus, Outcome::Minus);
        BinaryObservable::from_effect(&plus)
    }

    /// Second marginal D: D_ℓ = G_{+,ℓ} + G_{−,ℓ}.
    pub fn marginal_second(&self) -> Result<BinaryObservable> {
        let plus =
            self.effect(Outcome::Plus, Outcome::Plus) + self.effect(Outcome::Minus, Outcome::Plus);
        BinaryObservable::from_effect(&plus)
    }

    /// Outcome probabilities tr[ρ G_{kℓ}] = ¼(w + ⟨g, r⟩), in outcome order.
    pub fn probabilities(&self, state: &crate::bloch::QubitState) -> [f64; 4] {
        let r = state.bloch();
        let mut probs = [0.0; 4];
        for (slot, comp) in probs.iter_mut().zip(self.components.iter()) {
            *slot = (0.25 * (comp.weight + comp.vector.dot(&r))).clamp(0.0, 1.0);
        }
        probs
    }
}

/// Explicit joint observable of two compatible unbiased observables:
/// G_{+,±} = ¼[(1 ± ⟨c,d⟩)𝟙 + (c ± d)·σ] and complements.
///
/// Positivity of all four effects, 1 ± ⟨c,d⟩ ≥ ‖c ± d‖, holds exactly when
/// the pair is compatible; an [`Error::IncompatiblePair`] is raised otherwise.
pub fn joint_observable(c: &BlochVector, d: &BlochVector) -> Result<JointObservable> {
    let inner = c.dot(d);
    let components = [
        JointComponent {
            weight: 1.0 + inner,
            vector: *c + *d,
        },
        JointComponent {
            weight: 1.0 - inner,
            vector: *c - *d,
        },
        JointComponent {
            weight: 1.0 - inner,
            vector: -(*c - *d),
        },
        JointComponent {
            weight: 1.0 + inner,
            vector: -(*c + *d),
        },
    ];
    JointObservable::from_components(components).map_err(|err| match err {
        Error::PositivityViolation { .. } => Error::IncompatiblePair {
            criterion: compatibility_criterion(c, d),
        },
        other => other,
    })
}

/// Averages an observable with its outcome-swapped twin, producing the
/// unbiased observable with the same vector: C̄₊ = ½(C₊ + C′₊) = ½(𝟙 + c·σ).
///
/// Approximation errors against any target never increase under this map,
/// and joint measurability of a pair is preserved.
pub fn symmetrize_covariant(c: &BinaryObservable) -> BinaryObservable {
    let (v_plus, v_minus) = c.values();
    BinaryObservable::with_values(1.0, c.vector(), v_plus, v_minus)
        .expect("symmetrized observable keeps |e| <= 1")
}

/// Replaces the observable vector by its orthogonal projection onto
/// span(a, b), leaving the bias untouched.
///
/// Against targets inside the plane the worst-case error never increases,
/// and compatibility of a pair is preserved. Collinear spanning vectors are
/// rejected with [`Error::DegeneratePlane`].
pub fn project_to_plane(
    c: &BinaryObservable,
    a: &BlochVector,
    b: &BlochVector,
) -> Result<BinaryObservable> {
    let cross = a.cross(b);
    if cross.norm() <= 1e-12 * a.norm() * b.norm() || a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::DegeneratePlane);
    }
    let u1 = a.normalized()?;
    let w = *b - u1 * b.dot(&u1);
    let u2 = w.normalized()?;
    let v = c.vector();
    let projected = u1 * v.dot(&u1) + u2 * v.dot(&u2);
    let (v_plus, v_minus) = c.values();
    BinaryObservable::with_values(c.bias(), projected, v_plus, v_minus)
}
