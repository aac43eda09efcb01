//! Error trade-off and preparation uncertainty relations.
//!
//! For any jointly measurable approximator pair (C, D) of sharp targets
//! A, B the combined worst-case errors obey the tight additive bound
//!
//! ```text
//! Δ(C,A)² + Δ(D,B)² ≥ √2·[‖a−b‖ + ‖a+b‖ − 2],
//! ```
//!
//! with the right-hand side the degree of incompatibility of the targets.
//! The bound is attained by a closed-form symmetric constellation of
//! covariant approximators sitting on the compatibility boundary
//! ([`optimal_pair`]). Companions provided here: the error-product bound,
//! the additive preparation relations for standard deviations and
//! variances, the smearing analysis that links measurement errors back to
//! preparation uncertainty, and the discrete Heisenberg–Weyl covariant
//! form of the optimal joint observable.

use serde::{Deserialize, Serialize};

use crate::bloch::{commutator_norm, BinaryObservable, BlochVector, QubitState};
use crate::compat::{self, JointObservable, JOINT_OUTCOMES};
use crate::matrix::Matrix2;
use crate::transport;
use crate::{tol, Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Outcome of checking an additive error trade-off relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffReport {
    /// Squared worst-case error of the first approximation.
    pub err_sq_a: f64,
    /// Squared worst-case error of the second approximation.
    pub err_sq_b: f64,
    /// Lower bound the sum must respect.
    pub lower_bound: f64,
    /// err_sq_a + err_sq_b − lower_bound.
    pub slack: f64,
    /// |slack| ≤ [`tol::SATURATION`].
    pub saturated: bool,
}

impl TradeoffReport {
    pub fn new(err_sq_a: f64, err_sq_b: f64, lower_bound: f64) -> Self {
        let slack = err_sq_a + err_sq_b - lower_bound;
        Self {
            err_sq_a,
            err_sq_b,
            lower_bound,
            slack,
            saturated: slack.abs() <= tol::SATURATION,
        }
    }
}

/// A two-point smearing kernel (μ₊, μ₋), μ₊ + μ₋ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSmearing")]
pub struct SmearingDistribution {
    mu_plus: f64,
    mu_minus: f64,
}

#[derive(Deserialize)]
struct RawSmearing {
    mu_plus: f64,
    mu_minus: f64,
}

impl TryFrom<RawSmearing> for SmearingDistribution {
    type Error = Error;
    fn try_from(raw: RawSmearing) -> Result<Self> {
        SmearingDistribution::new(raw.mu_plus, raw.mu_minus)
    }
}

impl SmearingDistribution {
    pub fn new(mu_plus: f64, mu_minus: f64) -> Result<Self> {
        if mu_plus < 0.0 || mu_minus < 0.0 {
            return Err(Error::InvalidProbability {
                context: "smearing distribution",
                detail: mu_plus.min(mu_minus),
            });
        }
        if (mu_plus + mu_minus - 1.0).abs() > tol::BOUNDARY {
            return Err(Error::InvalidProbability {
                context: "smearing distribution normalization",
                detail: mu_plus + mu_minus,
            });
        }
        Ok(Self { mu_plus, mu_minus })
    }

    pub fn mu_plus(&self) -> f64 {
        self.mu_plus
    }

    pub fn mu_minus(&self) -> f64 {
        self.mu_minus
    }

    /// λ = μ₊ − μ₋ ∈ [−1, 1]: the shrink factor of the smeared vector.
    pub fn lambda(&self) -> f64 {
        self.mu_plus - self.mu_minus
    }

    /// Variance of the kernel as a ±1-valued distribution: 1 − λ² = 4μ₊μ₋.
    pub fn variance(&self) -> f64 {
        4.0 * self.mu_plus * self.mu_minus
    }
}

/// The tight lower bound √2·[‖a−b‖ + ‖a+b‖ − 2] for the combined squared
/// errors of any compatible approximation of sharp targets along a and b.
///
/// Internally also evaluated through the equivalent route
/// (1/√2)[Δ(A,B)² + Δ(A,B⁽⁻⁾)² − 4], where B⁽⁻⁾ is B with its outcomes
/// swapped; the two routes must agree to [`tol::BACKEND_AGREEMENT`].
pub fn qur_bound(a: &BlochVector, b: &BlochVector) -> Result<f64> {
    let bound = SQRT_2 * compat::degree_of_incompatibility(a, b)?;
    let a_obs = BinaryObservable::sharp(*a)?;
    let b_obs = BinaryObservable::sharp(*b)?;
    let to_b = transport::delta_sq_worst(&a_obs, &b_obs)?;
    let to_b_swapped = transport::delta_sq_worst(&a_obs, &b_obs.outcome_swapped())?;
    let alt = (to_b + to_b_swapped - 4.0) / SQRT_2;
    assert!(
        (bound - alt).abs() <= tol::BACKEND_AGREEMENT,
        "trade-off bound routes disagree: {bound} vs {alt}"
    );
    Ok(bound)
}

/// Checks the additive error trade-off for an approximator pair (C, D)
/// against sharp targets along a and b.
///
/// Joint measurability is certified on the covariant reduction (the pair of
/// unbiased observables with the same vectors); errors are evaluated on the
/// raw pair, which can only enlarge the left-hand side. Incompatible pairs
/// are rejected: the relation is only claimed under joint measurability.
pub fn check_qur(
    c: &BinaryObservable,
    d: &BinaryObservable,
    a: &BlochVector,
    b: &BlochVector,
) -> Result<TradeoffReport> {
    let c_vec = c.vector();
    let d_vec = d.vector();
    if !compat::is_compatible_unbiased(&c_vec, &d_vec) {
        return Err(Error::IncompatiblePair {
            criterion: compat::compatibility_criterion(&c_vec, &d_vec),
        });
    }
    let a_obs = BinaryObservable::sharp(*a)?;
    let b_obs = BinaryObservable::sharp(*b)?;
    let err_a = transport::delta_sq_worst(c, &a_obs)?;
    let err_b = transport::delta_sq_worst(d, &b_obs)?;
    Ok(TradeoffReport::new(err_a, err_b, qur_bound(a, b)?))
}

/// The compatible covariant pair minimizing Δ(C,A)² + Δ(D,B)².
///
/// In the frame u = (a+b)/‖a+b‖, v = (a−b)/‖a−b‖ the targets read
/// a, b = cosφ·u ± sinφ·v with cosφ = ‖a+b‖/2. The minimizer is the
/// symmetric constellation c, d = α·u ± β·v with α = cosφ + t,
/// β = sinφ + t, t = (1 − cosφ − sinφ)/2, which sits exactly on the
/// compatibility boundary and achieves [`qur_bound`].
///
/// Collinear targets (b = ±a) are exactly approximable: the pair (a, b)
/// itself is returned with zero error.
pub fn optimal_pair(a: &BlochVector, b: &BlochVector) -> Result<(BlochVector, BlochVector)> {
    a.require_unit()?;
    b.require_unit()?;
    let sum = *a + *b;
    let diff = *a - *b;
    if sum.norm() <= tol::UNIT_NORM || diff.norm() <= tol::UNIT_NORM {
        return Ok((*a, *b));
    }
    let u = sum.normalized()?;
    let v = diff.normalized()?;
    let cos_phi = 0.5 * sum.norm();
    let sin_phi = 0.5 * diff.norm();
    let t = 0.5 * (1.0 - cos_phi - sin_phi);
    let alpha = cos_phi + t;
    let beta = sin_phi + t;
    Ok((u * alpha + v * beta, u * alpha - v * beta))
}

/// Error-product bound for unbiased approximators:
/// Δ(C,A)²·Δ(D,B)² ≥ 4‖[C₊, D₊]‖², the right side using the commutator of
/// the *approximators*. Returns (lhs, rhs).
///
/// Commuting approximators make the right side vanish, which is why only
/// the additive relation carries a nontrivial universal bound.
pub fn qur_product(
    c: &BinaryObservable,
    d: &BinaryObservable,
    a: &BlochVector,
    b: &BlochVector,
) -> Result<(f64, f64)> {
    c.require_unbiased()?;
    d.require_unbiased()?;
    let a_obs = BinaryObservable::sharp(*a)?;
    let b_obs = BinaryObservable::sharp(*b)?;
    let lhs = transport::delta_sq_worst(c, &a_obs)? * transport::delta_sq_worst(d, &b_obs)?;
    let comm = commutator_norm(c, d)?;
    Ok((lhs, 4.0 * comm * comm))
}

/// Standard deviation Δ(A, ρ) = √(1 − ⟨r,a⟩²) of a sharp ±1-valued
/// observable; equals ‖r × a‖ for pure states.
pub fn prep_std(a: &BinaryObservable, rho: &QubitState) -> Result<f64> {
    a.require_sharp()?;
    let overlap = rho.bloch().dot(&a.vector());
    Ok((1.0 - overlap * overlap).max(0.0).sqrt())
}

/// Both additive preparation relations evaluated in one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrepRelations {
    /// Δ(A,ρ) + Δ(B,ρ).
    pub sum_std: f64,
    /// ‖a × b‖ = 2‖[A₊,B₊]‖; attained at r = ±a or ±b.
    pub bound_std: f64,
    /// Δ(A,ρ)² + Δ(B,ρ)².
    pub sum_var: f64,
    /// 1 − |⟨a,b⟩| = 1 − √(1 − ‖a×b‖²); attained at r = (a±b)/‖a±b‖.
    pub bound_var: f64,
}

/// Evaluates the additive preparation uncertainty relations for two sharp
/// observables: sum of standard deviations against ‖a×b‖, and sum of
/// variances against 1 − |⟨a,b⟩|. Both bounds are state independent and
/// vanish exactly when the observables commute.
pub fn prep_sum_relations(
    a: &BinaryObservable,
    b: &BinaryObservable,
    rho: &QubitState,
) -> Result<PrepRelations> {
    let std_a = prep_std(a, rho)?;
    let std_b = prep_std(b, rho)?;
    let cross = a.vector().cross(&b.vector()).norm();
    let inner = a.vector().dot(&b.vector()).abs();
    Ok(PrepRelations {
        sum_std: std_a + std_b,
        bound_std: cross,
        sum_var: std_a * std_a + std_b * std_b,
        bound_var: 1.0 - inner,
    })
}

/// Classical post-processing of the sharp observable along `a` by the
/// kernel μ: C₊ = μ₊A₊ + μ₋A₋, an unbiased observable with c = λa.
///
/// Returns the smeared observable and its squared worst-case error
/// Δ(A,C)² = 2(1−λ) = 4μ₋, which dominates the kernel variance 4μ₊μ₋ and
/// coincides with the transport-route error.
pub fn smearing_error(
    mu: &SmearingDistribution,
    a: &BlochVector,
) -> Result<(BinaryObservable, f64)> {
    a.require_unit()?;
    let smeared = BinaryObservable::unbiased(*a * mu.lambda())?;
    let err_sq = 4.0 * mu.mu_minus();
    let target = BinaryObservable::sharp(*a)?;
    let transport_route = transport::delta_sq_worst(&smeared, &target)?;
    assert!(
        (err_sq - transport_route).abs() <= 1e-8,
        "smearing error routes disagree: {err_sq} vs {transport_route}"
    );
    assert!(err_sq >= mu.variance() - tol::BOUNDARY);
    Ok((smeared, err_sq))
}

/// The three-link chain tying measurement errors to preparation
/// uncertainty for orthogonal targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundChain {
    /// Combined smearing errors 4μ₋ + 4ν₋.
    pub lhs: f64,
    /// Δ(A,ρ_s)² + Δ(B,ρ_s)² in the state with s = λ(a+b).
    pub mid: f64,
    /// The variance-sum bound (= 1 for orthogonal targets).
    pub rhs: f64,
}

/// For orthogonal unit targets and a shrink factor λ, identifies the
/// smearing kernels of C, D with the outcome distributions of A, B in the
/// single state ρ_s, s = λ(a+b), and returns the chain
/// 4μ₋ + 4ν₋ ≥ Δ(A,ρ_s)² + Δ(B,ρ_s)² ≥ 1.
///
/// λ ranges over [0, 1/√2]: beyond 1/√2 the smeared pair stops being
/// compatible, so the chain loses its reading as a measurement bound even
/// though ρ_s would remain a state up to λ = 1/√2 · √2‖a+b‖⁻¹-type limits.
pub fn prep_bound_chain(a: &BlochVector, b: &BlochVector, lambda: f64) -> Result<BoundChain> {
    a.require_unit()?;
    b.require_unit()?;
    let dot = a.dot(b);
    if dot.abs() > tol::UNIT_NORM {
        return Err(Error::NotOrthogonal { dot });
    }
    if !(0.0..=FRAC_1_SQRT_2 + tol::BOUNDARY).contains(&lambda) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
            range: "[0, 1/sqrt(2)]",
        });
    }
    let s = (*a + *b) * lambda;
    let rho_s = QubitState::new(s)?;
    let mu_minus = 0.5 * (1.0 - s.dot(a));
    let nu_minus = 0.5 * (1.0 - s.dot(b));
    let lhs = 4.0 * (mu_minus + nu_minus);
    let a_obs = BinaryObservable::sharp(*a)?;
    let b_obs = BinaryObservable::sharp(*b)?;
    let std_a = prep_std(&a_obs, &rho_s)?;
    let std_b = prep_std(&b_obs, &rho_s)?;
    let mid = std_a * std_a + std_b * std_b;
    let rhs = 1.0 - dot.abs();
    // Slack grows with the admitted deviation from exact orthonormality.
    let slack = tol::BOUNDARY + 8.0 * dot.abs();
    assert!(
        lhs >= mid - slack && mid >= rhs - slack,
        "bound chain ordering violated: {lhs} >= {mid} >= {rhs}"
    );
    Ok(BoundChain { lhs, mid, rhs })
}

/// Conjugation element of the discrete Heisenberg–Weyl group acting on the
/// optimal joint observable: identity or one of the three axis reflections
/// u·σ (·) u·σ for u ∈ {e₁, e₂, e₃}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HwElement {
    Identity,
    Sigma1,
    Sigma2,
    Sigma3,
}

impl std::fmt::Display for HwElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HwElement::Identity => write!(f, "I"),
            HwElement::Sigma1 => write!(f, "sigma_1"),
            HwElement::Sigma2 => write!(f, "sigma_2"),
            HwElement::Sigma3 => write!(f, "sigma_3"),
        }
    }
}

/// The covariant form G_{kℓ} = ½ 𝒰_{kℓ}(ρ_s) of the symmetric joint
/// observable, with the group assignment discovered by search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HwCovariantForm {
    pub joint: JointObservable,
    pub rho_s: QubitState,
    /// Largest entrywise deviation of G_{kℓ} from ½ 𝒰_{kℓ}(ρ_s) over the
    /// matched assignment.
    pub residual: f64,
    /// Group element matched to each outcome, in the order
    /// (+,+), (+,−), (−,+), (−,−).
    pub assignment: [HwElement; 4],
}

fn axis_matrix(axis: &BlochVector) -> Matrix2 {
    Matrix2::from_pauli(0.0, axis.x, axis.y, axis.z)
}

/// Builds the joint observable of the symmetric pair c = c_len·e₁,
/// d = c_len·e₃ together with the state ρ_s, s = c_len(e₁+e₃), and verifies
/// that each effect equals ½ U ρ_s U† for exactly one of the four Pauli-type
/// conjugations {𝟙, e₁·σ, e₂·σ, e₃·σ}, e₂ = e₃ × e₁.
///
/// The assignment is found by search rather than fixed in advance, and the
/// four matches must form a bijection. c_len beyond 1/√2 leaves the
/// compatible regime and is rejected.
pub fn hw_covariant_form(
    c_len: f64,
    e1: &BlochVector,
    e3: &BlochVector,
) -> Result<HwCovariantForm> {
    e1.require_unit()?;
    e3.require_unit()?;
    let dot = e1.dot(e3);
    if dot.abs() > tol::UNIT_NORM {
        return Err(Error::NotOrthogonal { dot });
    }
    if !(c_len > 0.0 && c_len <= FRAC_1_SQRT_2 + tol::BOUNDARY) {
        return Err(Error::OutOfRange {
            name: "c_len",
            value: c_len,
            range: "(0, 1/sqrt(2)]",
        });
    }
    let c = *e1 * c_len;
    let d = *e3 * c_len;
    let joint = compat::joint_observable(&c, &d)?;
    let rho_s = QubitState::new((*e1 + *e3) * c_len)?;
    let rho_m = rho_s.density_matrix();
    let e2 = e3.cross(e1);
    let conjugators = [
        (HwElement::Identity, Matrix2::identity()),
        (HwElement::Sigma1, axis_matrix(e1)),
        (HwElement::Sigma2, axis_matrix(&e2)),
        (HwElement::Sigma3, axis_matrix(e3)),
    ];
    let images: Vec<Matrix2> = conjugators
        .iter()
        .map(|(_, u)| (*u * rho_m * u.adjoint()).scale(0.5))
        .collect();

    let mut assignment = [HwElement::Identity; 4];
    let mut used = [false; 4];
    let mut residual = 0.0f64;
    for (idx, (k, l)) in JOINT_OUTCOMES.iter().enumerate() {
        let target = joint.effect(*k, *l);
        let mut best: Option<(usize, f64)> = None;
        for (ci, image) in images.iter().enumerate() {
            if used[ci] {
                continue;
            }
            let diff = target.matrix().max_abs_diff(image);
            if best.is_none_or(|(_, d)| diff < d) {
                best = Some((ci, diff));
            }
        }
        let (ci, diff) = best.expect("unused group element remains");
        assert!(
            diff <= 1e-6,
            "no group element reproduces outcome {idx}: best residual {diff}"
        );
        used[ci] = true;
        assignment[idx] = conjugators[ci].0;
        residual = residual.max(diff);
    }
    Ok(HwCovariantForm {
        joint,
        rho_s,
        residual,
        assignment,
    })
}
