//! Noise-operator error quantities ε, computed from moment operators.
//!
//! The squared quantity is defined through operator moments of the
//! approximator C and target A,
//!
//! ```text
//! ε(A,ρ)² = tr[ρ(C[x²] − C[x]²)] + tr[ρ(C[x] − A[x])²],
//! ```
//!
//! where E[xⁿ] is the n-th moment operator. For an unbiased approximator on
//! a qubit this collapses to the state-independent closed form
//! 1 − ‖c‖² + ‖c−a‖² = U(C)² + ¼Δ(C,A)⁴: a mixture of intrinsic
//! unsharpness and worst-case error rather than a state-specific error.
//! ε never exceeds the worst-case error Δ(C,A), and it inherits additive
//! and product trade-off bounds from the Δ relations.

use serde::Serialize;

use crate::bloch::{BinaryObservable, BlochVector, Outcome, QubitState};
use crate::compat;
use crate::matrix::HermitianMatrix2;
use crate::transport;
use crate::{tol, Error, Result};

/// n-th moment operator E[xⁿ] = Σ_k vₖⁿ E_k of a ±1-valued observable.
///
/// For the canonical labels this is 𝟙 for even n and E₊ − E₋ for odd n.
pub fn moment_operator(obs: &BinaryObservable, n: u32) -> Result<HermitianMatrix2> {
    obs.require_canonical_values()?;
    let plus = obs.effect(Outcome::Plus);
    let minus = obs.effect(Outcome::Minus);
    Ok(if n % 2 == 0 {
        plus + minus
    } else {
        plus - minus
    })
}

/// Squared noise-operator error of an approximator against a sharp target,
/// evaluated though the defining matrix expression.
///
/// For unbiased approximators the result must equal the closed form
/// 1 − ‖c‖² + ‖c−a‖² independently of the state; the agreement is enforced
/// to [`tol::BACKEND_AGREEMENT`].
pub fn eps_no_sq(
    approx: &BinaryObservable,
    target: &BinaryObservable,
    rho: &QubitState,
) -> Result<f64> {
    target.require_sharp()?;
    let rho_m = rho.density_matrix();
    let c1 = *moment_operator(approx, 1)?.matrix();
    let c2 = *moment_operator(approx, 2)?.matrix();
    let a1 = *moment_operator(target, 1)?.matrix();
    let variance_term = (c2 - c1 * c1).expectation(&rho_m);
    let diff = c1 - a1;
    let error_term = (diff * diff).expectation(&rho_m);
    let eps_sq = variance_term + error_term;
    if approx.is_unbiased() {
        let closed = eps_no_closed_form_sq(&approx.vector(), &target.vector());
        assert!(
            (eps_sq - closed).abs() <= tol::BACKEND_AGREEMENT,
            "noise-operator closed form disagrees with matrix route: {closed} vs {eps_sq}"
        );
    }
    Ok(eps_sq)
}

/// Closed form 1 − ‖c‖² + ‖c−a‖² of ε² for an unbiased approximator.
pub fn eps_no_closed_form_sq(c: &BlochVector, a: &BlochVector) -> f64 {
    1.0 - c.norm_sq() + (*c - *a).norm_sq()
}

/// Summary of the noise-operator quantities for an approximator pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseOpReport {
    pub eps_a: f64,
    pub eps_b: f64,
    /// Worst-case errors Δ of the same approximations; ε ≤ Δ throughout
    /// the covariant class.
    pub delta_a: f64,
    pub delta_b: f64,
    /// Whether ε varied across the probe battery beyond rounding. False for
    /// unbiased approximators: the quantity is state independent there.
    pub state_dependent: bool,
}

/// One evaluated inequality: lhs ≥ rhs up to boundary rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
}

impl InequalityCheck {
    fn new(name: &'static str, lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        Self {
            name,
            lhs,
            rhs,
            margin,
            holds: margin >= -tol::BOUNDARY,
        }
    }
}

/// The noise-operator trade-offs plus the bridges to Δ and U.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsRelations {
    pub report: NoiseOpReport,
    /// ε(A,ρ) + ε(B,ρ) ≥ (1/√2)[‖a−b‖+‖a+b‖−2].
    pub sum: InequalityCheck,
    /// ε(A,ρ)² ε(B,ρ)² ≥ ‖c×d‖².
    pub product: InequalityCheck,
    /// Per observable: ε ≥ ½Δ², ε ≥ U, ε ≤ Δ.
    pub bridges: Vec<InequalityCheck>,
}

impl EpsRelations {
    pub fn all_hold(&self) -> bool {
        self.sum.holds && self.product.holds && self.bridges.iter().all(|c| c.holds)
    }
}

/// Evaluates the additive and product trade-offs for ε together with the
/// bridging inequalities to the worst-case error and the unsharpness.
///
/// The approximators must be unbiased and jointly measurable; the targets
/// sharp. All recorded inequalities must hold for every such configuration.
pub fn eps_relations(
    approx_a: &BinaryObservable,
    approx_b: &BinaryObservable,
    target_a: &BinaryObservable,
    target_b: &BinaryObservable,
    rho: &QubitState,
) -> Result<EpsRelations> {
    approx_a.require_unbiased()?;
    approx_b.require_unbiased()?;
    target_a.require_sharp()?;
    target_b.require_sharp()?;
    let c = approx_a.vector();
    let d = approx_b.vector();
    if !compat::is_compatible_unbiased(&c, &d) {
        return Err(Error::IncompatiblePair {
            criterion: compat::compatibility_criterion(&c, &d),
        });
    }

    let eps_a = eps_no_sq(approx_a, target_a, rho)?.max(0.0).sqrt();
    let eps_b = eps_no_sq(approx_b, target_b, rho)?.max(0.0).sqrt();
    let delta_a_sq = transport::delta_sq_worst(approx_a, target_a)?;
    let delta_b_sq = transport::delta_sq_worst(approx_b, target_b)?;
    let delta_a = delta_a_sq.sqrt();
    let delta_b = delta_b_sq.sqrt();

    let incompat = compat::degree_of_incompatibility(&target_a.vector(), &target_b.vector())?;
    let sum = InequalityCheck::new(
        "eps_sum",
        eps_a + eps_b,
        incompat / std::f64::consts::SQRT_2,
    );
    let product = InequalityCheck::new(
        "eps_product",
        eps_a * eps_a * eps_b * eps_b,
        c.cross(&d).norm_sq(),
    );
    let bridges = vec![
        InequalityCheck::new("eps_a >= half_delta_sq_a", eps_a, 0.5 * delta_a_sq),
        InequalityCheck::new("eps_b >= half_delta_sq_b", eps_b, 0.5 * delta_b_sq),
        InequalityCheck::new("eps_a >= unsharpness_a", eps_a, compat::unsharpness(&c)),
        InequalityCheck::new("eps_b >= unsharpness_b", eps_b, compat::unsharpness(&d)),
        InequalityCheck::new("delta_a >= eps_a", delta_a, eps_a),
        InequalityCheck::new("delta_b >= eps_b", delta_b, eps_b),
    ];

    let state_dependent = state_independence_probe(approx_a, target_a, &probe_battery())?.max(
        state_independence_probe(approx_b, target_b, &probe_battery())?,
    ) > tol::BACKEND_AGREEMENT;

    Ok(EpsRelations {
        report: NoiseOpReport {
            eps_a,
            eps_b,
            delta_a,
            delta_b,
            state_dependent,
        },
        sum,
        product,
        bridges,
    })
}

/// Spread (max − min) of ε² across a battery of probe states.
///
/// For unbiased approximators the spread is pure rounding (≤ 1e−12): the
/// quantity does not see the state, which is why it cannot serve as a
/// state-specific error estimate.
pub fn state_independence_probe(
    approx: &BinaryObservable,
    target: &BinaryObservable,
    states: &[QubitState],
) -> Result<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for state in states {
        let eps = eps_no_sq(approx, target, state)?;
        lo = lo.min(eps);
        hi = hi.max(eps);
    }
    Ok(if states.is_empty() { 0.0 } else { hi - lo })
}

/// Fixed probe battery: the six axis-pure states, the maximally mixed
/// state, and two skew mixed states.
pub fn probe_battery() -> Vec<QubitState> {
    let mut states = vec![QubitState::maximally_mixed()];
    for axis in [BlochVector::X, BlochVector::Y, BlochVector::Z] {
        states.push(QubitState::pure(axis).unwrap());
        states.push(QubitState::pure(-axis).unwrap());
    }
    states.push(QubitState::new(BlochVector::new(0.3, -0.2, 0.4)).unwrap());
    states.push(QubitState::new(BlochVector::new(-0.5, 0.1, -0.6)).unwrap());
    states
}
