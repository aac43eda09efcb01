//! End-to-end models of the two qubit error-disturbance experiments.
//!
//! *Vienna-type scheme*: a projective (von Neumann–Lüders) measurement of a
//! sharp observable along **c** serves as approximation of A and distorts a
//! subsequent B-measurement into the unbiased observable with
//! d = ⟨c,b⟩·c. The scheme realizes the product joint observable
//! M_{kℓ} = C_k D_ℓ.
//!
//! *Toronto-type scheme*: the system is coupled by a CNOT to a probe qubit
//! prepared in α|0⟩ + β|1⟩ and the probe is read out in the σ_z basis. The
//! measured observable is an unsharp σ_z, the disturbed σ_x-measurement an
//! unsharp σ_x, and the sequential joint observable M_{kℓ} = 𝔍(k)*(B_ℓ) is
//! assembled from the Kraus operators of the conditional output channels.
//! The full two-qubit simulation must reproduce the closed forms exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::{BinaryObservable, BlochVector, Outcome, QubitState};
use crate::compat::{JointObservable, JOINT_OUTCOMES};
use crate::matrix::{HermitianMatrix2, Matrix2, Matrix4};
use crate::noiseop;
use crate::tradeoff::TradeoffReport;
use crate::transport;
use crate::{tol, Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// A joint observable together with the binary observables it margins to:
/// the first index belongs to the first (approximating) measurement, the
/// second to the observable measured on the output state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequentialJoint {
    joint: JointObservable,
    first: BinaryObservable,
    second: BinaryObservable,
}

impl SequentialJoint {
    /// Validates marginality of the joint against the declared marginals
    /// (entrywise to 1e−12) on top of the joint's own positivity checks.
    pub fn new(
        joint: JointObservable,
        first: BinaryObservable,
        second: BinaryObservable,
    ) -> Result<Self> {
        let first_plus = joint.effect(Outcome::Plus, Outcome::Plus)
            + joint.effect(Outcome::Plus, Outcome::Minus);
        let second_plus = joint.effect(Outcome::Plus, Outcome::Plus)
            + joint.effect(Outcome::Minus, Outcome::Plus);
        let defect = first_plus
            .matrix()
            .max_abs_diff(first.effect(Outcome::Plus).matrix())
            .max(
                second_plus
                    .matrix()
                    .max_abs_diff(second.effect(Outcome::Plus).matrix()),
            );
        if defect > 1e-12 {
            return Err(Error::InvalidProbability {
                context: "sequential joint marginality",
                detail: defect,
            });
        }
        Ok(Self {
            joint,
            first,
            second,
        })
    }

    pub fn joint(&self) -> &JointObservable {
        &self.joint
    }

    pub fn first(&self) -> &BinaryObservable {
        &self.first
    }

    pub fn second(&self) -> &BinaryObservable {
        &self.second
    }

    /// Largest entrywise deviation of M_{kℓ} from the product C_k D_ℓ.
    /// Vanishes when the first measurement is projective.
    pub fn product_form_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, l) in JOINT_OUTCOMES {
            let product = *self.first.effect(k).matrix() * *self.second.effect(l).matrix();
            worst = worst.max(self.joint.effect(k, l).matrix().max_abs_diff(&product));
        }
        worst
    }
}

/// Closed-form and simulated scheme summary: the approximating pair, its
/// joint observable, and the error/ε ledger for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeResult {
    /// Approximator of the first target (C).
    pub approx_a: BinaryObservable,
    /// Approximator of the second target (D).
    pub approx_b: BinaryObservable,
    pub joint: SequentialJoint,
    /// State-dependent squared errors in the configured state.
    pub state_err_sq_a: f64,
    pub state_err_sq_b: f64,
    /// Worst-case squared errors.
    pub worst_err_sq_a: f64,
    pub worst_err_sq_b: f64,
    /// Squared noise-operator quantities.
    pub eps_sq_a: f64,
    pub eps_sq_b: f64,
    /// The scheme's additive error relation (worst-case errors against the
    /// scheme-specific lower bound).
    pub relation: TradeoffReport,
}

/// Configuration of the projective-approximation scheme: sharp targets
/// along a and b, projective approximator axis c, and the input state.
///
/// Axis vectors must be unit to [`tol::UNIT_NORM`] and are renormalized to
/// machine precision on construction, since the scheme's joint observable
/// sits exactly on the compatibility boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVienna")]
pub struct ViennaConfig {
    a: BlochVector,
    b: BlochVector,
    c: BlochVector,
    rho: QubitState,
}

#[derive(Deserialize)]
struct RawVienna {
    a: BlochVector,
    b: BlochVector,
    c: BlochVector,
    rho: QubitState,
}

impl TryFrom<RawVienna> for ViennaConfig {
    type Error = Error;
    fn try_from(raw: RawVienna) -> Result<Self> {
        ViennaConfig::new(raw.a, raw.b, raw.c, raw.rho)
    }
}

impl ViennaConfig {
    pub fn new(a: BlochVector, b: BlochVector, c: BlochVector, rho: QubitState) -> Result<Self> {
        a.require_unit()?;
        b.require_unit()?;
        c.require_unit()?;
        Ok(Self {
            a: a.normalized()?,
            b: b.normalized()?,
            c: c.normalized()?,
            rho,
        })
    }

    /// The canonical instance: a = x̂, b = ŷ, c = (cos α, sin α, 0),
    /// r = ẑ (so that all state-dependent errors vanish).
    pub fn canonical(alpha: f64) -> Self {
        Self {
            a: BlochVector::X,
            b: BlochVector::Y,
            c: BlochVector::new(alpha.cos(), alpha.sin(), 0.0),
            rho: QubitState::pure(BlochVector::Z).expect("unit axis"),
        }
    }

    pub fn a(&self) -> BlochVector {
        self.a
    }

    pub fn b(&self) -> BlochVector {
        self.b
    }

    pub fn c(&self) -> BlochVector {
        self.c
    }

    pub fn rho(&self) -> QubitState {
        self.rho
    }
}

/// Runs the projective-approximation scheme.
///
/// Returns the sharp approximator C along c, the distorted observable D
/// with d = ⟨c,b⟩·c, the product joint observable, and the error ledger.
/// The additive relation reported is
/// Δ(C,A)² + Δ(D,B)² = 2‖c−a‖ + 2‖b×c‖ ≥ 2‖a×b‖, saturated at c = a.
pub fn vienna_model(cfg: &ViennaConfig) -> Result<SchemeResult> {
    let approx_a = BinaryObservable::sharp(cfg.c)?;
    let d_vec = cfg.c * cfg.c.dot(&cfg.b);
    let approx_b = BinaryObservable::unbiased(d_vec)?;

    // The first measurement is projective, so the sequential joint takes the
    // product form M_{kℓ} = C_k D_ℓ (C and D commute: d ∥ c).
    let mut effects = [HermitianMatrix2::from_pauli(0.0, 0.0, 0.0, 0.0); 4];
    for (slot, (k, l)) in effects.iter_mut().zip(JOINT_OUTCOMES.iter()) {
        let product = *approx_a.effect(*k).matrix() * *approx_b.effect(*l).matrix();
        *slot = HermitianMatrix2::new(product)?;
    }
    let joint = SequentialJoint::new(JointObservable::from_matrices(effects)?, approx_a, approx_b)?;

    let target_a = BinaryObservable::sharp(cfg.a)?;
    let target_b = BinaryObservable::sharp(cfg.b)?;
    let state_err_sq_a = transport::delta_sq_state(&approx_a, &target_a, &cfg.rho)?;
    let state_err_sq_b = transport::delta_sq_state(&approx_b, &target_b, &cfg.rho)?;
    let worst_err_sq_a = transport::delta_sq_worst(&approx_a, &target_a)?;
    let worst_err_sq_b = transport::delta_sq_worst(&approx_b, &target_b)?;
    let eps_sq_a = noiseop::eps_no_sq(&approx_a, &target_a, &cfg.rho)?;
    let eps_sq_b = noiseop::eps_no_sq(&approx_b, &target_b, &cfg.rho)?;

    let bound = 2.0 * cfg.a.cross(&cfg.b).norm();
    Ok(SchemeResult {
        approx_a,
        approx_b,
        joint,
        state_err_sq_a,
        state_err_sq_b,
        worst_err_sq_a,
        worst_err_sq_b,
        eps_sq_a,
        eps_sq_b,
        relation: TradeoffReport::new(worst_err_sq_a, worst_err_sq_b, bound),
    })
}

/// One row of a projective-scheme sweep over the approximator angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViennaSweepRow {
    pub alpha_deg: f64,
    pub delta_sq_a: f64,
    pub delta_sq_b: f64,
    pub eps_a: f64,
    pub eps_b: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub state_err_sq_a: f64,
    pub state_err_sq_b: f64,
}

/// Sweeps the canonical projective scheme over approximator angles
/// (radians); rows are emitted in the given order.
pub fn vienna_sweep(alphas: &[f64]) -> Result<Vec<ViennaSweepRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            let result = vienna_model(&ViennaConfig::canonical(alpha))?;
            Ok(ViennaSweepRow {
                alpha_deg: alpha.to_degrees(),
                delta_sq_a: result.worst_err_sq_a,
                delta_sq_b: result.worst_err_sq_b,
                eps_a: result.eps_sq_a.max(0.0).sqrt(),
                eps_b: result.eps_sq_b.max(0.0).sqrt(),
                lhs: result.relation.err_sq_a + result.relation.err_sq_b,
                rhs: result.relation.lower_bound,
                slack: result.relation.slack,
                state_err_sq_a: result.state_err_sq_a,
                state_err_sq_b: result.state_err_sq_b,
            })
        })
        .collect()
}

/// Configuration of the CNOT pointer-coupling scheme: the probe qubit is
/// prepared in the state with Bloch vector
/// s = (sin θ cos φ, sin θ sin φ, cos θ) and read out in the σ_z basis.
///
/// Amplitude form: α = cos(θ/2), β = e^{iφ} sin(θ/2); pointer outcome +1
/// corresponds to probe state |0⟩, so θ = 0 gives a perfect σ_z measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorontoConfig {
    theta: f64,
    phi: f64,
}

impl TorontoConfig {
    pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite()) {
            return Err(Error::OutOfRange {
                name: "theta/phi",
                value: if theta.is_finite() { phi } else { theta },
                range: "finite radians",
            });
        }
        Ok(Self { theta, phi })
    }

    /// Real pointer amplitudes (α, β) with α² + β² = 1; a negative β is
    /// folded into φ = π.
    pub fn from_amplitudes(alpha: f64, beta: f64) -> Result<Self> {
        let norm_sq = alpha * alpha + beta * beta;
        if (norm_sq - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::NotUnit {
                norm: norm_sq.sqrt(),
            });
        }
        // A global sign leaves the pointer state unchanged.
        let (alpha, beta) = if alpha < 0.0 {
            (-alpha, -beta)
        } else {
            (alpha, beta)
        };
        let theta = 2.0 * beta.abs().atan2(alpha);
        let phi = if beta < 0.0 {
            std::f64::consts::PI
        } else {
            0.0
        };
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Bloch vector of the pointer state.
    pub fn pointer_bloch(&self) -> BlochVector {
        BlochVector::new(
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        )
    }

    /// Pointer amplitudes (α, β) with α = cos(θ/2) real and
    /// β = e^{iφ} sin(θ/2).
    pub fn pointer_state(&self) -> [Complex64; 2] {
        [
            Complex64::new((0.5 * self.theta).cos(), 0.0),
            Complex64::from_polar((0.5 * self.theta).sin(), self.phi),
        ]
    }
}

/// Closed-form measured pair of the CNOT scheme: C with c = (s·k̂)k̂ an
/// unsharp σ_z, and D with d = (s·î)î an unsharp σ_x.
///
/// Both the Bloch-vector route and the amplitude route (2α²−1, 2Re(ᾱβ))
/// are evaluated and must agree to [`tol::BACKEND_AGREEMENT`].
pub fn toronto_closed_form(cfg: &TorontoConfig) -> (BinaryObservable, BinaryObservable) {
    let s = cfg.pointer_bloch();
    let c = BlochVector::Z * s.dot(&BlochVector::Z);
    let d = BlochVector::X * s.dot(&BlochVector::X);

    let [alpha, beta] = cfg.pointer_state();
    let c_amp = alpha.norm_sqr() - beta.norm_sqr();
    let d_amp = 2.0 * (alpha.conj() * beta).re;
    assert!(
        (c.z - c_amp).abs() <= tol::BACKEND_AGREEMENT
            && (d.x - d_amp).abs() <= tol::BACKEND_AGREEMENT,
        "angle and amplitude parametrizations disagree"
    );

    (
        BinaryObservable::unbiased(c).expect("|cos theta| <= 1"),
        BinaryObservable::unbiased(d).expect("|sin theta cos phi| <= 1"),
    )
}

/// Output of the full two-qubit simulation of the CNOT scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorontoSimulation {
    /// The measured observable C reconstructed from the coupling.
    pub measured: BinaryObservable,
    /// The distorted observable D = Σ_k 𝔍(k)*(B) seen by a subsequent
    /// σ_x measurement.
    pub distorted: BinaryObservable,
    /// Sequential joint observable M_{kℓ} = 𝔍(k)*(B_ℓ).
    pub joint: SequentialJoint,
}

/// Simulates the CNOT scheme on ℂ² ⊗ ℂ²: couples the system to the pointer,
/// extracts the Kraus operator of each conditional output channel from the
/// pointer readout, reconstructs the measured POVM two ways (Kraus products
/// and Heisenberg-picture partial expectation), and assembles the sequential
/// joint observable by pulling the σ_x effects back through the channel
/// duals.
///
/// The reconstructed observables must match [`toronto_closed_form`] to
/// [`tol::BACKEND_AGREEMENT`]; positivity failures beyond
/// [`tol::SIMULATION_POSITIVITY`] signal a backend bug and are reported as
/// errors.
pub fn toronto_simulate(cfg: &TorontoConfig) -> Result<TorontoSimulation> {
    let coupling = Matrix4::cnot();
    let pointer = cfg.pointer_state();

    // Kraus operator of the conditional output channel for outcome k:
    // A_k = (1 ⊗ ⟨k|) U (1 ⊗ |φ⟩). Outcome +1 reads the probe in |0⟩.
    let kraus: [Matrix2; 2] = [
        coupling.probe_contract(0, &pointer),
        coupling.probe_contract(1, &pointer),
    ];

    // Measured POVM, route one: C_k = A_k† A_k.
    let povm: Vec<Matrix2> = kraus.iter().map(|a| a.adjoint() * *a).collect();

    // Route two: Heisenberg picture, C_k = (1 ⊗ ⟨φ|) U†(1 ⊗ P_k)U (1 ⊗ |φ⟩).
    let projectors = [
        Matrix2::new([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ]),
        Matrix2::new([
            [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ]),
    ];
    for (k, effect) in povm.iter().enumerate() {
        let heisenberg =
            (coupling.adjoint() * Matrix4::kron(&Matrix2::identity(), &projectors[k]) * coupling)
                .probe_expectation(&pointer);
        assert!(
            effect.max_abs_diff(&heisenberg) <= tol::BACKEND_AGREEMENT,
            "Kraus and Heisenberg POVM reconstructions disagree"
        );
    }

    let mut povm_checked = Vec::with_capacity(2);
    for effect in &povm {
        let h = HermitianMatrix2::new(*effect)?;
        let min_eig = h.min_eigenvalue();
        if min_eig < -tol::SIMULATION_POSITIVITY {
            return Err(Error::PositivityViolation {
                context: "simulated pointer POVM",
                min_eig,
            });
        }
        povm_checked.push(h);
    }
    let measured = BinaryObservable::from_effect(&povm_checked[0])?;

    // Sequential joint M_{kℓ} = 𝔍(k)*(B_ℓ) = A_k† B_ℓ A_k for B = σ_x.
    let target_b = BinaryObservable::sharp(BlochVector::X)?;
    let mut effects = [HermitianMatrix2::from_pauli(0.0, 0.0, 0.0, 0.0); 4];
    for (slot, (k, l)) in effects.iter_mut().zip(JOINT_OUTCOMES.iter()) {
        let a_k = kraus[k.index()];
        let pulled = a_k.adjoint() * *target_b.effect(*l).matrix() * a_k;
        *slot = HermitianMatrix2::new(pulled)?;
    }
    let distorted = BinaryObservable::from_effect(&HermitianMatrix2::new(
        *effects[0].matrix() + *effects[2].matrix(),
    )?)?;
    let joint = SequentialJoint::new(
        JointObservable::from_matrices(effects)?,
        measured,
        distorted,
    )?;

    let (closed_c, closed_d) = toronto_closed_form(cfg);
    assert!(
        (measured.vector() - closed_c.vector()).norm() <= tol::BACKEND_AGREEMENT
            && (measured.bias() - closed_c.bias()).abs() <= tol::BACKEND_AGREEMENT
            && (distorted.vector() - closed_d.vector()).norm() <= tol::BACKEND_AGREEMENT
            && (distorted.bias() - closed_d.bias()).abs() <= tol::BACKEND_AGREEMENT,
        "simulation does not reproduce the closed-form pair"
    );

    Ok(TorontoSimulation {
        measured,
        distorted,
        joint,
    })
}

/// The additive error relation of the CNOT scheme:
/// Δ(C,A)² + Δ(D,B)² = ‖s−k̂‖² + ‖s−î‖² ≥ 2(2−√2),
/// saturated at θ = π/4, φ = 0 where s = (î+k̂)/√2.
pub fn error_relations_toronto(cfg: &TorontoConfig) -> Result<TradeoffReport> {
    let s = cfg.pointer_bloch();
    let err_a = (s - BlochVector::Z).norm_sq();
    let err_b = (s - BlochVector::X).norm_sq();

    // The same numbers through the transport route on the closed-form pair.
    let (c_obs, d_obs) = toronto_closed_form(cfg);
    let delta_a = transport::delta_sq_worst(&c_obs, &BinaryObservable::sharp(BlochVector::Z)?)?;
    let delta_b = transport::delta_sq_worst(&d_obs, &BinaryObservable::sharp(BlochVector::X)?)?;
    assert!(
        (err_a - delta_a).abs() <= tol::BACKEND_AGREEMENT
            && (err_b - delta_b).abs() <= tol::BACKEND_AGREEMENT,
        "pointer-distance and transport errors disagree"
    );

    Ok(TradeoffReport::new(err_a, err_b, 2.0 * (2.0 - SQRT_2)))
}

/// State-dependent squared errors of the CNOT scheme:
/// (|r·k̂|·‖s−k̂‖², |r·î|·‖s−î‖²). Both vanish for r along ĵ.
pub fn toronto_state_error_sq(cfg: &TorontoConfig, rho: &QubitState) -> (f64, f64) {
    let s = cfg.pointer_bloch();
    let r = rho.bloch();
    (
        r.dot(&BlochVector::Z).abs() * (s - BlochVector::Z).norm_sq(),
        r.dot(&BlochVector::X).abs() * (s - BlochVector::X).norm_sq(),
    )
}

/// Full scheme summary for the CNOT scheme in a given input state.
pub fn toronto_model(cfg: &TorontoConfig, rho: &QubitState) -> Result<SchemeResult> {
    let simulation = toronto_simulate(cfg)?;
    let target_a = BinaryObservable::sharp(BlochVector::Z)?;
    let target_b = BinaryObservable::sharp(BlochVector::X)?;
    let relation = error_relations_toronto(cfg)?;
    let (state_err_sq_a, state_err_sq_b) = toronto_state_error_sq(cfg, rho);
    let eps_sq_a = noiseop::eps_no_sq(&simulation.measured, &target_a, rho)?;
    let eps_sq_b = noiseop::eps_no_sq(&simulation.distorted, &target_b, rho)?;
    Ok(SchemeResult {
        approx_a: simulation.measured,
        approx_b: simulation.distorted,
        joint: simulation.joint,
        state_err_sq_a,
        state_err_sq_b,
        worst_err_sq_a: relation.err_sq_a,
        worst_err_sq_b: relation.err_sq_b,
        eps_sq_a,
        eps_sq_b,
        relation,
    })
}

/// One row of a CNOT-scheme sweep over the pointer polar angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorontoSweepRow {
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub delta_sq_a: f64,
    pub delta_sq_b: f64,
    pub eps_a: f64,
    pub eps_b: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Sweeps the CNOT scheme over pointer angles θ (radians) at fixed φ.
pub fn toronto_sweep(thetas: &[f64], phi: f64) -> Result<Vec<TorontoSweepRow>> {
    thetas
        .iter()
        .map(|&theta| {
            let cfg = TorontoConfig::from_angles(theta, phi)?;
            let relation = error_relations_toronto(&cfg)?;
            // ε² coincides with Δ² for this scheme; report ε = Δ.
            Ok(TorontoSweepRow {
                theta_deg: theta.to_degrees(),
                phi_deg: phi.to_degrees(),
                delta_sq_a: relation.err_sq_a,
                delta_sq_b: relation.err_sq_b,
                eps_a: relation.err_sq_a.max(0.0).sqrt(),
                eps_b: relation.err_sq_b.max(0.0).sqrt(),
                lhs: relation.err_sq_a + relation.err_sq_b,
                rhs: relation.lower_bound,
                slack: relation.slack,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
    const PI: f64 = std::f64::consts::PI;

    fn random_unit(rng: &mut impl Rng) -> BlochVector {
        loop {
            let v = BlochVector::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                return v.normalized().unwrap();
            }
        }
    }

    #[test]
    fn vienna_canonical_quarter_turn() {
        let result = vienna_model(&ViennaConfig::canonical(PI / 4.0)).unwrap();
        // r = ẑ is orthogonal to the measurement plane: both state-dependent
        // errors vanish exactly...
        assert_eq!(result.state_err_sq_a, 0.0);
        assert_eq!(result.state_err_sq_b, 0.0);
        // ...while the noise-operator quantities stay large:
        // ε(A) = 2 sin(π/8), ε(B) = √2 cos(π/4) = 1.
        let eps_a = result.eps_sq_a.sqrt();
        let eps_b = result.eps_sq_b.sqrt();
        assert!((eps_a - 2.0 * (PI / 8.0).sin()).abs() < 1e-12);
        assert!((eps_a - 0.765_366_864_730_179_5).abs() < 1e-12);
        assert!((eps_b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vienna_perfect_approximator_saturates_the_relation() {
        let cfg = ViennaConfig::canonical(0.0); // c = a
        let result = vienna_model(&cfg).unwrap();
        assert_eq!(result.worst_err_sq_a, 0.0);
        assert!((result.worst_err_sq_b - 2.0).abs() < 1e-12); // 2‖b×a‖ = 2
        assert!(result.relation.slack.abs() < 1e-12);
        assert!(result.relation.saturated);
    }

    #[test]
    fn vienna_aligned_with_b_leaves_b_undistorted() {
        let cfg = ViennaConfig::new(
            BlochVector::X,
            BlochVector::Y,
            BlochVector::Y,
            QubitState::maximally_mixed(),
        )
        .unwrap();
        let result = vienna_model(&cfg).unwrap();
        assert_eq!(result.worst_err_sq_b, 0.0);
        assert!(result.approx_b.is_sharp());
        assert!((result.approx_b.vector() - BlochVector::Y).norm() < 1e-15);
    }

    #[test]
    fn vienna_joint_is_valid_and_product_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for _ in 0..200 {
            let cfg = ViennaConfig::new(
                random_unit(&mut rng),
                random_unit(&mut rng),
                random_unit(&mut rng),
                QubitState::maximally_mixed(),
            )
            .unwrap();
            let result = vienna_model(&cfg).unwrap();
            assert!(result.joint.joint().min_eigenvalue() >= -tol::BOUNDARY);
            assert!(result.joint.product_form_residual() <= 1e-14);
            // The two closed forms of the worst-case errors:
            // 2‖c−a‖ = 2√2·√(1−⟨c,a⟩) and 2‖d−b‖ = 2‖b×c‖.
            let via_overlap =
                2.0 * std::f64::consts::SQRT_2 * (1.0 - cfg.c().dot(&cfg.a())).max(0.0).sqrt();
            assert!((result.worst_err_sq_a - via_overlap).abs() <= 1e-12);
            let via_cross = 2.0 * cfg.b().cross(&cfg.c()).norm();
            assert!((result.worst_err_sq_b - via_cross).abs() <= 1e-12);
        }
    }

    #[test]
    fn vienna_relation_holds_for_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..10_000 {
            let cfg = ViennaConfig::new(
                random_unit(&mut rng),
                random_unit(&mut rng),
                random_unit(&mut rng),
                QubitState::maximally_mixed(),
            )
            .unwrap();
            let result = vienna_model(&cfg).unwrap();
            assert!(
                result.relation.slack >= -1e-9,
                "scheme relation violated: {:?}",
                result.relation
            );
        }
    }

    #[test]
    fn vienna_state_errors_vanish_when_projections_agree() {
        // Whenever r·a = r·c the approximator statistics match the target's.
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..200 {
            let a = BlochVector::X;
            let alpha: f64 = rng.random_range(0.0..PI / 2.0);
            let c = BlochVector::new(alpha.cos(), alpha.sin(), 0.0);
            // Any r orthogonal to c − a has r·a = r·c.
            let diff = c - a;
            if diff.norm() < 1e-6 {
                continue;
            }
            let probe = random_unit(&mut rng);
            let transverse = probe - diff * (probe.dot(&diff) / diff.norm_sq());
            if transverse.norm() < 1e-6 {
                continue;
            }
            let r = transverse.normalized().unwrap();
            let cfg =
                ViennaConfig::new(a, BlochVector::Y, c, QubitState::pure(r).unwrap()).unwrap();
            let result = vienna_model(&cfg).unwrap();
            assert!(result.state_err_sq_a <= 1e-12);
        }
    }

    #[test]
    fn vienna_sweep_endpoints() {
        let rows = vienna_sweep(&[0.0, PI / 2.0]).unwrap();
        assert!((rows[0].eps_a - 0.0).abs() < 1e-12);
        assert!((rows[0].eps_b - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((rows[1].eps_a - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(rows[1].eps_b.abs() < 1e-12);
    }

    #[test]
    fn toronto_closed_form_extremes() {
        // θ = 0: perfect σ_z measurement, total disturbance of σ_x.
        let cfg = TorontoConfig::from_angles(0.0, 0.0).unwrap();
        let (c, d) = toronto_closed_form(&cfg);
        assert!(c.is_sharp());
        assert!((c.vector() - BlochVector::Z).norm() < 1e-15);
        assert!(d.vector().norm() < 1e-15);

        // θ = π/2: the opposite extreme.
        let cfg = TorontoConfig::from_angles(PI / 2.0, 0.0).unwrap();
        let (c, d) = toronto_closed_form(&cfg);
        assert!(c.vector().norm() < 1e-15);
        assert!(d.is_sharp());
        assert!((d.vector() - BlochVector::X).norm() < 1e-12);
    }

    #[test]
    fn toronto_closed_form_balanced_pointer() {
        let cfg = TorontoConfig::from_angles(PI / 4.0, 0.0).unwrap();
        let (c, d) = toronto_closed_form(&cfg);
        assert!((c.vector() - BlochVector::Z * FRAC_1_SQRT_2).norm() < 1e-12);
        assert!((d.vector() - BlochVector::X * FRAC_1_SQRT_2).norm() < 1e-12);
    }

    #[test]
    fn amplitude_parametrization_agrees_with_angles() {
        let cfg = TorontoConfig::from_amplitudes((PI / 8.0).cos(), (PI / 8.0).sin()).unwrap();
        assert!((cfg.theta() - PI / 4.0).abs() < 1e-12);
        assert_eq!(cfg.phi(), 0.0);
        // Negative β folds into φ = π.
        let cfg = TorontoConfig::from_amplitudes((PI / 8.0).cos(), -(PI / 8.0).sin()).unwrap();
        assert!((cfg.phi() - PI).abs() < 1e-15);
        let s = cfg.pointer_bloch();
        assert!(s.x < 0.0);
    }

    #[test]
    fn simulation_reproduces_closed_form_on_a_grid() {
        for i in 0..20 {
            for j in 0..10 {
                let theta = PI * (i as f64) / 19.0;
                let phi = 2.0 * PI * (j as f64) / 10.0;
                let cfg = TorontoConfig::from_angles(theta, phi).unwrap();
                // The closed-form agreement assert lives inside the simulation.
                let sim = toronto_simulate(&cfg).unwrap();
                assert!(sim.joint.joint().min_eigenvalue() >= -tol::SIMULATION_POSITIVITY);
            }
        }
    }

    #[test]
    fn simulation_at_zero_angle_gives_projective_product_joint() {
        let cfg = TorontoConfig::from_angles(0.0, 0.0).unwrap();
        let sim = toronto_simulate(&cfg).unwrap();
        // First measurement is projective σ_z; the joint must factor.
        assert!(sim.measured.is_sharp());
        assert!(sim.joint.product_form_residual() <= 1e-14);
        // M_{k,ℓ} = P_k B_ℓ P_k: diagonal weights ½ each on the σ_z blocks.
        let m_pp = sim.joint.joint().effect(Outcome::Plus, Outcome::Plus);
        assert!((m_pp.matrix().m[0][0].re - 0.5).abs() < 1e-14);
        assert!(m_pp.matrix().m[1][1].norm() < 1e-14);
    }

    #[test]
    fn toronto_relation_saturates_at_the_balanced_pointer() {
        let cfg = TorontoConfig::from_angles(PI / 4.0, 0.0).unwrap();
        let report = error_relations_toronto(&cfg).unwrap();
        let each = 2.0 - std::f64::consts::SQRT_2;
        assert!((report.err_sq_a - each).abs() < 1e-12);
        assert!((report.err_sq_b - each).abs() < 1e-12);
        assert!(report.slack.abs() < 1e-9);
        assert!(report.saturated);
    }

    #[test]
    fn toronto_sweep_minimum_sits_at_45_degrees() {
        let thetas: Vec<f64> = (0..=90).map(|d| (d as f64).to_radians()).collect();
        let rows = toronto_sweep(&thetas, 0.0).unwrap();
        let (argmin, _) = rows
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.slack.total_cmp(&b.1.slack))
            .unwrap();
        assert_eq!(rows[argmin].theta_deg.round() as i64, 45);
        assert!(rows.iter().all(|row| row.slack >= -1e-9));
    }

    #[test]
    fn toronto_state_errors_vanish_along_y() {
        let cfg = TorontoConfig::from_angles(PI / 3.0, 0.0).unwrap();
        let rho = QubitState::pure(BlochVector::Y).unwrap();
        let (err_a, err_b) = toronto_state_error_sq(&cfg, &rho);
        assert_eq!(err_a, 0.0);
        assert_eq!(err_b, 0.0);
    }

    #[test]
    fn toronto_state_errors_match_transport_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..500 {
            let theta: f64 = rng.random_range(0.0..PI);
            let cfg = TorontoConfig::from_angles(theta, 0.0).unwrap();
            let rho = QubitState::pure(random_unit(&mut rng)).unwrap();
            let (err_a, err_b) = toronto_state_error_sq(&cfg, &rho);
            let (c_obs, d_obs) = toronto_closed_form(&cfg);
            let via_transport_a = transport::delta_sq_state(
                &c_obs,
                &BinaryObservable::sharp(BlochVector::Z).unwrap(),
                &rho,
            )
            .unwrap();
            let via_transport_b = transport::delta_sq_state(
                &d_obs,
                &BinaryObservable::sharp(BlochVector::X).unwrap(),
                &rho,
            )
            .unwrap();
            assert!((err_a - via_transport_a).abs() <= 1e-12);
            assert!((err_b - via_transport_b).abs() <= 1e-12);
        }
    }

    #[test]
    fn toronto_eps_equals_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for _ in 0..100 {
            let theta: f64 = rng.random_range(0.0..PI / 2.0);
            let phi: f64 = rng.random_range(0.0..2.0 * PI);
            let cfg = TorontoConfig::from_angles(theta, phi).unwrap();
            let rho = QubitState::pure(random_unit(&mut rng)).unwrap();
            let result = toronto_model(&cfg, &rho).unwrap();
            assert!((result.eps_sq_a - result.worst_err_sq_a).abs() <= 1e-12);
            assert!((result.eps_sq_b - result.worst_err_sq_b).abs() <= 1e-12);
        }
    }
}
