//! Wasserstein-2 distances between binary outcome distributions.
//!
//! The squared distance between two distributions is the minimum of
//! ∬(x−y)² dγ(x,y) over all couplings γ with the given marginals. For
//! two-point distributions the coupling has a single free parameter and the
//! minimum is reached at its upper feasibility endpoint, which gives the
//! closed forms used throughout:
//!
//! * state-dependent: Δ(E_ρ, F_ρ)² = 2|e0 − f0 + ⟨r, e−f⟩|,
//! * worst case over states: Δ(E, F)² = 2|e0 − f0| + 2‖e − f‖,
//! * total-variation distance: D(E, F) = ¼ Δ(E, F)².

use serde::{Deserialize, Serialize};

use crate::bloch::{BinaryObservable, Outcome, QubitState};
use crate::{tol, Error, Result};

/// A probability distribution over two labeled outcomes, v₊ > v₋.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution")]
pub struct BinaryDistribution {
    p_plus: f64,
    values: (f64, f64),
}

#[derive(Deserialize)]
struct RawDistribution {
    p_plus: f64,
    values: (f64, f64),
}

impl TryFrom<RawDistribution> for BinaryDistribution {
    type Error = Error;
    fn try_from(raw: RawDistribution) -> Result<Self> {
        BinaryDistribution::with_values(raw.p_plus, raw.values.0, raw.values.1)
    }
}

impl BinaryDistribution {
    /// Distribution on the canonical outcomes ±1.
    pub fn standard(p_plus: f64) -> Result<Self> {
        Self::with_values(p_plus, 1.0, -1.0)
    }

    pub fn with_values(p_plus: f64, v_plus: f64, v_minus: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_plus) {
            return Err(Error::InvalidProbability {
                context: "binary distribution",
                detail: p_plus,
            });
        }
        if !(v_plus > v_minus) {
            return Err(Error::InvalidValues { v_plus, v_minus });
        }
        Ok(Self {
            p_plus,
            values: (v_plus, v_minus),
        })
    }

    /// Outcome statistics of an observable in a state.
    pub fn from_observable(obs: &BinaryObservable, state: &QubitState) -> Self {
        Self {
            p_plus: obs.probability(Outcome::Plus, state),
            values: obs.values(),
        }
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn values(&self) -> (f64, f64) {
        self.values
    }
}

/// A coupling of two binary distributions: four nonnegative weights
/// γ_{ij} on the outcome pairs (+,+), (+,−), (−,+), (−,−).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCoupling")]
pub struct Coupling {
    pub g_pp: f64,
    pub g_pm: f64,
    pub g_mp: f64,
    pub g_mm: f64,
}

#[derive(Deserialize)]
struct RawCoupling {
    g_pp: f64,
    g_pm: f64,
    g_mp: f64,
    g_mm: f64,
}

impl TryFrom<RawCoupling> for Coupling {
    type Error = Error;
    fn try_from(raw: RawCoupling) -> Result<Self> {
        Coupling::new(raw.g_pp, raw.g_pm, raw.g_mp, raw.g_mm)
    }
}

impl Coupling {
    /// Entries must be nonnegative up to [`tol::BOUNDARY`] slack so grid
    /// endpoints survive rounding.
    pub fn new(g_pp: f64, g_pm: f64, g_mp: f64, g_mm: f64) -> Result<Self> {
        for g in [g_pp, g_pm, g_mp, g_mm] {
            if g < -tol::BOUNDARY {
                return Err(Error::InvalidProbability {
                    context: "coupling entry",
                    detail: g,
                });
            }
        }
        Ok(Self {
            g_pp,
            g_pm,
            g_mp,
            g_mm,
        })
    }

    /// The one-parameter family of couplings of marginals (p, 1−p) and
    /// (q, 1−q): γ_{++} = γ determines the rest.
    pub fn from_gamma(p: f64, q: f64, gamma: f64) -> Result<Self> {
        Self::new(gamma, p - gamma, q - gamma, 1.0 - p - q + gamma)
    }

    /// Feasible interval for the free parameter γ_{++}.
    pub fn gamma_range(p: f64, q: f64) -> (f64, f64) {
        ((p + q - 1.0).max(0.0), p.min(q))
    }

    /// First marginal (row sums).
    pub fn marginal_first(&self) -> (f64, f64) {
        (self.g_pp + self.g_pm, self.g_mp + self.g_mm)
    }

    /// Second marginal (column sums).
    pub fn marginal_second(&self) -> (f64, f64) {
        (self.g_pp + self.g_mp, self.g_pm + self.g_mm)
    }

    /// Checks the marginals against two distributions, to 1e−12.
    pub fn couples(&self, d1: &BinaryDistribution, d2: &BinaryDistribution) -> bool {
        let (r1, _) = self.marginal_first();
        let (c1, _) = self.marginal_second();
        let total = self.g_pp + self.g_pm + self.g_mp + self.g_mm;
        (r1 - d1.p_plus()).abs() <= 1e-12
            && (c1 - d2.p_plus()).abs() <= 1e-12
            && (total - 1.0).abs() <= 1e-12
    }
}

/// Transport cost Σ γ_{ij} (xᵢ − yⱼ)² of a coupling between outcome sets
/// (v₊, v₋) and (a₊, a₋).
pub fn coupling_cost(c: &Coupling, values1: (f64, f64), values2: (f64, f64)) -> f64 {
    let (v_p, v_m) = values1;
    let (a_p, a_m) = values2;
    c.g_pp * (v_p - a_p).powi(2)
        + c.g_pm * (v_p - a_m).powi(2)
        + c.g_mp * (v_m - a_p).powi(2)
        + c.g_mm * (v_m - a_m).powi(2)
}

/// Squared Wasserstein-2 distance between two binary distributions.
///
/// The cost is linear in the free coupling parameter γ with slope
/// −2(v₊−v₋)(a₊−a₋) < 0, so the minimizer is the upper endpoint
/// γ = min{p, q}. For canonical ±1 outcomes this reduces to 4|p − q|.
pub fn wasserstein2_sq(d1: &BinaryDistribution, d2: &BinaryDistribution) -> f64 {
    let p = d1.p_plus();
    let q = d2.p_plus();
    let gamma = p.min(q);
    let coupling =
        Coupling::from_gamma(p, q, gamma).expect("optimal gamma is inside the feasible interval");
    coupling_cost(&coupling, d1.values(), d2.values())
}

/// State-dependent squared error Δ(E_ρ, F_ρ)² = 2|e0 − f0 + ⟨r, e−f⟩|.
///
/// Only defined for the canonical ±1 outcome labels; agrees with
/// [`wasserstein2_sq`] of the induced distributions.
pub fn delta_sq_state(e: &BinaryObservable, f: &BinaryObservable, rho: &QubitState) -> Result<f64> {
    e.require_canonical_values()?;
    f.require_canonical_values()?;
    let diff = e.vector() - f.vector();
    Ok(2.0 * (e.bias() - f.bias() + rho.bloch().dot(&diff)).abs())
}

/// Worst-case squared error Δ(E, F)² = 2|e0 − f0| + 2‖e − f‖,
/// the supremum of [`delta_sq_state`] over all states.
pub fn delta_sq_worst(e: &BinaryObservable, f: &BinaryObservable) -> Result<f64> {
    e.require_canonical_values()?;
    f.require_canonical_values()?;
    Ok(2.0 * (e.bias() - f.bias()).abs() + 2.0 * (e.vector() - f.vector()).norm())
}

/// Worst-case squared error together with a state attaining it.
///
/// The supremum is attained at r = ±(e−f)/‖e−f‖ with the sign matching
/// e0 − f0; when e = f the maximizing state is arbitrary and the maximally
/// mixed state (r = 0) is reported.
pub fn delta_sq_worst_witness(
    e: &BinaryObservable,
    f: &BinaryObservable,
) -> Result<(f64, QubitState)> {
    let value = delta_sq_worst(e, f)?;
    let diff = e.vector() - f.vector();
    let norm = diff.norm();
    let witness = if norm == 0.0 {
        QubitState::maximally_mixed()
    } else {
        let sign = if e.bias() - f.bias() >= 0.0 {
            1.0
        } else {
            -1.0
        };
        QubitState::new(diff * (sign / norm)).expect("unit witness vector")
    };
    Ok((value, witness))
}

/// Total-variation distance sup_ρ |E_ρ(+1) − F_ρ(+1)| = ½(|e0−f0| + ‖e−f‖).
///
/// Satisfies D(E, F) = ¼ Δ(E, F)² in this binary qubit setting.
pub fn total_variation(e: &BinaryObservable, f: &BinaryObservable) -> Result<f64> {
    e.require_canonical_values()?;
    f.require_canonical_values()?;
    Ok(0.5 * ((e.bias() - f.bias()).abs() + (e.vector() - f.vector()).norm()))
}
