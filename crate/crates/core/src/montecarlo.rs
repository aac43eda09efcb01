//! Seeded finite-shot sampling and empirical error analysis.
//!
//! Sampling uses ChaCha8, a named, platform-independent, seekable generator:
//! identical (seed, configuration) always reproduces identical counts.
//! Logical sub-streams are derived with `set_stream`, never by re-seeding:
//! stream k of seed s is statistically independent of stream k′ ≠ k. The
//! analysis helpers use the fixed rule
//! `stream = 4·state_index + role` with roles 0 (approximator shots),
//! 1 (reference shots), 2 (bootstrap resampling).
//!
//! The empirical error estimator applies the closed form 4|p̂₁ − p̂₂| to
//! observed frequencies; it is biased upward near p₁ = p₂, so reports carry
//! a bootstrap confidence interval next to the plug-in estimate.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::bloch::{BinaryObservable, Outcome, QubitState};
use crate::compat::JointObservable;
use crate::transport;
use crate::Result;

/// Critical value of the χ²(1) distribution at significance 10⁻³
/// (0.999 quantile), used for two-category homogeneity tests.
pub const CHI2_CRIT_DF1_P999: f64 = 10.827566170662733;

/// Counts collected from i.i.d. measurements of one observable.
///
/// Outcome order is [+, −] for binary observables and
/// [(+,+), (+,−), (−,+), (−,−)] for joint observables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotRecord {
    pub n_shots: u64,
    pub counts: Vec<u64>,
    pub seed: u64,
}

impl ShotRecord {
    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.n_shots as f64)
            .collect()
    }
}

fn sample_categorical(probs: &[f64], n: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..n {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut chosen = probs.len() - 1;
        for (idx, p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                chosen = idx;
                break;
            }
        }
        counts[chosen] += 1;
    }
    counts
}

/// Draws n shots from a binary observable in a state. Deterministic in the
/// seed; the outcome probabilities are the exact Born values.
pub fn sample_binary(obs: &BinaryObservable, rho: &QubitState, n: u64, seed: u64) -> ShotRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_plus = obs.probability(Outcome::Plus, rho);
    let counts = sample_categorical(&[p_plus, 1.0 - p_plus], n, &mut rng);
    ShotRecord {
        n_shots: n,
        counts,
        seed,
    }
}

/// Draws n shots from a four-outcome joint observable.
pub fn sample_joint(joint: &JointObservable, rho: &QubitState, n: u64, seed: u64) -> ShotRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probs = joint.probabilities(rho);
    let counts = sample_categorical(&probs, n, &mut rng);
    ShotRecord {
        n_shots: n,
        counts,
        seed,
    }
}

/// Two-sample χ² homogeneity statistic for equal-length count vectors,
/// with pooled expectations. Degrees of freedom: categories − 1.
pub fn chi_sq_homogeneity(a: &[u64], b: &[u64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let total_a: u64 = a.iter().sum();
    let total_b: u64 = b.iter().sum();
    let grand = (total_a + total_b) as f64;
    let mut stat = 0.0;
    for (&ca, &cb) in a.iter().zip(b.iter()) {
        let pooled = (ca + cb) as f64 / grand;
        if pooled == 0.0 {
            continue;
        }
        let ea = pooled * total_a as f64;
        let eb = pooled * total_b as f64;
        stat += (ca as f64 - ea).powi(2) / ea + (cb as f64 - eb).powi(2) / eb;
    }
    stat
}

/// Empirical error analysis of one probe state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateAnalysis {
    pub state: QubitState,
    /// Raw `+` counts of the two measurements (approximator, reference).
    pub counts_plus_approx: u64,
    pub counts_plus_reference: u64,
    pub p_hat_approx: f64,
    pub p_hat_reference: f64,
    /// Closed-form Δ² of the two observables in this state.
    pub delta_sq_analytic: f64,
    /// Plug-in estimate 4|p̂₁ − p̂₂|.
    pub delta_sq_estimate: f64,
    /// delta_sq_estimate − delta_sq_analytic.
    pub bias: f64,
    /// 95% bootstrap interval for Δ², folded from the interval of the
    /// signed difference; a lower bound of exactly 0 means the data are
    /// consistent with zero error.
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Empirical comparison of an approximator against a reference measurement
/// across a battery of states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorAnalysisReport {
    pub n_shots: u64,
    pub seed: u64,
    pub resamples: u32,
    pub states: Vec<StateAnalysis>,
}

/// Default number of bootstrap resamples.
pub const DEFAULT_RESAMPLES: u32 = 1000;

/// Samples approximator and reference statistics in each state and compares
/// them through the closed-form error on empirical frequencies.
///
/// The estimate converges to the analytic state-dependent Δ² at the
/// binomial rate; the bootstrap interval is built on the *signed* frequency
/// difference (resampled binomially) and folded onto the error scale, so
/// near-equal distributions yield an interval whose lower edge is 0.
pub fn empirical_error_analysis(
    approx: &BinaryObservable,
    reference: &BinaryObservable,
    states: &[QubitState],
    n: u64,
    seed: u64,
) -> Result<ErrorAnalysisReport> {
    empirical_error_analysis_with(approx, reference, states, n, seed, DEFAULT_RESAMPLES)
}

/// As [`empirical_error_analysis`], with an explicit resample count.
pub fn empirical_error_analysis_with(
    approx: &BinaryObservable,
    reference: &BinaryObservable,
    states: &[QubitState],
    n: u64,
    seed: u64,
    resamples: u32,
) -> Result<ErrorAnalysisReport> {
    approx.require_canonical_values()?;
    reference.require_canonical_values()?;
    let mut analyses = Vec::with_capacity(states.len());
    for (idx, state) in states.iter().enumerate() {
        let stream = 4 * idx as u64;
        let approx_shots = sample_with_stream(approx, state, n, seed, stream);
        let reference_shots = sample_with_stream(reference, state, n, seed, stream + 1);
        let p1 = approx_shots.frequencies()[0];
        let p2 = reference_shots.frequencies()[0];
        let estimate = 4.0 * (p1 - p2).abs();
        let analytic = transport::delta_sq_state(approx, reference, state)?;

        let mut boot_rng = ChaCha8Rng::seed_from_u64(seed);
        boot_rng.set_stream(stream + 2);
        let (ci_low, ci_high) = bootstrap_error_interval(p1, p2, n, resamples, &mut boot_rng);

        analyses.push(StateAnalysis {
            state: *state,
            counts_plus_approx: approx_shots.counts[0],
            counts_plus_reference: reference_shots.counts[0],
            p_hat_approx: p1,
            p_hat_reference: p2,
            delta_sq_analytic: analytic,
            delta_sq_estimate: estimate,
            bias: estimate - analytic,
            ci_low,
            ci_high,
        });
    }
    Ok(ErrorAnalysisReport {
        n_shots: n,
        seed,
        resamples,
        states: analyses,
    })
}

fn sample_with_stream(
    obs: &BinaryObservable,
    rho: &QubitState,
    n: u64,
    seed: u64,
    stream: u64,
) -> ShotRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let p_plus = obs.probability(Outcome::Plus, rho);
    let counts = sample_categorical(&[p_plus, 1.0 - p_plus], n, &mut rng);
    ShotRecord {
        n_shots: n,
        counts,
        seed,
    }
}

/// Percentile bootstrap for the error 4|p₁ − p₂|: resamples both counts
/// binomially, takes the 2.5%/97.5% quantiles of the signed difference
/// 4(p̂₁* − p̂₂*), and folds the interval through the absolute value.
fn bootstrap_error_interval(
    p1: f64,
    p2: f64,
    n: u64,
    resamples: u32,
    rng: &mut ChaCha8Rng,
) -> (f64, f64) {
    let b1 = Binomial::new(n, p1.clamp(0.0, 1.0)).expect("valid binomial");
    let b2 = Binomial::new(n, p2.clamp(0.0, 1.0)).expect("valid binomial");
    let mut signed: Vec<f64> = (0..resamples)
        .map(|_| {
            let k1 = b1.sample(rng) as f64 / n as f64;
            let k2 = b2.sample(rng) as f64 / n as f64;
            4.0 * (k1 - k2)
        })
        .collect();
    signed.sort_by(f64::total_cmp);
    let lo = percentile(&signed, 0.025);
    let hi = percentile(&signed, 0.975);
    if lo <= 0.0 && 0.0 <= hi {
        (0.0, lo.abs().max(hi.abs()))
    } else {
        (lo.abs().min(hi.abs()), lo.abs().max(hi.abs()))
    }
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    let idx = (q * (sorted.len() - 1) as f64).round() as usize;
    sorted[idx]
}
