//! Finite-shot simulation of an experiment configuration: closed-form
//! scheme quantities next to empirical error estimates from sampled counts.

use serde::{Deserialize, Serialize};

use qmur::bloch::{BinaryObservable, BlochVector, QubitState};
use qmur::experiments::{self, SchemeResult, TorontoConfig, ViennaConfig};
use qmur::montecarlo::{self, ErrorAnalysisReport};

/// Experiment selector inside a simulation config.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Vienna,
    Toronto,
}

/// Simulation configuration file contents. Unknown keys are rejected.
///
/// Angles are degrees. `states` lists probe Bloch vectors; when omitted the
/// scheme's canonical probe state is used (ẑ for the Vienna model, ĵ for
/// the Toronto model — the states in which the schemes are error-free).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub scheme: Scheme,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<[f64; 3]>>,
}

/// Empirical comparison of one approximator against its reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairAnalysis {
    /// Which approximation this is ("A_vs_C" or "B_vs_D").
    pub name: &'static str,
    /// Noise-operator quantity of the approximation (state independent for
    /// these schemes).
    pub eps: f64,
    pub analysis: ErrorAnalysisReport,
}

/// Full simulation report: analytic scheme quantities plus the empirical
/// error analysis per approximation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub config: SimulateConfig,
    pub shots: u64,
    pub seed: u64,
    pub resamples: u32,
    pub scheme: SchemeResult,
    pub pairs: Vec<PairAnalysis>,
}

fn parse_states(
    raw: &Option<Vec<[f64; 3]>>,
    fallback: BlochVector,
) -> qmur::Result<Vec<QubitState>> {
    match raw {
        None => Ok(vec![QubitState::new(fallback)?]),
        Some(list) => list
            .iter()
            .map(|&v| QubitState::new(BlochVector::from(v)))
            .collect(),
    }
}

pub fn run(
    config: &SimulateConfig,
    shots: u64,
    seed: u64,
    resamples: u32,
) -> qmur::Result<SimulationReport> {
    let (scheme, targets, states) = match config.scheme {
        Scheme::Vienna => {
            let alpha = config
                .alpha_deg
                .ok_or(qmur::Error::OutOfRange {
                    name: "alpha_deg",
                    value: f64::NAN,
                    range: "required for the vienna scheme",
                })?
                .to_radians();
            let states = parse_states(&config.states, BlochVector::Z)?;
            let cfg = ViennaConfig::canonical(alpha);
            let result = experiments::vienna_model(&cfg)?;
            let targets = (
                BinaryObservable::sharp(cfg.a())?,
                BinaryObservable::sharp(cfg.b())?,
            );
            (result, targets, states)
        }
        Scheme::Toronto => {
            let theta = config
                .theta_deg
                .ok_or(qmur::Error::OutOfRange {
                    name: "theta_deg",
                    value: f64::NAN,
                    range: "required for the toronto scheme",
                })?
                .to_radians();
            let phi = config.phi_deg.unwrap_or(0.0).to_radians();
            let states = parse_states(&config.states, BlochVector::Y)?;
            let cfg = TorontoConfig::from_angles(theta, phi)?;
            let result = experiments::toronto_model(&cfg, &states[0])?;
            let targets = (
                BinaryObservable::sharp(BlochVector::Z)?,
                BinaryObservable::sharp(BlochVector::X)?,
            );
            (result, targets, states)
        }
    };

    // Independent sample streams per pair: the analysis derives per-state
    // streams from its seed, so the second pair runs on seed + 1.
    let analysis_a = montecarlo::empirical_error_analysis_with(
        &scheme.approx_a,
        &targets.0,
        &states,
        shots,
        seed,
        resamples,
    )?;
    let analysis_b = montecarlo::empirical_error_analysis_with(
        &scheme.approx_b,
        &targets.1,
        &states,
        shots,
        seed.wrapping_add(1),
        resamples,
    )?;

    Ok(SimulationReport {
        config: config.clone(),
        shots,
        seed,
        resamples,
        pairs: vec![
            PairAnalysis {
                name: "A_vs_C",
                eps: scheme.eps_sq_a.max(0.0).sqrt(),
                analysis: analysis_a,
            },
            PairAnalysis {
                name: "B_vs_D",
                eps: scheme.eps_sq_b.max(0.0).sqrt(),
                analysis: analysis_b,
            },
        ],
        scheme,
    })
}

/// Raw counts as CSV, one row per (approximation, probe state).
pub fn write_counts_csv(report: &SimulationReport, path: &std::path::Path) -> std::io::Result<()> {
    use std::io::Write;
    let mut sink = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(
        sink,
        "pair,state_index,n_shots,counts_plus_approx,counts_plus_reference"
    )?;
    for pair in &report.pairs {
        for (idx, state) in pair.analysis.states.iter().enumerate() {
            writeln!(
                sink,
                "{},{},{},{},{}",
                pair.name, idx, report.shots, state.counts_plus_approx, state.counts_plus_reference
            )?;
        }
    }
    sink.flush()
}
