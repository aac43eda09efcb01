//! Randomized sweep suites certifying the crate's inequalities.
//!
//! Each suite draws a deterministic stream of random instances from a seed,
//! checks the relevant relations at their pinned tolerances, and reports the
//! number of violations together with the worst instance seen. The suites
//! back the `verify` command of the CLI and the acceptance tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitBall, UnitSphere};
use serde::Serialize;

use crate::bloch::{BinaryObservable, BlochVector, Outcome, QubitState};
use crate::compat;
use crate::noiseop;
use crate::tradeoff;
use crate::{tol, Result};

/// Slack below which the additive error trade-off counts as violated.
pub const QUR_SLACK_FLOOR: f64 = -1e-9;
/// Margin floor for the preparation relations.
pub const PREP_MARGIN_FLOOR: f64 = -1e-12;
/// Gap allowed when the stated minimizers should saturate a bound.
pub const MINIMIZER_GAP: f64 = 1e-12;
/// Half-width of the boundary band excluded from the criterion comparison.
pub const CRITERION_BAND: f64 = 1e-10;
/// Marginality defect allowed for constructed joint observables.
pub const MARGINALITY_TOL: f64 = 1e-14;

/// Random unit vector, rounded *outward* so that ‖v‖² ≥ 1 in floating
/// point. Sharp observables built on such an axis then admit an exact
/// eigenstate within the clamped probability formulas, which keeps the
/// minimizer-saturation checks at the 1e−12 level instead of the √ε level.
pub fn random_unit_vector(rng: &mut impl Rng) -> BlochVector {
    let v: [f64; 3] = UnitSphere.sample(rng);
    let mut v = BlochVector::from(v);
    while v.norm_sq() < 1.0 {
        v = v * (1.0 + f64::EPSILON);
    }
    v
}

pub fn random_ball_vector(rng: &mut impl Rng) -> BlochVector {
    let v: [f64; 3] = UnitBall.sample(rng);
    BlochVector::from(v)
}

/// Random state, alternating pure (sphere) and mixed (ball) draws.
pub fn random_state(rng: &mut impl Rng) -> QubitState {
    let r = if rng.random_bool(0.5) {
        random_unit_vector(rng)
    } else {
        random_ball_vector(rng)
    };
    QubitState::new(r).expect("ball vector is a state")
}

/// Rejection-samples an unbiased compatible pair from the ball product.
pub fn random_compatible_pair(rng: &mut impl Rng) -> (BlochVector, BlochVector) {
    loop {
        let c = random_ball_vector(rng);
        let d = random_ball_vector(rng);
        if compat::is_compatible_unbiased(&c, &d) {
            return (c, d);
        }
    }
}

/// Worst instance of the additive trade-off sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QurInstance {
    pub a: BlochVector,
    pub b: BlochVector,
    pub c0: f64,
    pub c: BlochVector,
    pub d0: f64,
    pub d: BlochVector,
    pub err_sq_a: f64,
    pub err_sq_b: f64,
    pub bound: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct QurSweep {
    pub samples: u64,
    pub violations: u64,
    pub min_slack: f64,
    pub worst: Option<QurInstance>,
}

/// Sweeps the additive error trade-off over random compatible approximator
/// pairs (biased and unbiased) against random sharp targets; every tenth
/// instance is the boundary-saturating optimal pair for its targets.
pub fn qur_sweep(samples: u64, seed: u64) -> Result<QurSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_slack = f64::INFINITY;
    let mut violations = 0u64;
    let mut worst = None;
    for i in 0..samples {
        let a = random_unit_vector(&mut rng);
        let b = random_unit_vector(&mut rng);
        let (c_vec, d_vec) = if i % 10 == 9 {
            tradeoff::optimal_pair(&a, &b)?
        } else {
            random_compatible_pair(&mut rng)
        };
        let biased = i % 3 == 1;
        let (c, d) = if biased {
            (
                BinaryObservable::new(crate::oracle::random_bias_for(&c_vec, &mut rng), c_vec)?,
                BinaryObservable::new(crate::oracle::random_bias_for(&d_vec, &mut rng), d_vec)?,
            )
        } else {
            (
                BinaryObservable::unbiased(c_vec)?,
                BinaryObservable::unbiased(d_vec)?,
            )
        };
        let report = tradeoff::check_qur(&c, &d, &a, &b)?;
        if report.slack < min_slack {
            min_slack = report.slack;
            worst = Some(QurInstance {
                a,
                b,
                c0: c.bias(),
                c: c_vec,
                d0: d.bias(),
                d: d_vec,
                err_sq_a: report.err_sq_a,
                err_sq_b: report.err_sq_b,
                bound: report.lower_bound,
                slack: report.slack,
            });
        }
        if report.slack < QUR_SLACK_FLOOR {
            violations += 1;
        }
    }
    Ok(QurSweep {
        samples,
        violations,
        min_slack,
        worst,
    })
}

/// Worst instance of the preparation-relation sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PrepInstance {
    pub a: BlochVector,
    pub b: BlochVector,
    pub r: BlochVector,
    pub margin_std: f64,
    pub margin_var: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrepSweep {
    pub samples: u64,
    pub violations: u64,
    pub min_margin_std: f64,
    pub min_margin_var: f64,
    /// Largest deviation from saturation at the stated minimizers.
    pub max_minimizer_gap_std: f64,
    pub max_minimizer_gap_var: f64,
    pub worst: Option<PrepInstance>,
}

/// Sweeps both additive preparation relations over random targets and
/// random (pure and mixed) states, and checks that the stated minimizers
/// saturate: r = a for the standard-deviation sum, r = (a±b)/‖a±b‖ for the
/// variance sum.
pub fn prep_sweep(samples: u64, seed: u64) -> Result<PrepSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0u64;
    let mut min_margin_std = f64::INFINITY;
    let mut min_margin_var = f64::INFINITY;
    let mut max_gap_std = 0.0f64;
    let mut max_gap_var = 0.0f64;
    let mut worst: Option<PrepInstance> = None;
    for _ in 0..samples {
        let a = random_unit_vector(&mut rng);
        let b = random_unit_vector(&mut rng);
        let a_obs = BinaryObservable::sharp(a)?;
        let b_obs = BinaryObservable::sharp(b)?;
        let rho = random_state(&mut rng);
        let rel = tradeoff::prep_sum_relations(&a_obs, &b_obs, &rho)?;
        let margin_std = rel.sum_std - rel.bound_std;
        let margin_var = rel.sum_var - rel.bound_var;
        min_margin_std = min_margin_std.min(margin_std);
        min_margin_var = min_margin_var.min(margin_var);
        let violated = margin_std < PREP_MARGIN_FLOOR || margin_var < PREP_MARGIN_FLOOR;
        if violated {
            violations += 1;
        }
        if violated
            && worst
                .map(|w| margin_std.min(margin_var) < w.margin_std.min(w.margin_var))
                .unwrap_or(true)
        {
            worst = Some(PrepInstance {
                a,
                b,
                r: rho.bloch(),
                margin_std,
                margin_var,
            });
        }

        // Saturation of the stated minimizers.
        let at_a = tradeoff::prep_sum_relations(&a_obs, &b_obs, &QubitState::new(a)?)?;
        let gap_std = (at_a.sum_std - at_a.bound_std).abs();
        let mid = if a.dot(&b) >= 0.0 { a + b } else { a - b };
        let mid_state = QubitState::new(mid.normalized()?)?;
        let at_mid = tradeoff::prep_sum_relations(&a_obs, &b_obs, &mid_state)?;
        let gap_var = (at_mid.sum_var - at_mid.bound_var).abs();
        max_gap_std = max_gap_std.max(gap_std);
        max_gap_var = max_gap_var.max(gap_var);
        if gap_std > MINIMIZER_GAP || gap_var > MINIMIZER_GAP {
            violations += 1;
        }
    }
    Ok(PrepSweep {
        samples,
        violations,
        min_margin_std,
        min_margin_var,
        max_minimizer_gap_std: max_gap_std,
        max_minimizer_gap_var: max_gap_var,
        worst,
    })
}

/// Worst instance of the noise-operator sweep.
#[derive(Debug, Clone, Serialize)]
pub struct EpsInstance {
    pub a: BlochVector,
    pub b: BlochVector,
    pub c: BlochVector,
    pub d: BlochVector,
    pub r: BlochVector,
    pub failed: String,
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpsSweep {
    pub samples: u64,
    pub violations: u64,
    pub min_margin: f64,
    pub worst: Option<EpsInstance>,
}

/// Sweeps the noise-operator trade-offs (sum, product, and the three
/// bridges to Δ and U) over random compatible unbiased pairs, random sharp
/// targets, and random states.
pub fn epsno_sweep(samples: u64, seed: u64) -> Result<EpsSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0u64;
    let mut min_margin = f64::INFINITY;
    let mut worst: Option<EpsInstance> = None;
    for _ in 0..samples {
        let (c_vec, d_vec) = random_compatible_pair(&mut rng);
        let a = random_unit_vector(&mut rng);
        let b = random_unit_vector(&mut rng);
        let rho = random_state(&mut rng);
        let rel = noiseop::eps_relations(
            &BinaryObservable::unbiased(c_vec)?,
            &BinaryObservable::unbiased(d_vec)?,
            &BinaryObservable::sharp(a)?,
            &BinaryObservable::sharp(b)?,
            &rho,
        )?;
        let mut checks = vec![rel.sum, rel.product];
        checks.extend(rel.bridges.iter().copied());
        for check in checks {
            if check.margin < min_margin {
                min_margin = check.margin;
            }
            if !check.holds {
                violations += 1;
                if worst
                    .as_ref()
                    .map(|w| check.margin < w.margin)
                    .unwrap_or(true)
                {
                    worst = Some(EpsInstance {
                        a,
                        b,
                        c: c_vec,
                        d: d_vec,
                        r: rho.bloch(),
                        failed: check.name.to_string(),
                        margin: check.margin,
                    });
                }
            }
        }
    }
    Ok(EpsSweep {
        samples,
        violations,
        min_margin,
        worst,
    })
}

/// Worst instance of the compatibility sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CompatInstance {
    pub c: BlochVector,
    pub d: BlochVector,
    pub criterion: f64,
    pub unsharpness_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatSweep {
    pub samples: u64,
    /// Instances compared outside the boundary band.
    pub compared: u64,
    pub band_skipped: u64,
    pub disagreements: u64,
    /// Compatible instances whose joint observable was constructed.
    pub joints_built: u64,
    pub max_marginality_defect: f64,
    pub min_positivity_eig: f64,
    pub worst: Option<CompatInstance>,
}

impl CompatSweep {
    pub fn violations(&self) -> u64 {
        self.disagreements
            + u64::from(self.max_marginality_defect > MARGINALITY_TOL)
            + u64::from(self.min_positivity_eig < -tol::BOUNDARY)
    }
}

/// Compares the two forms of the compatibility criterion on random pairs
/// (skipping a 1e−10 band around the boundary where the tolerances may
/// legitimately differ) and validates the constructed joint observable of
/// every compatible pair: positivity and exact marginality.
pub fn compat_sweep(samples: u64, seed: u64) -> Result<CompatSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut compared = 0u64;
    let mut band_skipped = 0u64;
    let mut disagreements = 0u64;
    let mut joints_built = 0u64;
    let mut max_marginality: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let mut worst: Option<CompatInstance> = None;
    for _ in 0..samples {
        let c = random_ball_vector(&mut rng);
        let d = random_ball_vector(&mut rng);
        let criterion = compat::compatibility_criterion(&c, &d);
        if (criterion - 2.0).abs() < CRITERION_BAND {
            band_skipped += 1;
        } else {
            compared += 1;
            let by_norms = compat::is_compatible_unbiased(&c, &d);
            let by_unsharpness = compat::compat_equiv_unsharpness(&c, &d);
            if by_norms != by_unsharpness.holds {
                disagreements += 1;
                worst = Some(CompatInstance {
                    c,
                    d,
                    criterion,
                    unsharpness_margin: by_unsharpness.lhs - by_unsharpness.rhs,
                });
            }
        }
        if compat::is_compatible_unbiased(&c, &d) {
            joints_built += 1;
            let joint = compat::joint_observable(&c, &d)?;
            min_eig = min_eig.min(joint.min_eigenvalue());
            let c_obs = BinaryObservable::unbiased(c)?;
            let d_obs = BinaryObservable::unbiased(d)?;
            let first = joint.effect(Outcome::Plus, Outcome::Plus)
                + joint.effect(Outcome::Plus, Outcome::Minus);
            let second = joint.effect(Outcome::Plus, Outcome::Plus)
                + joint.effect(Outcome::Minus, Outcome::Plus);
            let defect = first
                .matrix()
                .max_abs_diff(c_obs.effect(Outcome::Plus).matrix())
                .max(
                    second
                        .matrix()
                        .max_abs_diff(d_obs.effect(Outcome::Plus).matrix()),
                );
            max_marginality = max_marginality.max(defect);
        }
    }
    Ok(CompatSweep {
        samples,
        compared,
        band_skipped,
        disagreements,
        joints_built,
        max_marginality_defect: max_marginality,
        min_positivity_eig: min_eig,
        worst,
    })
}

/// The sweep suites exposed to the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Qur,
    Prep,
    EpsNo,
    Compat,
}

/// Report of one sweep suite, tagged by suite name.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "suite", rename_all = "snake_case")]
pub enum SuiteReport {
    Qur(QurSweep),
    Prep(PrepSweep),
    EpsNo(EpsSweep),
    Compat(CompatSweep),
}

impl SuiteReport {
    pub fn violations(&self) -> u64 {
        match self {
            SuiteReport::Qur(s) => s.violations,
            SuiteReport::Prep(s) => s.violations,
            SuiteReport::EpsNo(s) => s.violations,
            SuiteReport::Compat(s) => s.violations(),
        }
    }
}

/// Runs one suite with the given sample count and seed.
pub fn run_suite(kind: SuiteKind, samples: u64, seed: u64) -> Result<SuiteReport> {
    Ok(match kind {
        SuiteKind::Qur => SuiteReport::Qur(qur_sweep(samples, seed)?),
        SuiteKind::Prep => SuiteReport::Prep(prep_sweep(samples, seed)?),
        SuiteKind::EpsNo => SuiteReport::EpsNo(epsno_sweep(samples, seed)?),
        SuiteKind::Compat => SuiteReport::Compat(compat_sweep(samples, seed)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qur_sweep_is_clean_and_deterministic() {
        let a = qur_sweep(2000, 7).unwrap();
        assert_eq!(a.violations, 0);
        assert!(a.min_slack >= QUR_SLACK_FLOOR);
        let b = qur_sweep(2000, 7).unwrap();
        assert_eq!(a.min_slack, b.min_slack);
    }

    #[test]
    fn prep_sweep_is_clean() {
        let report = prep_sweep(2000, 11).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.max_minimizer_gap_std <= MINIMIZER_GAP);
        assert!(report.max_minimizer_gap_var <= MINIMIZER_GAP);
    }

    #[test]
    fn epsno_sweep_is_clean() {
        let report = epsno_sweep(1000, 13).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.min_margin >= -tol::BOUNDARY);
    }

    #[test]
    fn compat_sweep_is_clean() {
        let report = compat_sweep(5000, 17).unwrap();
        assert_eq!(report.disagreements, 0);
        assert_eq!(report.violations(), 0);
        assert!(report.joints_built > 0);
        assert!(report.max_marginality_defect <= MARGINALITY_TOL);
        assert!(report.min_positivity_eig >= -tol::BOUNDARY);
    }

    #[test]
    fn suite_reports_serialize_with_suite_tags() {
        let report = run_suite(SuiteKind::Compat, 100, 1).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"suite\":\"compat\""));
    }
}
