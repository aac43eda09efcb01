//! Independent brute-force certification routes.
//!
//! Everything here exists to check the closed forms from the outside:
//! coupling-grid minimization for the transport distance, state-grid
//! maximization for the worst-case error, and random search over compatible
//! pairs for the optimal-approximator construction. None of these call the
//! closed forms they certify.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitBall};

use crate::bloch::{BinaryObservable, BlochVector, QubitState};
use crate::transport::{coupling_cost, BinaryDistribution, Coupling};

/// Minimizes the transport cost over an even γ grid (plus both interval
/// endpoints and the analytic optimum) inside the feasible interval.
///
/// The cost is linear in γ, so the endpoints already decide the minimum;
/// the grid is a redundancy check on that argument.
pub fn wasserstein2_sq_grid(d1: &BinaryDistribution, d2: &BinaryDistribution, grid: usize) -> f64 {
    let p = d1.p_plus();
    let q = d2.p_plus();
    let (lo, hi) = Coupling::gamma_range(p, q);
    let mut best = f64::INFINITY;
    let mut consider = |gamma: f64| {
        if let Ok(coupling) = Coupling::from_gamma(p, q, gamma) {
            best = best.min(coupling_cost(&coupling, d1.values(), d2.values()));
        }
    };
    consider(lo);
    consider(hi);
    consider(p.min(q));
    for step in 0..=grid {
        consider(lo + (hi - lo) * step as f64 / grid as f64);
    }
    best
}

/// Deterministic quasi-uniform unit vectors (Fibonacci sphere lattice).
pub fn fibonacci_sphere(n: usize) -> Vec<BlochVector> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let radius = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            BlochVector::new(radius * phi.cos(), radius * phi.sin(), z)
        })
        .collect()
}

/// Maximizes the state-dependent squared error over pure states: a coarse
/// Fibonacci-sphere scan followed by compass refinement on the sphere.
/// Returns the maximum and the maximizing state found.
pub fn max_delta_sq_over_states(
    e: &BinaryObservable,
    f: &BinaryObservable,
    coarse: usize,
) -> (f64, BlochVector) {
    let objective = |r: &BlochVector| {
        let rho = QubitState::new(*r).expect("unit grid vector");
        crate::transport::delta_sq_state(e, f, &rho).expect("canonical values")
    };
    let mut best_vec = BlochVector::Z;
    let mut best = objective(&best_vec);
    for r in fibonacci_sphere(coarse.max(16)) {
        let value = objective(&r);
        if value > best {
            best = value;
            best_vec = r;
        }
    }
    // Compass refinement: probe eight tangent directions, shrink on failure.
    let mut step = (4.0 * std::f64::consts::PI / coarse.max(16) as f64).sqrt();
    while step > 1e-10 {
        let seed_axis = if best_vec.x.abs() < 0.9 {
            BlochVector::X
        } else {
            BlochVector::Y
        };
        let t1 = best_vec
            .cross(&seed_axis)
            .normalized()
            .expect("tangent direction");
        let t2 = best_vec.cross(&t1);
        let mut improved = false;
        for octant in 0..8 {
            let angle = std::f64::consts::FRAC_PI_4 * octant as f64;
            let candidate = (best_vec + (t1 * angle.cos() + t2 * angle.sin()) * step)
                .normalized()
                .expect("non-degenerate step");
            let value = objective(&candidate);
            if value > best {
                best = value;
                best_vec = candidate;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, best_vec)
}

/// Smallest combined error 2‖c−a‖ + 2‖d−b‖ found by random search over
/// compatible unbiased pairs. Interior samples come from rejection in the
/// ball product; every other sample is rescaled onto the compatibility
/// boundary where the optimum lives.
pub fn best_random_compatible_error_sum(
    a: &BlochVector,
    b: &BlochVector,
    samples: u64,
    seed: u64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    let mut drawn = 0u64;
    while drawn < samples {
        let c_raw: [f64; 3] = UnitBall.sample(&mut rng);
        let d_raw: [f64; 3] = UnitBall.sample(&mut rng);
        let mut c = BlochVector::from(c_raw);
        let mut d = BlochVector::from(d_raw);
        if drawn % 2 == 1 {
            // Push the pair onto the compatibility boundary.
            let criterion = crate::compat::compatibility_criterion(&c, &d);
            if criterion > 1e-9 {
                let scale = (2.0 / criterion)
                    .min(1.0 / c.norm().max(1e-12))
                    .min(1.0 / d.norm().max(1e-12));
                c = c * scale;
                d = d * scale;
            }
        }
        drawn += 1;
        if !crate::compat::is_compatible_unbiased(&c, &d) {
            continue;
        }
        let sum = 2.0 * (c - *a).norm() + 2.0 * (d - *b).norm();
        best = best.min(sum);
    }
    best
}

/// Random admissible bias for a given effect vector, drawn in
/// [‖e‖, 2 − ‖e‖].
pub fn random_bias_for(vector: &BlochVector, rng: &mut impl Rng) -> f64 {
    let norm = vector.norm();
    if norm >= 1.0 - 1e-9 {
        1.0
    } else {
        rng.random_range(norm..(2.0 - norm))
    }
}
