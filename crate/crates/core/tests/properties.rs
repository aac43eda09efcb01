//! Property-based invariants over randomly generated observables, states,
//! and distributions.

use proptest::prelude::*;

use qmur::bloch::{BinaryObservable, BlochVector, Outcome, QubitState};
use qmur::compat;
use qmur::oracle;
use qmur::transport::{self, BinaryDistribution, Coupling};

fn ball_vector() -> impl Strategy<Value = BlochVector> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_map(|(x, y, z)| BlochVector::new(x, y, z))
        .prop_filter("inside unit ball", |v| v.norm() <= 1.0)
}

fn unit_vector() -> impl Strategy<Value = BlochVector> {
    ball_vector()
        .prop_filter("away from origin", |v| v.norm() > 1e-3)
        .prop_map(|v| v.normalized().unwrap())
}

fn observable() -> impl Strategy<Value = BinaryObservable> {
    (ball_vector(), 0.0..1.0f64).prop_map(|(e, t)| {
        let lo = e.norm();
        let hi = 2.0 - lo;
        BinaryObservable::new(lo + t * (hi - lo), e).expect("bias inside positivity interval")
    })
}

fn state() -> impl Strategy<Value = QubitState> {
    ball_vector().prop_map(|r| QubitState::new(r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    /// The Bloch closed form, the analytic coupling minimizer, and the
    /// brute-force coupling grid all give the same state-dependent error.
    #[test]
    fn closed_form_error_equals_coupling_minimum(
        e in observable(),
        f in observable(),
        rho in state(),
    ) {
        let closed = transport::delta_sq_state(&e, &f, &rho).unwrap();
        let d1 = BinaryDistribution::from_observable(&e, &rho);
        let d2 = BinaryDistribution::from_observable(&f, &rho);
        let analytic = transport::wasserstein2_sq(&d1, &d2);
        let grid = oracle::wasserstein2_sq_grid(&d1, &d2, 1000);
        prop_assert!((closed - analytic).abs() <= 1e-12);
        prop_assert!((closed - grid).abs() <= 1e-9);
    }

    /// Total variation is a quarter of the squared worst-case error, and
    /// both are symmetric in their arguments.
    #[test]
    fn total_variation_proportionality_and_symmetry(
        e in observable(),
        f in observable(),
    ) {
        let tv = transport::total_variation(&e, &f).unwrap();
        let worst = transport::delta_sq_worst(&e, &f).unwrap();
        prop_assert!((tv - 0.25 * worst).abs() <= 1e-12);
        prop_assert_eq!(worst, transport::delta_sq_worst(&f, &e).unwrap());
    }

    /// The worst-case error dominates every state-dependent error and its
    /// witness state attains it.
    #[test]
    fn worst_case_error_dominates_states(
        e in observable(),
        f in observable(),
        rho in state(),
    ) {
        let worst = transport::delta_sq_worst(&e, &f).unwrap();
        prop_assert!(transport::delta_sq_state(&e, &f, &rho).unwrap() <= worst + 1e-12);
        let (value, witness) = transport::delta_sq_worst_witness(&e, &f).unwrap();
        prop_assert!((value - transport::delta_sq_state(&e, &f, &witness).unwrap()).abs() <= 1e-12);
    }

    /// Away from the boundary the norm form and the unsharpness form of the
    /// compatibility criterion agree as predicates.
    #[test]
    fn compatibility_criterion_forms_agree(
        c in ball_vector(),
        d in ball_vector(),
    ) {
        let criterion = compat::compatibility_criterion(&c, &d);
        prop_assume!((criterion - 2.0).abs() > 1e-10);
        prop_assert_eq!(
            compat::is_compatible_unbiased(&c, &d),
            compat::compat_equiv_unsharpness(&c, &d).holds
        );
    }

    /// Compatible pairs always admit the explicit joint observable, with
    /// exact marginals.
    #[test]
    fn compatible_pairs_admit_joint_observables(
        c in ball_vector(),
        d in ball_vector(),
    ) {
        prop_assume!(compat::is_compatible_unbiased(&c, &d));
        let joint = compat::joint_observable(&c, &d).unwrap();
        let first = joint.marginal_first().unwrap();
        let second = joint.marginal_second().unwrap();
        prop_assert!((first.vector() - c).norm() <= 1e-14);
        prop_assert!((second.vector() - d).norm() <= 1e-14);
        prop_assert!(joint.min_eigenvalue() >= -1e-12);
    }

    /// Born probabilities normalize and match the matrix backend.
    #[test]
    fn probabilities_normalize_and_match_backend(
        obs in observable(),
        rho in state(),
    ) {
        let p_plus = obs.probability(Outcome::Plus, &rho);
        let p_minus = obs.probability(Outcome::Minus, &rho);
        prop_assert!((p_plus + p_minus - 1.0).abs() <= 1e-14);
        let backend = obs.effect(Outcome::Plus).expectation(&rho.density_matrix());
        prop_assert!((p_plus - backend).abs() <= 1e-12);
    }

    /// Covariant symmetrization never increases the worst-case error
    /// against sharp targets and preserves compatibility.
    #[test]
    fn symmetrization_is_error_non_increasing(
        obs in observable(),
        other in observable(),
        target_axis in unit_vector(),
    ) {
        let target = BinaryObservable::sharp(target_axis).unwrap();
        let before = transport::delta_sq_worst(&obs, &target).unwrap();
        let reduced = compat::symmetrize_covariant(&obs);
        let after = transport::delta_sq_worst(&reduced, &target).unwrap();
        prop_assert!(after <= before + 1e-12);
        // Compatibility of the vector pair is untouched by symmetrization.
        let before_compat =
            compat::is_compatible_unbiased(&obs.vector(), &other.vector());
        let after_compat = compat::is_compatible_unbiased(
            &reduced.vector(),
            &compat::symmetrize_covariant(&other).vector(),
        );
        prop_assert_eq!(before_compat, after_compat);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Domain types survive a JSON round trip bit-exactly.
    #[test]
    fn json_round_trips(
        obs in observable(),
        rho in state(),
        p in 0.0..1.0f64,
    ) {
        let obs_json = serde_json::to_string(&obs).unwrap();
        let obs_back: BinaryObservable = serde_json::from_str(&obs_json).unwrap();
        prop_assert_eq!(obs, obs_back);

        let rho_json = serde_json::to_string(&rho).unwrap();
        let rho_back: QubitState = serde_json::from_str(&rho_json).unwrap();
        prop_assert_eq!(rho, rho_back);

        let dist = BinaryDistribution::standard(p).unwrap();
        let dist_json = serde_json::to_string(&dist).unwrap();
        let dist_back: BinaryDistribution = serde_json::from_str(&dist_json).unwrap();
        prop_assert_eq!(dist, dist_back);
    }

    /// Deserialization enforces the same invariants as construction.
    #[test]
    fn deserialization_validates(
        x in 1.1..3.0f64,
    ) {
        let bad_state = format!("{{\"r\": [{x}, 0.0, 0.0]}}");
        prop_assert!(serde_json::from_str::<QubitState>(&bad_state).is_err());
        let bad_obs = format!("{{\"e0\": 1.0, \"e\": [{x}, 0.0, 0.0]}}");
        prop_assert!(serde_json::from_str::<BinaryObservable>(&bad_obs).is_err());
    }
}

#[test]
fn observable_json_uses_named_fields_and_vector_arrays() {
    let obs = BinaryObservable::new(1.25, BlochVector::new(0.5, 0.0, -0.25)).unwrap();
    let json = serde_json::to_value(obs).unwrap();
    assert_eq!(json["e0"], 1.25);
    assert_eq!(json["e"][0], 0.5);
    assert_eq!(json["e"][2], -0.25);
    assert_eq!(json["value_plus"], 1.0);
    assert_eq!(json["value_minus"], -1.0);
    // Value labels default when omitted.
    let short: BinaryObservable =
        serde_json::from_str("{\"e0\": 1.0, \"e\": [0.1, 0.2, 0.3]}").unwrap();
    assert_eq!(short.values(), (1.0, -1.0));
}

#[test]
fn coupling_json_round_trip_and_validation() {
    let coupling = Coupling::from_gamma(0.7, 0.4, 0.3).unwrap();
    let json = serde_json::to_string(&coupling).unwrap();
    let back: Coupling = serde_json::from_str(&json).unwrap();
    assert_eq!(coupling, back);
    assert!(serde_json::from_str::<Coupling>(
        "{\"g_pp\": -0.5, \"g_pm\": 0.5, \"g_mp\": 0.5, \"g_mm\": 0.5}"
    )
    .is_err());
}
