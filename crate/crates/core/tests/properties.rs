use std::f64::consts::TAU;

use cloning_restore::linalg::c;
use cloning_restore::{
    analytic_fidelity, error_channel, estimation_elements, polar_decompose, post_measurement_state,
    reverse, CMat2, DensityMatrix, ErrorRates, Outcome, Protocol, PureQubit,
};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = PureQubit> {
    (0.0f64..=1.0, 0.0f64..TAU).prop_map(|(a2, phi)| PureQubit::new(a2, phi).unwrap())
}

fn matrix() -> impl Strategy<Value = CMat2> {
    prop::array::uniform8(-1.0f64..1.0)
        .prop_map(|x| CMat2::new(c(x[0], x[1]), c(x[2], x[3]), c(x[4], x[5]), c(x[6], x[7])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn polar_round_trip(e in matrix()) {
        prop_assume!(e.det().norm() > 1e-2);
        let p = polar_decompose(&e).unwrap();
        prop_assert!((p.unitary * p.positive).max_abs_diff(&e) < 1e-12);
        prop_assert!(p.unitary.is_unitary(1e-12));
        prop_assert!(p.positive.is_psd(1e-12));
        prop_assert!((p.positive * p.positive).max_abs_diff(&(e.adjoint() * e)) < 1e-12);
    }

    #[test]
    fn gauge_round_trip(a2 in 0.0f64..1.0, phi in 0.0f64..TAU) {
        let psi = PureQubit::new(a2, phi).unwrap();
        prop_assume!(psi.beta() > 1e-6 && psi.alpha() > 1e-6);
        let back = PureQubit::from_amplitudes(&psi.amplitudes()).unwrap();
        prop_assert!((back.alpha2() - a2).abs() < 1e-12);
        let d = (back.phi() - psi.phi()).abs();
        prop_assert!(d.min(TAU - d) < 1e-12);
    }

    #[test]
    fn error_channel_preserves_density(psi in state(), q in state(), w in 0.0f64..1.0,
                                       pb in 0.0f64..=1.0, pp in 0.0f64..=1.0) {
        let rho = DensityMatrix::new(psi.projector() * w + q.projector() * (1.0 - w)).unwrap();
        let ch = error_channel(pb, pp).unwrap();
        prop_assert!(ch.completeness_deviation() < 1e-12);
        let out = ch.apply(&rho);
        prop_assert!(DensityMatrix::new(*out.matrix()).is_ok());
    }

    #[test]
    fn reversal_is_norm_preserving(psi in state(), i in 0usize..4) {
        let o = Outcome::from_index(i).unwrap();
        let back = reverse(&psi, o);
        let v = back.amplitudes();
        prop_assert!((v[0].norm_sqr() + v[1].norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reverse_after_measurement_is_sqrt_branch(psi in state(), i in 0usize..4) {
        let o = Outcome::from_index(i).unwrap();
        let post = post_measurement_state(&psi, o).unwrap();
        let direct = psi.evolve(&estimation_elements().reversed_element(o)).unwrap();
        prop_assert!(reverse(&post, o).distance(&direct) < 1e-12);
    }

    #[test]
    fn fidelity_ignores_channel_noise(psi in state(), pb in 0.0f64..=1.0, pp in 0.0f64..=1.0) {
        let f = Protocol::new(ErrorRates::new(pb, pp).unwrap()).exact_fidelity(&psi);
        prop_assert!((f - analytic_fidelity(psi.alpha2(), psi.phi())).abs() < 1e-10);
        prop_assert!((0.5 - 1e-12..=1.0).contains(&f));
    }
}

#[test]
fn quadrant_preserved_under_plus_zero() {
    // Strict interior of α > β, cos φ > 0.
    let mut checked = 0;
    for i in 0..=100 {
        for j in 0..100 {
            let psi = PureQubit::new(i as f64 / 100.0, TAU * j as f64 / 100.0).unwrap();
            if !(psi.alpha() > psi.beta() && psi.phi().cos() > 1e-12) {
                continue;
            }
            checked += 1;
            let post = post_measurement_state(&psi, Outcome::PLUS_ZERO).unwrap();
            assert!(post.alpha() > post.beta(), "{psi:?}");
            assert!(post.phi().cos() > 0.0, "{psi:?}");

            // Closed-form primed parameters before renormalization.
            let (a, b, phi) = (psi.alpha(), psi.beta(), psi.phi());
            let a_p = (a * a + a * b * phi.cos() + 0.25 * b * b).sqrt();
            let b_p = 0.5 * b;
            let phi_p = phi - (b * phi.sin() / (2.0 * a + b * phi.cos())).atan();
            let n = (a_p * a_p + b_p * b_p).sqrt();
            assert!((post.alpha() - a_p / n).abs() < 1e-12);
            assert!((post.beta() - b_p / n).abs() < 1e-12);
            let d = (post.phi() - phi_p.rem_euclid(TAU)).abs();
            assert!(d.min(TAU - d) < 1e-12, "{psi:?}");
        }
    }
    assert!(checked > 1000);
}

#[test]
fn sampled_frequencies_match_probabilities() {
    use rand::SeedableRng;
    let psi = PureQubit::new(0.3, 2.0).unwrap();
    let ch = estimation_elements().channel();
    let probs = ch.probabilities(&psi);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let n = 100_000u64;
    let mut counts = [0u64; 4];
    for _ in 0..n {
        counts[ch.sample(&psi, &mut rng).unwrap().0] += 1;
    }
    let z = cloning_restore::verify::max_binomial_z(&counts, &probs, n);
    assert!(z <= 4.0, "{z}");
}

#[test]
fn trajectory_determinism_and_forced_error() {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    let psi = PureQubit::new(0.7, 1.0).unwrap();
    let p = Protocol::new(ErrorRates::new(1.0, 0.0).unwrap());
    let a = p.run_trajectory(&psi, &mut ChaCha8Rng::seed_from_u64(5));
    let b = p.run_trajectory(&psi, &mut ChaCha8Rng::seed_from_u64(5));
    assert_eq!(a, b);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let t = p.run_trajectory(&psi, &mut rng);
        assert_eq!(t.error_drawn, cloning_restore::ErrorType::BitFlip);
        assert!((0.0..=1.0).contains(&t.overlap));
    }
}

#[test]
fn trajectory_mean_on_zero_state() {
    use rand::SeedableRng;
    let p = Protocol::new(ErrorRates::noiseless());
    let est = p.monte_carlo(
        &PureQubit::zero(),
        100_000,
        &mut rand_chacha::ChaCha8Rng::seed_from_u64(11),
    );
    assert!(est.z_score(5.0 / 9.0).abs() <= 4.0, "{est:?}");
}
