//! Self-check suite: every library invariant evaluated as a measured
//! deviation against a tolerance.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{error_channel, ErrorRates, ErrorType};
use crate::cloning::{
    estimation_elements, outcome_probability, post_measurement_state, projected_elements,
    reversed_fidelity, uqcm_output, Outcome,
};
use crate::linalg::{c, hs_distance, nearest_unitary, polar_decompose, CMat2, C64};
use crate::protocol::{
    analytic_fidelity, baseline_direct_fidelity, plane_average, CorrectionRule, Protocol,
};
use crate::qubit::{fidelity, reduce_qubit, DensityMatrix, PureQubit};

/// Bound on `|z|` for statistical checks.
pub const Z_BOUND: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Replaces every deterministic tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
    pub rule: CorrectionRule,
    /// Trajectories per Monte Carlo spot state.
    pub mc_trials: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: None,
            seed: 0,
            rule: CorrectionRule::default(),
            mc_trials: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<44} max_dev={:<11.3e} tol={:<9.1e} {}",
            self.name,
            self.deviation,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(
            f,
            "{} checks, {} failed: {}",
            self.checks.len(),
            failed,
            if failed == 0 { "PASS" } else { "FAIL" }
        )
    }
}

/// Uniform point of the (α², φ) plane.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R) -> PureQubit {
    PureQubit::new(rng.random::<f64>(), TAU * rng.random::<f64>()).expect("valid")
}

/// Haar-random 2×2 unitary: a uniform point of SU(2) times a uniform phase.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    let u: f64 = rng.random();
    let a = C64::from_polar(u.sqrt(), TAU * rng.random::<f64>());
    let b = C64::from_polar((1.0 - u).sqrt(), TAU * rng.random::<f64>());
    let g = C64::from_polar(1.0, TAU * rng.random::<f64>());
    CMat2::new(a, b, -b.conj(), a.conj()).scale(g)
}

fn random_matrix<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    let mut z = || c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    CMat2::new(z(), z(), z(), z())
}

struct Suite {
    opts: VerifyOptions,
    rng: ChaCha8Rng,
    report: VerifyReport,
}

impl Suite {
    fn tol(&self, default: f64) -> f64 {
        self.opts.tol.unwrap_or(default)
    }

    /// Deterministic check: pass iff `deviation ≤ tolerance`.
    fn record(&mut self, name: &'static str, deviation: f64, default_tol: f64) {
        let tolerance = self.tol(default_tol);
        self.report.checks.push(CheckResult {
            name,
            deviation,
            tolerance,
            passed: deviation <= tolerance,
        });
    }

    /// Statistical check on the largest `|z|`.
    fn record_z(&mut self, name: &'static str, max_abs_z: f64) {
        self.report.checks.push(CheckResult {
            name,
            deviation: max_abs_z,
            tolerance: Z_BOUND,
            passed: max_abs_z <= Z_BOUND,
        });
    }

    fn grid(n: usize) -> Vec<PureQubit> {
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let a2 = i as f64 / (n - 1) as f64;
                out.push(PureQubit::new(a2, TAU * j as f64 / n as f64).expect("valid"));
            }
        }
        out
    }

    fn linalg(&mut self) {
        let est = estimation_elements();
        let mut dev: f64 = 0.0;
        let mut herm: f64 = 0.0;
        for o in Outcome::ALL {
            let e = est.element(o);
            let u = nearest_unitary(e).expect("invertible");
            dev = dev.max(u.max_abs_diff(est.reversal(o)));
            let k = u.adjoint() * *e;
            herm = herm
                .max(k.max_abs_diff(&k.adjoint()))
                .max(-k.min_hermitian_eigenvalue());
        }
        self.record("reversal unitaries equal polar factors", dev, 1e-12);
        self.record("U_R^i^dagger E_i is Hermitian PSD", herm, 1e-12);

        let mut excess: f64 = 0.0;
        for o in Outcome::ALL {
            let e = est.element(o);
            let best = hs_distance(&nearest_unitary(e).expect("invertible"), e);
            for _ in 0..1000 {
                let t = haar_unitary(&mut self.rng);
                excess = excess.max(best - hs_distance(&t, e));
            }
        }
        self.record(
            "nearest unitary minimizes HS distance",
            excess.max(0.0),
            1e-12,
        );

        let mut dev: f64 = 0.0;
        let mut count = 0;
        while count < 1000 {
            let e = random_matrix(&mut self.rng);
            if e.det().norm() < 1e-2 {
                continue;
            }
            count += 1;
            let p = polar_decompose(&e).expect("invertible");
            let scale = e.max_abs().max(1.0);
            dev = dev
                .max((p.unitary * p.positive).max_abs_diff(&e) / scale)
                .max((p.unitary.adjoint() * p.unitary).max_abs_diff(&CMat2::identity()))
                .max(p.positive.max_abs_diff(&p.positive.adjoint()))
                .max(-p.positive.min_hermitian_eigenvalue());
        }
        self.record("polar decomposition round trip", dev, 1e-12);
    }

    fn quantum_core(&mut self) {
        let mut dev = estimation_elements().channel().completeness_deviation();
        for _ in 0..100 {
            let (b, p) = (self.rng.random(), self.rng.random());
            dev = dev.max(
                error_channel(b, p)
                    .expect("in range")
                    .completeness_deviation(),
            );
        }
        self.record("channel completeness", dev, 1e-12);

        let mut dev: f64 = 0.0;
        for _ in 0..100 {
            let psi = random_pure(&mut self.rng);
            let q = random_pure(&mut self.rng);
            let w: f64 = self.rng.random();
            let rho = DensityMatrix::new(psi.projector() * w + q.projector() * (1.0 - w))
                .expect("mixture is a density matrix");
            let ch = error_channel(self.rng.random(), self.rng.random()).expect("in range");
            for out in [ch.apply(&rho), estimation_elements().channel().apply(&rho)] {
                let m = out.matrix();
                dev = dev
                    .max((m.trace().re - 1.0).abs())
                    .max(m.trace().im.abs())
                    .max(m.max_abs_diff(&m.adjoint()));
            }
        }
        self.record("channels preserve trace and Hermiticity", dev, 1e-12);

        let psi = random_pure(&mut self.rng);
        let ch = estimation_elements().channel();
        let probs = ch.probabilities(&psi);
        let n = 100_000;
        let mut counts = [0u64; 4];
        for _ in 0..n {
            let (i, _) = ch.sample(&psi, &mut self.rng).expect("positive weights");
            counts[i] += 1;
        }
        let z = max_binomial_z(&counts, &probs, n);
        self.record_z("sampled outcome frequencies", z);

        let mut dev: f64 = 0.0;
        for _ in 0..100 {
            let psi = random_pure(&mut self.rng);
            let back = PureQubit::from_amplitudes(&psi.amplitudes()).expect("normalized");
            let dphi = (back.phi() - psi.phi()).abs();
            dev = dev
                .max((back.alpha2() - psi.alpha2()).abs())
                .max(dphi.min(TAU - dphi));
        }
        self.record("gauge round trip", dev, 1e-12);
    }

    fn cloning(&mut self) {
        let est = estimation_elements();
        let dev = Outcome::ALL
            .iter()
            .zip(projected_elements())
            .map(|(o, p)| est.element(*o).max_abs_diff(&p))
            .fold(0.0, f64::max);
        self.record("projected elements equal literal elements", dev, 1e-12);

        let mut dev: f64 = 0.0;
        for _ in 0..200 {
            let psi = random_pure(&mut self.rng);
            let out = uqcm_output(&psi);
            // Qubits 1 and 2 are the clones; qubit 3 is the cloner's ancilla.
            let r1 = reduce_qubit(&out, 1).expect("valid index");
            let r2 = reduce_qubit(&out, 2).expect("valid index");
            dev = dev
                .max(r1.matrix().max_abs_diff(r2.matrix()))
                .max((fidelity(&psi, &r2) - 5.0 / 6.0).abs())
                .max((fidelity(&psi, &r1) - 5.0 / 6.0).abs())
                .max((out.norm_sqr() - 1.0).abs());
        }
        self.record("clone symmetry and 5/6 fidelity", dev, 1e-12);

        let grid = Self::grid(51);
        let mut dev: f64 = 0.0;
        for psi in &grid {
            let p = Outcome::ALL.map(|o| outcome_probability(psi, o));
            let (a, b, phi) = (psi.alpha(), psi.beta(), psi.phi());
            let plus = 0.5 * (1.0 + 4.0 / 3.0 * a * b * phi.cos());
            let zero = (1.0 + a * a) / 3.0;
            dev = dev
                .max((p.iter().sum::<f64>() - 1.0).abs())
                .max((p[0] + p[1] - plus).abs())
                .max((p[0] + p[2] - zero).abs());
        }
        self.record("outcome probabilities and marginals", dev, 1e-12);

        let deficit = grid
            .iter()
            .map(|psi| 5.0 / 6.0 - reversed_fidelity(psi))
            .fold(0.0, f64::max);
        self.record("reversal never lowers fidelity below 5/6", deficit, 1e-12);

        let mut violations = 0u32;
        for psi in &grid {
            let inside = psi.alpha() > psi.beta() && psi.phi().cos() > 0.0;
            if !inside {
                continue;
            }
            let post = post_measurement_state(psi, Outcome::PLUS_ZERO).expect("p > 0");
            if !(post.alpha() > post.beta() && post.phi().cos() > 0.0) {
                violations += 1;
            }
        }
        self.record("+0 outcome preserves the quadrant", violations as f64, 0.0);
    }

    fn protocol(&mut self) {
        let rule = self.opts.rule;
        let base = Protocol::new(ErrorRates::noiseless()).with_rule(rule);
        let grid = Self::grid(5);
        let rates: Vec<ErrorRates> = (0..10)
            .map(|_| ErrorRates::new(self.rng.random(), self.rng.random()).expect("in range"))
            .collect();
        let mut dev: f64 = 0.0;
        for psi in &grid {
            let f0 = base.exact_fidelity(psi);
            for r in &rates {
                dev = dev.max((Protocol::new(*r).with_rule(rule).exact_fidelity(psi) - f0).abs());
            }
        }
        self.record("fidelity independent of error rates", dev, 1e-10);

        let mut dev: f64 = 0.0;
        let mut floor: f64 = 0.0;
        for psi in Self::grid(41) {
            let exact = base.exact_fidelity(&psi);
            let mixed = base.mixed_input_fidelity(&psi);
            let closed = analytic_fidelity(psi.alpha2(), psi.phi());
            dev = dev.max((exact - mixed).abs()).max((exact - closed).abs());
            floor = floor.max(0.5 - exact);
        }
        self.record("exact = mixed-input = closed form", dev, 1e-10);

        let mut at_points: f64 = 0.0;
        for phi in [FRAC_PI_2, 3.0 * FRAC_PI_2] {
            let psi = PureQubit::new(0.5, phi).expect("valid");
            at_points = at_points.max((base.exact_fidelity(&psi) - 0.5).abs());
        }
        self.record(
            "fidelity floor 1/2 and its two minima",
            floor.max(at_points),
            1e-12,
        );

        let mut dev: f64 = 0.0;
        for _ in 0..100 {
            let psi = random_pure(&mut self.rng);
            dev = dev.max(branch_symmetry_deviation(&base, &psi));
        }
        let spot = base
            .branches(&PureQubit::zero())
            .into_iter()
            .find(|b| {
                b.alice == Outcome::PLUS_ZERO
                    && b.error == ErrorType::None
                    && b.bob == Outcome::PLUS_ZERO
            })
            .expect("branch exists");
        dev = dev.max((spot.bob_probability - 5.0 / 12.0).abs());
        self.record("error branches mirror the no-error branch", dev, 1e-12);

        let protocol_avg = plane_average(
            |a2, phi| base.exact_fidelity(&PureQubit::new(a2, phi).expect("valid")),
            201,
            201,
        )
        .expect("valid grid");
        let baseline_avg = plane_average(
            |a2, phi| baseline_direct_fidelity(&PureQubit::new(a2, phi).expect("valid")),
            201,
            201,
        )
        .expect("valid grid");
        self.record(
            "protocol plane average 16/27",
            (protocol_avg - 16.0 / 27.0).abs(),
            1e-3,
        );
        self.record(
            "baseline plane average 2/3",
            (baseline_avg - 2.0 / 3.0).abs(),
            1e-3,
        );
        self.record(
            "protocol average below baseline",
            (protocol_avg - baseline_avg).max(0.0),
            0.0,
        );

        let spots = [
            (1.0, 0.0),
            (0.5, 0.0),
            (0.5, PI / 2.0),
            (0.2, 1.0),
            (0.75, 4.0),
        ];
        let noisy = Protocol::new(ErrorRates::new(0.1, 0.25).expect("in range")).with_rule(rule);
        let mut max_z: f64 = 0.0;
        for (a2, phi) in spots {
            let psi = PureQubit::new(a2, phi).expect("valid");
            let est = noisy.monte_carlo(&psi, self.opts.mc_trials, &mut self.rng);
            max_z = max_z.max(est.z_score(noisy.exact_fidelity(&psi)).abs());
        }
        self.record_z("Monte Carlo matches enumeration", max_z);
    }
}

/// Largest deviation among the mirrored branches: for each Alice outcome `a`
/// and each error, Bob's outcome differing from `a` exactly as the error
/// pattern dictates must reproduce the no-error branch `(a, a)` in both
/// probability and final state.
pub fn branch_symmetry_deviation(protocol: &Protocol, psi: &PureQubit) -> f64 {
    let branches = protocol.branches(psi);
    let find = |a: Outcome, e: ErrorType, b: Outcome| {
        branches
            .iter()
            .find(|x| x.alice == a && x.error == e && x.bob == b)
            .expect("all 64 branches present")
    };
    let mut dev: f64 = 0.0;
    for a in Outcome::ALL {
        let reference = find(a, ErrorType::None, a);
        for e in ErrorType::ALL {
            let b = mirrored_outcome(a, e);
            let br = find(a, e, b);
            dev = dev
                .max((br.bob_probability - reference.bob_probability).abs())
                .max(br.final_state.distance(&reference.final_state));
        }
    }
    dev
}

/// Bob's outcome that mirrors Alice's `a` under error `e`: a bit flip toggles
/// the bit, a phase flip toggles the sign.
pub fn mirrored_outcome(a: Outcome, e: ErrorType) -> Outcome {
    let mask = match e {
        ErrorType::None => 0,
        ErrorType::BitFlip => 1,
        ErrorType::PhaseFlip => 2,
        ErrorType::BitPhaseFlip => 3,
    };
    Outcome::from_index(a.index() ^ mask).expect("index in range")
}

/// Largest binomial z-score of observed `counts` against `probs`.
pub fn max_binomial_z(counts: &[u64], probs: &[f64], n: u64) -> f64 {
    let n = n as f64;
    counts
        .iter()
        .zip(probs)
        .map(|(&k, &p)| {
            let sd = (n * p * (1.0 - p)).sqrt();
            let diff = k as f64 - n * p;
            if sd > 0.0 {
                (diff / sd).abs()
            } else if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max)
}

/// Runs every invariant check.
pub fn run_verify(opts: VerifyOptions) -> VerifyReport {
    let mut suite = Suite {
        opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        report: VerifyReport::default(),
    };
    suite.linalg();
    suite.quantum_core();
    suite.cloning();
    suite.protocol();
    suite.report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirrored_outcomes() {
        assert_eq!(
            mirrored_outcome(Outcome::PLUS_ZERO, ErrorType::BitFlip),
            Outcome::PLUS_ONE
        );
        assert_eq!(
            mirrored_outcome(Outcome::PLUS_ZERO, ErrorType::PhaseFlip),
            Outcome::MINUS_ZERO
        );
        assert_eq!(
            mirrored_outcome(Outcome::PLUS_ZERO, ErrorType::BitPhaseFlip),
            Outcome::MINUS_ONE
        );
        assert_eq!(
            mirrored_outcome(Outcome::MINUS_ONE, ErrorType::None),
            Outcome::MINUS_ONE
        );
    }

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(haar_unitary(&mut rng).is_unitary(1e-14));
        }
    }

    #[test]
    fn binomial_z() {
        assert_eq!(max_binomial_z(&[50, 50], &[0.5, 0.5], 100), 0.0);
        assert!((max_binomial_z(&[60, 40], &[0.5, 0.5], 100) - 2.0).abs() < 1e-12);
        assert!(max_binomial_z(&[1, 99], &[0.0, 1.0], 100).is_infinite());
    }
}
