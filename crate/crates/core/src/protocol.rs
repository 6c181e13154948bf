//! The end-to-end restoration protocol.
//!
//! Alice clones and measures the signal, applies the reversal for her outcome
//! and sends the signal through a bit/phase-flip channel, with her outcome on
//! a classical side channel. Bob repeats the clone-measure-reverse step and
//! then applies a Pauli correction chosen by comparing the two outcomes:
//!
//! ```text
//! final ∝ C(a, b) · U_R^b† E_b · P_err · U_R^a† E_a |ψ⟩
//! ```
//!
//! The fidelity is evaluated three ways: exact enumeration of all 64
//! (Alice, error, Bob) branches, density-matrix propagation with Bob fed
//! `I/2`, and the closed form. A Monte Carlo unraveling samples the same
//! branches.

use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{sample_index, ErrorRates, ErrorType};
use crate::cloning::{estimation_elements, outcome_probability, Outcome};
use crate::error::{domain, Result};
use crate::linalg::CMat2;
use crate::qubit::{fidelity, DensityMatrix, PureQubit};

/// Pauli operator Bob applies after his reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correction {
    Identity,
    X,
    Z,
    /// `σ_x σ_z`
    XZ,
}

impl Correction {
    pub fn matrix(self) -> CMat2 {
        match self {
            Correction::Identity => CMat2::identity(),
            Correction::X => CMat2::pauli_x(),
            Correction::Z => CMat2::pauli_z(),
            Correction::XZ => CMat2::pauli_x() * CMat2::pauli_z(),
        }
    }

    fn from_flags(x: bool, z: bool) -> Correction {
        match (x, z) {
            (false, false) => Correction::Identity,
            (true, false) => Correction::X,
            (false, true) => Correction::Z,
            (true, true) => Correction::XZ,
        }
    }
}

/// How outcome disagreements map to Pauli corrections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CorrectionRule {
    /// Sign disagreement → `σ_z`, bit disagreement → `σ_x`. This is the rule
    /// under which Bob's branches reproduce the no-error branches.
    #[default]
    SignToZ,
    /// Sign disagreement → `σ_x`, bit disagreement → `σ_z`. Kept as a negative
    /// control; it breaks the branch symmetry.
    SignToX,
}

impl CorrectionRule {
    pub fn correction(self, alice: Outcome, bob: Outcome) -> Correction {
        let sign_differs = alice.sign() != bob.sign();
        let bit_differs = alice.bit() != bob.bit();
        match self {
            CorrectionRule::SignToZ => Correction::from_flags(bit_differs, sign_differs),
            CorrectionRule::SignToX => Correction::from_flags(sign_differs, bit_differs),
        }
    }
}

/// Correction matrix for outcomes `(alice, bob)` under the default rule.
pub fn correction_unitary(alice: Outcome, bob: Outcome) -> CMat2 {
    CorrectionRule::default().correction(alice, bob).matrix()
}

/// One (Alice outcome, channel error, Bob outcome) branch of the protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub alice: Outcome,
    pub error: ErrorType,
    pub bob: Outcome,
    pub alice_probability: f64,
    pub error_probability: f64,
    /// Probability of Bob's outcome given Alice's outcome and the error.
    pub bob_probability: f64,
    pub final_state: PureQubit,
}

impl Branch {
    pub fn weight(&self) -> f64 {
        self.alice_probability * self.error_probability * self.bob_probability
    }
}

/// One sampled run of the protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub alice_outcome: Outcome,
    pub error_drawn: ErrorType,
    pub bob_outcome: Outcome,
    pub final_state: PureQubit,
    /// `|⟨ψ_in|final⟩|²`
    pub overlap: f64,
}

/// Sample mean and standard error of trajectory overlaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub trials: u64,
    pub mean: f64,
    pub std_err: f64,
}

impl McEstimate {
    /// `(mean − reference) / std_err`; zero when both the difference and the
    /// standard error vanish.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if self.std_err > 0.0 {
            diff / self.std_err
        } else if diff.abs() <= 1e-12 {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        }
    }
}

/// The protocol for fixed channel rates and correction rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Protocol {
    rates: ErrorRates,
    rule: CorrectionRule,
}

impl Protocol {
    pub fn new(rates: ErrorRates) -> Self {
        Self {
            rates,
            rule: CorrectionRule::default(),
        }
    }

    pub fn with_rule(mut self, rule: CorrectionRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn rates(&self) -> ErrorRates {
        self.rates
    }

    pub fn rule(&self) -> CorrectionRule {
        self.rule
    }

    /// Bob's step on the signal he receives: outcome probabilities and the
    /// corrected output for each of his outcomes.
    fn bob_step(&self, alice: Outcome, received: &PureQubit) -> [(f64, PureQubit); 4] {
        let est = estimation_elements();
        Outcome::ALL.map(|bob| {
            let p = outcome_probability(received, bob);
            let op = self.rule.correction(alice, bob).matrix() * est.reversed_element(bob);
            // E_b†E_b is positive definite, so no branch annihilates the state.
            let out = received.evolve(&op).expect("Bob's branch has nonzero norm");
            (p, out)
        })
    }

    /// Alice's reversed state for outcome `a`.
    fn alice_state(psi: &PureQubit, a: Outcome) -> PureQubit {
        psi.evolve(&estimation_elements().reversed_element(a))
            .expect("Alice's branch has nonzero norm")
    }

    /// All 64 branches, including those with zero error probability.
    pub fn branches(&self, psi: &PureQubit) -> Vec<Branch> {
        let mut out = Vec::with_capacity(64);
        for alice in Outcome::ALL {
            let alice_probability = outcome_probability(psi, alice);
            let sent = Self::alice_state(psi, alice);
            for error in ErrorType::ALL {
                let received = sent.evolve(&error.operator()).expect("Pauli is unitary");
                for (bob, (bob_probability, final_state)) in Outcome::ALL
                    .into_iter()
                    .zip(self.bob_step(alice, &received))
                {
                    out.push(Branch {
                        alice,
                        error,
                        bob,
                        alice_probability,
                        error_probability: self.rates.probability(error),
                        bob_probability,
                        final_state,
                    });
                }
            }
        }
        out
    }

    /// `⟨ψ|ρ_out|ψ⟩` by exact enumeration of every branch.
    pub fn exact_fidelity(&self, psi: &PureQubit) -> f64 {
        self.branches(psi)
            .iter()
            .map(|b| b.weight() * psi.overlap(&b.final_state))
            .sum()
    }

    /// Fidelity when Bob receives `I/2` instead of the transmitted signal.
    pub fn mixed_input_fidelity(&self, psi: &PureQubit) -> f64 {
        let est = estimation_elements();
        let mixed = *DensityMatrix::maximally_mixed().matrix();
        let mut rho = CMat2::zero();
        for alice in Outcome::ALL {
            let pa = outcome_probability(psi, alice);
            for bob in Outcome::ALL {
                let k = self.rule.correction(alice, bob).matrix() * est.reversed_element(bob);
                rho = rho + k * mixed * k.adjoint() * pa;
            }
        }
        fidelity(psi, &DensityMatrix::new_unchecked(rho))
    }

    /// One sampled run of the protocol.
    pub fn run_trajectory<R: Rng + ?Sized>(
        &self,
        psi: &PureQubit,
        rng: &mut R,
    ) -> TrajectoryRecord {
        let est = estimation_elements();
        let (a, _) = est
            .channel()
            .sample(psi, rng)
            .expect("estimation outcomes have positive total probability");
        let alice_outcome = Outcome::from_index(a).expect("four outcomes");
        let sent = Self::alice_state(psi, alice_outcome);

        let error_drawn = self.rates.sample(rng);
        let received = sent
            .evolve(&error_drawn.operator())
            .expect("Pauli is unitary");

        let bob = self.bob_step(alice_outcome, &received);
        let probs = bob.map(|(p, _)| p);
        let b = sample_index(&probs, rng).expect("Bob's outcome probabilities sum to one");
        let final_state = bob[b].1;
        TrajectoryRecord {
            alice_outcome,
            error_drawn,
            bob_outcome: Outcome::ALL[b],
            final_state,
            overlap: psi.overlap(&final_state).clamp(0.0, 1.0),
        }
    }

    /// Mean overlap over `trials` trajectories drawn from `rng`.
    pub fn monte_carlo<R: Rng + ?Sized>(
        &self,
        psi: &PureQubit,
        trials: u64,
        rng: &mut R,
    ) -> McEstimate {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..trials {
            let x = self.run_trajectory(psi, rng).overlap;
            sum += x;
            sum_sq += x * x;
        }
        let n = trials as f64;
        let mean = if trials > 0 { sum / n } else { f64::NAN };
        let std_err = if trials > 1 {
            let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        } else {
            f64::NAN
        };
        McEstimate {
            trials,
            mean,
            std_err,
        }
    }
}

/// Exact protocol fidelity under the default correction rule.
pub fn exact_fidelity(psi: &PureQubit, rates: ErrorRates) -> f64 {
    Protocol::new(rates).exact_fidelity(psi)
}

/// Protocol fidelity with Bob fed the maximally mixed state.
pub fn mixed_input_fidelity(psi: &PureQubit) -> f64 {
    Protocol::new(ErrorRates::noiseless()).mixed_input_fidelity(psi)
}

/// `(5 − 2α² + 2α⁴)/9 + (8/9) α²β² cos²φ`
pub fn analytic_fidelity(alpha2: f64, phi: f64) -> f64 {
    let beta2 = 1.0 - alpha2;
    let cos = phi.cos();
    (5.0 - 2.0 * alpha2 + 2.0 * alpha2 * alpha2) / 9.0 + 8.0 / 9.0 * alpha2 * beta2 * cos * cos
}

/// One sampled protocol run under the default correction rule.
pub fn run_trajectory<R: Rng + ?Sized>(
    psi: &PureQubit,
    rates: ErrorRates,
    rng: &mut R,
) -> TrajectoryRecord {
    Protocol::new(rates).run_trajectory(psi, rng)
}

/// Measure in the computational basis, prepare the observed basis state:
/// `α⁴ + β⁴`.
pub fn baseline_direct_fidelity(psi: &PureQubit) -> f64 {
    let a2 = psi.alpha2();
    let b2 = 1.0 - a2;
    a2 * a2 + b2 * b2
}

/// The same baseline evaluated by enumerating the measure-and-prepare branches.
pub fn baseline_enumerated_fidelity(psi: &PureQubit) -> f64 {
    [PureQubit::zero(), PureQubit::one()]
        .iter()
        .map(|k| {
            let p = psi.overlap(k);
            p * k.overlap(psi)
        })
        .sum()
}

/// A rectangular grid over the input plane: `α²` uniform on `[0, 1]` with
/// both endpoints, `φ` uniform on `[0, 2π)` without the endpoint.
///
/// A single `α²` point sits at `1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneGrid {
    n_alpha: usize,
    n_phi: usize,
}

impl PlaneGrid {
    pub fn new(n_alpha: usize, n_phi: usize) -> Result<Self> {
        if n_alpha == 0 || n_phi == 0 {
            return Err(domain(format!("grid {n_alpha}x{n_phi} has no points")));
        }
        Ok(Self { n_alpha, n_phi })
    }

    pub fn n_alpha(&self) -> usize {
        self.n_alpha
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn len(&self) -> usize {
        self.n_alpha * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn alpha2(&self, i: usize) -> f64 {
        if self.n_alpha == 1 {
            0.5
        } else if i + 1 == self.n_alpha {
            1.0
        } else {
            i as f64 / (self.n_alpha - 1) as f64
        }
    }

    pub fn phi(&self, j: usize) -> f64 {
        TAU * j as f64 / self.n_phi as f64
    }

    /// Points in row-major order (`α²` outer, `φ` inner).
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_alpha).flat_map(move |i| (0..self.n_phi).map(move |j| (i, j)))
    }

    /// Quadrature weight: trapezoid in `α²`, uniform in `φ`. Weights sum to 1.
    pub fn weight(&self, i: usize, _j: usize) -> f64 {
        let wa = if self.n_alpha == 1 {
            1.0
        } else if i == 0 || i + 1 == self.n_alpha {
            0.5 / (self.n_alpha - 1) as f64
        } else {
            1.0 / (self.n_alpha - 1) as f64
        };
        wa / self.n_phi as f64
    }

    /// Weighted mean of row-major `values`.
    pub fn average(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        self.points()
            .zip(values)
            .map(|((i, j), v)| self.weight(i, j) * v)
            .sum()
    }
}

/// Averages `f(α², φ)` over the plane with trapezoid weights in `α²` and the
/// periodic uniform rule in `φ`.
pub fn plane_average<F>(f: F, n_alpha: usize, n_phi: usize) -> Result<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    if n_alpha < 2 {
        return Err(domain(format!(
            "plane_average needs at least 2 alpha points, got {n_alpha}"
        )));
    }
    let grid = PlaneGrid::new(n_alpha, n_phi)?;
    let points: Vec<(usize, usize)> = grid.points().collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(i, j)| f(grid.alpha2(i), grid.phi(j)))
        .collect();
    Ok(grid.average(&values))
}
