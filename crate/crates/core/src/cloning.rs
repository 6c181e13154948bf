//! Universal 1→2 cloning, the estimation measurement on the two clones, and
//! the approximate reversal of that measurement.
//!
//! Alice (and later Bob) clones the signal qubit, measures the second qubit
//! in the `|±⟩` basis and the third in the computational basis. Seen from the
//! signal qubit this is a four-outcome measurement with operation elements
//! `E_0..E_3`, each the matrix `(⟨m_i|₂₃) U_C (·)|00⟩₂₃`. The reversal applied
//! after outcome `i` is `U_R^i†`, the adjoint of the unitary polar factor of
//! `E_i`, so that `U_R^i† E_i = √(E_i†E_i)`.

use std::fmt;
use std::sync::OnceLock;

use crate::channel::KrausChannel;
use crate::error::Result;
use crate::linalg::{r, CMat2, CVec8, Ket2, ZERO};
use crate::qubit::PureQubit;

/// Result of measuring the second qubit in the `|±⟩` basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A joint measurement result. Indices are frozen as `{0: +0, 1: +1, 2: −0, 3: −1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome(u8);

impl Outcome {
    pub const PLUS_ZERO: Outcome = Outcome(0);
    pub const PLUS_ONE: Outcome = Outcome(1);
    pub const MINUS_ZERO: Outcome = Outcome(2);
    pub const MINUS_ONE: Outcome = Outcome(3);

    pub const ALL: [Outcome; 4] = [
        Outcome::PLUS_ZERO,
        Outcome::PLUS_ONE,
        Outcome::MINUS_ZERO,
        Outcome::MINUS_ONE,
    ];

    pub fn from_index(i: usize) -> Option<Outcome> {
        (i < 4).then_some(Outcome(i as u8))
    }

    pub fn from_parts(sign: Sign, bit: u8) -> Outcome {
        let s = match sign {
            Sign::Plus => 0,
            Sign::Minus => 2,
        };
        Outcome(s | (bit & 1))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Second-qubit result.
    pub fn sign(self) -> Sign {
        if self.0 < 2 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Third-qubit result.
    pub fn bit(self) -> u8 {
        self.0 & 1
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign() {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{s}{}", self.bit())
    }
}

impl fmt::Debug for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Outcome({self})")
    }
}

/// Output of the universal cloner on `ψ ⊗ |00⟩`:
/// `√(2/3)(α|000⟩ + βe^{iφ}|111⟩) + √(1/6)(α(|011⟩+|101⟩) + βe^{iφ}(|010⟩+|100⟩))`.
pub fn uqcm_output(psi: &PureQubit) -> CVec8 {
    clone_amplitudes(&psi.amplitudes())
}

fn clone_amplitudes(v: &Ket2) -> CVec8 {
    let big = (2.0f64 / 3.0).sqrt();
    let small = (1.0f64 / 6.0).sqrt();
    let (a, b) = (v[0], v[1]);
    let mut out = CVec8::zero();
    out.set(0, 0, 0, a * big);
    out.set(1, 1, 1, b * big);
    out.set(0, 1, 1, a * small);
    out.set(1, 0, 1, a * small);
    out.set(0, 1, 0, b * small);
    out.set(1, 0, 0, b * small);
    out
}

/// Unnormalized signal amplitudes left after projecting qubits 2 and 3 onto
/// `|sign⟩ ⊗ |bit⟩`.
pub fn project_outcome(state: &CVec8, outcome: Outcome) -> Ket2 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let minus = outcome.sign() == Sign::Minus;
    let bit = outcome.bit() as usize;
    let mut out = [ZERO; 2];
    for (q1, slot) in out.iter_mut().enumerate() {
        for q2 in 0..2 {
            let coeff = if minus && q2 == 1 { -h } else { h };
            *slot += state.get(q1, q2, bit) * coeff;
        }
    }
    out
}

/// Operation elements obtained by projecting the clone register of the cloner
/// output, column by column on the basis inputs.
pub fn projected_elements() -> [CMat2; 4] {
    let col0 = clone_amplitudes(&[r(1.0), ZERO]);
    let col1 = clone_amplitudes(&[ZERO, r(1.0)]);
    Outcome::ALL.map(|o| {
        let (a, b) = (project_outcome(&col0, o), project_outcome(&col1, o));
        CMat2::new(a[0], b[0], a[1], b[1])
    })
}

/// The four estimation elements and their reversal unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationChannel {
    channel: KrausChannel,
    reversals: [CMat2; 4],
}

impl EstimationChannel {
    pub fn channel(&self) -> &KrausChannel {
        &self.channel
    }

    pub fn element(&self, o: Outcome) -> &CMat2 {
        &self.channel.elements()[o.index()]
    }

    /// `U_R^i`, the unitary polar factor of `E_i`.
    pub fn reversal(&self, o: Outcome) -> &CMat2 {
        &self.reversals[o.index()]
    }

    /// `U_R^i†`, the operator applied after outcome `i`.
    pub fn reversal_adjoint(&self, o: Outcome) -> CMat2 {
        self.reversals[o.index()].adjoint()
    }

    /// `U_R^i† E_i = √(E_i†E_i)`.
    pub fn reversed_element(&self, o: Outcome) -> CMat2 {
        self.reversal_adjoint(o) * *self.element(o)
    }
}

/// The estimation measurement as exact rational-over-surd matrices.
pub fn estimation_elements() -> &'static EstimationChannel {
    static CHANNEL: OnceLock<EstimationChannel> = OnceLock::new();
    CHANNEL.get_or_init(|| {
        let k = 1.0 / (2.0 * 3f64.sqrt());
        let elements = vec![
            CMat2::real(k, [[2.0, 1.0], [0.0, 1.0]]),
            CMat2::real(k, [[1.0, 0.0], [1.0, 2.0]]),
            CMat2::real(k, [[2.0, -1.0], [0.0, 1.0]]),
            CMat2::real(k, [[-1.0, 0.0], [1.0, -2.0]]),
        ];
        // Adjoints of the reversal unitaries, normalized so U†E is positive.
        let u = 1.0 / 10f64.sqrt();
        let adjoints = [
            CMat2::real(u, [[3.0, -1.0], [1.0, 3.0]]),
            CMat2::real(u, [[3.0, 1.0], [-1.0, 3.0]]),
            CMat2::real(u, [[3.0, 1.0], [-1.0, 3.0]]),
            CMat2::real(u, [[-3.0, 1.0], [-1.0, -3.0]]),
        ];
        EstimationChannel {
            channel: KrausChannel::new(elements).expect("estimation elements are complete"),
            reversals: adjoints.map(|a| a.adjoint()),
        }
    })
}

/// `⟨ψ|E_i†E_i|ψ⟩`
pub fn outcome_probability(psi: &PureQubit, o: Outcome) -> f64 {
    let w = estimation_elements().element(o).apply(&psi.amplitudes());
    w[0].norm_sqr() + w[1].norm_sqr()
}

/// `E_i|ψ⟩` renormalized, in canonical gauge.
pub fn post_measurement_state(psi: &PureQubit, o: Outcome) -> Result<PureQubit> {
    psi.evolve(estimation_elements().element(o))
}

/// Applies `U_R^i†`.
pub fn reverse(state: &PureQubit, o: Outcome) -> PureQubit {
    state
        .evolve(&estimation_elements().reversal_adjoint(o))
        .expect("a unitary cannot annihilate a normalized state")
}

/// Average fidelity with the input after cloning, measuring and reversing:
/// `Σ_i p_i |⟨ψ|U_R^i† ψ'_i⟩|²`.
pub fn reversed_fidelity(psi: &PureQubit) -> f64 {
    Outcome::ALL
        .iter()
        .map(|&o| {
            let p = outcome_probability(psi, o);
            if p == 0.0 {
                return 0.0;
            }
            let post = post_measurement_state(psi, o).expect("p > 0");
            p * psi.overlap(&reverse(&post, o))
        })
        .sum()
}
