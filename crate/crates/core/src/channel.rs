//! Kraus channels and the bit/phase-flip error channel.

use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::linalg::{CMat2, MATRIX_TOL};
use crate::qubit::{DensityMatrix, PureQubit};

/// An ordered set of operation elements with `Σ E_i†E_i = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    elements: Vec<CMat2>,
}

impl KrausChannel {
    /// Validates completeness to [`MATRIX_TOL`].
    pub fn new(elements: Vec<CMat2>) -> Result<Self> {
        if elements.is_empty() {
            return Err(domain("a channel needs at least one operation element"));
        }
        let ch = Self { elements };
        let deviation = ch.completeness_deviation();
        if deviation.is_nan() || deviation > MATRIX_TOL {
            return Err(Error::Incomplete { deviation });
        }
        Ok(ch)
    }

    pub fn identity() -> Self {
        Self {
            elements: vec![CMat2::identity()],
        }
    }

    pub fn elements(&self) -> &[CMat2] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Largest entry of `|Σ E_i†E_i − I|`.
    pub fn completeness_deviation(&self) -> f64 {
        self.elements
            .iter()
            .fold(CMat2::zero(), |acc, e| acc + e.adjoint() * *e)
            .max_abs_diff(&CMat2::identity())
    }

    /// `ρ ↦ Σ E_i ρ E_i†`
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let out = self.elements.iter().fold(CMat2::zero(), |acc, e| {
            acc + *e * *rho.matrix() * e.adjoint()
        });
        DensityMatrix::new_unchecked(out)
    }

    /// Outcome probabilities `⟨ψ|E_i†E_i|ψ⟩`.
    pub fn probabilities(&self, psi: &PureQubit) -> Vec<f64> {
        let v = psi.amplitudes();
        self.elements
            .iter()
            .map(|e| {
                let w = e.apply(&v);
                w[0].norm_sqr() + w[1].norm_sqr()
            })
            .collect()
    }

    /// Draws element `i` with probability `⟨ψ|E_i†E_i|ψ⟩` and returns it with
    /// the renormalized state `E_i|ψ⟩`.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        psi: &PureQubit,
        rng: &mut R,
    ) -> Result<(usize, PureQubit)> {
        let probs = self.probabilities(psi);
        let i = sample_index(&probs, rng)?;
        Ok((i, psi.evolve(&self.elements[i])?))
    }
}

/// Samples an index from unnormalized weights.
pub(crate) fn sample_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> Result<usize> {
    let total: f64 = weights.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::NoOutcome);
    }
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = None;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last = Some(i);
        if u < acc {
            return Ok(i);
        }
    }
    // u landed in the rounding gap at the top of the cumulative sum.
    last.ok_or(Error::NoOutcome)
}

/// Pauli error acting on the signal during transmission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorType {
    /// No error.
    None,
    /// `σ_x`
    BitFlip,
    /// `σ_z`
    PhaseFlip,
    /// `σ_x σ_z`
    BitPhaseFlip,
}

impl ErrorType {
    pub const ALL: [ErrorType; 4] = [
        ErrorType::None,
        ErrorType::BitFlip,
        ErrorType::PhaseFlip,
        ErrorType::BitPhaseFlip,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            ErrorType::None => "ne",
            ErrorType::BitFlip => "bf",
            ErrorType::PhaseFlip => "pf",
            ErrorType::BitPhaseFlip => "bpf",
        }
    }

    pub fn operator(self) -> CMat2 {
        match self {
            ErrorType::None => CMat2::identity(),
            ErrorType::BitFlip => CMat2::pauli_x(),
            ErrorType::PhaseFlip => CMat2::pauli_z(),
            ErrorType::BitPhaseFlip => CMat2::pauli_x() * CMat2::pauli_z(),
        }
    }
}

/// Independent bit-flip and phase-flip probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRates {
    p_bit: f64,
    p_ph: f64,
}

impl ErrorRates {
    pub fn new(p_bit: f64, p_ph: f64) -> Result<Self> {
        for (name, p) in [("p_bit", p_bit), ("p_ph", p_ph)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(domain(format!("{name} = {p} is outside [0, 1]")));
            }
        }
        Ok(Self { p_bit, p_ph })
    }

    pub fn noiseless() -> Self {
        Self {
            p_bit: 0.0,
            p_ph: 0.0,
        }
    }

    pub fn p_bit(&self) -> f64 {
        self.p_bit
    }

    pub fn p_ph(&self) -> f64 {
        self.p_ph
    }

    pub fn probability(&self, e: ErrorType) -> f64 {
        let (b, p) = (self.p_bit, self.p_ph);
        match e {
            ErrorType::None => (1.0 - b) * (1.0 - p),
            ErrorType::BitFlip => b * (1.0 - p),
            ErrorType::PhaseFlip => p * (1.0 - b),
            ErrorType::BitPhaseFlip => b * p,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ErrorType {
        let w = ErrorType::ALL.map(|e| self.probability(e));
        // The four weights always sum to one.
        ErrorType::ALL[sample_index(&w, rng).expect("error probabilities sum to one")]
    }

    /// Kraus form `E_e = √P(e)·O_e` over [`ErrorType::ALL`].
    pub fn channel(&self) -> KrausChannel {
        KrausChannel {
            elements: ErrorType::ALL
                .iter()
                .map(|&e| e.operator() * self.probability(e).sqrt())
                .collect(),
        }
    }
}

/// The bit/phase-flip channel with the given rates.
pub fn error_channel(p_bit: f64, p_ph: f64) -> Result<KrausChannel> {
    Ok(ErrorRates::new(p_bit, p_ph)?.channel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, r};
    use crate::qubit::make_pure;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn some_rho() -> DensityMatrix {
        DensityMatrix::new(CMat2::new(r(0.7), c(0.1, -0.2), c(0.1, 0.2), r(0.3))).unwrap()
    }

    #[test]
    fn noiseless_channel_is_identity() {
        let rho = some_rho();
        let out = error_channel(0.0, 0.0).unwrap().apply(&rho);
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        let out = KrausChannel::identity().apply(&rho);
        assert_eq!(out, rho);
    }

    #[test]
    fn half_half_channel_fully_depolarizes() {
        let out = error_channel(0.5, 0.5).unwrap().apply(&some_rho());
        assert!(
            out.matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
                < 1e-15
        );
    }

    #[test]
    fn certain_bit_flip() {
        let ch = error_channel(1.0, 0.0).unwrap();
        let out = ch.apply(&DensityMatrix::pure(&PureQubit::zero()));
        assert!(out.matrix().max_abs_diff(&PureQubit::one().projector()) < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (i, s) = ch.sample(&PureQubit::zero(), &mut rng).unwrap();
            assert_eq!(i, 1);
            assert_eq!(s, PureQubit::one());
        }
    }

    #[test]
    fn rates_out_of_range() {
        assert!(matches!(error_channel(1.1, 0.0), Err(Error::Domain(_))));
        assert!(matches!(error_channel(0.0, -0.1), Err(Error::Domain(_))));
        assert!(error_channel(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn incomplete_elements_rejected() {
        let r = KrausChannel::new(vec![CMat2::identity() * 0.5]);
        assert!(matches!(r, Err(Error::Incomplete { .. })));
        assert!(KrausChannel::new(vec![]).is_err());
    }

    #[test]
    fn operator_order_is_a_global_phase() {
        let zx = CMat2::pauli_z() * CMat2::pauli_x();
        let xz = ErrorType::BitPhaseFlip.operator();
        assert!((zx + xz).max_abs() < 1e-15);
        let rho = some_rho();
        let a = xz * *rho.matrix() * xz.adjoint();
        let b = zx * *rho.matrix() * zx.adjoint();
        assert!(a.max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn identity_channel_sampling() {
        let psi = make_pure(0.4, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10 {
            let (i, s) = KrausChannel::identity().sample(&psi, &mut rng).unwrap();
            assert_eq!(i, 0);
            assert!(s.distance(&psi) < 1e-15);
        }
    }

    #[test]
    fn sample_index_with_zero_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(sample_index(&[0.0, 0.0, 1.0, 0.0], &mut rng).unwrap(), 2);
        assert!(matches!(
            sample_index(&[0.0, 0.0], &mut rng),
            Err(Error::NoOutcome)
        ));
    }
}
