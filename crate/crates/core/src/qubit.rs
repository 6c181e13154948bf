//! Single-qubit pure states, density matrices and fidelity.

use std::f64::consts::TAU;

use crate::error::{domain, Error, Result};
use crate::linalg::{r, CMat2, CVec8, Ket2, C64, MATRIX_TOL};

/// Amplitudes below this are treated as exactly zero when fixing the gauge.
const POLE_EPS: f64 = 1e-14;

/// Tolerance on the smallest eigenvalue of a density matrix.
pub const PSD_TOL: f64 = 1e-10;

/// A pure qubit `α|0⟩ + β e^{iφ}|1⟩` with `α, β ≥ 0` and `φ ∈ [0, 2π)`.
///
/// The global phase is fixed so that the first nonzero amplitude is real and
/// nonnegative. At the poles `φ` is undefined and stored as 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    alpha: f64,
    beta: f64,
    phi: f64,
}

fn wrap_phase(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

impl PureQubit {
    /// Builds the state with `α = √alpha2`, `β = √(1 − alpha2)`.
    pub fn new(alpha2: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha2) {
            return Err(domain(format!("alpha2 = {alpha2} is outside [0, 1]")));
        }
        if !phi.is_finite() {
            return Err(domain(format!("phi = {phi} is not finite")));
        }
        let alpha = alpha2.sqrt();
        let beta = (1.0 - alpha2).sqrt();
        let phi = if beta == 0.0 || alpha == 0.0 {
            0.0
        } else {
            wrap_phase(phi)
        };
        Ok(Self { alpha, beta, phi })
    }

    pub fn zero() -> Self {
        Self {
            alpha: 1.0,
            beta: 0.0,
            phi: 0.0,
        }
    }

    pub fn one() -> Self {
        Self {
            alpha: 0.0,
            beta: 1.0,
            phi: 0.0,
        }
    }

    /// Normalizes `v` and brings it into the canonical gauge.
    pub fn from_amplitudes(v: &Ket2) -> Result<Self> {
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(domain("cannot normalize a zero or non-finite vector"));
        }
        let alpha = v[0].norm() / norm;
        let beta = v[1].norm() / norm;
        let phi = if alpha <= POLE_EPS || beta <= POLE_EPS {
            0.0
        } else {
            wrap_phase(v[1].arg() - v[0].arg())
        };
        // Renormalize the real pair so α² + β² = 1 to rounding.
        let n = (alpha * alpha + beta * beta).sqrt();
        Ok(Self {
            alpha: alpha / n,
            beta: beta / n,
            phi,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha * self.alpha
    }

    pub fn amplitudes(&self) -> Ket2 {
        [r(self.alpha), C64::from_polar(self.beta, self.phi)]
    }

    /// `|⟨self|other⟩|²`
    pub fn overlap(&self, other: &PureQubit) -> f64 {
        let (a, b) = (self.amplitudes(), other.amplitudes());
        (a[0].conj() * b[0] + a[1].conj() * b[1]).norm_sqr()
    }

    /// Largest amplitude difference between the canonical vectors.
    pub fn distance(&self, other: &PureQubit) -> f64 {
        let (a, b) = (self.amplitudes(), other.amplitudes());
        (a[0] - b[0]).norm().max((a[1] - b[1]).norm())
    }

    /// Applies `m` and renormalizes. Fails only if `m` annihilates the state.
    pub fn evolve(&self, m: &CMat2) -> Result<PureQubit> {
        PureQubit::from_amplitudes(&m.apply(&self.amplitudes()))
    }

    pub fn projector(&self) -> CMat2 {
        let a = self.amplitudes();
        CMat2::outer(&a, &a)
    }
}

/// Convenience wrapper around [`PureQubit::new`].
pub fn make_pure(alpha2: f64, phi: f64) -> Result<PureQubit> {
    PureQubit::new(alpha2, phi)
}

/// A 2×2 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(CMat2);

impl DensityMatrix {
    pub fn new(m: CMat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidDensity("non-finite entries".into()));
        }
        if !m.is_hermitian(MATRIX_TOL) {
            return Err(Error::InvalidDensity("not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr - r(1.0)).norm() > MATRIX_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} != 1")));
        }
        let lo = m.min_hermitian_eigenvalue();
        if lo < -PSD_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {lo:e}")));
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: CMat2) -> Self {
        Self(m)
    }

    pub fn pure(psi: &PureQubit) -> Self {
        Self(psi.projector())
    }

    /// `I/2`
    pub fn maximally_mixed() -> Self {
        Self(CMat2::identity() * 0.5)
    }

    pub fn matrix(&self) -> &CMat2 {
        &self.0
    }
}

/// `⟨ψ|ρ|ψ⟩`
pub fn fidelity(psi: &PureQubit, rho: &DensityMatrix) -> f64 {
    let a = psi.amplitudes();
    rho.0.sandwich(&a, &a).re
}

/// Reduced density matrix of qubit `keep` (1, 2 or 3) of a three-qubit state.
pub fn reduce_qubit(state: &CVec8, keep: usize) -> Result<DensityMatrix> {
    if !(1..=3).contains(&keep) {
        return Err(domain(format!("qubit index {keep} is outside 1..=3")));
    }
    let mut m = CMat2::zero();
    let bits = |idx: usize| [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
    let amps = state.amps();
    for i in 0..8 {
        for j in 0..8 {
            let (bi, bj) = (bits(i), bits(j));
            let traced_equal = (0..3).filter(|&q| q != keep - 1).all(|q| bi[q] == bj[q]);
            if traced_equal {
                m[(bi[keep - 1], bj[keep - 1])] += amps[i] * amps[j].conj();
            }
        }
    }
    Ok(DensityMatrix(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use std::f64::consts::PI;

    #[test]
    fn make_pure_examples() {
        let s = make_pure(1.0, 2.3).unwrap();
        assert_eq!((s.alpha(), s.beta(), s.phi()), (1.0, 0.0, 0.0));

        let s = make_pure(0.5, 0.0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.alpha() - h).abs() < 1e-15 && (s.beta() - h).abs() < 1e-15);

        let s = make_pure(0.25, PI).unwrap();
        assert!((s.alpha() - 0.5).abs() < 1e-15);
        assert!((s.beta() - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((s.phi() - PI).abs() < 1e-15);

        assert!((make_pure(0.3, -PI / 2.0).unwrap().phi() - 1.5 * PI).abs() < 1e-15);
        assert_eq!(make_pure(0.0, 1.0).unwrap().phi(), 0.0);
    }

    #[test]
    fn make_pure_rejects_out_of_range() {
        assert!(matches!(make_pure(1.5, 0.0), Err(Error::Domain(_))));
        assert!(matches!(make_pure(-0.1, 0.0), Err(Error::Domain(_))));
        assert!(matches!(make_pure(f64::NAN, 0.0), Err(Error::Domain(_))));
        assert!(make_pure(0.5, f64::INFINITY).is_err());
    }

    #[test]
    fn gauge_fixing_removes_global_phase() {
        let psi = make_pure(0.3, 1.1).unwrap();
        let g = C64::from_polar(1.0, 2.7);
        let v = psi.amplitudes();
        let rotated = [v[0] * g * 3.0, v[1] * g * 3.0];
        let back = PureQubit::from_amplitudes(&rotated).unwrap();
        assert!(back.distance(&psi) < 1e-14);

        let one = PureQubit::from_amplitudes(&[r(0.0), c(0.0, -2.0)]).unwrap();
        assert_eq!(one, PureQubit::one());
        assert!(PureQubit::from_amplitudes(&[r(0.0), r(0.0)]).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let psi = make_pure(0.37, 4.0).unwrap();
        assert!((fidelity(&psi, &DensityMatrix::pure(&psi)) - 1.0).abs() < 1e-12);
        assert!((fidelity(&psi, &DensityMatrix::maximally_mixed()) - 0.5).abs() < 1e-12);
        let zero = PureQubit::zero();
        assert_eq!(
            fidelity(&zero, &DensityMatrix::pure(&PureQubit::one())),
            0.0
        );
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(CMat2::identity() * 0.5).is_ok());
        assert!(DensityMatrix::new(CMat2::identity()).is_err());
        assert!(DensityMatrix::new(CMat2::diag(r(1.5), r(-0.5))).is_err());
        assert!(DensityMatrix::new(CMat2::new(r(0.5), c(0.0, 0.1), c(0.0, 0.1), r(0.5))).is_err());
    }

    #[test]
    fn reduce_product_and_ghz() {
        let psi = make_pure(0.2, 0.9).unwrap();
        let zero = PureQubit::zero().amplitudes();
        let prod = CVec8::product(&psi.amplitudes(), &zero, &zero);
        let rho = reduce_qubit(&prod, 1).unwrap();
        assert!(rho.matrix().max_abs_diff(&psi.projector()) < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut ghz = CVec8::zero();
        ghz.set(0, 0, 0, r(h));
        ghz.set(1, 1, 1, r(h));
        let rho = reduce_qubit(&ghz, 2).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(&DensityMatrix::maximally_mixed().0)
                < 1e-15
        );

        assert!(reduce_qubit(&ghz, 0).is_err());
        assert!(reduce_qubit(&ghz, 4).is_err());
    }
}
