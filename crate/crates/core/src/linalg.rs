//! Exact small-dimension complex linear algebra.
//!
//! Everything here is closed form: the only decomposition the protocol needs
//! is the polar decomposition of an invertible 2×2 matrix, which follows from
//! the Cayley–Hamilton square root of the positive matrix `E†E`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Amplitudes of a single qubit, `[⟨0|ψ⟩, ⟨1|ψ⟩]`.
pub type Ket2 = [C64; 2];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Tolerance used for unitarity, Hermiticity and reconstruction checks.
pub const MATRIX_TOL: f64 = 1e-12;

/// Relative determinant threshold below which a matrix counts as singular.
const SINGULAR_REL: f64 = 1e-14;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// A 2×2 complex matrix stored row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct CMat2 {
    m: [[C64; 2]; 2],
}

impl fmt::Debug for CMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

impl CMat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self {
            m: [[a, b], [c, d]],
        }
    }

    /// Matrix with real entries, scaled by `scale`.
    pub fn real(scale: f64, entries: [[f64; 2]; 2]) -> Self {
        Self::new(
            r(scale * entries[0][0]),
            r(scale * entries[0][1]),
            r(scale * entries[1][0]),
            r(scale * entries[1][1]),
        )
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn pauli_x() -> Self {
        Self::new(ZERO, ONE, ONE, ZERO)
    }

    pub const fn pauli_z() -> Self {
        Self::new(ONE, ZERO, ZERO, C64::new(-1.0, 0.0))
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Self::new(a, ZERO, ZERO, d)
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &Ket2, v: &Ket2) -> Self {
        Self::new(
            u[0] * v[0].conj(),
            u[0] * v[1].conj(),
            u[1] * v[0].conj(),
            u[1] * v[1].conj(),
        )
    }

    pub fn entries(&self) -> [[C64; 2]; 2] {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let m = &self.m;
        Self::new(f(m[0][0]), f(m[0][1]), f(m[1][0]), f(m[1][1]))
    }

    pub fn apply(&self, v: &Ket2) -> Ket2 {
        let m = &self.m;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// `⟨u|M|v⟩`
    pub fn sandwich(&self, u: &Ket2, v: &Ket2) -> C64 {
        let mv = self.apply(v);
        u[0].conj() * mv[0] + u[1].conj() * mv[1]
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.adjoint() * *self).max_abs_diff(&Self::identity()) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Hermitian with both eigenvalues ≥ −tol.
    pub fn is_psd(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.min_hermitian_eigenvalue() >= -tol
    }

    /// Smaller eigenvalue of the Hermitian part.
    pub fn min_hermitian_eigenvalue(&self) -> f64 {
        let (lo, _) = self.hermitian_eigenvalues();
        lo
    }

    /// Eigenvalues `(λ_min, λ_max)` of the Hermitian part of the matrix.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let b = (self.m[0][1] + self.m[1][0].conj()) * 0.5;
        let mean = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        (mean - rad, mean + rad)
    }

    /// Frobenius norm, `(Tr[M†M])^{1/2}`.
    pub fn frobenius_norm(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<(usize, usize)> for CMat2 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.m[i][j]
    }
}

impl IndexMut<(usize, usize)> for CMat2 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.m[i][j]
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, rhs: CMat2) -> CMat2 {
        let (a, b) = (&self.m, &rhs.m);
        CMat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<f64> for CMat2 {
    type Output = CMat2;
    fn mul(self, s: f64) -> CMat2 {
        self.map(|z| z * s)
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, rhs: CMat2) -> CMat2 {
        let (a, b) = (&self.m, &rhs.m);
        CMat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for CMat2 {
    type Output = CMat2;
    fn sub(self, rhs: CMat2) -> CMat2 {
        self + (-rhs)
    }
}

impl Neg for CMat2 {
    type Output = CMat2;
    fn neg(self) -> CMat2 {
        self.map(|z| -z)
    }
}

/// Hilbert–Schmidt distance `(Tr[(a−b)†(a−b)])^{1/2}`.
pub fn hs_distance(a: &CMat2, b: &CMat2) -> f64 {
    (*a - *b).frobenius_norm()
}

/// Principal square root of a 2×2 Hermitian PSD matrix.
///
/// For PSD `M` with `s = √det M` and `t = √(Tr M + 2s)`, `√M = (M + sI)/t`.
/// Tiny negative determinants from rounding are clamped to zero.
pub fn sqrt_psd(m: &CMat2) -> CMat2 {
    let s = m.det().re.max(0.0).sqrt();
    let t2 = m.trace().re + 2.0 * s;
    if t2 <= 0.0 {
        return CMat2::zero();
    }
    (*m + CMat2::identity() * s) * (1.0 / t2.sqrt())
}

/// Polar decomposition `e = u·p` with `u` unitary and `p = √(e†e)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub unitary: CMat2,
    pub positive: CMat2,
}

pub fn polar_decompose(e: &CMat2) -> Result<Polar> {
    let scale = e.frobenius_norm();
    let det = e.det();
    if !e.is_finite() || scale == 0.0 || det.norm() <= SINGULAR_REL * scale * scale {
        return Err(Error::Singular { det: det.norm() });
    }
    let positive = sqrt_psd(&(e.adjoint() * *e));
    // det p = |det e|, so p⁻¹ = adj(p) / |det e|.
    let p = positive.entries();
    let adj = CMat2::new(p[1][1], -p[0][1], -p[1][0], p[0][0]);
    let unitary = *e * adj * (1.0 / det.norm());
    Ok(Polar { unitary, positive })
}

/// The unitary closest to `e` in Hilbert–Schmidt distance: the unitary polar
/// factor, equivalently `VW` for the singular value decomposition `e = V D W`.
pub fn nearest_unitary(e: &CMat2) -> Result<CMat2> {
    polar_decompose(e).map(|p| p.unitary)
}

/// Three-qubit state vector with index `4·q1 + 2·q2 + q3`; qubit 1 carries the signal.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CVec8 {
    amps: [C64; 8],
}

impl CVec8 {
    pub fn new(amps: [C64; 8]) -> Self {
        Self { amps }
    }

    pub fn zero() -> Self {
        Self { amps: [ZERO; 8] }
    }

    pub fn index(q1: usize, q2: usize, q3: usize) -> usize {
        4 * q1 + 2 * q2 + q3
    }

    pub fn amps(&self) -> &[C64; 8] {
        &self.amps
    }

    pub fn get(&self, q1: usize, q2: usize, q3: usize) -> C64 {
        self.amps[Self::index(q1, q2, q3)]
    }

    pub fn set(&mut self, q1: usize, q2: usize, q3: usize, v: C64) {
        self.amps[Self::index(q1, q2, q3)] = v;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `|a⟩ ⊗ |b⟩ ⊗ |c⟩`
    pub fn product(a: &Ket2, b: &Ket2, c: &Ket2) -> Self {
        let mut out = Self::zero();
        for (q1, x) in a.iter().enumerate() {
            for (q2, y) in b.iter().enumerate() {
                for (q3, z) in c.iter().enumerate() {
                    out.set(q1, q2, q3, x * y * z);
                }
            }
        }
        out
    }
}
