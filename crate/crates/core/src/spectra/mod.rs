//! Bound states, antibound states and resonances of two-point systems.
//!
//! All of them are zeros of the spectral determinant
//!
//! ```text
//! Δ(k) = e^{2ikq} (v0 + 4ik v1)(w0 - 4ik w1) + (2k(1+v1²) + i v0)(2k(1+w1²) + i w0)
//! ```
//!
//! which is the numerator of `T11`. The decoupling configurations, where one or
//! both `c1 = ±1`, live in [`decoupled`].

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kurasov::Couplings;
use crate::scalar::Real;
use crate::transfer::{delta_factors, TwoPointSystem};

pub mod decoupled;
pub mod lambert;
mod solver;

pub use decoupled::{
    double_decoupled_spectrum, find_mixed_zeros, mixed_decoupled_residual, mixed_limit_poles,
    mixed_limit_residual, refine_mixed_zero, DecouplingCase, DecouplingTag,
};
pub use lambert::{
    compatibility_residual, lambert_residual, real_imag_residuals, reduced_params, ReducedParams,
};
pub use solver::{classify, find_zeros, find_zeros_with_diagnostics, Plane, SolverConfig, Window, ZeroSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectralKind {
    Bound,
    Antibound,
    Resonance,
    /// Real level of an interval closed off by two opaque walls.
    Confined,
    Unclassified,
}

impl SpectralKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectralKind::Bound => "bound",
            SpectralKind::Antibound => "antibound",
            SpectralKind::Resonance => "resonance",
            SpectralKind::Confined => "confined",
            SpectralKind::Unclassified => "unclassified",
        }
    }
}

impl std::fmt::Display for SpectralKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralPoint<T> {
    pub k: Complex<T>,
    /// `2kq`, absent for `q = 0` quantities such as single-point poles.
    pub z: Option<Complex<T>>,
    pub kind: SpectralKind,
    /// Relative residual of the equation the point solves.
    pub residual: T,
    /// Mirror zero `-conj(k)` actually found for a resonance.
    pub partner: Option<Complex<T>>,
}

impl<T: Real> SpectralPoint<T> {
    pub(crate) fn exact(k: Complex<T>, kind: SpectralKind) -> Self {
        Self {
            k,
            z: None,
            kind,
            residual: T::zero(),
            partner: None,
        }
    }
}

fn raw<T: Real>(c: &Couplings<T>) -> (T, T) {
    (c.c0(), c.c1())
}

pub fn delta_determinant<T: Real>(s: &TwoPointSystem<T>, k: Complex<T>) -> Result<Complex<T>> {
    s.require_regular()?;
    let f = delta_factors(raw(&s.v), raw(&s.w), s.q(), k);
    Ok(f.e * f.a * f.b + f.c * f.d)
}

/// `dΔ/dk` in closed form.
pub fn delta_determinant_derivative<T: Real>(s: &TwoPointSystem<T>, k: Complex<T>) -> Result<Complex<T>> {
    s.require_regular()?;
    Ok(delta_with_derivative(s, k).1)
}

/// `(Δ, Δ', |e A B| + |C D|)`; the last entry is the natural size of `Δ`.
pub(crate) fn delta_with_derivative<T: Real>(s: &TwoPointSystem<T>, k: Complex<T>) -> (Complex<T>, Complex<T>, T) {
    let (v0, v1) = raw(&s.v);
    let (w0, w1) = raw(&s.w);
    let q = s.q();
    let f = delta_factors((v0, v1), (w0, w1), q, k);
    let i = Complex::<T>::i();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let ab = f.a * f.b;
    let value = f.e * ab + f.c * f.d;
    let d_ab = i * (four * v1) * f.b - i * (four * w1) * f.a;
    let derivative = f.e * (i * (two * q) * ab + d_ab)
        + f.d * (two * (T::one() + v1 * v1))
        + f.c * (two * (T::one() + w1 * w1));
    let scale = (f.e * ab).norm() + (f.c * f.d).norm();
    (value, derivative, scale)
}

/// Pole of the single-interaction transmission, `k = -i c0 / (2(1 + c1²))`.
pub fn single_point_pole<T: Real>(c: &Couplings<T>) -> Result<SpectralPoint<T>> {
    c.require_regular()?;
    if c.c0() == T::zero() {
        return Err(Error::NoPole("a pure delta-prime interaction has no pole".into()));
    }
    let k = Complex::new(T::zero(), -c.c0() / (T::lit(2.0) * (T::one() + c.c1() * c.c1())));
    let kind = if c.c0() < T::zero() {
        SpectralKind::Bound
    } else {
        SpectralKind::Antibound
    };
    Ok(SpectralPoint::exact(k, kind))
}
