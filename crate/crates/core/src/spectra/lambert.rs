//! The spectral condition in the reduced variable `z = 2kq`.
//!
//! With `σ = q v0/(1+v1²)`, `τ = q w0/(1+w1²)`, `v = v1/(1+v1²)` and
//! `w = w1/(1+w1²)`, the zeros of `Δ` away from `k = 0` solve the generalized
//! Lambert equation
//!
//! ```text
//! e^{iz} + (z + iσ)(z + iτ) / ((σ + 2ivz)(τ - 2iwz)) = 0.
//! ```

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::transfer::TwoPointSystem;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedParams<T> {
    pub sigma: T,
    pub tau: T,
    pub v: T,
    pub w: T,
}

pub fn reduced_params<T: Real>(s: &TwoPointSystem<T>) -> Result<ReducedParams<T>> {
    s.require_regular()?;
    let q = s.q();
    if q <= T::zero() {
        return Err(domain("reduced variables need q > 0"));
    }
    let one = T::one();
    let (v0, v1) = (s.v.c0(), s.v.c1());
    let (w0, w1) = (s.w.c0(), s.w.c1());
    Ok(ReducedParams {
        sigma: q * v0 / (one + v1 * v1),
        tau: q * w0 / (one + w1 * w1),
        v: v1 / (one + v1 * v1),
        w: w1 / (one + w1 * w1),
    })
}

pub fn lambert_residual<T: Real>(z: Complex<T>, r: &ReducedParams<T>) -> Result<Complex<T>> {
    let i = Complex::<T>::i();
    let two = T::lit(2.0);
    let den = (i * z * (two * r.v) + r.sigma) * (-(i * z * (two * r.w)) + r.tau);
    if den.norm() == T::zero() {
        return Err(Error::Pole(format!(
            "lambert denominator vanishes at z = {}{:+}i",
            z.re.as_f64(),
            z.im.as_f64()
        )));
    }
    let num = (z + i * r.sigma) * (z + i * r.tau);
    Ok((i * z).exp() + num / den)
}

/// Real and imaginary parts of `e^{z_i} [e^{iz}(σ+2ivz)(τ-2iwz) + (z+iσ)(z+iτ)]`,
/// written out in `z_r` and `z_i`.
pub fn real_imag_residuals<T: Real>(zr: T, zi: T, r: &ReducedParams<T>) -> (T, T) {
    let ReducedParams { sigma, tau, v, w } = *r;
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let p = four * v * w * zr * zr - (two * v * zi - sigma) * (two * w * zi + tau);
    let qc = two * zr * (tau * v + four * v * w * zi - sigma * w);
    let (sin, cos) = zr.sin_cos();
    let grow = zi.exp();
    let eq1 = p * cos - qc * sin - ((zi + sigma) * (zi + tau) - zr * zr) * grow;
    let eq2 = qc * cos + p * sin + zr * (two * zi + sigma + tau) * grow;
    (eq1, eq2)
}

/// Modulus condition `e^{2 z_i} = |σ+2ivz|² |τ-2iwz|² / (|z+iσ|² |z+iτ|²)`.
pub fn compatibility_residual<T: Real>(zr: T, zi: T, r: &ReducedParams<T>) -> Result<T> {
    let ReducedParams { sigma, tau, v, w } = *r;
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let zr2 = zr * zr;
    let num = (four * v * v * zr2 + (two * v * zi - sigma).powi(2))
        * (four * w * w * zr2 + (two * w * zi + tau).powi(2));
    let den = (zr2 + (zi + sigma).powi(2)) * (zr2 + (zi + tau).powi(2));
    if den == T::zero() {
        return Err(Error::Pole(format!(
            "compatibility denominator vanishes at z = {}{:+}i",
            zr.as_f64(),
            zi.as_f64()
        )));
    }
    Ok((two * zi).exp() - num / den)
}
