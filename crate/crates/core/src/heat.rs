//! Closed-form heat trace of a single δ-δ′ interaction.
//!
//! ```text
//! h(t) = exp(t v0² / (4(1+v1²)²)) · (2iπ erfc(√t v0 / (2(1+v1²))) + θ(-v0) - 4iπ)
//! ```
//!
//! The expression is evaluated exactly as written, imaginary constants
//! included, so the result is complex. Only `v1²` enters, which keeps the
//! formula finite at the decoupling values `v1 = ±1`.

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::kurasov::Couplings;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeatTraceSample<T> {
    pub t: T,
    pub value: Complex<T>,
}

/// Heaviside step with `θ(0) = 1/2`.
pub fn heaviside<T: Real>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else if x < T::zero() {
        T::zero()
    } else {
        T::lit(0.5)
    }
}

/// `v0² / (4(1+v1²)²)`, the exponential growth rate in `t`.
pub fn growth_rate<T: Real>(c: &Couplings<T>) -> T {
    let s = T::one() + c.c1() * c.c1();
    c.c0() * c.c0() / (T::lit(4.0) * s * s)
}

/// `√t v0 / (2(1+v1²))`.
pub fn erfc_argument<T: Real>(c: &Couplings<T>, t: T) -> T {
    t.sqrt() * c.c0() / (T::lit(2.0) * (T::one() + c.c1() * c.c1()))
}

pub fn heat_trace<T: Real>(c: &Couplings<T>, t: T) -> Result<Complex<T>> {
    if !(t.is_finite() && t > T::zero()) {
        return Err(domain(format!("heat trace needs t > 0, got {}", t.as_f64())));
    }
    let two_pi = T::lit(2.0) * T::PI();
    let bracket = Complex::new(
        heaviside(-c.c0()),
        two_pi * erfc_argument(c, t).erfc() - T::lit(2.0) * two_pi,
    );
    Ok(bracket * (t * growth_rate(c)).exp())
}

pub fn heat_sample<T: Real>(c: &Couplings<T>, t: T) -> Result<HeatTraceSample<T>> {
    Ok(HeatTraceSample {
        t,
        value: heat_trace(c, t)?,
    })
}
