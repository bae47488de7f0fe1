//! Conversion between physical and dimensionless parameters.
//!
//! Lengths scale with the reduced Compton length `hbar/(m c)`, energies with
//! `m c^2 / 2`. A delta strength `a` becomes `2a/(hbar c)` and a delta-prime
//! strength `b` becomes `m b / hbar^2`.

use crate::error::{domain, Result};
use crate::scalar::Real;

/// `hbar`, `c` and the particle mass. Defaults to natural units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitSystem<T> {
    pub hbar: T,
    pub c: T,
    pub mass: T,
}

impl<T: Real> Default for UnitSystem<T> {
    fn default() -> Self {
        Self {
            hbar: T::one(),
            c: T::one(),
            mass: T::one(),
        }
    }
}

impl<T: Real> UnitSystem<T> {
    pub fn new(hbar: T, c: T, mass: T) -> Result<Self> {
        let units = Self { hbar, c, mass };
        units.validate()?;
        Ok(units)
    }

    fn validate(&self) -> Result<()> {
        for (name, value) in [("hbar", self.hbar), ("c", self.c), ("mass", self.mass)] {
            if !value.is_finite() || value <= T::zero() {
                return Err(domain(format!(
                    "{name} must be finite and positive, got {}",
                    value.as_f64()
                )));
            }
        }
        Ok(())
    }
}

/// Interaction strengths, position and energy in physical units.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhysicalParameters<T> {
    /// `a`, energy times length.
    pub delta_strength: T,
    /// `b`, energy times length squared.
    pub delta_prime_strength: T,
    /// `d`, length.
    pub position: T,
    /// `E`, energy.
    pub energy: T,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DimensionlessParameters<T> {
    pub w0: T,
    pub w1: T,
    pub q: T,
    pub epsilon: T,
}

pub fn to_dimensionless<T: Real>(
    p: &PhysicalParameters<T>,
    units: &UnitSystem<T>,
) -> Result<DimensionlessParameters<T>> {
    units.validate()?;
    let fields = [
        p.delta_strength,
        p.delta_prime_strength,
        p.position,
        p.energy,
    ];
    if fields.iter().any(|x| !x.is_finite()) {
        return Err(domain("physical parameters must be finite"));
    }
    let UnitSystem { hbar, c, mass } = *units;
    let two = T::lit(2.0);
    Ok(DimensionlessParameters {
        w0: two * p.delta_strength / (hbar * c),
        w1: mass * p.delta_prime_strength / (hbar * hbar),
        q: p.position * mass * c / hbar,
        epsilon: two * p.energy / (mass * c * c),
    })
}

pub fn from_dimensionless<T: Real>(
    d: &DimensionlessParameters<T>,
    units: &UnitSystem<T>,
) -> Result<PhysicalParameters<T>> {
    units.validate()?;
    if [d.w0, d.w1, d.q, d.epsilon].iter().any(|x| !x.is_finite()) {
        return Err(domain("dimensionless parameters must be finite"));
    }
    let UnitSystem { hbar, c, mass } = *units;
    let two = T::lit(2.0);
    Ok(PhysicalParameters {
        delta_strength: d.w0 * hbar * c / two,
        delta_prime_strength: d.w1 * hbar * hbar / mass,
        position: d.q * hbar / (mass * c),
        energy: d.epsilon * mass * c * c / two,
    })
}
