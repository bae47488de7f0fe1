use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular coupling: delta-prime strength {c1} is at or too close to a decoupling value")]
    SingularCoupling { c1: f64 },

    #[error("composition singular: 1 + v1*w1 = {denominator} vanishes")]
    CompositionSingular { denominator: f64 },

    #[error("composition result is decoupled (|u1| = 1)")]
    DecoupledResult,

    #[error("wavenumber {modulus} is too close to zero")]
    ZeroWavenumber { modulus: f64 },

    #[error("exponent {exponent} exceeds the representable range")]
    Overflow { exponent: f64 },

    #[error("pole: {0}")]
    Pole(String),

    #[error("T11 vanishes: perfect reflection / spectral singularity")]
    PerfectReflection,

    #[error("no pole: {0}")]
    NoPole(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
