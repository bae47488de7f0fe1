//! One-dimensional Schrödinger operators with δ-δ′ point interactions.
//!
//! The crate covers the Kurasov matching matrices of single interactions and
//! their group structure, transfer and scattering matrices of two-point
//! systems, the bound state / resonance spectrum, the decoupling
//! configurations and the single-interaction heat trace.
//!
//! Everything is generic over a [`Real`] scalar; the `*64` aliases fix it to
//! `f64`.

pub mod error;
pub mod heat;
pub mod kurasov;
pub mod linalg;
pub mod scalar;
pub mod spectra;
pub mod transfer;
pub mod units;

pub use error::{Error, Result};
pub use heat::{heat_trace, HeatTraceSample};
pub use kurasov::{
    commutator_defect, compose, compose_params, exp_map, inverse, kurasov_matrix, log_map, to_boundary_unitary,
    trace, BorelParams, BoundaryUnitary, Component, CouplingKind, Couplings, KurasovMatrix,
};
pub use linalg::Mat2;
pub use scalar::Real;
pub use spectra::{
    double_decoupled_spectrum, find_zeros, mixed_decoupled_residual, mixed_limit_poles, single_point_pole,
    DecouplingCase, DecouplingTag, SolverConfig, SpectralKind, SpectralPoint, Window,
};
pub use transfer::{
    closed_form_two_point, composed_limit_scattering, piecewise_wave, scattering_from_transfer,
    single_point_scattering, transfer_chain, transfer_two_point, Incidence, PiecewiseWave, ScatteringData,
    TransferMatrix, TwoPointSystem,
};
pub use units::{DimensionlessParameters, PhysicalParameters, UnitSystem};

pub use num_complex::{Complex, Complex64};
pub use twofloat::TwoFloat;

pub type Couplings64 = Couplings<f64>;
pub type KurasovMatrix64 = KurasovMatrix<f64>;
pub type BorelParams64 = BorelParams<f64>;
pub type BoundaryUnitary64 = BoundaryUnitary<f64>;
pub type TwoPointSystem64 = TwoPointSystem<f64>;
pub type TransferMatrix64 = TransferMatrix<f64>;
pub type ScatteringData64 = ScatteringData<f64>;
pub type PiecewiseWave64 = PiecewiseWave<f64>;
pub type SpectralPoint64 = SpectralPoint<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type DecouplingCase64 = DecouplingCase<f64>;
pub type HeatTraceSample64 = HeatTraceSample<f64>;
pub type UnitSystem64 = UnitSystem<f64>;
