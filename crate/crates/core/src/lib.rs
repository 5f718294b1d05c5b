//! Exact scattering by the parabolic odd potential `V(x) = x²` for x < 0,
//! `-x²` for x > 0.
//!
//! Everything is generic over the real scalar (`f32` or `f64`); the aliases
//! below fix it to `f64`.

pub mod error;
pub mod grid;
pub mod poles;
pub mod scalar;
pub mod scattering;
pub mod solutions;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

pub type SeriesEval64 = specfun::SeriesEval<f64>;
pub type ConnectionFactors64 = scattering::ConnectionFactors<f64>;
pub type ScatterPoint64 = scattering::ScatterPoint<f64>;
pub type PhysCoeffs64 = solutions::PhysCoeffs<f64>;
pub type WaveSample64 = solutions::WaveSample<f64>;
pub type PhysicalSolution64 = solutions::PhysicalSolution<f64>;
pub type TaylorCoeff64 = poles::TaylorCoeff<f64>;
pub type PoleRecord64 = poles::PoleRecord<f64>;
pub type PoleSearch64 = poles::PoleSearch<f64>;
