//! Random-flight integrals, Fourier-Bessel kernels and the spherical Bessel
//! machinery behind them.

pub mod error;
pub mod extended;
pub mod flight;
pub mod fourier_bessel;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
