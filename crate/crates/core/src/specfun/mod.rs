//! Special functions: spherical Bessel functions, their zeros, associated
//! Legendre functions and the identities linking them.

mod bessel;
mod identities;
mod legendre;
mod zeros;

pub use bessel::{spherical_bessel_j, spherical_bessel_j_scaled, MAX_ORDER};
pub use identities::{
    addition_theorem_lhs_rhs, addition_theorem_with, contraction_identity_check, IdentityResidual,
};
pub use legendre::{assoc_legendre, assoc_legendre_with, LegendreConvention, ACTIVE_CONVENTION};
pub use zeros::{bessel_zeros, ZeroTable, ZERO_RESIDUAL};

pub(crate) use bessel::{sph_j, sph_j_scaled};
pub(crate) use legendre::legendre_unchecked;
