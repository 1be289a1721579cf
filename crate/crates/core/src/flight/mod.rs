//! Random-flight integrals
//! `J_m(r; r_1..r_n) = int_0^inf k^2 j_m(kr) prod_{q<n}[j_m(k r_q)/(k r_q)^m] j_m(k r_n) dk`
//! by three independent routes, plus a Monte Carlo oracle.

mod config;
mod density;
mod direct;
mod monte_carlo;
mod recursive;
mod series;
mod two_step;

pub use config::{support_interval, FlightConfig, SupportInterval};
pub use density::{density_from_j, density_normalization, density_prefactor, DensityNormalization, FlightDensity};
pub use direct::{flight_integral_direct, single_step_delta, DeltaTerm};
pub use monte_carlo::{ks_distance, sample_distances, sample_flight, McHistogram};
pub use recursive::{flight_recursive, MAX_RECURSIVE_STEPS};
pub use series::{flight_series, flight_series_with_zeros};
pub use two_step::flight_two_step;

pub(crate) use config::{closure_range, signed_sums};
pub(crate) use density::flight_value;
