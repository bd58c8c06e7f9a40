//! Spectral toolkit for the PT-symmetric infinite square well carrying a
//! piecewise-constant imaginary barrier `V(x) = ±i g` on `0 < ±x < l`.
//!
//! Units are `ħ = 2m = 1`, so the Hamiltonian is `-d²/dx² + V(x)` on `(-L, L)`
//! with Dirichlet walls.
//!
//! The crate is organised bottom-up:
//!
//! - [`well`]: the configuration, regions and the complex potential.
//! - [`secular`]: the trigonometric secular residual in `(s, t)`, its roots on
//!   the hyperbola `2st = g`, and zero-level curve tracing.
//! - [`spectrum`]: energy levels, high-level asymptotics and the critical
//!   coupling where the two lowest levels coalesce.
//! - [`wavefunction`]: closed-form piecewise eigenfunctions.
//! - [`susy`]: superpotential, partner potential and partner eigenfunctions.
//! - [`oracle`]: an independent finite-difference eigensolver used to check
//!   everything above.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod oracle;
pub mod roots;
pub mod secular;
pub mod spectrum;
pub mod susy;
pub mod wavefunction;
pub mod well;

pub use error::{Error, Result};
pub use oracle::{fd_spectrum, fd_spectrum_extrapolated, oracle_reality_census, OracleSpectrum, RealityCensus};
pub use secular::{find_roots_on_hyperbola, secular_residual, trace_semi_ovals, OvalPoint};
pub use spectrum::{critical_coupling, energies, gc_sweep, CriticalCoupling, EnergyLevels};
pub use susy::{susy_parameters, verify_susy, SusyParameters, SusyVerificationReport};
pub use wavefunction::{coefficients, WaveCoefficients};
pub use well::{classify_region, potential_value, MatchingPoint, Region, SpectralRoot, WellConfig};

pub use num_complex::Complex64;
