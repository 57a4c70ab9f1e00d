//! Numerical laboratory for the scalar electric Aharonov-Bohm effect.
//!
//! A quantum system parked inside a Faraday shell held at a sinusoidal
//! potential V(t) = V0 cos(Omega t) sees no electric field, yet every energy
//! level splits into a comb of sidebands E - n hbar Omega weighted by
//! (-1)^n J_n(alpha) with modulation depth alpha = e V0 / (hbar Omega). This
//! crate computes that structure analytically, cross-checks it against a
//! direct integration of the time-dependent Schroedinger equation, and
//! synthesizes the observables: absorption sidebands, AC-Stark weighting
//! coefficients, and the EIT transparency window of the Lambda scheme built
//! on the sideband image state.
//!
//! Modules:
//! - [`specfun`]: Bessel functions J_n accurate at large order and argument.
//! - [`floquet`]: drive parameters, AB phase, sideband spectra, splitting.
//! - [`acstark`]: AC-Stark weighting coefficients and the beta = 0 reduction.
//! - [`tdse`]: Schroedinger integrator, sideband extraction, gauge checks.
//! - [`spectra`]: transition lines and Lorentzian absorption profiles.
//! - [`eit`]: steady-state Lambda-system transparency window.
//! - [`cli`]: JSON-configured runner behind the `abshell` binary.

pub mod acstark;
pub mod cli;
pub mod eit;
pub mod error;
pub mod floquet;
pub mod specfun;
pub mod spectra;
pub mod tdse;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
