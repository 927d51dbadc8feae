//! Secrecy rates of artificial-noise beamforming over Rayleigh fading.
//!
//! [`secrecy`] holds the closed-form rates, [`power_opt`] the power-split
//! optimization and critical-SNR solvers, and [`mc`] a Monte Carlo channel
//! simulator used to check them. [`specfun`] provides the exponential
//! integrals and hypergeometric functions everything else is built on.

// `!(x > 0.0)` is used on purpose so NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod mc;
pub mod power_opt;
pub mod quadrature;
pub mod search;
pub mod secrecy;
pub mod specfun;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use exec::Execution;
pub use secrecy::{CsiError, PowerSplit, RateReport, RateSource, SystemConfig};
