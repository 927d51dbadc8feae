//! Scalar special functions used by the closed-form rate expressions.
//!
//! All functions are pure and thread-safe.

mod expint;
mod gamma;
mod grid;
mod hyp2f1;

pub use expint::{expint_en, expint_en_scaled, scaled_expint_sum};
pub use gamma::{beta_int, binomial, gamma_int, ln_gamma_int};
pub use grid::{EvalGrid, GridDeviation};
pub use hyp2f1::{hyp2f1_1b_c, hyp2f1_appendix_closed_form, AppendixForm};

pub(crate) use hyp2f1::{appendix_split, hyp2f1_1b_c_split};
