//! Nonlinear-interference power spectral density for dual-polarisation 4D
//! modulation formats over multi-span fibre links.
//!
//! The crate is organised bottom-up:
//!
//! * [`formats`] loads constellations and turns them into moments and the
//!   fourteen correlation coefficients of the model.
//! * [`link`] holds the fibre parameters, the pulse spectrum and the
//!   four-wave-mixing kernel.
//! * [`quadrature`] evaluates the eleven frequency integrals.
//! * [`model`] assembles the PSD and the matched-filter NLI power.
//! * [`oracle`] is an exact and Monte-Carlo implementation of the discrete
//!   periodic-signal model used to check all of the above.
//! * [`cli`] is the command-line front end.

// Range checks are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod formats;
pub mod link;
pub mod model;
pub mod oracle;
pub mod quadrature;

pub use error::{Error, Result};
pub use num_complex::Complex64;
