//! Squeezed thermal states and two-qubit Werner states: simulation,
//! homodyne and polarization tomography, fidelity-based comparison and
//! Monte Carlo error analysis.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cv;
pub mod data;
pub mod dv;
pub mod error;
pub mod experiments;
pub mod homodyne;
pub mod io;
pub mod linalg;
pub mod mle;
pub mod optim;
pub mod resample;
pub mod rng;

pub use error::{Error, Result};
