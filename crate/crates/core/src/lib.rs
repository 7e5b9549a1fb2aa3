//! Solvers for green bin packing (GBP) and its energy-constrained variant (CGBP).
//!
//! Every bin has unit capacity and a green space `[0, G]`. A bin with load `x`
//! consumes `max{0, beta * (x - G)}` energy. GBP minimizes bins plus energy;
//! CGBP minimizes bins subject to total energy at most `U`.
//!
//! All quantities are exact rationals. The crate provides:
//!
//! * [`model`]: instances, packings, energy and evaluation.
//! * [`oracle`]: exact branch-and-bound solvers for small instances.
//! * [`aptas`]: the asymptotic approximation scheme.
//! * [`approx32`]: the absolute 3/2-approximation.
//! * [`baselines`]: Next Fit, First Fit, FFD and threshold Next Fit.

// Errors carry exact rationals for diagnostics; they are rare, so their size does not matter.
#![allow(clippy::result_large_err)]

pub mod approx32;
pub mod aptas;
pub mod baselines;
mod budget;
mod error;
mod frontier;
pub mod model;
pub mod numeric;
pub mod oracle;

pub use budget::SearchBudget;
pub use error::{Error, Result};
pub use frontier::{Candidate, Frontier};
pub use model::{
    energy, evaluate, BinClass, Epsilon, Instance, ItemClasses, Packing, PackingStats, Problem,
};
pub use numeric::Rational;
