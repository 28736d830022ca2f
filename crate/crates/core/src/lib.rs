//! Exact generating series for Quot schemes of curves and surfaces.
//!
//! The engine computes Segre and virtual Euler series of Quot schemes in
//! closed form and checks them against brute-force torus localization.

pub mod cli;
pub mod curve_quot;
pub mod error;
pub mod exact_algebra;
pub mod kawai_yoshioka;
pub mod localization_oracle;
pub mod power_series;
pub mod root_calculus;
pub mod surface_quot;
pub mod tree_combinatorics;

pub use error::{Error, Result};
pub use exact_algebra::{MPoly, Rat, Ring};
pub use power_series::Series;
