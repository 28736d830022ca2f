//! Truncated power series: univariate, Puiseux and multivariate.

pub mod identities;
mod multi;
mod puiseux;
mod reversion;
mod series;

pub use multi::{compositions, mv_extract, mv_lagrange_burmann_check, MultiSeries, Shape};
pub(crate) use multi::locus_term;
pub use puiseux::PuiseuxSeries;
pub use reversion::{lagrange_burmann, lagrange_burmann_closed};
pub use series::{Series, EXACT};
