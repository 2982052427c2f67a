//! Exact q-series engine for Rogers-Ramanujan-type identities built from
//! Hall-Littlewood polynomials, with the coefficient recursion for periodic
//! infinite products and finite verification of m-regular partition
//! congruences.

pub mod cli;
pub mod congruences;
pub mod error;
pub mod framework;
pub mod hall_littlewood;
pub mod identities;
pub mod partitions;
pub mod recursion;
pub mod series;

pub use error::{Error, Result};
pub use framework::{Nu, PeriodicExponents, ProductForm, RRSpec};
pub use partitions::Partition;
pub use series::{IntSeries, RatSeries, Series};
