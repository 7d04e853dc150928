//! Exact engine for the Hoffman word algebra `Q<x, y>`, truncated bivariate
//! series over it, and finite multiple zeta values modulo prime powers.
//!
//! The symbolic layer ([`word`], [`poly`], [`series`], [`operators`]) is
//! exact rational arithmetic throughout. The numeric layer ([`numeric`])
//! evaluates words as truncated multiple harmonic sums modulo `p^N` over a
//! window of primes, in parallel when the `parallel` feature is enabled.
//! [`verify`] ties the two together into per-prime reports and [`expr`] is
//! the small expression language used by the command-line front end.

pub mod error;
pub mod word;
pub mod poly;
pub mod series;
pub mod operators;
pub mod report;
pub mod par;
pub mod numeric;
pub mod verify;
pub mod config;
pub mod expr;

pub use config::{Config, OutputFormat};
pub use error::{Error, Result};
pub use poly::NCPoly;
pub use series::{BiSeries, SeriesCaps};
pub use word::{Composition, Letter, Word};
