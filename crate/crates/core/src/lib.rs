//! Exact moments, limit law and Monte Carlo simulation for the total cost of
//! recursively cutting uniform random labelled free trees, where splitting a
//! component of size `n` costs `n²`.
//!
//! The numeric core is generic over the scalar type: the same recurrences run
//! over big rationals (exact) and over `f32`/`f64` (floating). Concrete aliases
//! for the common instantiations live at the crate root.

pub mod error;
pub mod exact_engine;
pub mod limit_law;
pub mod scalar;
pub mod series_lab;
pub mod simulator;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{FloatScalar, Scalar};

/// Arbitrary-precision rational, always in lowest terms.
pub type ExactScalar = num_rational::BigRational;
/// Exact element `p + q√2` of `ℚ(√2)`.
pub type Root2Scalar = limit_law::Root2<ExactScalar>;

pub type ExactMomentTable = exact_engine::MomentTable<ExactScalar>;
pub type FloatMomentTable = exact_engine::MomentTable<f64>;
pub type ExactSeries = series_lab::TruncatedSeries<ExactScalar>;
pub type FloatSeries = series_lab::TruncatedSeries<f64>;
