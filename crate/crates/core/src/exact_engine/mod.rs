//! Split probabilities, cost moments and the brute-force law of the cutting cost.
//!
//! Cutting a uniform labelled free tree of size `n` at a uniform edge, with a
//! random orientation, yields ordered parts of sizes `(k, n - k)` with
//! probability `p(n, k) = n / (2(n-1)) · c_k c_{n-k} / c_n` where
//! `c_k = k^(k-1) / k!`. The total cost `X_n` obeys
//! `X_n = X_L + X_R + b_n` with toll `b_n = n²` (and `b_1 = 0`).

mod cayley;
mod moments;
mod oracle;
mod toll;

pub use cayley::{cayley_weight, split_law, split_probability, CayleyWeights, SplitLaw};
pub use moments::{
    exact_moments, exact_moments_with, float_moments, float_moments_with, log_normalized_weight,
    EngineOptions, MomentMode, MomentTable,
};
pub use oracle::{distribution_oracle, distribution_oracle_with, ExactDistribution};
pub use toll::Toll;

/// Default size budget for exact moment tables.
pub const EXACT_NMAX_BUDGET: usize = 300;
/// Default size budget for floating moment tables.
pub const FLOAT_NMAX_BUDGET: usize = 100_000;
/// Largest moment order accepted by the floating engine.
pub const FLOAT_KMAX_BUDGET: usize = 6;
/// Default size budget for the distribution oracle.
pub const ORACLE_BUDGET: usize = 12;
