//! Truncated power series, generating functions of the cutting problem, and
//! coefficient-level checks of their singular expansions.

mod expansion;
mod mean;
mod series;
mod special;

pub use expansion::{
    hadamard_expansion, power_coefficient, ExpansionCoefficient, HadamardExpansion,
    SingularExpansion,
};
pub use mean::{verify_mean_expansion, MeanCheckpoint, MeanExpansionReport};
pub use series::TruncatedSeries;
pub use special::{binomial_series, polylog, scaled_tree_function, tree_function};
