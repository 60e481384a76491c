//! Exact limit-law moments.
//!
//! The constants `A_k`, `ā_k` live in `ℚ(√2)`; Janson's `ω_k` are integers.
//! Limit moments are rendered as an element of `ℚ(√2)` times `√π` raised to
//! zero or one, since `Γ((5k-1)/2)` contributes a `√π` exactly when `k` is even.

mod bounds;
mod moments;
mod root2;
mod sequences;

pub use bounds::{growth_bound_check, GrowthReport, GrowthRow};
pub use moments::{eta_moment, limit_table, xi_moment, y_moment, LimitMoment, LimitRow};
pub use root2::{LimitField, Root2};
pub use sequences::{
    a_sequence, a_sequence_in, abar_sequence, abar_sequence_in, omega_sequence,
    omega_sequence_in,
};

/// Default number of limit moments computed by the tables.
pub const DEFAULT_KMAX: usize = 30;
