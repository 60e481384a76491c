//! Monte Carlo realization of the cutting process.
//!
//! Two samplers are provided: explicit surgery on uniform random labelled
//! trees, and the size-only Markov chain driven by the split law. Each
//! replication draws from its own ChaCha stream keyed by `(seed, index)`, so
//! results do not depend on how replications are scheduled across workers.

mod chain;
mod monte_carlo;
pub mod stats;
mod tree;

pub use chain::{cut_cost_chain, cut_chain_traced, LawCache, DEFAULT_CACHE_BYTES};
pub use monte_carlo::{
    monte_carlo, replicate, replication_rng, Method, MomentEstimate, Replication, SimConfig,
    SimReport, MAX_SIM_KMAX,
};
pub use tree::{cut_cost_tree, cut_once, cut_tree_traced, sample_tree, CutWorkspace, LabelledTree};

/// Result of cutting one tree down to singletons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutOutcome {
    pub cost: u64,
    /// Size of the left part at the first cut; `None` for a singleton.
    pub first_left: Option<usize>,
}
