use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chain::{cut_chain_traced, LawCache};
use super::tree::{cut_tree_traced, sample_tree, CutWorkspace};
use crate::error::{Error, Result};
use crate::exact_engine::Toll;
use crate::scalar::neumaier_sum;

/// Higher sample moments of the rescaled cost are dominated by tail noise.
pub const MAX_SIM_KMAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Cut explicit uniform labelled trees.
    Tree,
    /// Run the size chain driven by the split law.
    Chain,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Tree => "tree",
            Method::Chain => "chain",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub n: usize,
    pub replications: usize,
    pub kmax: usize,
    pub seed: u64,
    pub method: Method,
    /// Worker threads; `None` uses the global pool. Results do not depend on it.
    pub workers: Option<usize>,
}

impl SimConfig {
    pub fn new(n: usize, replications: usize, kmax: usize, seed: u64, method: Method) -> Self {
        Self {
            n,
            replications,
            kmax,
            seed,
            method,
            workers: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.replications == 0 || self.kmax == 0 {
            return Err(Error::InvalidArgument(
                "n, replications and kmax must all be positive".into(),
            ));
        }
        if self.kmax > MAX_SIM_KMAX {
            return Err(Error::InvalidArgument(format!(
                "kmax = {} exceeds {MAX_SIM_KMAX}: sample moments that high are dominated by tail noise",
                self.kmax
            )));
        }
        Ok(())
    }
}

/// One simulated tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Replication {
    pub cost: u64,
    /// Left size at the first cut, 0 for a singleton.
    pub first_left: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub k: usize,
    /// Sample mean of `(n^{-5/2} X_n)^k`.
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub n: usize,
    pub replications: usize,
    pub seed: u64,
    pub method: Method,
    pub kmax: usize,
    pub mean_cost: f64,
    pub moments: Vec<MomentEstimate>,
    /// `first_cut_histogram[k - 1]` counts first cuts with left size `k`.
    pub first_cut_histogram: Vec<u64>,
}

/// The RNG of replication `index`: ChaCha8 keyed by `seed`, on stream `index`.
pub fn replication_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn run_indexed(config: &SimConfig, cache: Option<&LawCache>) -> Result<Vec<Replication>> {
    let toll = Toll::default();
    let n = config.n;
    let one = |ws: &mut CutWorkspace, i: usize| -> Result<Replication> {
        let mut rng = replication_rng(config.seed, i as u64);
        let out = match config.method {
            Method::Tree => {
                let tree = sample_tree(n, &mut rng);
                cut_tree_traced(&tree, &mut rng, &toll, ws)
            }
            Method::Chain => cut_chain_traced(n, &mut rng, cache.expect("chain cache"), &toll)?,
        };
        Ok(Replication {
            cost: out.cost,
            first_left: out.first_left.unwrap_or(0) as u32,
        })
    };
    (0..config.replications)
        .into_par_iter()
        .map_init(CutWorkspace::new, |ws, i| one(ws, i))
        .collect()
}

/// Runs the replications in index order of their random streams.
pub fn replicate(config: &SimConfig) -> Result<Vec<Replication>> {
    config.validate()?;
    let cache = match config.method {
        Method::Chain => Some(LawCache::new(config.n.max(2))?),
        Method::Tree => None,
    };
    match config.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(|| run_indexed(config, cache.as_ref()))
        }
        None => run_indexed(config, cache.as_ref()),
    }
}

/// Sample moments of `n^{-5/2} X_n` and the first-cut histogram.
pub fn monte_carlo(config: &SimConfig) -> Result<SimReport> {
    let reps = replicate(config)?;
    let r = reps.len() as f64;
    let scale = (config.n as f64).powf(-2.5);
    let scaled: Vec<f64> = reps.iter().map(|x| x.cost as f64 * scale).collect();
    let moments = (1..=config.kmax)
        .map(|k| {
            let powers: Vec<f64> = scaled.iter().map(|y| y.powi(k as i32)).collect();
            let mean = neumaier_sum(powers.iter().copied()) / r;
            let var = if reps.len() > 1 {
                neumaier_sum(powers.iter().map(|p| (p - mean) * (p - mean))) / (r - 1.0)
            } else {
                0.0
            };
            MomentEstimate {
                k,
                mean,
                stderr: (var / r).sqrt(),
            }
        })
        .collect();
    let mut hist = vec![0u64; config.n.saturating_sub(1)];
    for rep in &reps {
        if rep.first_left > 0 {
            hist[rep.first_left as usize - 1] += 1;
        }
    }
    Ok(SimReport {
        n: config.n,
        replications: config.replications,
        seed: config.seed,
        method: config.method,
        kmax: config.kmax,
        mean_cost: neumaier_sum(reps.iter().map(|x| x.cost as f64)) / r,
        moments,
        first_cut_histogram: hist,
    })
}
