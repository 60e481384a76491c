use std::sync::OnceLock;

use rand::Rng;
use statrs::function::gamma::ln_gamma;

use super::CutOutcome;
use crate::error::{Error, Result};
use crate::exact_engine::{split_law, Toll};

/// Rows up to this size come from the exact split law; larger rows are
/// evaluated in log space.
const EXACT_ROW_LIMIT: usize = 64;

/// Default memory budget for cached cumulative rows (1 GiB).
pub const DEFAULT_CACHE_BYTES: usize = 1 << 30;

/// Lazily built cumulative split-law rows for sizes `2..=max_size`, shared
/// across threads. Each row is written once.
#[derive(Debug)]
pub struct LawCache {
    max_size: usize,
    rows: Vec<OnceLock<Box<[f64]>>>,
}

impl LawCache {
    pub fn new(max_size: usize) -> Result<Self> {
        Self::with_budget(max_size, DEFAULT_CACHE_BYTES)
    }

    /// Fails when all rows up to `max_size` could exceed `budget_bytes`.
    pub fn with_budget(max_size: usize, budget_bytes: usize) -> Result<Self> {
        let needed = max_size
            .saturating_mul(max_size.saturating_sub(1))
            .saturating_div(2)
            .saturating_mul(std::mem::size_of::<f64>());
        if needed > budget_bytes {
            return Err(Error::Budget(format!(
                "split-law cache for n = {max_size} needs about {needed} bytes (budget {budget_bytes})"
            )));
        }
        Ok(Self {
            max_size,
            rows: (0..=max_size).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Cumulative probabilities `P(L ≤ k)` for `k = 1..m-1`; the last entry is 1.
    pub fn row(&self, m: usize) -> &[f64] {
        assert!((2..=self.max_size).contains(&m), "row {m} outside cache");
        self.rows[m].get_or_init(|| build_row(m))
    }

    /// Draws the left size `L ~ p(m, ·)` by inverse CDF.
    pub fn sample_split<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> usize {
        let row = self.row(m);
        let u: f64 = rng.random();
        let idx = row.partition_point(|&c| c <= u);
        idx.min(m - 2) + 1
    }
}

fn build_row(m: usize) -> Box<[f64]> {
    let probs: Vec<f64> = if m <= EXACT_ROW_LIMIT {
        split_law(m).expect("m >= 2").to_f64()
    } else {
        // log p(m,k) = log(m / (2(m-1))) + w(k) + w(m-k) - w(m), w(k) = log(k^{k-1}/k!).
        let w = |k: usize| {
            let kf = k as f64;
            (kf - 1.0) * kf.ln() - ln_gamma(kf + 1.0)
        };
        let base = (m as f64 / (2.0 * (m as f64 - 1.0))).ln() - w(m);
        (1..m).map(|k| (base + w(k) + w(m - k)).exp()).collect()
    };
    let total: f64 = crate::scalar::neumaier_sum(probs.iter().copied());
    let mut acc = 0.0;
    let mut row: Vec<f64> = probs
        .iter()
        .map(|p| {
            acc += p / total;
            acc
        })
        .collect();
    *row.last_mut().expect("m >= 2") = 1.0;
    row.into_boxed_slice()
}

/// Runs the size chain `X_m = X_L + X_{m-L} + b_m` from size `n`.
pub fn cut_chain_traced<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    cache: &LawCache,
    toll: &Toll,
) -> Result<CutOutcome> {
    if n > 1 && n > cache.max_size() {
        return Err(Error::Budget(format!(
            "split-law cache covers sizes up to {}, requested {n}",
            cache.max_size()
        )));
    }
    let mut cost = 0u64;
    let mut first_left = None;
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m <= 1 {
            continue;
        }
        cost += toll.at(m);
        let k = cache.sample_split(m, rng);
        first_left.get_or_insert(k);
        stack.push(k);
        stack.push(m - k);
    }
    Ok(CutOutcome { cost, first_left })
}

/// Total cost of the size chain from `n` with the square toll.
pub fn cut_cost_chain<R: Rng + ?Sized>(n: usize, rng: &mut R, cache: &LawCache) -> Result<u64> {
    Ok(cut_chain_traced(n, rng, cache, &Toll::default())?.cost)
}
