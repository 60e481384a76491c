use num_rational::BigRational;
use serde::Serialize;
use statrs::function::gamma::gamma;

use super::special::{polylog, scaled_tree_function};
use crate::error::Result;
use crate::exact_engine::float_moments;
use crate::FloatSeries;

#[derive(Debug, Clone, Serialize)]
pub struct MeanCheckpoint {
    pub n: usize,
    /// `[z^n] B ⊙ C(z/e)²` over `2^{-1/2} n^{1/2} / Γ(3/2)`.
    pub toll_tree_ratio: f64,
    /// `4 ν_n(1) / n`, with `ν_n(1) = c_n e^{-n} a_n`.
    pub weighted_mean_ratio: f64,
    /// `a_n / n^{5/2}`.
    pub mean_constant: f64,
    /// `a_n / (√(π/8) n^{5/2})`.
    pub mean_constant_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeanExpansionReport {
    pub order: usize,
    pub checkpoints: Vec<MeanCheckpoint>,
}

impl MeanExpansionReport {
    pub fn last(&self) -> &MeanCheckpoint {
        self.checkpoints.last().expect("at least one checkpoint")
    }
}

/// Coefficient-level check of the mean's generating-function layer up to
/// `order`: the toll/tree Hadamard product `B ⊙ C(z/e)²` against
/// `2^{-1/2}(1-z)^{-3/2}`, and `A ⊙ C(z/e)` against `¼(1-z)^{-2}`.
pub fn verify_mean_expansion(order: usize) -> Result<MeanExpansionReport> {
    let order = order.max(2);
    let c: FloatSeries = scaled_tree_function(order);
    let c2 = c.mul(&c)?;
    let b: FloatSeries = polylog(&BigRational::from_integer((-2).into()), 0, order)?;
    let bc2 = b.hadamard(&c2)?;
    let table = float_moments::<f64>(order, 1)?;

    let mut sizes: Vec<usize> = std::iter::successors(Some(10usize), |n| n.checked_mul(10))
        .take_while(|&n| n < order)
        .collect();
    sizes.push(order);

    let mean_limit = (std::f64::consts::PI / 8.0).sqrt();
    let checkpoints = sizes
        .into_iter()
        .map(|n| {
            let nf = n as f64;
            let predicted = 0.5f64.sqrt() * nf.sqrt() / gamma(1.5);
            let mean_constant = table.scaled_moment(n, 1);
            MeanCheckpoint {
                n,
                toll_tree_ratio: bc2.coeff(n) / predicted,
                weighted_mean_ratio: 4.0 * table.nu(n, 1) / nf,
                mean_constant,
                mean_constant_ratio: mean_constant / mean_limit,
            }
        })
        .collect();
    Ok(MeanExpansionReport { order, checkpoints })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_approach_one() {
        let report = verify_mean_expansion(2000).unwrap();
        let cps = &report.checkpoints;
        assert_eq!(cps.iter().map(|c| c.n).collect::<Vec<_>>(), vec![10, 100, 1000, 2000]);
        for w in cps.windows(2) {
            assert!((w[1].toll_tree_ratio - 1.0).abs() < (w[0].toll_tree_ratio - 1.0).abs());
            assert!((w[1].weighted_mean_ratio - 1.0).abs() < (w[0].weighted_mean_ratio - 1.0).abs());
        }
        assert!((report.last().toll_tree_ratio - 1.0).abs() < 1e-3);
        assert!((report.last().weighted_mean_ratio - 1.0).abs() < 0.05);
    }
}
