//! Goodness-of-fit helpers for the simulation checks.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson χ² outcome after pooling sparse categories.
#[derive(Debug, Clone, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub bins: usize,
}

impl ChiSquareTest {
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }

    fn from_statistic(statistic: f64, bins: usize, lost_dof: usize) -> Self {
        let dof = bins.saturating_sub(lost_dof);
        let p_value = if !statistic.is_finite() {
            0.0
        } else if dof == 0 {
            1.0
        } else {
            ChiSquared::new(dof as f64).expect("dof > 0").sf(statistic)
        };
        Self {
            statistic,
            dof,
            p_value,
            bins,
        }
    }
}

/// Minimum expected count per pooled bin.
const MIN_EXPECTED: f64 = 5.0;

/// Goodness of fit of `observed` counts to category probabilities `probs`.
/// Adjacent categories are pooled until each bin expects at least five hits.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> ChiSquareTest {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let t = total as f64;
    // A hit on an impossible category is decisive whatever the pooling.
    if observed.iter().zip(probs).any(|(&o, &p)| o > 0 && p <= 0.0) {
        return ChiSquareTest::from_statistic(f64::INFINITY, observed.len(), 1);
    }
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut o_acc, mut e_acc) = (0.0, 0.0);
    for (o, p) in observed.iter().zip(probs) {
        o_acc += *o as f64;
        e_acc += p * t;
        if e_acc >= MIN_EXPECTED {
            bins.push((o_acc, e_acc));
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if o_acc > 0.0 || e_acc > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += o_acc;
                last.1 += e_acc;
            }
            None => bins.push((o_acc, e_acc)),
        }
    }
    let statistic = bins
        .iter()
        .map(|&(o, e)| {
            if e > 0.0 {
                (o - e) * (o - e) / e
            } else if o > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .sum();
    ChiSquareTest::from_statistic(statistic, bins.len(), 1)
}

/// Two-sample homogeneity test on paired category counts.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> ChiSquareTest {
    assert_eq!(a.len(), b.len());
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let n = na + nb;
    let min_share = na.min(nb) / n;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut x, mut y) = (0.0, 0.0);
    for (&ai, &bi) in a.iter().zip(b) {
        x += ai as f64;
        y += bi as f64;
        if (x + y) * min_share >= MIN_EXPECTED {
            bins.push((x, y));
            x = 0.0;
            y = 0.0;
        }
    }
    if x + y > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += x;
                last.1 += y;
            }
            None => bins.push((x, y)),
        }
    }
    let statistic = bins
        .iter()
        .map(|&(x, y)| {
            let col = x + y;
            let (ea, eb) = (col * na / n, col * nb / n);
            (x - ea).powi(2) / ea + (y - eb).powi(2) / eb
        })
        .sum();
    ChiSquareTest::from_statistic(statistic, bins.len(), 1)
}

/// Total-variation distance between empirical counts and probabilities.
pub fn total_variation(observed: &[u64], probs: &[f64]) -> f64 {
    let total: u64 = observed.iter().sum();
    0.5 * observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| (o as f64 / total as f64 - p).abs())
        .sum::<f64>()
}

/// Counts of `values` on a sorted `support`, plus the number that fall outside it.
pub fn counts_on_support(values: impl IntoIterator<Item = u64>, support: &[u64]) -> (Vec<u64>, u64) {
    let mut counts = vec![0u64; support.len()];
    let mut outside = 0;
    for v in values {
        match support.binary_search(&v) {
            Ok(i) => counts[i] += 1,
            Err(_) => outside += 1,
        }
    }
    (counts, outside)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_fit_passes() {
        let t = chi_square_gof(&[250, 250, 500], &[0.25, 0.25, 0.5]);
        assert_eq!(t.statistic, 0.0);
        assert_eq!(t.dof, 2);
        assert!(t.passes(1e-3));
    }

    #[test]
    fn gross_misfit_fails() {
        let t = chi_square_gof(&[900, 100], &[0.5, 0.5]);
        assert!(!t.passes(1e-3));
        let t = chi_square_gof(&[10, 10, 1], &[0.5, 0.5, 0.0]);
        assert_eq!(t.p_value, 0.0);
    }

    #[test]
    fn pooling_sparse_tail() {
        let probs = [0.5, 0.49, 0.005, 0.005];
        let t = chi_square_gof(&[50, 49, 1, 0], &probs);
        assert_eq!(t.bins, 2);
    }

    #[test]
    fn homogeneity() {
        assert!(chi_square_homogeneity(&[100, 200, 300], &[100, 200, 300]).passes(0.5));
        assert!(!chi_square_homogeneity(&[300, 200, 100], &[100, 200, 300]).passes(1e-3));
    }

    #[test]
    fn tv_and_support() {
        assert!((total_variation(&[1, 1], &[0.5, 0.5])).abs() < 1e-15);
        let (c, out) = counts_on_support([24, 29, 29, 30], &[24, 29]);
        assert_eq!((c, out), (vec![1, 2], 1));
    }
}
