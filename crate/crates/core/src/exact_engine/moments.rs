use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use super::cayley::CayleyWeights;
use super::toll::Toll;
use super::{EXACT_NMAX_BUDGET, FLOAT_KMAX_BUDGET, FLOAT_NMAX_BUDGET};
use crate::error::{Error, Result};
use crate::scalar::{multinomial, FloatScalar, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentMode {
    Exact,
    Floating,
}

/// Knobs shared by the exact and floating engines.
#[derive(Debug, Clone)]
pub struct EngineOptions {
    pub toll: Toll,
    pub exact_budget: usize,
    pub float_budget: usize,
    /// Test hook: doubles the weight `c_n` at this size before running the recurrence.
    pub weight_fault: Option<usize>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            toll: Toll::default(),
            exact_budget: EXACT_NMAX_BUDGET,
            float_budget: FLOAT_NMAX_BUDGET,
            weight_fault: None,
        }
    }
}

/// Weighted moments `ν_n(k) = w_n · E[X_n^k]` for `1 ≤ n ≤ nmax`, `0 ≤ k ≤ kmax`.
///
/// In exact mode `w_n = c_n`; in floating mode `w_n = c_n e^{-n}`. Both weights
/// satisfy the same recurrence because every term carries one factor `e^{-n}`.
#[derive(Debug, Clone)]
pub struct MomentTable<T> {
    pub mode: MomentMode,
    pub nmax: usize,
    pub kmax: usize,
    weights: Vec<T>,
    nu: Vec<Vec<T>>,
}

impl<T: Scalar> MomentTable<T> {
    /// `ν_n(k)`; row `k = 0` is the weight row.
    pub fn nu(&self, n: usize, k: usize) -> &T {
        &self.nu[k][n]
    }

    pub fn weight(&self, n: usize) -> &T {
        &self.weights[n]
    }

    /// `μ_n(k) = E[X_n^k]`.
    pub fn moment(&self, n: usize, k: usize) -> T {
        self.nu[k][n].clone() / self.weights[n].clone()
    }

    /// `n^{-5k/2} μ_n(k)`, the moment of the rescaled cost.
    pub fn scaled_moment(&self, n: usize, k: usize) -> f64 {
        let log_scale = 2.5 * k as f64 * (n as f64).ln();
        self.moment(n, k).to_f64() * (-log_scale).exp()
    }

    /// Mean cost `a_n`.
    pub fn mean(&self, n: usize) -> T {
        self.moment(n, 1)
    }
}

/// Exact table in `ℚ` with the default square toll and budget.
pub fn exact_moments(nmax: usize, kmax: usize) -> Result<MomentTable<BigRational>> {
    exact_moments_with(nmax, kmax, &EngineOptions::default())
}

pub fn exact_moments_with(
    nmax: usize,
    kmax: usize,
    opts: &EngineOptions,
) -> Result<MomentTable<BigRational>> {
    check_orders(nmax, kmax)?;
    if nmax > opts.exact_budget {
        return Err(Error::Budget(format!(
            "exact moment tables are limited to nmax <= {} (requested {nmax}); use the floating engine",
            opts.exact_budget
        )));
    }
    let cache = CayleyWeights::up_to(nmax);
    let mut weights = Vec::with_capacity(nmax + 1);
    weights.push(BigRational::zero());
    weights.extend(cache.as_slice().iter().cloned());
    if let Some(n) = opts.weight_fault.filter(|&n| n >= 1 && n <= nmax) {
        weights[n] = &weights[n] * BigRational::from_integer(BigInt::from(2));
    }
    run_recurrence(weights, kmax, &opts.toll, MomentMode::Exact)
}

/// `log(c_n e^{-n}) = (n-1) log n - log n! - n`.
pub fn log_normalized_weight(n: usize) -> f64 {
    let nf = n as f64;
    (nf - 1.0) * nf.ln() - ln_gamma(nf + 1.0) - nf
}

/// Floating table in the scalar type `T` with the default options.
pub fn float_moments<T: FloatScalar>(nmax: usize, kmax: usize) -> Result<MomentTable<T>> {
    float_moments_with(nmax, kmax, &EngineOptions::default())
}

pub fn float_moments_with<T: FloatScalar>(
    nmax: usize,
    kmax: usize,
    opts: &EngineOptions,
) -> Result<MomentTable<T>> {
    check_orders(nmax, kmax)?;
    if nmax > opts.float_budget {
        return Err(Error::Budget(format!(
            "floating moment tables are limited to nmax <= {} (requested {nmax})",
            opts.float_budget
        )));
    }
    if kmax > FLOAT_KMAX_BUDGET {
        return Err(Error::Budget(format!(
            "floating moment tables are limited to kmax <= {FLOAT_KMAX_BUDGET} (requested {kmax})"
        )));
    }
    let mut weights = Vec::with_capacity(nmax + 1);
    weights.push(T::zero());
    for n in 1..=nmax {
        let w = log_normalized_weight(n).exp();
        let w = T::from_f64_lossy(w).expect("floating scalar");
        if !(w.is_finite_value() && w > T::zero()) {
            return Err(Error::Precision {
                n,
                k: 0,
                what: "normalized Cayley weight is not a positive finite number".into(),
            });
        }
        weights.push(w);
    }
    if let Some(n) = opts.weight_fault.filter(|&n| n >= 1 && n <= nmax) {
        weights[n] = weights[n] + weights[n];
    }
    run_recurrence(weights, kmax, &opts.toll, MomentMode::Floating)
}

fn check_orders(nmax: usize, kmax: usize) -> Result<()> {
    if nmax == 0 || kmax == 0 {
        return Err(Error::InvalidArgument(format!(
            "moment tables need nmax >= 1 and kmax >= 1 (got nmax = {nmax}, kmax = {kmax})"
        )));
    }
    Ok(())
}

/// Runs `((n-1)/n) ν_n(k) = Σ_j w_{n-j} ν_j(k) + r_n(k)` bottom-up in `n`, with
/// `r_n(k) = ½ Σ_{k1+k2+k3=k, k1,k2<k} (k; k1,k2,k3) b_n^{k3} Σ_j ν_j(k1) ν_{n-j}(k2)`.
fn run_recurrence<T: Scalar>(
    weights: Vec<T>,
    kmax: usize,
    toll: &Toll,
    mode: MomentMode,
) -> Result<MomentTable<T>> {
    let nmax = weights.len() - 1;
    let mut nu = vec![vec![T::zero(); nmax + 1]; kmax + 1];
    nu[0] = weights.clone();
    let half = T::from_ratio(&BigRational::new(1.into(), 2.into()));
    // Pair convolutions at the current n; symmetric in (k1, k2).
    let mut conv: Vec<Vec<Option<T>>> = vec![vec![None; kmax]; kmax];

    for n in 2..=nmax {
        for row in conv.iter_mut() {
            row.iter_mut().for_each(|c| *c = None);
        }
        let toll_n = T::from_u64(toll.at(n));
        let scale = T::from_ratio(&BigRational::new(BigInt::from(n), BigInt::from(n - 1)));

        for k in 1..=kmax {
            let main = T::sum_of_products((1..n).map(|j| (&weights[n - j], &nu[k][j])));
            let mut rest = T::zero();
            for k1 in 0..k {
                for k2 in 0..(k - k1 + 1).min(k) {
                    let k3 = k - k1 - k2;
                    let (lo, hi) = (k1.min(k2), k1.max(k2));
                    if conv[lo][hi].is_none() {
                        let (a, b) = (&nu[lo], &nu[hi]);
                        conv[lo][hi] = Some(T::sum_of_products((1..n).map(|j| (&a[j], &b[n - j]))));
                    }
                    let c = conv[lo][hi].clone().expect("filled above");
                    let coeff = T::from_u64(multinomial(k1, k2, k3))
                        * num_traits::pow(toll_n.clone(), k3);
                    rest = rest + coeff * c;
                }
            }
            let value = (main + half.clone() * rest) * scale.clone();
            if !value.is_finite_value() || value <= T::zero() {
                return Err(Error::Precision {
                    n,
                    k,
                    what: format!("weighted moment became {value:?}"),
                });
            }
            nu[k][n] = value;
        }
    }

    Ok(MomentTable {
        mode,
        nmax,
        kmax,
        weights,
        nu,
    })
}
