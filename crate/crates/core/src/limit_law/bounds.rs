use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use super::moments::limit_table;
use crate::error::Result;

#[derive(Debug, Clone, Serialize)]
pub struct GrowthRow {
    pub k: usize,
    /// `log(A_k / k!)`.
    pub ln_a_over_factorial: f64,
    /// `(A_k / k!)^{1/k} / k^{5/2}`.
    pub constant: f64,
    /// `(m_k / k!)^{1/k}`.
    pub determinacy_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    pub bound: f64,
    pub max_constant: f64,
    /// Every `A_k / k! ≤ bound^k k^{5k/2}`.
    pub holds: bool,
    /// Exact verdict in `ℚ(√2)` when `bound` is a whole number.
    pub holds_exactly: Option<bool>,
    /// Largest determinacy ratio over the first half of the orders.
    pub determinacy_bound: f64,
    /// The second half of the orders stays below `determinacy_bound`.
    pub determinacy_holds: bool,
}

/// Checks `|A_k / k!| ≤ C^k k^{5k/2}` for `k ≤ kmax`, and that the normalized
/// limit moments `(m_k / k!)^{1/k}` stay below a bound fitted on small `k`.
pub fn growth_bound_check(kmax: usize, bound: f64) -> Result<GrowthReport> {
    let table = limit_table(kmax)?;
    let rows: Vec<GrowthRow> = table
        .iter()
        .map(|r| {
            let k = r.k as f64;
            let ln_fact = ln_gamma(k + 1.0);
            let ln_s = r.a.ln_positive() - ln_fact;
            GrowthRow {
                k: r.k,
                ln_a_over_factorial: ln_s,
                constant: (ln_s / k).exp() / k.powf(2.5),
                determinacy_ratio: ((r.m.ln() - ln_fact) / k).exp(),
            }
        })
        .collect();
    let max_constant = rows.iter().map(|r| r.constant).fold(f64::MIN, f64::max);
    // Compare in log space: k log C + (5k/2) log k.
    let holds = rows.iter().all(|r| {
        let k = r.k as f64;
        r.ln_a_over_factorial <= k * bound.ln() + 2.5 * k * k.ln()
    });
    let holds_exactly = (bound >= 1.0 && bound.fract() == 0.0 && bound < 1e9).then(|| {
        table
            .iter()
            .all(|r| growth_bound_exact(&r.a, r.k, bound as u64))
    });
    let fit_len = rows.len().div_ceil(2);
    let determinacy_bound = rows[..fit_len]
        .iter()
        .map(|r| r.determinacy_ratio)
        .fold(f64::MIN, f64::max);
    let determinacy_holds = rows[fit_len..]
        .iter()
        .all(|r| r.determinacy_ratio <= determinacy_bound);
    Ok(GrowthReport {
        rows,
        bound,
        max_constant,
        holds,
        holds_exactly,
        determinacy_bound,
        determinacy_holds,
    })
}

/// Exact check of `A_k / k! ≤ C^k k^{5k/2}` for integer `C`, squaring both
/// sides to clear the half-integer power when `k` is odd.
fn growth_bound_exact(a_k: &crate::Root2Scalar, k: usize, bound: u64) -> bool {
    use crate::scalar::factorial;
    let s = a_k.scale(&BigRational::new(1.into(), factorial(k as u64)));
    // s = p + q√2 with p, q ≥ 0, so s² = p² + 2q² + 2pq√2 and s ≤ R ⇔ s² ≤ R².
    let rhs_sq = BigRational::from_integer(
        BigInt::from(bound).pow(2 * k as u32) * BigInt::from(k).pow(5 * k as u32),
    );
    let sq = s.clone() * s;
    (crate::limit_law::Root2::rational(rhs_sq) - sq).is_positive()
}
