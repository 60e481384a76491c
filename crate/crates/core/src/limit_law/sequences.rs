use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::root2::{LimitField, Root2};
use crate::ExactScalar;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `A_1 = 2^{-3/2}`,
/// `A_k = Σ_{j=1}^{k-1} C(k,j) A_j A_{k-j} / 2 + k A_{k-1} Γ(5k/2-1)/Γ(5k/2-3)`.
///
/// The gamma ratio is `(5k/2-2)(5k/2-3) = (5k-4)(5k-6)/4`.
pub fn a_sequence_in<F: LimitField>(kmax: usize) -> Vec<F> {
    let mut a: Vec<F> = Vec::with_capacity(kmax);
    if kmax == 0 {
        return a;
    }
    a.push(F::sqrt2() * F::from_ratio(&q(1, 4)));
    for k in 2..=kmax {
        let ki = k as i64;
        let gamma_ratio = q((5 * ki - 4) * (5 * ki - 6), 4);
        let mut next = F::from_ratio(&(gamma_ratio * BigInt::from(k))) * a[k - 2].clone();
        for j in 1..k {
            let c = BigRational::new(binomial(BigInt::from(k), BigInt::from(j)), BigInt::from(2));
            next = next + F::from_ratio(&c) * a[j - 1].clone() * a[k - j - 1].clone();
        }
        a.push(next);
    }
    a
}

/// `x_k = 2(5k-6)(5k-4) x_{k-1} + Σ_{j=1}^{k-1} x_j x_{k-j}` from a given `x_1`.
fn quadratic_recurrence<F: LimitField>(first: F, kmax: usize) -> Vec<F> {
    let mut x: Vec<F> = Vec::with_capacity(kmax);
    if kmax == 0 {
        return x;
    }
    x.push(first);
    for k in 2..=kmax {
        let ki = k as i64;
        let mut next = F::from_ratio(&q(2 * (5 * ki - 6) * (5 * ki - 4), 1)) * x[k - 2].clone();
        for j in 1..k {
            next = next + x[j - 1].clone() * x[k - j - 1].clone();
        }
        x.push(next);
    }
    x
}

/// `ā_1 = √2`, then the quadratic recurrence.
pub fn abar_sequence_in<F: LimitField>(kmax: usize) -> Vec<F> {
    quadratic_recurrence(F::sqrt2(), kmax)
}

/// Janson's `ω_1 = 1`, then the quadratic recurrence.
pub fn omega_sequence_in<F: LimitField>(kmax: usize) -> Vec<F> {
    quadratic_recurrence(F::from_ratio(&q(1, 1)), kmax)
}

/// Exact `A_1..A_kmax` in `ℚ(√2)`.
pub fn a_sequence(kmax: usize) -> Vec<Root2<ExactScalar>> {
    a_sequence_in(kmax)
}

/// Exact `ā_1..ā_kmax` in `ℚ(√2)`.
pub fn abar_sequence(kmax: usize) -> Vec<Root2<ExactScalar>> {
    abar_sequence_in(kmax)
}

/// Exact `ω_1..ω_kmax`.
pub fn omega_sequence(kmax: usize) -> Vec<ExactScalar> {
    omega_sequence_in::<Root2<ExactScalar>>(kmax)
        .into_iter()
        .map(|w| {
            debug_assert!(num_traits::Zero::is_zero(&w.q));
            w.p
        })
        .collect()
}
