use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::exact_engine::{log_normalized_weight, CayleyWeights};
use crate::scalar::{FloatScalar, Scalar};

/// Generalized polylogarithm `Li_{α,r}(z) = Σ_{n≥1} (log n)^r n^{-α} z^n`.
///
/// Coefficients are exact when `r = 0` and `α` is an integer; otherwise they
/// are evaluated in floating point, which exact scalar types reject.
pub fn polylog<T: Scalar>(alpha: &BigRational, r: u32, order: usize) -> Result<TruncatedSeries<T>> {
    let exact = r == 0 && alpha.is_integer();
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(T::zero());
    if exact {
        let e = alpha.to_integer();
        let mag = e.abs().to_u32().ok_or_else(|| {
            Error::InvalidArgument(format!("polylog index {alpha} is too large"))
        })?;
        for n in 1..=order {
            let p = BigInt::from(n).pow(mag);
            let c = if e.is_negative() {
                BigRational::from_integer(p)
            } else {
                BigRational::new(BigInt::one(), p)
            };
            coeffs.push(T::from_ratio(&c));
        }
    } else {
        let a = crate::scalar::ratio_to_f64(alpha);
        for n in 1..=order {
            let ln = (n as f64).ln();
            let v = ln.powi(r as i32) * (-a * ln).exp();
            coeffs.push(T::from_f64_lossy(v).ok_or_else(|| {
                Error::Inexact(format!("Li_{{{alpha},{r}}} coefficient at n = {n}"))
            })?);
        }
    }
    Ok(TruncatedSeries::new(coeffs))
}

/// Cayley tree function `C(z) = Σ_{n≥1} n^{n-1}/n! z^n`, exactly.
pub fn tree_function<T: Scalar>(order: usize) -> TruncatedSeries<T> {
    let w = CayleyWeights::up_to(order);
    TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            T::zero()
        } else {
            T::from_ratio(&w.as_slice()[n - 1])
        }
    })
}

/// `C(z/e)`, whose coefficients `c_n e^{-n}` are evaluated in log space.
pub fn scaled_tree_function<T: FloatScalar>(order: usize) -> TruncatedSeries<T> {
    TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            T::zero()
        } else {
            T::from_f64_lossy(log_normalized_weight(n).exp()).expect("floating scalar")
        }
    })
}

/// `(1 - z)^a` from `[z^n] = [z^{n-1}] · (n - 1 - a) / n`.
pub fn binomial_series<T: Scalar>(a: &BigRational, order: usize) -> TruncatedSeries<T> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(T::one());
    let mut prev = T::one();
    for n in 1..=order {
        let step = (BigRational::from_integer(BigInt::from(n - 1)) - a) / BigInt::from(n);
        if step.is_zero() {
            prev = T::zero();
        } else if !prev.is_zero() {
            prev = prev * T::from_ratio(&step);
        }
        coeffs.push(prev.clone());
    }
    TruncatedSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ExactSeries, FloatSeries};
    use statrs::function::gamma::gamma;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn polylog_coefficients() {
        let b: ExactSeries = polylog(&q(-2, 1), 0, 6).unwrap();
        assert_eq!(b.coeff(5), &q(25, 1));
        assert!(b.coeff(0).is_zero());
        let l: ExactSeries = polylog(&q(1, 1), 0, 6).unwrap();
        assert_eq!(l.coeff(4), &q(1, 4));
        let one: ExactSeries = polylog(&q(0, 1), 0, 6).unwrap();
        assert!((1..=6).all(|n| one.coeff(n).is_one()));
        assert!(polylog::<BigRational>(&q(1, 2), 0, 4).is_err());
        let f: FloatSeries = polylog(&q(1, 2), 1, 4).unwrap();
        assert!((f.coeff(4) - 4f64.ln() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn polylog_index_additivity_exact() {
        let order = 1000;
        let f: ExactSeries = polylog(&q(-2, 1), 0, order).unwrap();
        let g: ExactSeries = polylog(&q(-3, 1), 0, order).unwrap();
        let h: ExactSeries = polylog(&q(-5, 1), 0, order).unwrap();
        assert_eq!(f.hadamard(&g).unwrap(), h);
        let f: ExactSeries = polylog(&q(2, 1), 0, order).unwrap();
        let g: ExactSeries = polylog(&q(-1, 1), 0, order).unwrap();
        let h: ExactSeries = polylog(&q(1, 1), 0, order).unwrap();
        assert_eq!(f.hadamard(&g).unwrap(), h);
    }

    #[test]
    fn polylog_index_additivity_float() {
        let f: FloatSeries = polylog(&q(1, 2), 1, 500).unwrap();
        let g: FloatSeries = polylog(&q(-3, 2), 2, 500).unwrap();
        let h: FloatSeries = polylog(&q(-1, 1), 3, 500).unwrap();
        let fg = f.hadamard(&g).unwrap();
        for n in 2..=500 {
            assert!((fg.coeff(n) / h.coeff(n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tree_function_satisfies_functional_equation() {
        let order = 30;
        let c: ExactSeries = tree_function(order);
        let residual = c.sub(&c.exp().unwrap().shift_up()).unwrap();
        assert!(residual.is_zero());
        assert!(c.coeff(1).is_one());
        assert_eq!(c.coeff(3), &q(3, 2));
    }

    #[test]
    fn scaled_tree_function_local_limit() {
        let c: FloatSeries = scaled_tree_function(10_000);
        let ratio = |n: usize| c.coeff(n) * (n as f64).powf(1.5) * (2.0 * std::f64::consts::PI).sqrt();
        // c_n e^{-n} n^{3/2} √(2π) = 1 - 1/(12n) + O(n^{-2}).
        assert!((ratio(10_000) - 1.0).abs() < 1e-5);
        assert!((ratio(100) - 1.0).abs() > (ratio(1000) - 1.0).abs());
    }

    #[test]
    fn binomial_coefficients() {
        let s: ExactSeries = binomial_series(&q(-1, 1), 20);
        assert!(s.coeffs().iter().all(|c| c.is_one()));
        let s: ExactSeries = binomial_series(&q(1, 2), 3);
        assert_eq!(s.coeffs(), &[q(1, 1), q(-1, 2), q(-1, 8), q(-1, 16)]);
        let s: ExactSeries = binomial_series(&q(2, 1), 4);
        assert_eq!(s.coeffs(), &[q(1, 1), q(-2, 1), q(1, 1), q(0, 1), q(0, 1)]);
        // [z^n](1-z)^{-5/2} · Γ(5/2) / n^{3/2} → 1.
        let s: FloatSeries = binomial_series(&q(-5, 2), 10_000);
        let r = |n: usize| s.coeff(n) * gamma(2.5) / (n as f64).powf(1.5);
        assert!((r(10_000) - 1.0).abs() < 5e-4);
        assert!((r(10_000) - 1.0).abs() < (r(100) - 1.0).abs());
    }
}
