use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::factorial;

/// `c_k = k^(k-1) / k!`, the exponential weight of rooted labelled trees.
pub fn cayley_weight(k: usize) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "cayley weight is defined for k >= 1".into(),
        ));
    }
    let num = BigInt::from(k).pow((k - 1) as u32);
    Ok(BigRational::new(num, factorial(k as u64)))
}

/// Probability that the first cut of a uniform free tree of size `n` leaves
/// an ordered pair of parts with sizes `(k, n - k)`.
///
/// Evaluated from the counting formula
/// `C(n,k) k^(k-1) (n-k)^(n-k-1) / (2 (n-1) n^(n-2))`.
pub fn split_probability(n: usize, k: usize) -> Result<BigRational> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::NoSuchSplit { n, k });
    }
    let binom = factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64));
    let rooted = BigInt::from(k).pow((k - 1) as u32) * BigInt::from(n - k).pow((n - k - 1) as u32);
    let den = BigInt::from(2 * (n - 1)) * BigInt::from(n).pow((n - 2) as u32);
    Ok(BigRational::new(binom * rooted, den))
}

/// Memoized Cayley weights `c_1, c_2, ...`.
#[derive(Debug, Clone, Default)]
pub struct CayleyWeights {
    weights: Vec<BigRational>,
}

impl CayleyWeights {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn up_to(nmax: usize) -> Self {
        let mut w = Self::new();
        if nmax > 0 {
            w.get(nmax);
        }
        w
    }

    /// `c_k`; `k` must be at least 1.
    pub fn get(&mut self, k: usize) -> &BigRational {
        assert!(k >= 1, "cayley weights start at k = 1");
        while self.weights.len() < k {
            let next = self.weights.len() + 1;
            self.weights.push(cayley_weight(next).expect("k >= 1"));
        }
        &self.weights[k - 1]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.weights
    }

    /// The split row of size `n`, from the weight form `n / (2(n-1)) · c_k c_{n-k} / c_n`.
    pub fn split_law(&mut self, n: usize) -> Result<SplitLaw> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "split law needs n >= 2, got {n}"
            )));
        }
        self.get(n);
        let c = &self.weights;
        let pre = BigRational::new(BigInt::from(n), BigInt::from(2 * (n - 1))) / &c[n - 1];
        let probs = (1..n).map(|k| &pre * &c[k - 1] * &c[n - k - 1]).collect();
        Ok(SplitLaw { n, probs })
    }
}

/// The law of the ordered first-cut sizes of a uniform free tree of size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitLaw {
    pub n: usize,
    /// `probs[k - 1] = p(n, k)` for `k = 1..n-1`.
    pub probs: Vec<BigRational>,
}

impl SplitLaw {
    pub fn prob(&self, k: usize) -> Option<&BigRational> {
        if k == 0 {
            return None;
        }
        self.probs.get(k - 1)
    }

    pub fn total(&self) -> BigRational {
        self.probs.iter().fold(BigRational::zero(), |acc, p| acc + p)
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.probs.iter().map(crate::scalar::ratio_to_f64).collect()
    }
}

/// `split_law(n)` with a fresh weight cache.
pub fn split_law(n: usize) -> Result<SplitLaw> {
    CayleyWeights::new().split_law(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn weights() {
        assert_eq!(cayley_weight(1).unwrap(), q(1, 1));
        assert_eq!(cayley_weight(3).unwrap(), q(3, 2));
        assert_eq!(cayley_weight(4).unwrap(), q(8, 3));
        assert!(cayley_weight(0).is_err());
    }

    #[test]
    fn split_probabilities() {
        assert_eq!(split_probability(2, 1).unwrap(), q(1, 1));
        assert_eq!(split_probability(3, 1).unwrap(), q(1, 2));
        assert_eq!(split_probability(4, 2).unwrap(), q(1, 4));
        assert_eq!(
            split_probability(4, 0),
            Err(Error::NoSuchSplit { n: 4, k: 0 })
        );
        assert!(split_probability(4, 4).is_err());
        assert!(split_probability(1, 1).is_err());
    }

    #[test]
    fn split_laws() {
        assert_eq!(split_law(4).unwrap().probs, vec![q(3, 8), q(1, 4), q(3, 8)]);
        assert_eq!(split_law(2).unwrap().probs, vec![q(1, 1)]);
        assert!(split_law(1).is_err());
    }

    #[test]
    fn weight_form_matches_counting_form() {
        let mut cache = CayleyWeights::new();
        for n in 2..=40 {
            let law = cache.split_law(n).unwrap();
            assert!(law.is_normalized(), "n = {n}");
            for k in 1..n {
                assert_eq!(law.prob(k).unwrap(), &split_probability(n, k).unwrap());
                assert_eq!(law.prob(k), law.prob(n - k));
            }
        }
    }
}
