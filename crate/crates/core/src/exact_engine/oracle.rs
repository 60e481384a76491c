use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::cayley::CayleyWeights;
use super::toll::Toll;
use super::ORACLE_BUDGET;
use crate::error::{Error, Result};

/// The exact law of the total cutting cost `X_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution {
    pub n: usize,
    /// `(value, probability)` sorted by value, values distinct.
    pub atoms: Vec<(u64, BigRational)>,
}

impl ExactDistribution {
    fn point(n: usize, value: u64) -> Self {
        Self {
            n,
            atoms: vec![(value, BigRational::one())],
        }
    }

    pub fn moment(&self, k: u32) -> BigRational {
        self.atoms.iter().fold(BigRational::zero(), |acc, (v, p)| {
            acc + BigRational::from_integer(BigInt::from(*v).pow(k)) * p
        })
    }

    pub fn total_probability(&self) -> BigRational {
        self.atoms.iter().fold(BigRational::zero(), |acc, (_, p)| acc + p)
    }

    pub fn probability_of(&self, value: u64) -> BigRational {
        self.atoms
            .binary_search_by_key(&value, |(v, _)| *v)
            .map(|i| self.atoms[i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }
}

/// Exact law of `X_n` under the square toll, for `n` within the default budget.
pub fn distribution_oracle(n: usize) -> Result<ExactDistribution> {
    distribution_oracle_with(n, &Toll::default(), ORACLE_BUDGET)
}

/// Dynamic program over sizes: the law at `m` mixes the convolutions of the
/// laws at `k` and `m - k` with weights `p(m, k)`, shifted by the toll `b_m`.
pub fn distribution_oracle_with(
    n: usize,
    toll: &Toll,
    budget: usize,
) -> Result<ExactDistribution> {
    if n == 0 {
        return Err(Error::InvalidArgument("tree size must be at least 1".into()));
    }
    if n > budget {
        return Err(Error::Budget(format!(
            "distribution oracle is limited to n <= {budget} (requested {n})"
        )));
    }
    let mut cache = CayleyWeights::new();
    let mut laws: Vec<ExactDistribution> = vec![ExactDistribution::point(1, 0)];
    for m in 2..=n {
        let split = cache.split_law(m)?;
        let shift = toll.at(m);
        let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
        for k in 1..m {
            let pk = split.prob(k).expect("1 <= k < m");
            let (left, right) = (&laws[k - 1], &laws[m - k - 1]);
            for (lv, lp) in &left.atoms {
                let w = pk * lp;
                for (rv, rp) in &right.atoms {
                    *acc.entry(lv + rv + shift).or_insert_with(BigRational::zero) += &w * rp;
                }
            }
        }
        laws.push(ExactDistribution {
            n: m,
            atoms: acc.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        });
    }
    Ok(laws.pop().expect("at least one law"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tiny_laws() {
        assert_eq!(distribution_oracle(1).unwrap().atoms, vec![(0, q(1, 1))]);
        assert_eq!(distribution_oracle(2).unwrap().atoms, vec![(4, q(1, 1))]);
        assert_eq!(distribution_oracle(3).unwrap().atoms, vec![(13, q(1, 1))]);
        assert_eq!(
            distribution_oracle(4).unwrap().atoms,
            vec![(24, q(1, 4)), (29, q(3, 4))]
        );
    }

    #[test]
    fn law_of_four_moments() {
        let d = distribution_oracle(4).unwrap();
        assert_eq!(d.moment(1), q(111, 4));
        assert_eq!(d.moment(2), q(3099, 4));
    }

    #[test]
    fn normalized_and_sorted() {
        for n in 1..=ORACLE_BUDGET {
            let d = distribution_oracle(n).unwrap();
            assert!(d.total_probability().is_one());
            assert!(d.atoms.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn budget() {
        assert!(matches!(distribution_oracle(13), Err(Error::Budget(_))));
        assert!(distribution_oracle(0).is_err());
    }
}
