use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients `[z^0], ..., [z^N]` of a power series truncated at order `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| T::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 0 { T::one() } else { T::zero() })
    }

    /// `1 / (1 - z)`, the identity for the Hadamard product.
    pub fn geometric(order: usize) -> Self {
        Self::from_fn(order, |_| T::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Coefficient-wise product `Σ f_n g_n z^n`.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        ))
    }

    /// `F ⊙ F ⊙ ... ⊙ F` with `k ≥ 1` factors.
    pub fn hadamard_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        Self::new(
            self.coeffs
                .iter()
                .map(|c| num_traits::pow(c.clone(), k))
                .collect(),
        )
    }

    /// Cauchy product, truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let (a, b) = (&self.coeffs, &other.coeffs);
        Ok(Self::from_fn(self.order(), |n| {
            T::sum_of_products((0..=n).map(|i| (&a[i], &b[n - i])))
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::from_fn(self.order(), |n| {
            self.coeffs[n].clone() + other.coeffs[n].clone()
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self::from_fn(self.order(), |n| {
            self.coeffs[n].clone() - other.coeffs[n].clone()
        }))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// `z · F(z)`, dropping the coefficient pushed past the order.
    pub fn shift_up(&self) -> Self {
        Self::from_fn(self.order(), |n| {
            if n == 0 {
                T::zero()
            } else {
                self.coeffs[n - 1].clone()
            }
        })
    }

    /// `exp(F)` for `F(0) = 0`, from `n e_n = Σ_{k=1}^n k f_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "series exponential needs a zero constant term".into(),
            ));
        }
        let f = &self.coeffs;
        let mut e: Vec<T> = Vec::with_capacity(f.len());
        e.push(T::one());
        for n in 1..f.len() {
            let mut acc = T::zero();
            for k in 1..=n {
                if !f[k].is_zero() {
                    acc = acc + T::from_u64(k as u64) * f[k].clone() * e[n - k].clone();
                }
            }
            e.push(acc / T::from_u64(n as u64));
        }
        Ok(Self::new(e))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries::new(self.coeffs.iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactSeries;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn series(v: &[i64]) -> ExactSeries {
        TruncatedSeries::new(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn hadamard_examples() {
        let one_minus_z = series(&[1, -1, 0, 0]);
        assert_eq!(one_minus_z.hadamard(&one_minus_z).unwrap(), series(&[1, 1, 0, 0]));
        let f = series(&[3, -2, 5, 7]);
        assert_eq!(f.hadamard(&ExactSeries::geometric(3)).unwrap(), f);
        assert_eq!(
            f.hadamard(&series(&[1, 2])),
            Err(Error::OrderMismatch { left: 3, right: 1 })
        );
    }

    #[test]
    fn product_and_exp() {
        let geo = ExactSeries::geometric(5);
        let one_minus_z = series(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(geo.mul(&one_minus_z).unwrap(), ExactSeries::one(5));
        // exp(z) = Σ z^n / n!
        let z = series(&[0, 1, 0, 0, 0]);
        let e = z.exp().unwrap();
        assert_eq!(e.coeff(4), &BigRational::new(1.into(), 24.into()));
        assert!(series(&[1, 1]).exp().is_err());
        assert_eq!(z.shift_up(), series(&[0, 0, 1, 0, 0]));
    }

    fn arb_series() -> impl Strategy<Value = ExactSeries> {
        proptest::collection::vec(-20i64..20, 6).prop_map(|v| series(&v))
    }

    proptest! {
        #[test]
        fn hadamard_algebra(f in arb_series(), g in arb_series(), h in arb_series(), c in -5i64..5) {
            prop_assert_eq!(f.hadamard(&g).unwrap(), g.hadamard(&f).unwrap());
            prop_assert_eq!(
                f.hadamard(&g).unwrap().hadamard(&h).unwrap(),
                f.hadamard(&g.hadamard(&h).unwrap()).unwrap()
            );
            let lhs = f.hadamard(&g.add(&h.scale(&q(c))).unwrap()).unwrap();
            let rhs = f.hadamard(&g).unwrap().add(&f.hadamard(&h).unwrap().scale(&q(c))).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
