use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::scalar::{ratio_ln, ratio_to_f64};

/// `p + q·√2` with `p`, `q` in a base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Root2<T> {
    pub p: T,
    pub q: T,
}

impl<T> Root2<T> {
    pub const fn new(p: T, q: T) -> Self {
        Self { p, q }
    }
}

impl<T: Num + Clone> Root2<T> {
    pub fn rational(p: T) -> Self {
        Self::new(p, T::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.p.clone() * c.clone(), self.q.clone() * c.clone())
    }

    /// `x / √2 = q + (p/2)·√2`.
    pub fn div_sqrt2(&self) -> Self {
        let two = T::one() + T::one();
        Self::new(self.q.clone(), self.p.clone() / two)
    }
}

impl<T: Num + Clone> Add for Root2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl<T: Num + Clone> Sub for Root2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl<T: Num + Clone> Mul for Root2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let two = T::one() + T::one();
        Self::new(
            self.p.clone() * rhs.p.clone() + two * self.q.clone() * rhs.q.clone(),
            self.p * rhs.q + self.q * rhs.p,
        )
    }
}

impl<T: Num + Clone + Neg<Output = T>> Neg for Root2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.p, -self.q)
    }
}

impl<T: Num + Clone> Zero for Root2<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl<T: Num + Clone> One for Root2<T> {
    fn one() -> Self {
        Self::rational(T::one())
    }
}

impl Root2<BigRational> {
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.p) + ratio_to_f64(&self.q) * std::f64::consts::SQRT_2
    }

    /// Natural log of a value with nonnegative components, robust to magnitudes
    /// beyond the `f64` range.
    pub fn ln_positive(&self) -> f64 {
        assert!(
            !self.p.is_negative() && !self.q.is_negative() && !self.is_zero(),
            "ln_positive needs nonnegative components"
        );
        let lp = (!self.p.is_zero()).then(|| ratio_ln(&self.p));
        let lq = (!self.q.is_zero()).then(|| ratio_ln(&self.q) + 0.5 * std::f64::consts::LN_2);
        match (lp, lq) {
            (Some(a), Some(b)) => {
                let (hi, lo) = if a > b { (a, b) } else { (b, a) };
                hi + (lo - hi).exp().ln_1p()
            }
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        }
    }

    /// True when the value is positive (exact sign test in `ℚ(√2)`).
    pub fn is_positive(&self) -> bool {
        match (self.p.is_negative(), self.q.is_negative()) {
            (false, false) => !self.is_zero(),
            (true, true) => false,
            // Compare p² with 2q².
            (false, true) => self.p.clone() * &self.p > BigRational::from_integer(BigInt::from(2)) * &self.q * &self.q,
            (true, false) => self.p.clone() * &self.p < BigRational::from_integer(BigInt::from(2)) * &self.q * &self.q,
        }
    }
}

impl fmt::Display for Root2<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√2", self.p, self.q)
    }
}

impl Serialize for Root2<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Root2", 2)?;
        st.serialize_field("p", &self.p.to_string())?;
        st.serialize_field("q", &self.q.to_string())?;
        st.end()
    }
}

/// Fields in which the limit recurrences are evaluated: exactly in `ℚ(√2)`
/// or directly in floating point.
pub trait LimitField: Clone + fmt::Debug + PartialEq + Add<Output = Self> + Mul<Output = Self> {
    fn from_ratio(r: &BigRational) -> Self;
    fn sqrt2() -> Self;
    fn to_f64(&self) -> f64;
}

impl LimitField for Root2<BigRational> {
    fn from_ratio(r: &BigRational) -> Self {
        Root2::rational(r.clone())
    }
    fn sqrt2() -> Self {
        Root2::sqrt2()
    }
    fn to_f64(&self) -> f64 {
        Root2::to_f64(self)
    }
}

impl LimitField for f64 {
    fn from_ratio(r: &BigRational) -> Self {
        ratio_to_f64(r)
    }
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type R = Root2<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt2_squared_is_two() {
        assert_eq!(R::sqrt2() * R::sqrt2(), R::rational(q(2, 1)));
        assert_eq!(R::sqrt2().div_sqrt2(), R::one());
    }

    #[test]
    fn sign_test() {
        assert!(R::new(q(3, 2), q(-1, 1)).is_positive());
        assert!(!R::new(q(1, 1), q(-1, 1)).is_positive());
        assert!(R::new(q(-1, 1), q(1, 1)).is_positive());
    }

    fn arb() -> impl Strategy<Value = R> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(|(a, b, c, d)| R::new(q(a, b), q(c, d)))
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
            let fx = x.to_f64() * y.to_f64();
            prop_assert!(((x * y).to_f64() - fx).abs() <= 1e-9 * (1.0 + fx.abs()));
        }
    }
}
