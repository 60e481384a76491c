//! Scalar types shared by the exact and floating engines.
//!
//! The same recurrence code runs over arbitrary-precision rationals and over
//! `f32`/`f64`. Exact types refuse lossy conversions from `f64`; floating types
//! accumulate dot products with Neumaier compensation.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num, One, ToPrimitive, Zero};

pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync {
    /// Whether arithmetic in this type is exact.
    const EXACT: bool;

    fn from_ratio(r: &BigRational) -> Self;

    /// Lossless conversion from `f64`; exact types return `None`.
    fn from_f64_lossy(x: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn from_u64(n: u64) -> Self {
        Self::from_ratio(&BigRational::from_integer(BigInt::from(n)))
    }

    /// False once a value has overflowed or become NaN.
    fn is_finite_value(&self) -> bool;

    /// `Σ a_i · b_i` over a pairing of two equal-length sequences.
    fn sum_of_products<'a, I>(pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
        Self: 'a;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_f64_lossy(_: f64) -> Option<Self> {
        None
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn sum_of_products<'a, I>(pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        let mut acc = BigRational::zero();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc += a * b;
        }
        acc
    }
}

/// Converts a big rational to the nearest `f64`, including values whose
/// numerator and denominator individually overflow.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = ToPrimitive::to_f64(r) {
        if x.is_finite() && (x != 0.0 || r.is_zero()) {
            return x;
        }
    }
    // Fall back to scaling by bit lengths.
    let num = r.numer();
    let den = r.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = nb - db;
    let (n_s, d_s) = if shift > 0 {
        (num.clone(), den.clone() << (shift as usize))
    } else {
        (num.clone() << ((-shift) as usize), den.clone())
    };
    let mant = ToPrimitive::to_f64(&BigRational::new(n_s, d_s)).unwrap_or(f64::NAN);
    mant * 2f64.powi(shift as i32)
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(r: &BigRational) -> Self {
                ratio_to_f64(r) as $t
            }

            fn from_f64_lossy(x: f64) -> Option<Self> {
                Some(x as $t)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn from_u64(n: u64) -> Self {
                n as $t
            }

            fn is_finite_value(&self) -> bool {
                self.is_finite()
            }

            fn sum_of_products<'a, I>(pairs: I) -> Self
            where
                I: Iterator<Item = (&'a Self, &'a Self)>,
            {
                neumaier_sum(pairs.map(|(a, b)| a * b))
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Floating scalars used by the log-space and asymptotic paths.
pub trait FloatScalar: Scalar + Float {}

impl<T: Scalar + Float> FloatScalar for T {}

/// Compensated (Neumaier) summation.
pub fn neumaier_sum<T: Float, I: IntoIterator<Item = T>>(values: I) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp = comp + ((sum - t) + v);
        } else {
            comp = comp + ((v - t) + sum);
        }
        sum = t;
    }
    sum + comp
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Multinomial coefficient `k! / (k1! k2! k3!)` for `k1 + k2 + k3 = k`.
pub fn multinomial(k1: usize, k2: usize, k3: usize) -> u64 {
    let k = (k1 + k2 + k3) as u64;
    let den = factorial(k1 as u64) * factorial(k2 as u64) * factorial(k3 as u64);
    (factorial(k) / den).to_u64().expect("multinomial fits in u64")
}

/// Natural log of a positive big rational, valid beyond the `f64` range.
pub fn ratio_ln(r: &BigRational) -> f64 {
    use num_traits::Signed;
    assert!(r.is_positive(), "ratio_ln needs a positive argument");
    fn big_ln(x: &BigInt) -> f64 {
        let bits = x.bits();
        if bits < 1000 {
            return x.to_f64().expect("fits").ln();
        }
        let shift = bits - 64;
        let top = (x >> shift).to_f64().expect("fits");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
    big_ln(r.numer()) - big_ln(r.denom())
}
