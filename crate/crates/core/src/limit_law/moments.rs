use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::root2::Root2;
use super::sequences::{a_sequence, abar_sequence, omega_sequence};
use crate::error::{Error, Result};
use crate::scalar::factorial;
use crate::Root2Scalar;

/// A limit moment `rational_part · π^{sqrtpi_power / 2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitMoment {
    pub k: usize,
    pub rational_part: Root2Scalar,
    pub sqrtpi_power: u8,
    pub float_value: f64,
}

impl LimitMoment {
    fn new(k: usize, rational_part: Root2Scalar, sqrtpi_power: u8) -> Self {
        let mut float_value = rational_part.to_f64();
        if sqrtpi_power == 1 {
            float_value *= std::f64::consts::PI.sqrt();
        }
        Self {
            k,
            rational_part,
            sqrtpi_power,
            float_value,
        }
    }

    pub fn times_sqrt_pi(&self) -> bool {
        self.sqrtpi_power == 1
    }

    /// Natural log of the value, valid for large `k`.
    pub fn ln(&self) -> f64 {
        self.rational_part.ln_positive() + 0.5 * f64::from(self.sqrtpi_power) * std::f64::consts::PI.ln()
    }
}

impl Serialize for LimitMoment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LimitMoment", 4)?;
        st.serialize_field("p", &self.rational_part.p.to_string())?;
        st.serialize_field("q", &self.rational_part.q.to_string())?;
        st.serialize_field("times_sqrt_pi", &self.times_sqrt_pi())?;
        st.serialize_field("float", &self.float_value)?;
        st.end()
    }
}

/// `Γ((5k-1)/2)` as `(rational, carries √π)`, via `Γ(m) = (m-1)!` and
/// `Γ(m + 1/2) = (2m)! √π / (4^m m!)`.
fn gamma_five_k_minus_one_half(k: usize) -> (BigRational, bool) {
    let twice = 5 * k as u64 - 1;
    if twice % 2 == 0 {
        (BigRational::from_integer(factorial(twice / 2 - 1)), false)
    } else {
        let m = (twice - 1) / 2;
        let num = factorial(2 * m);
        let den = BigInt::from(4).pow(m as u32) * factorial(m);
        (BigRational::new(num, den), true)
    }
}

/// Divides by `2^{half_exponent / 2}` exactly in `ℚ(√2)`.
fn div_pow2_half(x: Root2Scalar, half_exponent: u64) -> Root2Scalar {
    let whole = BigRational::new(BigInt::one(), BigInt::from(2).pow((half_exponent / 2) as u32));
    let y = x.scale(&whole);
    if half_exponent % 2 == 1 {
        y.div_sqrt2()
    } else {
        y
    }
}

/// `coefficient · √π / Γ((5k-1)/2)`.
fn over_gamma(k: usize, coefficient: Root2Scalar) -> LimitMoment {
    let (g, g_has_sqrt_pi) = gamma_five_k_minus_one_half(k);
    let value = coefficient.scale(&(BigRational::one() / g));
    LimitMoment::new(k, value, if g_has_sqrt_pi { 0 } else { 1 })
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("moment order must be at least 1".into()));
    }
    Ok(())
}

/// `m_k = A_k √π / Γ((5k-1)/2)`, the k-th moment of `Y = lim n^{-5/2} X_n`.
pub fn y_moment(k: usize) -> Result<LimitMoment> {
    check_order(k)?;
    let a = a_sequence(k).pop().expect("k >= 1");
    Ok(over_gamma(k, a))
}

/// `E ξ^k = k! √π ā_k / (2^{(7k-2)/2} Γ((5k-1)/2))`.
pub fn xi_moment(k: usize) -> Result<LimitMoment> {
    check_order(k)?;
    let abar = abar_sequence(k).pop().expect("k >= 1");
    let scaled = abar.scale(&BigRational::from_integer(factorial(k as u64)));
    Ok(over_gamma(k, div_pow2_half(scaled, 7 * k as u64 - 2)))
}

/// `E η^k = k! √π ω_k / (2^{(7k-4)/2} Γ((5k-1)/2))`.
pub fn eta_moment(k: usize) -> Result<LimitMoment> {
    check_order(k)?;
    let omega = omega_sequence(k).pop().expect("k >= 1");
    let scaled = Root2::rational(omega * BigRational::from_integer(factorial(k as u64)));
    Ok(over_gamma(k, div_pow2_half(scaled, 7 * k as u64 - 4)))
}

/// One row of the limit-law table.
#[derive(Debug, Clone, Serialize)]
pub struct LimitRow {
    pub k: usize,
    #[serde(serialize_with = "root2_with_float")]
    pub a: Root2Scalar,
    #[serde(serialize_with = "root2_with_float")]
    pub abar: Root2Scalar,
    #[serde(serialize_with = "ratio_string")]
    pub omega: BigRational,
    pub m: LimitMoment,
    pub xi: LimitMoment,
    pub eta: LimitMoment,
    /// `E ξ^k / E η^k` in floating point.
    pub xi_over_eta: f64,
    /// `ā_k k! / 2^{3k-1} - A_k`, exactly.
    #[serde(serialize_with = "root2_with_float")]
    pub identity_residual: Root2Scalar,
}

fn root2_with_float<S: Serializer>(x: &Root2Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Root2", 4)?;
    st.serialize_field("p", &x.p.to_string())?;
    st.serialize_field("q", &x.q.to_string())?;
    st.serialize_field("times_sqrt_pi", &false)?;
    st.serialize_field("float", &x.to_f64())?;
    st.end()
}

fn ratio_string<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// All limit quantities for `k = 1..=kmax`, with each sequence computed once.
pub fn limit_table(kmax: usize) -> Result<Vec<LimitRow>> {
    check_order(kmax)?;
    let a = a_sequence(kmax);
    let abar = abar_sequence(kmax);
    let omega = omega_sequence(kmax);
    let rows = (1..=kmax)
        .map(|k| {
            let fact = BigRational::from_integer(factorial(k as u64));
            let ak = a[k - 1].clone();
            let abar_k = abar[k - 1].clone();
            let m = over_gamma(k, ak.clone());
            let xi = over_gamma(k, div_pow2_half(abar_k.scale(&fact), 7 * k as u64 - 2));
            let eta = over_gamma(
                k,
                div_pow2_half(Root2::rational(omega[k - 1].clone() * &fact), 7 * k as u64 - 4),
            );
            let back = abar_k.scale(&(fact / BigInt::from(2).pow(3 * k as u32 - 1)));
            let xi_over_eta = (xi.ln() - eta.ln()).exp();
            LimitRow {
                k,
                a: ak.clone(),
                abar: abar_k,
                omega: omega[k - 1].clone(),
                m,
                xi,
                eta,
                xi_over_eta,
                identity_residual: back - ak,
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use std::f64::consts::PI;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gamma_closed_forms() {
        // Γ(2) = 1, Γ(9/2) = 105 √π / 16, Γ(7) = 720.
        assert_eq!(gamma_five_k_minus_one_half(1), (q(1, 1), false));
        assert_eq!(gamma_five_k_minus_one_half(2), (q(105, 16), true));
        assert_eq!(gamma_five_k_minus_one_half(3), (q(720, 1), false));
    }

    #[test]
    fn first_moments() {
        let m1 = y_moment(1).unwrap();
        assert_eq!(m1.rational_part, Root2::new(q(0, 1), q(1, 4)));
        assert!(m1.times_sqrt_pi());
        assert!((m1.float_value - (PI / 8.0).sqrt()).abs() < 1e-12);
        assert!((m1.float_value - 0.626657).abs() < 1e-6);

        let m2 = y_moment(2).unwrap();
        assert_eq!(m2.rational_part, Root2::new(q(2, 105), q(48, 105)));
        assert!(!m2.times_sqrt_pi());
        assert!((m2.float_value - 0.665546).abs() < 1e-6);

        let xi1 = xi_moment(1).unwrap();
        assert!((xi1.float_value - PI.sqrt() / 4.0).abs() < 1e-12);
        let xi2 = xi_moment(2).unwrap();
        assert_eq!(xi2.rational_part, Root2::new(q(2, 210), q(48, 210)));
        assert!((xi2.float_value - 0.332773).abs() < 1e-6);
        assert!(xi2.float_value - xi1.float_value.powi(2) > 0.0);

        let eta1 = eta_moment(1).unwrap();
        assert!((eta1.float_value - PI.sqrt() / 2f64.powf(1.5)).abs() < 1e-12);
        let eta2 = eta_moment(2).unwrap();
        assert_eq!(eta2.rational_part, Root2::rational(q(7, 15)));
        assert!(!eta2.times_sqrt_pi());
        assert!(y_moment(0).is_err());
    }

    #[test]
    fn sqrt_pi_parity() {
        for k in 1..=12 {
            for m in [y_moment(k), xi_moment(k), eta_moment(k)] {
                assert_eq!(m.unwrap().sqrtpi_power, (k % 2) as u8);
            }
        }
    }

    #[test]
    fn y_is_sqrt2_times_xi() {
        for k in 1..=20u32 {
            let y = y_moment(k as usize).unwrap();
            let xi = xi_moment(k as usize).unwrap();
            // 2^{k/2} E ξ^k
            let mut scaled = xi.rational_part.scale(&BigRational::from_integer(BigInt::from(2).pow(k / 2)));
            if k % 2 == 1 {
                scaled = scaled * Root2::sqrt2();
            }
            assert_eq!(y.rational_part, scaled);
        }
    }

    #[test]
    fn table_identity_and_ratios() {
        let rows = limit_table(30).unwrap();
        for r in &rows {
            assert!(r.identity_residual.is_zero(), "k = {}", r.k);
            assert_eq!(r.xi, xi_moment(r.k).unwrap());
        }
        assert!((rows[0].xi_over_eta - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((rows[1].xi_over_eta - (2.0 + 48.0 * 2f64.sqrt()) / 98.0).abs() < 1e-12);
    }

    #[test]
    fn float_rendering_matches_float_recurrence() {
        use crate::limit_law::a_sequence_in;
        use statrs::function::gamma::gamma;
        let a = a_sequence_in::<f64>(20);
        for k in 1..=20 {
            let direct = a[k - 1] * PI.sqrt() / gamma((5 * k - 1) as f64 / 2.0);
            let exact = y_moment(k).unwrap().float_value;
            assert!((exact / direct - 1.0).abs() < 1e-12, "k = {k}");
        }
    }
}
