use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::gamma::{gamma, ln_gamma};

use super::special::binomial_series;
use crate::error::{Error, Result};
use crate::scalar::{factorial, ratio_to_f64};

/// A coefficient known exactly when every gamma factor cancels its `√π`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionCoefficient {
    #[serde(serialize_with = "opt_ratio")]
    pub exact: Option<BigRational>,
    pub value: f64,
}

fn opt_ratio<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl ExpansionCoefficient {
    fn exact(r: BigRational) -> Self {
        let value = ratio_to_f64(&r);
        Self { exact: Some(r), value }
    }

    fn zero() -> Self {
        Self::exact(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0.0 && self.exact.as_ref().is_none_or(|r| r.is_zero())
    }
}

/// Coefficients of `(1-z)^a ⊙ (1-z)^b ~ Σ λ_k (1-z)^k / k! + Σ μ_k (1-z)^{a+b+1+k} / k!`.
#[derive(Debug, Clone, Serialize)]
pub struct HadamardExpansion {
    #[serde(serialize_with = "ratio_str")]
    pub a: BigRational,
    #[serde(serialize_with = "ratio_str")]
    pub b: BigRational,
    pub lambda: Vec<ExpansionCoefficient>,
    pub mu: Vec<ExpansionCoefficient>,
}

fn ratio_str<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Gamma at a point of `½ℤ`, as `ratio · √π^{sqrt_pi}`.
#[derive(Debug, Clone, PartialEq)]
enum HalfGamma {
    Pole,
    Value { ratio: BigRational, sqrt_pi: i32 },
}

fn half_gamma(x: &BigRational) -> Option<HalfGamma> {
    let twice = x * BigInt::from(2);
    if !twice.is_integer() {
        return None;
    }
    if x.is_integer() {
        let n = x.to_integer();
        if !n.is_positive() {
            return Some(HalfGamma::Pole);
        }
        let n = n.to_u64()?;
        return Some(HalfGamma::Value {
            ratio: BigRational::from_integer(factorial(n - 1)),
            sqrt_pi: 0,
        });
    }
    // x = m + 1/2
    let m = (x - BigRational::new(1.into(), 2.into())).to_integer();
    let ratio = if !m.is_negative() {
        let m = m.to_u64()?;
        BigRational::new(factorial(2 * m), BigInt::from(4).pow(m as u32) * factorial(m))
    } else {
        // Γ(1/2 - j) = (-4)^j j! √π / (2j)!
        let j = (-m).to_u64()?;
        BigRational::new(BigInt::from(-4).pow(j as u32) * factorial(j), factorial(2 * j))
    };
    Some(HalfGamma::Value { ratio, sqrt_pi: 1 })
}

fn is_natural(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}

fn reciprocal_gamma_f64(x: f64) -> f64 {
    if x <= 0.0 && x.fract() == 0.0 {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// `Γ(top) / (Γ(bottom1) Γ(bottom2))`, exact on `½ℤ` when the `√π` powers cancel.
fn gamma_ratio(top: &BigRational, b1: &BigRational, b2: &BigRational) -> ExpansionCoefficient {
    if let (Some(t), Some(g1), Some(g2)) = (half_gamma(top), half_gamma(b1), half_gamma(b2)) {
        if matches!(g1, HalfGamma::Pole) || matches!(g2, HalfGamma::Pole) {
            return ExpansionCoefficient::zero();
        }
        if let (
            HalfGamma::Value { ratio: rt, sqrt_pi: pt },
            HalfGamma::Value { ratio: r1, sqrt_pi: p1 },
            HalfGamma::Value { ratio: r2, sqrt_pi: p2 },
        ) = (t, g1, g2)
        {
            let ratio = rt / (r1 * r2);
            let power = pt - p1 - p2;
            if power == 0 {
                return ExpansionCoefficient::exact(ratio);
            }
            let value = ratio_to_f64(&ratio) * std::f64::consts::PI.sqrt().powi(power);
            return ExpansionCoefficient { exact: None, value };
        }
    }
    let value = gamma(ratio_to_f64(top))
        * reciprocal_gamma_f64(ratio_to_f64(b1))
        * reciprocal_gamma_f64(ratio_to_f64(b2));
    ExpansionCoefficient { exact: None, value }
}

/// `prefactor · Π_{i<k} (x+i)(y+i)/(w+i)` for `k = 0..=kmax`.
fn rising_ratio_series(
    prefactor: ExpansionCoefficient,
    x: &BigRational,
    y: &BigRational,
    w: &BigRational,
    kmax: usize,
) -> Vec<ExpansionCoefficient> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut prod = BigRational::one();
    for k in 0..=kmax {
        let coeff = match &prefactor.exact {
            Some(e) => ExpansionCoefficient::exact(e * &prod),
            None => ExpansionCoefficient {
                exact: None,
                value: prefactor.value * ratio_to_f64(&prod),
            },
        };
        out.push(coeff);
        let i = BigRational::from_integer(BigInt::from(k));
        let den = w + &i;
        debug_assert!(!den.is_zero(), "denominator vanishes only in excluded cases");
        prod = prod * (x + &i) * (y + &i) / den;
    }
    out
}

/// Re-expands the polynomial `(1-z)^m ⊙ (1-z)^b` in powers of `w = 1 - z`.
fn polynomial_lambda(m: u64, b: &BigRational, kmax: usize) -> Vec<ExpansionCoefficient> {
    let g = binomial_series::<BigRational>(b, m as usize);
    // H(z) = Σ_n C(m,n) (-1)^n g_n z^n, z^n = Σ_j C(n,j) (-w)^j.
    let h: Vec<BigRational> = (0..=m)
        .map(|n| {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            BigRational::from_integer(binomial(BigInt::from(m), BigInt::from(n)) * sign) * g.coeff(n as usize)
        })
        .collect();
    (0..=kmax as u64)
        .map(|k| {
            if k > m {
                return ExpansionCoefficient::zero();
            }
            let mut w_k = BigRational::zero();
            for n in k..=m {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                w_k += &h[n as usize] * BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)) * sign);
            }
            ExpansionCoefficient::exact(w_k * BigRational::from_integer(factorial(k)))
        })
        .collect()
}

/// λ/μ coefficients of the Hadamard product `(1-z)^a ⊙ (1-z)^b` for `k = 0..=kmax`:
///
/// `λ_k = Γ(1+a+b)/(Γ(1+a)Γ(1+b)) · (-a)^(k)(-b)^(k)/(-a-b)^(k)`,
/// `μ_k = Γ(-1-a-b)/(Γ(-a)Γ(-b)) · (1+a)^(k)(1+b)^(k)/(2+a+b)^(k)`,
/// with `x^(k)` the rising factorial. A gamma pole in a denominator makes the
/// whole family zero. When `a + b` is an integer the expansion carries
/// logarithms unless one exponent is a natural number, in which case the
/// product is a polynomial and `μ` vanishes.
pub fn hadamard_expansion(a: &BigRational, b: &BigRational, kmax: usize) -> Result<HadamardExpansion> {
    let s = a + b;
    let one = BigRational::one();
    if s.is_integer() {
        let (m, other) = if is_natural(a) {
            (a, b)
        } else if is_natural(b) {
            (b, a)
        } else {
            return Err(Error::LogarithmicCase {
                a: a.to_string(),
                b: b.to_string(),
            });
        };
        let m = m.to_integer().to_u64().ok_or_else(|| {
            Error::InvalidArgument(format!("exponent {m} is too large"))
        })?;
        return Ok(HadamardExpansion {
            a: a.clone(),
            b: b.clone(),
            lambda: polynomial_lambda(m, other, kmax),
            mu: vec![ExpansionCoefficient::zero(); kmax + 1],
        });
    }
    let lambda_pre = gamma_ratio(&(&one + &s), &(&one + a), &(&one + b));
    let lambda = rising_ratio_series(lambda_pre, &-a, &-b, &-&s, kmax);
    let mu_pre = gamma_ratio(&(-&one - &s), &-a, &-b);
    let two = &one + &one;
    let mu = rising_ratio_series(mu_pre, &(&one + a), &(&one + b), &(&two + &s), kmax);
    Ok(HadamardExpansion {
        a: a.clone(),
        b: b.clone(),
        lambda,
        mu,
    })
}

/// `[z^n] (1 - z)^e` in floating point, via log-gamma for large `n`.
pub fn power_coefficient(e: &BigRational, n: usize) -> f64 {
    if is_natural(e) {
        let m = e.to_integer().to_u64().unwrap_or(u64::MAX);
        if n as u64 > m {
            return 0.0;
        }
    }
    if n < 64 {
        return *binomial_series::<f64>(e, n).coeff(n);
    }
    // Γ(n - e) / (Γ(-e) Γ(n + 1))
    let ef = ratio_to_f64(e);
    let mag = (ln_gamma(n as f64 - ef) - ln_gamma(n as f64 + 1.0)).exp();
    mag * reciprocal_gamma_f64(-ef)
}

/// `Σ c_j (1-z)^{α_j} + O(|1-z|^A)` with strictly increasing exponents.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularExpansion {
    pub terms: Vec<(f64, String)>,
    #[serde(skip)]
    exponents: Vec<BigRational>,
    pub error_exponent: String,
}

impl SingularExpansion {
    pub fn new(mut terms: Vec<(f64, BigRational)>, error_exponent: BigRational) -> Result<Self> {
        terms.sort_by(|x, y| x.1.cmp(&y.1));
        if terms.windows(2).any(|w| w[0].1 == w[1].1) {
            return Err(Error::InvalidArgument("repeated exponent in singular expansion".into()));
        }
        if terms.last().is_some_and(|t| t.1 >= error_exponent) {
            return Err(Error::InvalidArgument("term beyond the error exponent".into()));
        }
        Ok(Self {
            exponents: terms.iter().map(|t| t.1.clone()).collect(),
            terms: terms.iter().map(|(c, e)| (*c, e.to_string())).collect(),
            error_exponent: error_exponent.to_string(),
        })
    }

    pub fn exponents(&self) -> &[BigRational] {
        &self.exponents
    }

    /// The dominant term that drives coefficient asymptotics: the smallest
    /// exponent that is not a natural number.
    pub fn leading_singular_term(&self) -> Option<(f64, &BigRational)> {
        self.terms
            .iter()
            .zip(&self.exponents)
            .find(|(_, e)| !is_natural(e))
            .map(|((c, _), e)| (*c, e))
    }

    /// Predicted `[z^n]` from the non-polynomial terms.
    pub fn coefficient_estimate(&self, n: usize) -> f64 {
        self.terms
            .iter()
            .zip(&self.exponents)
            .filter(|(_, e)| !is_natural(e))
            .map(|((c, _), e)| c * power_coefficient(e, n))
            .sum()
    }
}

impl HadamardExpansion {
    /// Drops zero coefficients and divides by `k!`.
    pub fn singular_expansion(&self) -> Result<SingularExpansion> {
        let kmax = self.lambda.len() - 1;
        let shift = &self.a + &self.b + BigRational::one();
        let mut terms = Vec::new();
        for k in 0..=kmax {
            let fact = ratio_to_f64(&BigRational::from_integer(factorial(k as u64)));
            let kq = BigRational::from_integer(BigInt::from(k));
            if !self.lambda[k].is_zero() {
                terms.push((self.lambda[k].value / fact, kq.clone()));
            }
            if !self.mu[k].is_zero() {
                terms.push((self.mu[k].value / fact, &shift + &kq));
            }
        }
        let next = BigRational::from_integer(BigInt::from(kmax + 1));
        let error = next.clone().min(&shift + &next);
        // Terms of one family past the truncation of the other are not significant.
        terms.retain(|t| t.1 < error);
        SingularExpansion::new(terms, error)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series_lab::TruncatedSeries;
    use crate::ExactSeries;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn half_gamma_values() {
        assert_eq!(half_gamma(&q(3, 1)), Some(HalfGamma::Value { ratio: q(2, 1), sqrt_pi: 0 }));
        assert_eq!(half_gamma(&q(-2, 1)), Some(HalfGamma::Pole));
        assert_eq!(half_gamma(&q(-1, 2)), Some(HalfGamma::Value { ratio: q(-2, 1), sqrt_pi: 1 }));
        assert_eq!(half_gamma(&q(3, 2)), Some(HalfGamma::Value { ratio: q(1, 2), sqrt_pi: 1 }));
        assert_eq!(half_gamma(&q(1, 3)), None);
    }

    #[test]
    fn linear_times_linear() {
        let e = hadamard_expansion(&q(1, 1), &q(1, 1), 3).unwrap();
        assert_eq!(e.lambda[0].exact, Some(q(2, 1)));
        assert_eq!(e.lambda[1].exact, Some(q(-1, 1)));
        assert!(e.lambda[2].is_zero() && e.lambda[3].is_zero());
        assert!(e.mu.iter().all(|m| m.is_zero()));
        // 2 - (1 - z) = 1 + z, which is (1-z) ⊙ (1-z).
        let one_minus_z: ExactSeries = TruncatedSeries::new(vec![q(1, 1), q(-1, 1), q(0, 1)]);
        let h = one_minus_z.hadamard(&one_minus_z).unwrap();
        assert_eq!(h.coeffs(), &[q(1, 1), q(1, 1), q(0, 1)]);
    }

    #[test]
    fn polynomial_case_with_negative_integer() {
        // (1-z)^2 ⊙ 1/(1-z) = (1-z)^2.
        let e = hadamard_expansion(&q(2, 1), &q(-1, 1), 3).unwrap();
        let lam: Vec<_> = e.lambda.iter().map(|c| c.exact.clone().unwrap()).collect();
        assert_eq!(lam, vec![q(0, 1), q(0, 1), q(2, 1), q(0, 1)]);
    }

    #[test]
    fn formula_path_matches_polynomial_route() {
        // a natural, b non-integer goes through the gamma formula.
        let e = hadamard_expansion(&q(1, 1), &q(1, 2), 3).unwrap();
        assert_eq!(e.lambda[0].exact, Some(q(3, 2)));
        assert_eq!(e.lambda[1].exact, Some(q(-1, 2)));
        assert!(e.mu.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn square_root_against_cube_pole() {
        let e = hadamard_expansion(&q(1, 2), &q(-3, 1), 4).unwrap();
        assert_eq!(e.mu[0].exact, Some(q(-1, 8)));
        assert!(e.lambda.iter().all(|l| l.is_zero()));
        let s = e.singular_expansion().unwrap();
        let (c, exp) = s.leading_singular_term().unwrap();
        assert_eq!(exp, &q(-3, 2));
        assert_eq!(c, -0.125);
    }

    #[test]
    fn logarithmic_case_rejected() {
        assert!(matches!(
            hadamard_expansion(&q(1, 2), &q(1, 2), 2),
            Err(Error::LogarithmicCase { .. })
        ));
        assert!(matches!(
            hadamard_expansion(&q(-1, 1), &q(-2, 1), 2),
            Err(Error::LogarithmicCase { .. })
        ));
    }

    #[test]
    fn power_coefficients() {
        assert_eq!(power_coefficient(&q(2, 1), 3), 0.0);
        assert!((power_coefficient(&q(-1, 1), 500) - 1.0).abs() < 1e-12);
        let direct = *binomial_series::<f64>(&q(-3, 2), 200).coeff(200);
        assert!((power_coefficient(&q(-3, 2), 200) / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_expansion_orders_terms() {
        let s = SingularExpansion::new(vec![(1.0, q(1, 2)), (2.0, q(-1, 1))], q(1, 1)).unwrap();
        assert_eq!(s.exponents(), &[q(-1, 1), q(1, 2)]);
        assert!(SingularExpansion::new(vec![(1.0, q(1, 2)), (2.0, q(1, 2))], q(1, 1)).is_err());
    }
}
