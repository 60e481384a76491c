//! Cross-checks between independent routes through the exact engine.

use num_rational::BigRational;
use num_traits::{One, Zero};
use treecut::exact_engine::{
    distribution_oracle, exact_moments, float_moments, split_law, split_probability, CayleyWeights,
};
use treecut::Scalar;

#[test]
fn split_laws_are_symmetric_and_normalized() {
    let mut weights = CayleyWeights::new();
    for n in 2..=60 {
        let law = weights.split_law(n).unwrap();
        assert!(law.total().is_one());
        for k in 1..n {
            assert_eq!(law.prob(k), law.prob(n - k));
            assert_eq!(law.prob(k).unwrap(), &split_probability(n, k).unwrap());
        }
    }
}

#[test]
fn oracle_matches_recurrence_up_to_budget() {
    let table = exact_moments(12, 4).unwrap();
    for n in 1..=12 {
        let law = distribution_oracle(n).unwrap();
        assert!(law.total_probability().is_one());
        for k in 1..=4 {
            assert_eq!(law.moment(k as u32), table.moment(n, k), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn jensen_and_alternate_mean() {
    let table = exact_moments(60, 2).unwrap();
    let mut a = vec![BigRational::zero(); 61];
    for n in 2..=60 {
        let m1 = table.moment(n, 1);
        assert!(table.moment(n, 2) >= &m1 * &m1);
        let law = split_law(n).unwrap();
        let two = BigRational::from_integer(2.into());
        let mut alt = BigRational::from_integer((n * n).into());
        for j in 1..n {
            alt += &two * law.prob(j).unwrap() * &a[j];
        }
        assert_eq!(alt, m1, "n = {n}");
        a[n] = m1;
    }
}

#[test]
fn float_engine_tracks_exact_engine() {
    let exact = exact_moments(150, 3).unwrap();
    let float = float_moments::<f64>(150, 3).unwrap();
    for n in 1..=150 {
        for k in 1..=3 {
            let e = exact.moment(n, k).to_f64();
            let f = float.moment(n, k);
            assert!((f - e).abs() <= 1e-10 * e.abs().max(1e-300), "n = {n}, k = {k}: {f} vs {e}");
        }
    }
}
