//! Coefficient-level checks of the singular expansions against exact Hadamard products.

use num_rational::BigRational;
use treecut::series_lab::{binomial_series, hadamard_expansion, power_coefficient, verify_mean_expansion};
use treecut::{Error, ExactSeries};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn leading_term_predicts_coefficients_on_a_grid() {
    let n = 10_000;
    let grid = [
        (q(1, 2), q(-3, 1)),
        (q(-1, 2), q(-1, 3)),
        (q(1, 3), q(-2, 1)),
        (q(-3, 2), q(-1, 4)),
        (q(2, 3), q(1, 5)),
        (q(-5, 2), q(-1, 3)),
        (q(3, 2), q(-7, 3)),
    ];
    for (a, b) in grid {
        let exp = hadamard_expansion(&a, &b, 3).unwrap();
        let truth = power_coefficient(&a, n) * power_coefficient(&b, n);
        let predicted = exp.singular_expansion().unwrap().coefficient_estimate(n);
        let ratio = truth / predicted;
        assert!((ratio - 1.0).abs() < 0.01, "(a, b) = ({a}, {b}): ratio {ratio}");
    }
}

#[test]
fn power_coefficients_match_exact_series() {
    for e in [q(1, 2), q(-3, 2), q(-3, 1), q(2, 3)] {
        let s: ExactSeries = binomial_series(&e, 80);
        for n in [10, 63, 64, 80] {
            let exact = treecut::scalar::ratio_to_f64(s.coeff(n));
            let approx = power_coefficient(&e, n);
            assert!((approx - exact).abs() <= 1e-10 * exact.abs(), "e = {e}, n = {n}");
        }
    }
}

#[test]
fn logarithmic_cases_are_rejected() {
    let err = hadamard_expansion(&q(1, 2), &q(-3, 2), 2).unwrap_err();
    assert!(matches!(err, Error::LogarithmicCase { .. }));
}

#[test]
fn mean_layer_converges() {
    let report = verify_mean_expansion(10_000).unwrap();
    let last = report.last();
    assert_eq!(last.n, 10_000);
    assert!((last.toll_tree_ratio - 1.0).abs() < 0.01);
    assert!((last.weighted_mean_ratio - 1.0).abs() < 0.05);
    assert!((last.mean_constant_ratio - 1.0).abs() < 0.02);
}
