//! Fits and oracles against published mean evaluation counts.

use bestmove_core::analysis::{
    expected_evals_euclidean, expected_evals_uniform, power_fit, power_fit_fixed_exponent,
};

// n, greedy mean, fixed-threshold oracle column
const UNIFORM: [(f64, f64, f64); 12] = [
    (2000.0, 106_462.0, 169_447.0),
    (4000.0, 304_987.0, 479_629.0),
    (6000.0, 560_647.0, 881_356.0),
    (8000.0, 871_001.0, 1_357_106.0),
    (10000.0, 1_201_409.0, 1_896_756.0),
    (12000.0, 1_567_947.0, 2_493_476.0),
    (14000.0, 1_986_524.0, 3_142_251.0),
    (16000.0, 2_453_347.0, 3_839_197.0),
    (18000.0, 2_910_420.0, 4_581_189.0),
    (20000.0, 3_368_334.0, 5_365_643.0),
    (22000.0, 3_963_375.0, 6_190_371.0),
    (24000.0, 4_486_287.0, 7_053_497.0),
];

const EUCLIDEAN: [(f64, f64, f64); 12] = [
    (2000.0, 15_786.0, 63_100.0),
    (4000.0, 32_811.0, 119_846.0),
    (6000.0, 46_710.0, 176_063.0),
    (8000.0, 61_073.0, 231_907.0),
    (10000.0, 78_926.0, 287_487.0),
    (12000.0, 93_552.0, 342_869.0),
    (14000.0, 110_450.0, 398_093.0),
    (16000.0, 124_632.0, 453_189.0),
    (18000.0, 141_852.0, 508_177.0),
    (20000.0, 156_056.0, 563_072.0),
    (22000.0, 169_574.0, 617_886.0),
    (24000.0, 181_513.0, 672_629.0),
];

fn greedy_points(rows: &[(f64, f64, f64)]) -> Vec<(f64, f64)> {
    rows.iter().map(|&(n, g, _)| (n, g)).collect()
}

#[test]
fn uniform_greedy_exponent() {
    let pts = greedy_points(&UNIFORM);
    let f = power_fit(&pts).unwrap();
    assert!((1.40..=1.60).contains(&f.b), "{f:?}");
    let fixed = power_fit_fixed_exponent(&pts, 1.5).unwrap();
    assert!((fixed.a - 1.20).abs() < 0.06, "{fixed:?}");
}

#[test]
fn euclidean_greedy_exponent() {
    let pts = greedy_points(&EUCLIDEAN);
    let f = power_fit(&pts).unwrap();
    assert!((0.90..=1.15).contains(&f.b), "{f:?}");
    let fixed = power_fit_fixed_exponent(&pts, 1.0).unwrap();
    assert!((fixed.a - 7.7).abs() < 0.4, "{fixed:?}");
}

#[test]
fn uniform_oracle_column() {
    for (n, _, col) in UNIFORM {
        let f = expected_evals_uniform(n as usize, 1.89);
        assert!((f - col).abs() / col < 0.02, "n={n}: {f} vs {col}");
    }
}

#[test]
fn euclidean_oracle_column() {
    for (n, _, col) in [EUCLIDEAN[0], EUCLIDEAN[3], EUCLIDEAN[11]] {
        let f = expected_evals_euclidean(n as usize, 2.5, 4_000_000, 17);
        assert!((f - col).abs() / col < 0.03, "n={n}: {f} vs {col}");
    }
}
