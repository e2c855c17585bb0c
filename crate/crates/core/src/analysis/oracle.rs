//! Expected evaluation counts of the fixed-threshold heuristic and limiting
//! success curves.

use std::f64::consts::SQRT_2;

use crate::search::delta_euclidean;

use super::tail::mc_tail_probability;

/// `(n - 3) · n · P(C > δ)` with `P(C > δ) = min(1, α / √n)` for uniform costs.
pub fn expected_evals_uniform(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    let p = (alpha / nf.sqrt()).clamp(0.0, 1.0);
    (nf - 3.0) * nf * p
}

/// `(n - 3) · n · p̂` where `p̂` estimates `P(D > δ)` at the Euclidean
/// threshold by Monte Carlo.
pub fn expected_evals_euclidean(n: usize, alpha: f64, samples: u64, seed: u64) -> f64 {
    let nf = n as f64;
    let delta = delta_euclidean(n, alpha);
    let p = if delta >= SQRT_2 {
        0.0
    } else if delta < 0.0 {
        1.0
    } else {
        mc_tail_probability(delta, samples, seed).estimate
    };
    (nf - 3.0) * nf * p
}

/// Limit of the probability that a uniform instance has no long-short move,
/// `exp(-(α/4)⁴)`.
pub fn no_ls_move_limit(alpha: f64) -> f64 {
    (-(alpha / 4.0).powi(4)).exp()
}

/// Finite-`n` bound `2 (1 - λ⁴/n)^{n/2}` on the probability that a random
/// Euclidean tour has no D-uncrossing witness.
pub fn d_uncross_failure_bound(n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    2.0 * (1.0 - lambda.powi(4) / nf).max(0.0).powf(nf / 2.0)
}

/// Limit `2 / sqrt(e^{λ⁴})` of [`d_uncross_failure_bound`].
pub fn d_uncross_failure_limit(lambda: f64) -> f64 {
    2.0 * (-lambda.powi(4) / 2.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_oracle() {
        let f = expected_evals_uniform(2000, 1.89);
        let closed = 1997.0 * 2000.0 * 1.89 / 2000f64.sqrt();
        assert!((f - closed).abs() < 1e-6);
        assert!((f - 168_790.0).abs() / 168_790.0 < 1e-3);
        assert!((f - 169_447.0).abs() / 169_447.0 < 0.02);
        assert!((expected_evals_uniform(4, 1.5) - 3.0).abs() < 1e-12);
        // probability saturates at one
        assert_eq!(expected_evals_uniform(4, 3.0), 4.0);
    }

    #[test]
    fn euclidean_oracle_edges() {
        assert_eq!(expected_evals_euclidean(2000, 0.0, 10_000, 1), 0.0);
        assert_eq!(expected_evals_euclidean(16, 100.0, 10_000, 1), 13.0 * 16.0);
    }

    #[test]
    fn limits() {
        assert!((no_ls_move_limit(4.0) - (-1f64).exp()).abs() < 1e-15);
        let p = 0.9f64;
        let alpha = 4.0 * (1.0 / (1.0 - p)).ln().powf(0.25);
        assert!((no_ls_move_limit(alpha) - 0.1).abs() < 1e-12);
        for n in [100usize, 10_000, 1_000_000] {
            assert!(d_uncross_failure_bound(n, 1.5) <= d_uncross_failure_limit(1.5));
        }
        let big = d_uncross_failure_bound(100_000_000, 1.5);
        assert!((big - d_uncross_failure_limit(1.5)).abs() < 1e-6);
    }
}
