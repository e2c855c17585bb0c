//! Tail of the distance between two uniform points in the unit square.

use std::f64::consts::SQRT_2;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::{derive_seed, seeded};

/// Lower end (exclusive) of the range where [`tail_bound`] is valid.
pub const TAIL_BOUND_MIN_D: f64 = 1.055;

const SHARDS: u64 = 64;

/// Upper bound `(7/16) (1 - sqrt(d² - 1))⁴` on `P(D > d)`, valid for
/// `1.055 < d <= √2`.
pub fn tail_bound(d: f64) -> Result<f64> {
    if !(d > TAIL_BOUND_MIN_D && d <= SQRT_2) {
        return Err(Error::OutOfRange {
            what: "d",
            value: d,
            range: "(1.055, sqrt 2]",
        });
    }
    let z = (d * d - 1.0).sqrt();
    Ok(7.0 / 16.0 * (1.0 - z).powi(4))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub estimate: f64,
    /// Binomial standard error `sqrt(p (1 - p) / samples)`.
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
}

/// Fraction of `samples` independent point pairs in the unit square whose
/// distance exceeds `d`.
///
/// Samples are split over a fixed number of shards with derived seeds, so the
/// result does not depend on the thread count.
pub fn mc_tail_probability(d: f64, samples: u64, seed: u64) -> TailEstimate {
    assert!(samples > 0, "at least one sample is required");
    let d2 = d * d;
    let hits: u64 = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let count = samples / SHARDS + u64::from(shard < samples % SHARDS);
            let mut rng = seeded(derive_seed(seed, &[shard]));
            let mut hits = 0u64;
            for _ in 0..count {
                let dx = rng.random::<f64>() - rng.random::<f64>();
                let dy = rng.random::<f64>() - rng.random::<f64>();
                hits += u64::from(dx * dx + dy * dy > d2);
            }
            hits
        })
        .sum();
    let p = hits as f64 / samples as f64;
    TailEstimate {
        estimate: p,
        std_error: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        hits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert!(tail_bound(SQRT_2).unwrap() < 1e-60);
        let expected = 7.0 / 16.0 * (1.0 - 0.21f64.sqrt()).powi(4);
        assert!((tail_bound(1.1).unwrap() - expected).abs() < 1e-15);
        assert!((tail_bound(1.1).unwrap() - 0.037_683_35).abs() < 1e-8);
        assert!(tail_bound(1.0).is_err());
        assert!(tail_bound(1.055).is_err());
        assert!(tail_bound(1.5).is_err());
    }

    #[test]
    fn bound_decreasing() {
        let ds: Vec<f64> = (0..100)
            .map(|k| 1.056 + k as f64 * (SQRT_2 - 1.056) / 99.0)
            .collect();
        let vals: Vec<f64> = ds
            .iter()
            .map(|&d| tail_bound(d.min(SQRT_2)).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn trivial_estimates() {
        let e = mc_tail_probability(0.0, 10_000, 1);
        assert_eq!(e.estimate, 1.0);
        assert_eq!(e.std_error, 0.0);
        assert_eq!(mc_tail_probability(SQRT_2, 10_000, 1).estimate, 0.0);
        assert_eq!(mc_tail_probability(0.7, 10_001, 3).samples, 10_001);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            mc_tail_probability(1.1, 50_000, 9),
            mc_tail_probability(1.1, 50_000, 9)
        );
    }
}
