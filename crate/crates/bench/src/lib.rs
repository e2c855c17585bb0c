//! Shared fixtures for the criterion benchmarks.

use bestmove_core::{Instance, Tour};

/// A uniform and a unit-square instance of size `n`, each with a random tour.
pub fn fixtures(n: usize, seed: u64) -> [(&'static str, Instance, Tour); 2] {
    let tour = Tour::random(n, seed ^ 0x5eed).expect("n >= 4");
    [
        (
            "uniform",
            Instance::uniform(n, seed).expect("n >= 4"),
            tour.clone(),
        ),
        (
            "euclidean",
            Instance::euclidean(n, seed).expect("n >= 4"),
            tour,
        ),
    ]
}
