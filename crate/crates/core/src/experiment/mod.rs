//! Deterministic experiment runner.
//!
//! Every instance and tour is generated from a seed derived from the master
//! seed and its coordinates: instances from `[n, instance]`, tours from
//! `[n, instance, tour]`. Results are sorted by `(n, instance, tour)` before
//! they are written, so output does not depend on scheduling.

mod best_move;
mod converge;
mod fit;
mod output;
mod validate;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rng::derive_seed;
use crate::search::{delta_euclidean, delta_uniform, Algorithm, SearchVariant};
use crate::tour::Tour;
use crate::tsplib::read_tsplib;

pub use best_move::{run_best_move, AggregateRow, BestMoveReport, TrialRow};
pub use converge::{run_converge, ConvergeReport, ConvergeRow};
pub use fit::{fit_aggregates, read_aggregates, FitRow};
pub use output::{
    write_aggregates, write_converge, write_fits, write_trials, write_validation, CsvOptions,
};
pub use validate::{run_validate, ValidateOptions};

/// Error type of the CSV writers.
pub use csv::Error as CsvError;

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Uniform,
    Euclidean,
    /// A single TSPLIB instance; the plan's sizes are ignored.
    Tsplib(PathBuf),
}

impl Distribution {
    pub fn label(&self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Euclidean => "euclidean",
            Distribution::Tsplib(_) => "tsplib",
        }
    }

    /// The threshold schedule's default `α`: 1.89 for uniform costs, 2.5 for
    /// the unit square.
    pub fn default_alpha(&self) -> f64 {
        match self {
            Distribution::Uniform => 1.89,
            _ => 2.5,
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Tsplib(p) => write!(f, "tsplib:{}", p.display()),
            d => f.write_str(d.label()),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "uniform" => Ok(Distribution::Uniform),
            "euclidean" => Ok(Distribution::Euclidean),
            other => match other.strip_prefix("tsplib:") {
                Some(path) if !path.is_empty() => Ok(Distribution::Tsplib(path.into())),
                _ => Err(Error::Usage(format!(
                    "unknown distribution `{other}` (expected uniform, euclidean or tsplib:<path>)"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub distribution: Distribution,
    pub sizes: Vec<usize>,
    pub instances_per_size: usize,
    pub tours_per_instance: usize,
    pub algorithms: Vec<Algorithm>,
    pub variant: SearchVariant,
    /// Defaults to the distribution's [`default_alpha`](Distribution::default_alpha).
    pub alpha: Option<f64>,
    /// Absolute threshold for the fixed-threshold search, overriding the
    /// schedule. Required on TSPLIB instances.
    pub delta: Option<f64>,
    pub betas: Vec<f64>,
    pub seed: u64,
    /// Monte-Carlo samples for the Euclidean evaluation oracle.
    pub oracle_samples: u64,
    /// Adds a wall-clock column to per-trial output. Informational only.
    pub timing: bool,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            distribution: Distribution::Uniform,
            sizes: vec![1000, 2000, 4000, 8000],
            instances_per_size: 10,
            tours_per_instance: 10,
            algorithms: Algorithm::ALL.to_vec(),
            variant: SearchVariant::BASIC,
            alpha: None,
            delta: None,
            betas: vec![0.3, 0.4, 0.5],
            seed: 1,
            oracle_samples: 10_000_000,
            timing: false,
        }
    }
}

/// One instance of a plan, with its coordinates.
pub(crate) struct PlannedInstance {
    pub n: usize,
    pub index: usize,
    pub instance: Instance,
}

impl ExperimentPlan {
    pub fn alpha(&self) -> f64 {
        self.alpha
            .unwrap_or_else(|| self.distribution.default_alpha())
    }

    pub fn trials_per_size(&self) -> usize {
        self.instances_per_size * self.tours_per_instance
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() && !matches!(self.distribution, Distribution::Tsplib(_)) {
            return Err(Error::Usage("the size list is empty".into()));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 4) {
            return Err(Error::InvalidSize(n));
        }
        if self.trials_per_size() == 0 {
            return Err(Error::Usage(
                "instances per size and tours per instance must both be at least 1".into(),
            ));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Usage("no algorithms selected".into()));
        }
        let alpha = self.alpha();
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::OutOfRange {
                what: "alpha",
                value: alpha,
                range: "(0, inf)",
            });
        }
        if let Some(&b) = self.betas.iter().find(|&&b| !(b > 0.0 && b <= 0.5)) {
            return Err(Error::OutOfRange {
                what: "beta",
                value: b,
                range: "(0, 0.5]",
            });
        }
        if matches!(self.distribution, Distribution::Tsplib(_))
            && self.delta.is_none()
            && self.algorithms.contains(&Algorithm::Fixed)
        {
            return Err(Error::Usage(
                "the fixed-threshold search on a TSPLIB instance needs an explicit --delta".into(),
            ));
        }
        Ok(())
    }

    /// Threshold used by the fixed-threshold search at size `n`.
    pub fn delta_for(&self, n: usize) -> f64 {
        if let Some(d) = self.delta {
            return d;
        }
        match self.distribution {
            Distribution::Uniform => delta_uniform(n, self.alpha()),
            _ => delta_euclidean(n, self.alpha()),
        }
    }

    pub fn instance_seed(&self, n: usize, index: usize) -> u64 {
        derive_seed(self.seed, &[n as u64, index as u64])
    }

    pub fn tour_seed(&self, n: usize, index: usize, tour: usize) -> u64 {
        derive_seed(self.seed, &[n as u64, index as u64, tour as u64])
    }

    pub fn make_tour(&self, n: usize, index: usize, tour: usize) -> Tour {
        Tour::random(n, self.tour_seed(n, index, tour)).expect("size validated by the plan")
    }

    /// Instances in `(n, index)` order, generated lazily so that only one is
    /// alive at a time.
    pub(crate) fn instances(
        &self,
    ) -> Result<Box<dyn Iterator<Item = Result<PlannedInstance>> + '_>> {
        self.validate()?;
        match &self.distribution {
            Distribution::Tsplib(path) => {
                let instance = read_tsplib(path)?;
                let n = instance.n();
                Ok(Box::new(std::iter::once(Ok(PlannedInstance {
                    n,
                    index: 0,
                    instance,
                }))))
            }
            dist => {
                let dist = dist.clone();
                Ok(Box::new(self.sizes.iter().flat_map(move |&n| {
                    let dist = dist.clone();
                    (0..self.instances_per_size).map(move |index| {
                        let seed = self.instance_seed(n, index);
                        let instance = match dist {
                            Distribution::Uniform => Instance::uniform(n, seed),
                            _ => Instance::euclidean(n, seed),
                        }?;
                        Ok(PlannedInstance { n, index, instance })
                    })
                })))
            }
        }
    }
}
