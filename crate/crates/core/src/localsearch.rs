//! Best-improvement 2-OPT local search.
//!
//! Every iteration finds a maximum-gain move on the current tour and applies
//! it; the run stops at the first iteration whose best gain is not positive.
//! The hybrid run uses the greedy pivot search until one iteration costs at
//! least `β n (n-1)` evaluations and complete enumeration from then on.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::search::{best_move_ce, Algorithm, BestMoveResult, MoveSearcher, SearchVariant};
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridConfig {
    pub beta: f64,
    pub variant: SearchVariant,
    /// With the switch disabled the greedy search runs to convergence.
    pub switch_enabled: bool,
}

impl HybridConfig {
    /// `beta` must lie in `(0, 1/2]`.
    pub fn new(beta: f64, variant: SearchVariant) -> Result<Self> {
        if !(beta > 0.0 && beta <= 0.5) {
            return Err(Error::OutOfRange {
                what: "beta",
                value: beta,
                range: "(0, 0.5]",
            });
        }
        Ok(HybridConfig {
            beta,
            variant,
            switch_enabled: true,
        })
    }

    pub fn without_switch(variant: SearchVariant) -> Self {
        HybridConfig {
            beta: 0.5,
            variant,
            switch_enabled: false,
        }
    }

    /// Evaluation count at which an iteration triggers the switch.
    pub fn budget(&self, n: usize) -> f64 {
        self.beta * n as f64 * (n as f64 - 1.0)
    }
}

/// One applied move.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationRecord {
    /// 1-based.
    #[serde(rename = "iter")]
    pub iteration: usize,
    #[serde(rename = "algo")]
    pub algorithm: Algorithm,
    pub gain: f64,
    #[serde(rename = "evals")]
    pub moves_evaluated: u64,
    /// Tour length after the move.
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub records: Vec<IterationRecord>,
    /// 1-based iteration whose evaluation count triggered the switch.
    pub switch_iteration: Option<usize>,
    /// All evaluations, including the final search that found no improving
    /// move.
    pub total_evaluations: u64,
    pub initial_length: f64,
    pub final_length: f64,
}

impl ConvergenceTrace {
    /// Number of applied moves `L`.
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    /// Mean evaluations over the applied iterations.
    pub fn avg_moves_per_iteration(&self) -> f64 {
        if self.records.is_empty() {
            return 0.0;
        }
        let sum: u64 = self.records.iter().map(|r| r.moves_evaluated).sum();
        sum as f64 / self.records.len() as f64
    }

    /// Evaluations spent on the first `k` iterations.
    pub fn evaluations_first(&self, k: usize) -> u64 {
        self.records.iter().take(k).map(|r| r.moves_evaluated).sum()
    }

    pub fn lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.length)
    }

    /// CSV with header `iter,algo,gain,evals,length`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r)?;
        }
        if self.records.is_empty() {
            w.write_record(["iter", "algo", "gain", "evals", "length"])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(file).map_err(|e| Error::csv(path, e))
    }
}

/// Pure complete-enumeration local search.
pub fn run_ce_localsearch(inst: &Instance, start: &Tour) -> (Tour, ConvergenceTrace) {
    converge(inst, start, |_, tour| {
        (Algorithm::Ce, best_move_ce(inst, tour))
    })
}

/// Greedy pivot search with the switch to complete enumeration. The `c_min`
/// table for strong pivots is built once for the whole run.
pub fn run_hybrid_localsearch(
    inst: &Instance,
    start: &Tour,
    cfg: HybridConfig,
) -> (Tour, ConvergenceTrace) {
    let mut searcher = MoveSearcher::new(inst, cfg.variant);
    let budget = cfg.budget(inst.n());
    let mut switch_at: Option<usize> = None;
    let (tour, mut trace) = converge(inst, start, |iteration, tour| {
        if switch_at.is_some() {
            return (Algorithm::Ce, best_move_ce(inst, tour));
        }
        let r = searcher.greedy(tour);
        if cfg.switch_enabled && r.stats.moves_evaluated as f64 >= budget {
            switch_at = Some(iteration);
        }
        (Algorithm::Greedy, r)
    });
    // a switch triggered by the final, non-improving search changes nothing
    trace.switch_iteration = switch_at.filter(|&s| s <= trace.iterations());
    (tour, trace)
}

fn converge<F>(inst: &Instance, start: &Tour, mut search: F) -> (Tour, ConvergenceTrace)
where
    F: FnMut(usize, &Tour) -> (Algorithm, BestMoveResult),
{
    let mut tour = start.clone();
    let initial_length = tour.length(inst);
    let mut length = initial_length;
    let mut records = Vec::new();
    let mut total = 0u64;
    loop {
        let iteration = records.len() + 1;
        let (algorithm, r) = search(iteration, &tour);
        total += r.stats.moves_evaluated;
        let m = match r.best {
            Some(m) if m.gain > 0.0 => m,
            _ => break,
        };
        tour.apply_move(m.i, m.j)
            .expect("search returned a non-degenerate move with positive gain");
        length -= m.gain;
        records.push(IterationRecord {
            iteration,
            algorithm,
            gain: m.gain,
            moves_evaluated: r.stats.moves_evaluated,
            length,
        });
    }
    let final_length = tour.length(inst);
    let trace = ConvergenceTrace {
        records,
        switch_iteration: None,
        total_evaluations: total,
        initial_length,
        final_length,
    };
    (tour, trace)
}

/// True iff no 2-OPT move has positive gain.
pub fn is_local_optimum(inst: &Instance, tour: &Tour) -> bool {
    best_move_ce(inst, tour).gain().is_none_or(|g| g <= 0.0)
}
