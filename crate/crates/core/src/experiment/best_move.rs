use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{expected_evals_euclidean, mc_tail_probability};
use crate::error::Result;
use crate::instance::CminTable;
use crate::search::{
    best_move_ce, best_move_fixed_threshold, Algorithm, BestMoveResult, MoveSearcher, SearchVariant,
};

use super::{Distribution, ExperimentPlan, PlannedInstance};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub dist: String,
    pub n: usize,
    pub instance: usize,
    pub tour: usize,
    pub seed: u64,
    pub algo: Algorithm,
    pub variant: String,
    pub moves_evaluated: u64,
    pub edges_expanded: u64,
    pub selections: u64,
    /// Empty when nothing was expanded.
    pub gain: Option<f64>,
    pub found: bool,
    /// Whether the gain equals the complete-enumeration gain; empty when
    /// complete enumeration was not run.
    pub optimal: Option<bool>,
    #[serde(skip)]
    pub micros: Option<u64>,
}

/// Per-size means of `moves_evaluated`. Columns of algorithms that were not
/// run are empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub dist: String,
    pub n: usize,
    pub trials: usize,
    pub ce: Option<f64>,
    pub greedy: Option<f64>,
    pub blind: Option<f64>,
    pub fixed: Option<f64>,
    /// Expected evaluations of the fixed-threshold search.
    pub f_bar: Option<f64>,
    pub ce_over_greedy: Option<f64>,
    pub blind_over_greedy: Option<f64>,
    /// Fraction of trials where the fixed-threshold search was optimal.
    pub fixed_success: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestMoveReport {
    pub trials: Vec<TrialRow>,
    pub aggregates: Vec<AggregateRow>,
}

/// Runs every selected algorithm on every `(n, instance, tour)` of the plan.
pub fn run_best_move(plan: &ExperimentPlan) -> Result<BestMoveReport> {
    let mut trials = Vec::new();
    for planned in plan.instances()? {
        trials.extend(run_instance(plan, &planned?));
    }
    trials.sort_by_key(|r| (r.n, r.instance, r.tour, r.algo));
    let aggregates = aggregate(plan, &trials);
    Ok(BestMoveReport { trials, aggregates })
}

fn run_instance(plan: &ExperimentPlan, planned: &PlannedInstance) -> Vec<TrialRow> {
    let inst = &planned.instance;
    let cmin = plan.variant.strong_pivots.then(|| CminTable::new(inst));
    let delta = plan.delta_for(planned.n);
    (0..plan.tours_per_instance)
        .into_par_iter()
        .flat_map_iter(|t| {
            let seed = plan.tour_seed(planned.n, planned.index, t);
            let tour = plan.make_tour(planned.n, planned.index, t);
            let mut searcher = match &cmin {
                Some(table) => MoveSearcher::with_cmin(inst, plan.variant, table),
                None => MoveSearcher::new(inst, plan.variant),
            };
            let runs: Vec<(Algorithm, BestMoveResult, u64)> = plan
                .algorithms
                .iter()
                .map(|&algo| {
                    let start = Instant::now();
                    let r = match algo {
                        Algorithm::Ce => best_move_ce(inst, &tour),
                        Algorithm::Greedy => searcher.greedy(&tour),
                        Algorithm::Blind => searcher.blind(&tour),
                        Algorithm::Fixed => best_move_fixed_threshold(inst, &tour, delta),
                    };
                    (algo, r, start.elapsed().as_micros() as u64)
                })
                .collect();
            let ce_gain = runs
                .iter()
                .find(|(a, _, _)| *a == Algorithm::Ce)
                .and_then(|(_, r, _)| r.gain());
            runs.into_iter()
                .map(|(algo, r, micros)| {
                    let variant = match algo {
                        Algorithm::Greedy | Algorithm::Blind => plan.variant,
                        _ => SearchVariant::BASIC,
                    };
                    TrialRow {
                        dist: plan.distribution.label().to_string(),
                        n: planned.n,
                        instance: planned.index,
                        tour: t,
                        seed,
                        algo,
                        variant: variant.to_string(),
                        moves_evaluated: r.stats.moves_evaluated,
                        edges_expanded: r.stats.edges_expanded,
                        selections: r.stats.selections,
                        gain: r.gain(),
                        found: r.best.is_some(),
                        optimal: ce_gain.map(|g| r.gain() == Some(g)),
                        micros: plan.timing.then_some(micros),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, k) = xs.fold((0.0, 0usize), |(s, k), x| (s + x, k + 1));
    (k > 0).then(|| sum / k as f64)
}

/// Expected fixed-threshold evaluations at the plan's threshold.
fn f_bar(plan: &ExperimentPlan, n: usize) -> Option<f64> {
    let nf = n as f64;
    match (&plan.distribution, plan.delta) {
        (Distribution::Uniform, _) => {
            let p = (1.0 - plan.delta_for(n)).clamp(0.0, 1.0);
            Some((nf - 3.0) * nf * p)
        }
        (Distribution::Euclidean, None) => Some(expected_evals_euclidean(
            n,
            plan.alpha(),
            plan.oracle_samples,
            plan.seed,
        )),
        (Distribution::Euclidean, Some(d)) => {
            let p = if d >= std::f64::consts::SQRT_2 {
                0.0
            } else if d < 0.0 {
                1.0
            } else {
                mc_tail_probability(d, plan.oracle_samples, plan.seed).estimate
            };
            Some((nf - 3.0) * nf * p)
        }
        (Distribution::Tsplib(_), _) => None,
    }
}

fn aggregate(plan: &ExperimentPlan, trials: &[TrialRow]) -> Vec<AggregateRow> {
    let mut sizes: Vec<usize> = trials.iter().map(|r| r.n).collect();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|n| {
            let rows: Vec<&TrialRow> = trials.iter().filter(|r| r.n == n).collect();
            let of = |a: Algorithm| {
                mean(
                    rows.iter()
                        .filter(|r| r.algo == a)
                        .map(|r| r.moves_evaluated as f64),
                )
            };
            let (ce, greedy, blind, fixed) = (
                of(Algorithm::Ce),
                of(Algorithm::Greedy),
                of(Algorithm::Blind),
                of(Algorithm::Fixed),
            );
            let ratio = |a: Option<f64>, b: Option<f64>| match (a, b) {
                (Some(a), Some(b)) if b > 0.0 => Some(a / b),
                _ => None,
            };
            let fixed_success = mean(
                rows.iter()
                    .filter(|r| r.algo == Algorithm::Fixed)
                    .filter_map(|r| r.optimal)
                    .map(|ok| f64::from(u8::from(ok))),
            );
            let mut seen = rows
                .iter()
                .map(|r| (r.instance, r.tour))
                .collect::<Vec<_>>();
            seen.dedup();
            AggregateRow {
                dist: plan.distribution.label().to_string(),
                n,
                trials: seen.len(),
                ce,
                greedy,
                blind,
                fixed,
                f_bar: fixed.and_then(|_| f_bar(plan, n)),
                ce_over_greedy: ratio(ce, greedy),
                blind_over_greedy: ratio(blind, greedy),
                fixed_success,
            }
        })
        .collect()
}
