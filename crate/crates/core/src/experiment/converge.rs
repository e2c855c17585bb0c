use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::localsearch::{
    run_ce_localsearch, run_hybrid_localsearch, ConvergenceTrace, HybridConfig,
};

use super::ExperimentPlan;

/// Summary of one convergence run. `beta` is empty for the pure
/// complete-enumeration run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergeRow {
    pub dist: String,
    pub n: usize,
    pub instance: usize,
    pub tour: usize,
    pub mode: String,
    pub beta: Option<f64>,
    #[serde(rename = "L")]
    pub iterations: usize,
    pub s: Option<usize>,
    pub total_evaluations: u64,
    pub avg_mpi: f64,
    pub evals_100: u64,
    pub initial_length: f64,
    pub final_length: f64,
    /// `1 - total / total(CE run)`.
    pub savings: f64,
    /// Same `L` as the CE run and every length within `1e-6` relative.
    pub matches_ce: bool,
}

#[derive(Debug, Clone)]
pub struct ConvergeReport {
    pub rows: Vec<ConvergeRow>,
    /// Full traces keyed like the rows, kept only when requested.
    pub traces: Vec<(ConvergeRow, ConvergenceTrace)>,
}

fn same_trajectory(a: &ConvergenceTrace, b: &ConvergenceTrace) -> bool {
    a.iterations() == b.iterations()
        && a.lengths()
            .zip(b.lengths())
            .all(|(x, y)| (x - y).abs() <= 1e-6 * x.abs().max(y.abs()))
}

/// For every `(n, instance, tour)`, runs pure complete enumeration and one
/// hybrid run per `β` from the same start tour.
pub fn run_converge(plan: &ExperimentPlan, keep_traces: bool) -> Result<ConvergeReport> {
    let mut out: Vec<(ConvergeRow, ConvergenceTrace)> = Vec::new();
    for planned in plan.instances()? {
        let planned = planned?;
        let inst = &planned.instance;
        let runs: Vec<Vec<(ConvergeRow, ConvergenceTrace)>> = (0..plan.tours_per_instance)
            .into_par_iter()
            .map(|t| {
                let start = plan.make_tour(planned.n, planned.index, t);
                let (_, ce) = run_ce_localsearch(inst, &start);
                let row = |mode: &str, beta: Option<f64>, tr: &ConvergenceTrace| ConvergeRow {
                    dist: plan.distribution.label().to_string(),
                    n: planned.n,
                    instance: planned.index,
                    tour: t,
                    mode: mode.to_string(),
                    beta,
                    iterations: tr.iterations(),
                    s: tr.switch_iteration,
                    total_evaluations: tr.total_evaluations,
                    avg_mpi: tr.avg_moves_per_iteration(),
                    evals_100: tr.evaluations_first(100),
                    initial_length: tr.initial_length,
                    final_length: tr.final_length,
                    savings: 1.0 - tr.total_evaluations as f64 / ce.total_evaluations as f64,
                    matches_ce: same_trajectory(tr, &ce),
                };
                let mut v = vec![(row("ce", None, &ce), ce.clone())];
                for &beta in &plan.betas {
                    let cfg =
                        HybridConfig::new(beta, plan.variant).expect("beta validated by the plan");
                    let (_, tr) = run_hybrid_localsearch(inst, &start, cfg);
                    v.push((row("hybrid", Some(beta), &tr), tr));
                }
                v
            })
            .collect();
        out.extend(runs.into_iter().flatten());
    }
    let rows = out.iter().map(|(r, _)| r.clone()).collect();
    Ok(ConvergeReport {
        rows,
        traces: if keep_traces { out } else { Vec::new() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hybrid_rows_match_ce() {
        let plan = ExperimentPlan {
            sizes: vec![60],
            instances_per_size: 1,
            tours_per_instance: 2,
            ..Default::default()
        };
        let report = run_converge(&plan, true).unwrap();
        assert_eq!(report.rows.len(), 2 * 4);
        assert_eq!(report.traces.len(), 8);
        for r in &report.rows {
            assert!(r.matches_ce, "{r:?}");
            if r.mode == "ce" {
                assert_eq!(r.savings, 0.0);
                assert_eq!(r.avg_mpi, (60 * 59 / 2) as f64);
            }
        }
    }
}
