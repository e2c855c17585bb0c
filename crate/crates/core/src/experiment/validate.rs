use std::collections::HashSet;

use rayon::prelude::*;

use crate::analysis::{
    d_uncross_exists, d_uncross_failure_bound, d_uncross_gain_bound, ls_move_exists,
    mc_tail_probability, no_ls_move_limit, tail_bound, ValidatorRow,
};
use crate::error::{Error, Result};
use crate::search::{best_move_ce, best_move_fixed_threshold, delta_uniform, MoveSearcher};

use super::{Distribution, ExperimentPlan};

#[derive(Debug, Clone, PartialEq)]
pub struct ValidateOptions {
    /// Required success rate of the fixed-threshold search.
    pub min_success_rate: f64,
    /// Distances for the tail-bound check; empty skips it.
    pub tail_distances: Vec<f64>,
    pub tail_samples: u64,
    /// `α` of the long-short move check on uniform instances.
    pub ls_alpha: f64,
    /// `λ` of the D-uncrossing check, capped per size so the cells fit.
    pub lambda: f64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            min_success_rate: 0.99,
            tail_distances: vec![1.06, 1.1, 1.2, 1.3, 1.41],
            tail_samples: 10_000_000,
            // the limiting no-LS-move probability is 0.1 at this α
            ls_alpha: 4.0 * 10f64.ln().powf(0.25),
            lambda: 1.1,
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    trials: u64,
    fixed_optimal: u64,
    good: u64,
    dominated: u64,
    witness: u64,
    witness_good: u64,
}

impl Tally {
    fn add(mut self, o: Tally) -> Tally {
        self.trials += o.trials;
        self.fixed_optimal += o.fixed_optimal;
        self.good += o.good;
        self.dominated += o.dominated;
        self.witness += o.witness;
        self.witness_good += o.witness_good;
        self
    }
}

fn sigma(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials.max(1) as f64).sqrt()
}

/// Runs the validators over the plan's trials and returns one row per check
/// and size, followed by the tail-bound rows.
pub fn run_validate(plan: &ExperimentPlan, opts: &ValidateOptions) -> Result<Vec<ValidatorRow>> {
    if matches!(plan.distribution, Distribution::Tsplib(_)) {
        return Err(Error::Usage(
            "validation needs a random distribution".into(),
        ));
    }
    let uniform = plan.distribution == Distribution::Uniform;
    let alpha = plan.alpha();
    let mut per_size: Vec<(usize, f64, Tally)> = Vec::new();
    for planned in plan.instances()? {
        let planned = planned?;
        let inst = &planned.instance;
        let n = planned.n;
        let delta = plan.delta_for(n);
        let lambda = opts.lambda.min((n as f64).powf(0.25) / 6.0);
        let tally = (0..plan.tours_per_instance)
            .into_par_iter()
            .map(|t| -> Result<Tally> {
                let tour = plan.make_tour(n, planned.index, t);
                let ce = best_move_ce(inst, &tour).gain().expect("n >= 4");
                let fixed = best_move_fixed_threshold(inst, &tour, delta);
                let mut tally = Tally {
                    trials: 1,
                    ..Default::default()
                };
                tally.fixed_optimal += u64::from(fixed.gain() == Some(ce));
                if ce > 2.0 * delta {
                    tally.good += 1;
                    let greedy = MoveSearcher::new(inst, plan.variant).greedy(&tour);
                    let allowed: HashSet<usize> = fixed.expanded_edges.iter().copied().collect();
                    tally.dominated +=
                        u64::from(greedy.expanded_edges.iter().all(|e| allowed.contains(e)));
                }
                let (witness, bound) = if uniform {
                    let w = ls_move_exists(inst, &tour, opts.ls_alpha);
                    (w, 2.0 * delta_uniform(n, opts.ls_alpha))
                } else {
                    (
                        d_uncross_exists(inst, &tour, lambda)?,
                        d_uncross_gain_bound(n, lambda),
                    )
                };
                if witness {
                    tally.witness += 1;
                    tally.witness_good += u64::from(ce > bound);
                }
                Ok(tally)
            })
            .try_reduce(Tally::default, |a, b| Ok(a.add(b)))?;
        match per_size.last_mut() {
            Some((m, _, acc)) if *m == n => *acc = acc.add(tally),
            _ => per_size.push((n, lambda, tally)),
        }
    }

    let mut rows = Vec::new();
    for (n, lambda, t) in per_size {
        let success = t.fixed_optimal as f64 / t.trials as f64;
        rows.push(ValidatorRow {
            check: "alg_success".into(),
            n,
            alpha_or_lambda: alpha,
            trials: t.trials,
            successes: t.fixed_optimal,
            bound: opts.min_success_rate,
            pass: success >= opts.min_success_rate,
        });
        rows.push(ValidatorRow {
            check: "dominance".into(),
            n,
            alpha_or_lambda: alpha,
            trials: t.good,
            successes: t.dominated,
            bound: 1.0,
            pass: t.dominated == t.good,
        });
        let (name, param, limit) = if uniform {
            ("no_ls_move", opts.ls_alpha, no_ls_move_limit(opts.ls_alpha))
        } else {
            ("no_d_uncross", lambda, d_uncross_failure_bound(n, lambda))
        };
        let failures = t.trials - t.witness;
        let freq = failures as f64 / t.trials as f64;
        rows.push(ValidatorRow {
            check: name.into(),
            n,
            alpha_or_lambda: param,
            trials: t.trials,
            successes: failures,
            bound: limit,
            pass: freq <= limit + 3.0 * sigma(limit.min(1.0), t.trials),
        });
        rows.push(ValidatorRow {
            check: if uniform {
                "ls_move_good"
            } else {
                "d_uncross_good"
            }
            .into(),
            n,
            alpha_or_lambda: param,
            trials: t.witness,
            successes: t.witness_good,
            bound: 1.0,
            pass: t.witness_good == t.witness,
        });
    }
    for (k, &d) in opts.tail_distances.iter().enumerate() {
        let bound = tail_bound(d)?;
        let est = mc_tail_probability(
            d,
            opts.tail_samples,
            crate::rng::derive_seed(plan.seed, &[k as u64]),
        );
        rows.push(ValidatorRow {
            check: "tail_bound".into(),
            n: 0,
            alpha_or_lambda: d,
            trials: est.samples,
            successes: est.hits,
            bound,
            pass: est.estimate <= bound + 3.0 * est.std_error,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_validation_passes() {
        for dist in [Distribution::Uniform, Distribution::Euclidean] {
            let plan = ExperimentPlan {
                distribution: dist,
                sizes: vec![300],
                instances_per_size: 2,
                tours_per_instance: 5,
                ..Default::default()
            };
            let opts = ValidateOptions {
                tail_distances: vec![1.2],
                tail_samples: 100_000,
                ..Default::default()
            };
            let rows = run_validate(&plan, &opts).unwrap();
            assert_eq!(rows.len(), 5);
            for r in &rows {
                assert!(r.trials >= r.successes);
                if r.check == "dominance" || r.check.ends_with("_good") || r.check == "tail_bound" {
                    assert!(r.pass, "{r:?}");
                }
            }
            assert_eq!(rows[0].trials, 10);
        }
    }
}
