//! The fixed-threshold heuristic family and its threshold schedules.

use std::f64::consts::SQRT_2;

use crate::instance::Instance;
use crate::tour::Tour;

use super::pivot::Expansion;
use super::{BestMoveResult, Champion, SearchStats};

/// Expands exactly the tour edges with cost strictly above `delta`, each
/// over all `n - 3` partners, ignoring the champion when deciding what to
/// expand.
///
/// Two failure modes are possible and are reported, not raised: nothing is
/// expanded (`best` is `None`), or the best move has both removed edges at or
/// below `delta` and the returned move is suboptimal.
pub fn best_move_fixed_threshold(inst: &Instance, tour: &Tour, delta: f64) -> BestMoveResult {
    let edges = tour.edge_costs(inst);
    let mut ctx = Expansion {
        inst,
        order: tour.order(),
        edges: &edges,
        never: None,
        champ: Champion::default(),
        stats: SearchStats::default(),
        expanded: Vec::new(),
        sink: &mut (),
    };
    for (pos, &c) in edges.iter().enumerate() {
        ctx.stats.selections += 1;
        if c > delta {
            ctx.expand(pos);
        }
    }
    ctx.finish()
}

/// Uniform-cost threshold `1 - α n^{-1/2}`; an edge exceeds it with
/// probability `α / √n`.
pub fn delta_uniform(n: usize, alpha: f64) -> f64 {
    1.0 - alpha / (n as f64).sqrt()
}

/// Unit-square threshold `√2 - α n^{-1/4}`.
pub fn delta_euclidean(n: usize, alpha: f64) -> f64 {
    SQRT_2 - alpha / (n as f64).powf(0.25)
}

/// `α = 5√2 λ`, the grid-cell parameterization of the Euclidean threshold.
pub fn alpha_from_lambda(lambda: f64) -> f64 {
    5.0 * SQRT_2 * lambda
}

pub fn lambda_from_alpha(alpha: f64) -> f64 {
    alpha / (5.0 * SQRT_2)
}
