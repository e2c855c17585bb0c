use crate::instance::Instance;
use crate::tour::{gain_with_edges, Tour};

use super::{BestMoveResult, Champion, SearchStats};

/// Complete enumeration over all `n(n-1)/2` pairs `i < j`.
///
/// Adjacent pairs are evaluated too (their gain is exactly zero), so the
/// evaluation count is always `n(n-1)/2`. Ties keep the first pair in
/// row-major order. The returned gain may be `<= 0` at a local optimum.
pub fn best_move_ce(inst: &Instance, tour: &Tour) -> BestMoveResult {
    let n = tour.n();
    let order = tour.order();
    let edges = tour.edge_costs(inst);
    let mut champ = Champion::default();
    for i in 0..n {
        for j in i + 1..n {
            champ.offer(i, j, gain_with_edges(inst, order, &edges, i, j));
        }
    }
    BestMoveResult {
        best: champ.into_inner(),
        stats: SearchStats {
            moves_evaluated: (n * (n - 1) / 2) as u64,
            edges_expanded: 0,
            selections: 0,
        },
        expanded_edges: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{InstanceKind, Point};

    #[test]
    fn evaluation_count() {
        for n in [4usize, 5, 17, 100] {
            let inst = Instance::uniform(n, 1).unwrap();
            let r = best_move_ce(&inst, &Tour::random(n, 2).unwrap());
            assert_eq!(r.stats.moves_evaluated, (n * (n - 1) / 2) as u64);
            assert_eq!(r.stats.selections, 0);
        }
    }

    #[test]
    fn crossing_corners() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        let inst = Instance::from_points(InstanceKind::Euclidean, pts).unwrap();
        let r = best_move_ce(&inst, &Tour::identity(4).unwrap());
        let m = r.best.unwrap();
        assert_eq!((m.i, m.j), (0, 2));
        assert!((m.gain - (2.0 * 2f64.sqrt() - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn matches_brute_force_over_move_gain() {
        let inst = Instance::euclidean(30, 4).unwrap();
        let t = Tour::random(30, 9).unwrap();
        let mut best = f64::NEG_INFINITY;
        for i in 0..30 {
            for j in i + 1..30 {
                best = best.max(t.move_gain(&inst, i, j).unwrap());
            }
        }
        assert_eq!(best_move_ce(&inst, &t).gain(), Some(best));
    }
}
