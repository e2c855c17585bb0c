//! Witnesses of good moves: instances where the best move beats `2δ`,
//! long-short moves on uniform instances, and D-uncrossing moves on
//! unit-square instances.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::instance::{Instance, Point};
use crate::search::{best_move_ce, delta_uniform};
use crate::tour::Tour;

/// True iff some move has gain strictly above `2 δ`.
pub fn instance_is_good(inst: &Instance, tour: &Tour, delta: f64) -> bool {
    best_move_ce(inst, tour)
        .gain()
        .is_some_and(|g| g > 2.0 * delta)
}

/// True iff the tour has two long edges (cost `> (1+δ)/2`) whose 2-OPT
/// replacements are both short (cost `< (1-δ)/2`), with `δ` the uniform
/// threshold for `alpha`. Quadratic in the number of long edges.
pub fn ls_move_exists(inst: &Instance, tour: &Tour, alpha: f64) -> bool {
    let n = tour.n();
    let delta = delta_uniform(n, alpha);
    let long = (1.0 + delta) / 2.0;
    let short = (1.0 - delta) / 2.0;
    let order = tour.order();
    let longs: Vec<usize> = (0..n).filter(|&p| tour.edge_cost(inst, p) > long).collect();
    for (k, &i) in longs.iter().enumerate() {
        for &j in &longs[k + 1..] {
            if tour.is_degenerate(i, j) {
                continue;
            }
            let jn = tour.succ_pos(j);
            if inst.cost(order[i], order[j]) < short && inst.cost(order[i + 1], order[jn]) < short {
                return true;
            }
        }
    }
    false
}

/// Closed axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn contains(&self, p: Point) -> bool {
        (self.x0..=self.x1).contains(&p.x) && (self.y0..=self.y1).contains(&p.y)
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x0, self.y0),
            Point::new(self.x0, self.y1),
            Point::new(self.x1, self.y0),
            Point::new(self.x1, self.y1),
        ]
    }
}

/// Four cells of side `s = λ n^{-1/4}`: `A1`, `B1` next to the top-left
/// corner and `A2`, `B2` next to the bottom-right one.
///
/// Any segment from `A1` to `A2` (or `B1` to `B2`) has length at least
/// `√2 (1 - 3s)`; any two points of `A1 ∪ B1` (or `A2 ∪ B2`) are at most
/// `2√2 s` apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCells {
    pub s: f64,
    pub a1: Rect,
    pub b1: Rect,
    pub a2: Rect,
    pub b2: Rect,
}

impl GridCells {
    /// Requires `λ > 0` and `3s <= 1/2`.
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        let s = lambda / (n as f64).powf(0.25);
        if !(lambda > 0.0 && 3.0 * s <= 0.5) {
            return Err(Error::OutOfRange {
                what: "lambda",
                value: lambda,
                range: "(0, n^(1/4) / 6]",
            });
        }
        let rect = |x0, x1, y0, y1| Rect { x0, x1, y0, y1 };
        Ok(GridCells {
            s,
            a1: rect(s, 2.0 * s, 1.0 - s, 1.0),
            b1: rect(0.0, s, 1.0 - 2.0 * s, 1.0 - s),
            a2: rect(1.0 - 2.0 * s, 1.0 - s, 0.0, s),
            b2: rect(1.0 - s, 1.0, s, 2.0 * s),
        })
    }

    /// Lower bound on a D-edge length, `√2 (1 - 3s)`.
    pub fn min_d_edge(&self) -> f64 {
        SQRT_2 * (1.0 - 3.0 * self.s)
    }

    /// Upper bound on a C-edge length, `2√2 s`.
    pub fn max_c_edge(&self) -> f64 {
        2.0 * SQRT_2 * self.s
    }
}

/// Lower bound `2 (√2 - 5√2 s)` on the gain of a D-uncrossing move.
pub fn d_uncross_gain_bound(n: usize, lambda: f64) -> f64 {
    let s = lambda / (n as f64).powf(0.25);
    2.0 * (SQRT_2 - 5.0 * SQRT_2 * s)
}

/// True iff the directed tour has an edge from `A1` to `A2` and an edge from
/// `B1` to `B2`. Only this orientation is checked.
pub fn d_uncross_exists(inst: &Instance, tour: &Tour, lambda: f64) -> Result<bool> {
    let pts = inst.points();
    if pts.is_empty() {
        return Err(Error::Usage(
            "D-uncrossing needs a geometric instance".into(),
        ));
    }
    let cells = GridCells::new(tour.n(), lambda)?;
    let (mut a, mut b) = (false, false);
    for p in 0..tour.n() {
        let u = pts[tour.node_at(p)];
        let v = pts[tour.node_at(tour.succ_pos(p))];
        a |= cells.a1.contains(u) && cells.a2.contains(v);
        b |= cells.b1.contains(u) && cells.b2.contains(v);
        if a && b {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceKind;

    fn center(r: &Rect) -> Point {
        Point::new((r.x0 + r.x1) / 2.0, (r.y0 + r.y1) / 2.0)
    }

    #[test]
    fn good_instance_threshold_is_strict() {
        let inst = Instance::uniform(30, 1).unwrap();
        let tour = Tour::random(30, 2).unwrap();
        let g = best_move_ce(&inst, &tour).gain().unwrap();
        assert!(g > 0.0);
        assert!(instance_is_good(&inst, &tour, 0.0));
        assert!(!instance_is_good(&inst, &tour, g / 2.0));
        assert!(!instance_is_good(&inst, &tour, g));
    }

    #[test]
    fn ls_move_constant_costs() {
        let rows = vec![vec![0.5; 6]; 6]
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r[i] = 0.0;
                r
            })
            .collect::<Vec<_>>();
        let inst = Instance::from_matrix(&rows).unwrap();
        assert!(!ls_move_exists(&inst, &Tour::identity(6).unwrap(), 1.0));
    }

    #[test]
    fn ls_move_constructed() {
        // tour 0-1-2-3; edges {0,1} and {2,3} cost 1, replacements {0,2}, {1,3} cost 0
        let rows = vec![
            vec![0.0, 1.0, 0.0, 0.5],
            vec![1.0, 0.0, 0.5, 0.0],
            vec![0.0, 0.5, 0.0, 1.0],
            vec![0.5, 0.0, 1.0, 0.0],
        ];
        let inst = Instance::from_matrix(&rows).unwrap();
        let tour = Tour::identity(4).unwrap();
        assert!(ls_move_exists(&inst, &tour, 1.0));
        assert!(instance_is_good(&inst, &tour, delta_uniform(4, 1.0)));
    }

    #[test]
    fn grid_geometry_at_corners() {
        for (n, lambda) in [(100usize, 0.5), (2000, 1.0), (10_000, 1.6)] {
            let g = GridCells::new(n, lambda).unwrap();
            for (from, to) in [(g.a1, g.a2), (g.b1, g.b2)] {
                for p in from.corners() {
                    for q in to.corners() {
                        assert!(p.distance(q) >= g.min_d_edge() - 1e-12);
                    }
                }
            }
            for (x, y) in [(g.a1, g.b1), (g.a2, g.b2)] {
                let pts: Vec<Point> = x.corners().into_iter().chain(y.corners()).collect();
                for p in &pts {
                    for q in &pts {
                        assert!(p.distance(*q) <= g.max_c_edge() + 1e-12);
                    }
                }
            }
        }
        assert!(GridCells::new(16, 1.0).is_err());
        assert!(GridCells::new(16, 0.0).is_err());
    }

    #[test]
    fn d_uncross_construction() {
        let g = GridCells::new(4, 0.2).unwrap();
        let pts = vec![center(&g.a1), center(&g.a2), center(&g.b1), center(&g.b2)];
        let inst = Instance::from_points(InstanceKind::Euclidean, pts).unwrap();
        let tour = Tour::identity(4).unwrap();
        assert!(d_uncross_exists(&inst, &tour, 0.2).unwrap());
        let g = best_move_ce(&inst, &tour).gain().unwrap();
        assert!(g > d_uncross_gain_bound(4, 0.2));
        // reversed orientation of the B edge is not counted
        let tour = Tour::from_order(vec![0, 1, 3, 2]).unwrap();
        assert!(!d_uncross_exists(&inst, &tour, 0.2).unwrap());
    }

    #[test]
    fn d_uncross_center_points() {
        let pts = (0..20)
            .map(|k| Point::new(0.45 + k as f64 * 0.005, 0.5))
            .collect();
        let inst = Instance::from_points(InstanceKind::Euclidean, pts).unwrap();
        assert!(!d_uncross_exists(&inst, &Tour::identity(20).unwrap(), 0.3).unwrap());
        assert!(d_uncross_exists(&inst, &Tour::identity(20).unwrap(), 0.5).is_err());
        let u = Instance::uniform(20, 1).unwrap();
        assert!(d_uncross_exists(&u, &Tour::identity(20).unwrap(), 0.3).is_err());
    }
}
