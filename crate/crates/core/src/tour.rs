//! Tours as permutations with a position index, and the 2-OPT move.
//!
//! A move `μ(i, j)` with positions `i < j` removes the tour edges
//! `{π[i], π[i+1]}` and `{π[j], π[j+1]}` (indices modulo `n`) and reconnects
//! with `{π[i], π[j]}` and `{π[i+1], π[j+1]}`, which reverses the segment
//! `π[i+1..=j]`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::instance::{check_size, Instance};
use crate::rng::seeded;

/// A 2-OPT move by tour positions, with the gain it had on the tour it was
/// evaluated on. Positive gain means the tour gets shorter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Move {
    pub i: usize,
    pub j: usize,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Tour {
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_order((0..n).collect())
    }

    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        check_size(n)?;
        let mut position = vec![usize::MAX; n];
        for (p, &node) in order.iter().enumerate() {
            if node >= n {
                return Err(Error::InvalidTour(format!(
                    "node {node} out of range for n = {n}"
                )));
            }
            if position[node] != usize::MAX {
                return Err(Error::InvalidTour(format!("node {node} appears twice")));
            }
            position[node] = p;
        }
        Ok(Tour { order, position })
    }

    /// Uniformly random permutation (Fisher–Yates) from a seeded generator.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        check_size(n)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut seeded(seed));
        Self::from_order(order)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    #[inline]
    pub fn node_at(&self, pos: usize) -> usize {
        self.order[pos]
    }

    #[inline]
    pub fn position_of(&self, node: usize) -> usize {
        self.position[node]
    }

    #[inline]
    pub fn succ_pos(&self, pos: usize) -> usize {
        if pos + 1 == self.order.len() {
            0
        } else {
            pos + 1
        }
    }

    /// Cost of the tour edge leaving position `pos`.
    #[inline]
    pub fn edge_cost(&self, inst: &Instance, pos: usize) -> f64 {
        inst.cost(self.order[pos], self.order[self.succ_pos(pos)])
    }

    /// Costs of all tour edges, `edges[p] = c(π[p], π[p+1])`.
    pub fn edge_costs(&self, inst: &Instance) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n());
        self.fill_edge_costs(inst, &mut out);
        out
    }

    pub(crate) fn fill_edge_costs(&self, inst: &Instance, out: &mut Vec<f64>) {
        out.clear();
        out.extend((0..self.n()).map(|p| self.edge_cost(inst, p)));
    }

    pub fn length(&self, inst: &Instance) -> f64 {
        (0..self.n()).map(|p| self.edge_cost(inst, p)).sum()
    }

    /// Gain of `μ(i, j)`. Adjacent edge pairs give exactly zero.
    pub fn move_gain(&self, inst: &Instance, i: usize, j: usize) -> Result<f64> {
        let n = self.n();
        if i >= j || j >= n {
            return Err(Error::InvalidMove { i, j, n });
        }
        let a = self.order[i];
        let b = self.order[i + 1];
        let c = self.order[j];
        let d = self.order[self.succ_pos(j)];
        Ok((inst.cost(a, b) + inst.cost(c, d)) - (inst.cost(a, c) + inst.cost(b, d)))
    }

    /// True when the two removed edges share a node.
    pub fn is_degenerate(&self, i: usize, j: usize) -> bool {
        j == i + 1 || (i == 0 && j + 1 == self.n())
    }

    /// Applies `μ(i, j)` by reversing `π[i+1..=j]`.
    pub fn apply_move(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.n();
        if i >= j || j >= n || self.is_degenerate(i, j) {
            return Err(Error::InvalidMove { i, j, n });
        }
        self.order[i + 1..=j].reverse();
        for p in i + 1..=j {
            self.position[self.order[p]] = p;
        }
        Ok(())
    }

    /// Checks the permutation and position-index invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.position.len() != n {
            return Err(Error::InvalidTour("position index has wrong length".into()));
        }
        for (p, &node) in self.order.iter().enumerate() {
            if node >= n || self.position[node] != p {
                return Err(Error::InvalidTour(format!("position index broken at {p}")));
            }
        }
        Ok(())
    }

    /// One node per line.
    pub fn write_node_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for node in &self.order {
            writeln!(out, "{node}")?;
        }
        out.flush()
    }

    pub fn read_node_list<R: Read>(input: R) -> Result<Self> {
        let mut order = Vec::new();
        for (k, line) in BufReader::new(input).lines().enumerate() {
            let line = line.map_err(|e| Error::parse(k + 1, e.to_string()))?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            order.push(
                t.parse()
                    .map_err(|_| Error::parse(k + 1, format!("invalid node `{t}`")))?,
            );
        }
        Self::from_order(order)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_node_list(BufWriter::new(file))
            .map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_node_list(file)
    }
}

/// Gain of `μ(i, j)` for `i < j` with tour edge costs precomputed. Evaluates
/// the same expression as [`Tour::move_gain`], so results match bit for bit.
#[inline]
pub(crate) fn gain_with_edges(
    inst: &Instance,
    order: &[usize],
    edges: &[f64],
    i: usize,
    j: usize,
) -> f64 {
    debug_assert!(i < j);
    let n = order.len();
    let jn = if j + 1 == n { 0 } else { j + 1 };
    (edges[i] + edges[j]) - (inst.cost(order[i], order[j]) + inst.cost(order[i + 1], order[jn]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{InstanceKind, Point};

    fn corners() -> Instance {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        Instance::from_points(InstanceKind::Euclidean, pts).unwrap()
    }

    #[test]
    fn boundary_and_crossing_lengths() {
        let inst = corners();
        let boundary = Tour::from_order(vec![0, 2, 1, 3]).unwrap();
        assert!((boundary.length(&inst) - 4.0).abs() < 1e-12);
        let crossing = Tour::identity(4).unwrap();
        let expected = 2.0 + 2.0 * 2f64.sqrt();
        assert!((crossing.length(&inst) - expected).abs() < 1e-12);
    }

    #[test]
    fn uncrossing_gain() {
        let inst = corners();
        let t = Tour::identity(4).unwrap();
        let g = t.move_gain(&inst, 0, 2).unwrap();
        assert!((g - (2.0 * 2f64.sqrt() - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_pairs_have_zero_gain() {
        let inst = Instance::uniform(9, 2).unwrap();
        let t = Tour::random(9, 5).unwrap();
        for i in 0..8 {
            assert_eq!(t.move_gain(&inst, i, i + 1).unwrap(), 0.0);
        }
        assert_eq!(t.move_gain(&inst, 0, 8).unwrap(), 0.0);
    }

    #[test]
    fn move_gain_rejects_bad_positions() {
        let inst = Instance::uniform(6, 2).unwrap();
        let t = Tour::identity(6).unwrap();
        assert!(t.move_gain(&inst, 3, 3).is_err());
        assert!(t.move_gain(&inst, 4, 2).is_err());
        assert!(t.move_gain(&inst, 0, 6).is_err());
    }

    #[test]
    fn segment_reversal() {
        let mut t = Tour::identity(6).unwrap();
        t.apply_move(1, 4).unwrap();
        assert_eq!(t.order(), &[0, 1, 4, 3, 2, 5]);
        t.validate().unwrap();
        t.apply_move(1, 4).unwrap();
        assert_eq!(t.order(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn degenerate_application_rejected() {
        let mut t = Tour::identity(6).unwrap();
        assert!(t.apply_move(2, 3).is_err());
        assert!(t.apply_move(0, 5).is_err());
        assert!(t.apply_move(4, 1).is_err());
    }

    #[test]
    fn gain_is_length_difference_for_all_pairs() {
        let inst = Instance::uniform(8, 13).unwrap();
        let t = Tour::random(8, 21).unwrap();
        let before = t.length(&inst);
        for i in 0..8 {
            for j in i + 1..8 {
                let g = t.move_gain(&inst, i, j).unwrap();
                if t.is_degenerate(i, j) {
                    assert_eq!(g, 0.0);
                    continue;
                }
                let mut u = t.clone();
                u.apply_move(i, j).unwrap();
                assert!((before - u.length(&inst) - g).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn random_tour_determinism_and_validity() {
        let a = Tour::random(4, 0).unwrap();
        a.validate().unwrap();
        let mut sorted = a.order().to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        assert_eq!(Tour::random(50, 3).unwrap(), Tour::random(50, 3).unwrap());
        assert!(matches!(Tour::random(3, 0), Err(Error::InvalidSize(3))));
    }

    #[test]
    fn invalid_orders_rejected() {
        assert!(Tour::from_order(vec![0, 1, 1, 2]).is_err());
        assert!(Tour::from_order(vec![0, 1, 2, 4]).is_err());
    }

    #[test]
    fn node_list_round_trip() {
        let t = Tour::random(20, 8).unwrap();
        let mut buf = Vec::new();
        t.write_node_list(&mut buf).unwrap();
        assert_eq!(Tour::read_node_list(buf.as_slice()).unwrap(), t);
        assert!(Tour::read_node_list("0\n1\nx\n3\n".as_bytes()).is_err());
    }
}
