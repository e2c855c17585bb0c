//! Greedy (heap-ordered) and blind (tour-ordered) pivot searches.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::mem;

use crate::instance::{CminTable, Instance};
use crate::tour::{gain_with_edges, Tour};

use super::{BestMoveResult, Champion, SearchStats, SearchVariant};

/// Receives every evaluated pair `(i, j)`, `i < j`. The unit type discards
/// them; `Vec<(usize, usize)>` collects them.
pub trait PairSink {
    fn record(&mut self, i: usize, j: usize);
}

impl PairSink for () {
    #[inline(always)]
    fn record(&mut self, _: usize, _: usize) {}
}

impl PairSink for Vec<(usize, usize)> {
    fn record(&mut self, i: usize, j: usize) {
        self.push((i, j));
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    key: f64,
    pos: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // Larger key first; equal keys pop the smaller position first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .total_cmp(&other.key)
            .then_with(|| other.pos.cmp(&self.pos))
    }
}

/// Pivot search bound to one instance, with buffers reused across calls.
///
/// Build one per worker and call [`greedy`](Self::greedy) or
/// [`blind`](Self::blind) repeatedly; the heap and never-expanded arrays are
/// recycled, and the `c_min` table for strong pivots is computed once.
pub struct MoveSearcher<'a> {
    inst: &'a Instance,
    variant: SearchVariant,
    cmin: Option<Cow<'a, CminTable>>,
    edges: Vec<f64>,
    keys: Vec<f64>,
    heap_buf: Vec<HeapEntry>,
    never_expanded: Vec<usize>,
}

impl<'a> MoveSearcher<'a> {
    /// Computes the `c_min` table (Θ(n²)) when the variant asks for strong
    /// pivots.
    pub fn new(inst: &'a Instance, variant: SearchVariant) -> Self {
        let cmin = variant
            .strong_pivots
            .then(|| Cow::Owned(CminTable::new(inst)));
        Self::build(inst, variant, cmin)
    }

    /// Shares a precomputed table. Panics if the table does not match the
    /// instance size.
    pub fn with_cmin(inst: &'a Instance, variant: SearchVariant, cmin: &'a CminTable) -> Self {
        assert_eq!(cmin.values().len(), inst.n(), "c_min table size mismatch");
        let cmin = variant.strong_pivots.then_some(Cow::Borrowed(cmin));
        Self::build(inst, variant, cmin)
    }

    fn build(inst: &'a Instance, variant: SearchVariant, cmin: Option<Cow<'a, CminTable>>) -> Self {
        MoveSearcher {
            inst,
            variant,
            cmin,
            edges: Vec::new(),
            keys: Vec::new(),
            heap_buf: Vec::new(),
            never_expanded: Vec::new(),
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn variant(&self) -> SearchVariant {
        self.variant
    }

    pub fn greedy(&mut self, tour: &Tour) -> BestMoveResult {
        self.greedy_with_sink(tour, &mut ())
    }

    pub fn blind(&mut self, tour: &Tour) -> BestMoveResult {
        self.blind_with_sink(tour, &mut ())
    }

    fn prepare(&mut self, tour: &Tour) {
        let n = tour.n();
        assert_eq!(n, self.inst.n(), "tour and instance sizes differ");
        tour.fill_edge_costs(self.inst, &mut self.edges);
        if let Some(cmin) = &self.cmin {
            let order = tour.order();
            self.keys.clear();
            self.keys.extend((0..n).map(|p| {
                let q = tour.succ_pos(p);
                cmin.reduced(self.edges[p], order[p], order[q])
            }));
        }
        if self.variant.dedup {
            self.never_expanded.clear();
            self.never_expanded.extend(0..n);
        }
    }

    /// Heap-ordered search: build a max-heap of pivot keys in linear time,
    /// then pop and expand while the top key exceeds half the champion gain.
    pub fn greedy_with_sink<S: PairSink>(&mut self, tour: &Tour, sink: &mut S) -> BestMoveResult {
        self.prepare(tour);
        let keys = if self.cmin.is_some() {
            &self.keys
        } else {
            &self.edges
        };
        let mut buf = mem::take(&mut self.heap_buf);
        buf.clear();
        buf.extend(
            keys.iter()
                .enumerate()
                .map(|(pos, &key)| HeapEntry { key, pos }),
        );
        let mut heap = BinaryHeap::from(buf);

        let mut ctx = Expansion {
            inst: self.inst,
            order: tour.order(),
            edges: &self.edges,
            never: self.variant.dedup.then_some(&mut self.never_expanded),
            champ: Champion::default(),
            stats: SearchStats::default(),
            expanded: Vec::new(),
            sink,
        };
        while let Some(top) = heap.peek() {
            if !ctx.champ.admits(top.key) {
                break;
            }
            let pos = top.pos;
            heap.pop();
            ctx.stats.selections += 1;
            ctx.expand(pos);
        }
        let result = ctx.finish();
        self.heap_buf = heap.into_vec();
        result
    }

    /// Tour-ordered search: visit every edge once and expand it if its key
    /// still exceeds half the current champion gain.
    pub fn blind_with_sink<S: PairSink>(&mut self, tour: &Tour, sink: &mut S) -> BestMoveResult {
        self.prepare(tour);
        let keys = if self.cmin.is_some() {
            &self.keys
        } else {
            &self.edges
        };
        let mut ctx = Expansion {
            inst: self.inst,
            order: tour.order(),
            edges: &self.edges,
            never: self.variant.dedup.then_some(&mut self.never_expanded),
            champ: Champion::default(),
            stats: SearchStats::default(),
            expanded: Vec::new(),
            sink,
        };
        for (pos, &key) in keys.iter().enumerate() {
            ctx.stats.selections += 1;
            if ctx.champ.admits(key) {
                ctx.expand(pos);
            }
        }
        ctx.finish()
    }
}

/// State of one search call.
pub(super) struct Expansion<'s, S: PairSink> {
    pub(super) inst: &'s Instance,
    pub(super) order: &'s [usize],
    pub(super) edges: &'s [f64],
    pub(super) never: Option<&'s mut Vec<usize>>,
    pub(super) champ: Champion,
    pub(super) stats: SearchStats,
    pub(super) expanded: Vec<usize>,
    pub(super) sink: &'s mut S,
}

impl<S: PairSink> Expansion<'_, S> {
    /// Evaluates `μ(pivot, j)` for every partner `j` not sharing a node with
    /// the pivot edge: `n - 3` partners, or only never-expanded ones under
    /// dedup.
    pub(super) fn expand(&mut self, pivot: usize) {
        let n = self.order.len();
        let prev = if pivot == 0 { n - 1 } else { pivot - 1 };
        let next = if pivot + 1 == n { 0 } else { pivot + 1 };
        self.stats.edges_expanded += 1;
        self.expanded.push(pivot);
        match self.never.take() {
            None => {
                for j in 0..n {
                    if j != pivot && j != prev && j != next {
                        self.evaluate(pivot, j);
                    }
                }
            }
            Some(never) => {
                let mut k = 0;
                while k < never.len() {
                    let j = never[k];
                    if j == pivot {
                        // overwrite with the last entry and re-examine slot k
                        never.swap_remove(k);
                        continue;
                    }
                    if j != prev && j != next {
                        self.evaluate(pivot, j);
                    }
                    k += 1;
                }
                self.never = Some(never);
            }
        }
    }

    #[inline]
    fn evaluate(&mut self, p: usize, q: usize) {
        let (i, j) = if p < q { (p, q) } else { (q, p) };
        self.stats.moves_evaluated += 1;
        self.sink.record(i, j);
        self.champ.offer(
            i,
            j,
            gain_with_edges(self.inst, self.order, self.edges, i, j),
        );
    }

    pub(super) fn finish(self) -> BestMoveResult {
        BestMoveResult {
            best: self.champ.into_inner(),
            stats: self.stats,
            expanded_edges: self.expanded,
        }
    }
}

/// One-shot greedy search. With strong pivots this recomputes the `c_min`
/// table; use [`MoveSearcher`] for repeated calls.
pub fn best_move_greedy(inst: &Instance, tour: &Tour, variant: SearchVariant) -> BestMoveResult {
    MoveSearcher::new(inst, variant).greedy(tour)
}

/// One-shot blind search; see [`best_move_greedy`].
pub fn best_move_blind(inst: &Instance, tour: &Tour, variant: SearchVariant) -> BestMoveResult {
    MoveSearcher::new(inst, variant).blind(tour)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::search::best_move_ce;

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn heap_order_breaks_ties_by_position() {
        let entries = vec![
            HeapEntry { key: 1.0, pos: 5 },
            HeapEntry { key: 2.0, pos: 7 },
            HeapEntry { key: 1.0, pos: 2 },
            HeapEntry { key: 2.0, pos: 3 },
        ];
        let mut heap = BinaryHeap::from(entries);
        let popped: Vec<usize> = std::iter::from_fn(|| heap.pop().map(|e| e.pos)).collect();
        assert_eq!(popped, vec![3, 7, 2, 5]);
    }

    #[test]
    fn exact_on_small_instances_all_variants() {
        for seed in 0..40u64 {
            let n = 4 + (seed as usize * 7) % 60;
            let inst = if seed % 2 == 0 {
                Instance::uniform(n, seed).unwrap()
            } else {
                Instance::euclidean(n, seed).unwrap()
            };
            let tour = Tour::random(n, seed + 100).unwrap();
            let ce = best_move_ce(&inst, &tour).gain().unwrap();
            for v in SearchVariant::all() {
                let mut s = MoveSearcher::new(&inst, v);
                let g = s.greedy(&tour).gain().unwrap();
                let b = s.blind(&tour).gain().unwrap();
                if ce > 0.0 {
                    assert!(rel_eq(g, ce, 1e-9), "greedy {v} n={n}: {g} vs {ce}");
                    assert!(rel_eq(b, ce, 1e-9), "blind {v} n={n}: {b} vs {ce}");
                } else {
                    // CE also scores the zero-gain adjacent pairs
                    assert!(g <= 0.0 && b <= 0.0);
                }
            }
        }
    }

    #[test]
    fn evaluation_counts_without_dedup() {
        let inst = Instance::uniform(300, 1).unwrap();
        let tour = Tour::random(300, 2).unwrap();
        for strong in [false, true] {
            let v = SearchVariant {
                strong_pivots: strong,
                dedup: false,
            };
            let mut s = MoveSearcher::new(&inst, v);
            for r in [s.greedy(&tour), s.blind(&tour)] {
                assert_eq!(r.stats.moves_evaluated, r.stats.edges_expanded * 297);
                assert!(r.stats.selections >= r.stats.edges_expanded);
                assert_eq!(r.expanded_edges.len() as u64, r.stats.edges_expanded);
            }
        }
    }

    #[test]
    fn greedy_pops_in_non_increasing_key_order() {
        let inst = Instance::euclidean(500, 3).unwrap();
        let tour = Tour::random(500, 4).unwrap();
        let edges = tour.edge_costs(&inst);
        let r = best_move_greedy(&inst, &tour, SearchVariant::BASIC);
        assert!(r
            .expanded_edges
            .windows(2)
            .all(|w| edges[w[0]] >= edges[w[1]]));
        assert_eq!(r.stats.selections, r.stats.edges_expanded);
    }

    #[test]
    fn dedup_never_repeats_a_pair() {
        let inst = Instance::uniform(120, 5).unwrap();
        let tour = Tour::random(120, 6).unwrap();
        for strong in [false, true] {
            let mut s = MoveSearcher::new(
                &inst,
                SearchVariant {
                    strong_pivots: strong,
                    dedup: true,
                },
            );
            for greedy in [true, false] {
                let mut pairs = Vec::new();
                let r = if greedy {
                    s.greedy_with_sink(&tour, &mut pairs)
                } else {
                    s.blind_with_sink(&tour, &mut pairs)
                };
                let unique: HashSet<_> = pairs.iter().copied().collect();
                assert_eq!(unique.len(), pairs.len());
                assert_eq!(r.stats.moves_evaluated as usize, pairs.len());
                assert!(pairs
                    .iter()
                    .all(|&(i, j)| i < j && !tour.is_degenerate(i, j)));
            }
        }
    }

    #[test]
    fn basic_variant_evaluates_shared_pairs_twice() {
        let inst = Instance::uniform(40, 8).unwrap();
        let tour = Tour::random(40, 9).unwrap();
        let mut pairs = Vec::new();
        let mut s = MoveSearcher::new(&inst, SearchVariant::BASIC);
        s.blind_with_sink(&tour, &mut pairs);
        let unique: HashSet<_> = pairs.iter().copied().collect();
        assert!(unique.len() < pairs.len());
    }

    #[test]
    fn reported_gain_matches_reevaluation() {
        let inst = Instance::euclidean(200, 10).unwrap();
        let tour = Tour::random(200, 11).unwrap();
        for v in SearchVariant::all() {
            let m = best_move_greedy(&inst, &tour, v).best.unwrap();
            assert_eq!(m.gain, tour.move_gain(&inst, m.i, m.j).unwrap());
        }
    }

    #[test]
    fn shared_cmin_table() {
        let inst = Instance::uniform(80, 12).unwrap();
        let table = CminTable::new(&inst);
        let tour = Tour::random(80, 13).unwrap();
        let v = SearchVariant {
            strong_pivots: true,
            dedup: false,
        };
        let a = MoveSearcher::with_cmin(&inst, v, &table).greedy(&tour);
        let b = best_move_greedy(&inst, &tour, v);
        assert_eq!(a, b);
    }
}
