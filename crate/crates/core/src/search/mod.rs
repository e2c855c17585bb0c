//! Best-move searches.
//!
//! All searches evaluate moves through the same gain expression, so the gains
//! they report for the same move are bit-identical. What differs is which
//! moves get evaluated:
//!
//! * [`best_move_ce`] evaluates every pair `i < j`.
//! * [`MoveSearcher::greedy`] pops tour edges from a max-heap keyed by cost and
//!   expands them while the key exceeds half the champion's gain.
//! * [`MoveSearcher::blind`] scans edges in tour order with the same test.
//! * [`best_move_fixed_threshold`] expands every edge costlier than a fixed
//!   threshold and is only a heuristic.
//!
//! Pivot searches are exact: any move beating the champion `μ̂` has a removed
//! edge of cost greater than `Δ(μ̂)/2`, because
//! `Δ(μ) <= c(i,i+1) + c(j,j+1)` for non-negative costs.

mod ce;
mod pivot;
mod threshold;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::tour::Move;

pub use ce::best_move_ce;
pub use pivot::{best_move_blind, best_move_greedy, MoveSearcher, PairSink};
pub use threshold::{
    alpha_from_lambda, best_move_fixed_threshold, delta_euclidean, delta_uniform, lambda_from_alpha,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ce,
    Greedy,
    Blind,
    Fixed,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Ce,
        Algorithm::Greedy,
        Algorithm::Blind,
        Algorithm::Fixed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Ce => "ce",
            Algorithm::Greedy => "greedy",
            Algorithm::Blind => "blind",
            Algorithm::Fixed => "fixed",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "ce" => Ok(Algorithm::Ce),
            "greedy" => Ok(Algorithm::Greedy),
            "blind" => Ok(Algorithm::Blind),
            "fixed" => Ok(Algorithm::Fixed),
            other => Err(Error::Usage(format!(
                "unknown algorithm `{other}` (expected ce, greedy, blind or fixed)"
            ))),
        }
    }
}

/// Optional refinements of the pivot searches.
///
/// `strong_pivots` keys each tour edge by
/// `c(i,i+1) - (c_min(π_i) + c_min(π_{i+1})) / 2`, a tighter bound that needs a
/// [`CminTable`](crate::CminTable). `dedup` keeps the never-expanded pivots in
/// a shrinking array so no unordered pair is evaluated twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SearchVariant {
    pub strong_pivots: bool,
    pub dedup: bool,
}

impl SearchVariant {
    pub const BASIC: SearchVariant = SearchVariant {
        strong_pivots: false,
        dedup: false,
    };

    pub fn all() -> [SearchVariant; 4] {
        [
            SearchVariant::BASIC,
            SearchVariant {
                strong_pivots: true,
                dedup: false,
            },
            SearchVariant {
                strong_pivots: false,
                dedup: true,
            },
            SearchVariant {
                strong_pivots: true,
                dedup: true,
            },
        ]
    }
}

impl fmt::Display for SearchVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.strong_pivots, self.dedup) {
            (false, false) => "basic",
            (true, false) => "strong",
            (false, true) => "dedup",
            (true, true) => "strong+dedup",
        })
    }
}

impl FromStr for SearchVariant {
    type Err = Error;

    /// Accepts `basic`, or a comma/plus separated list of `strong`, `dedup`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut v = SearchVariant::BASIC;
        for part in s.split([',', '+']).map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "basic" | "none" => {}
                "strong" => v.strong_pivots = true,
                "dedup" => v.dedup = true,
                other => {
                    return Err(Error::Usage(format!(
                        "unknown variant flag `{other}` (expected strong, dedup)"
                    )))
                }
            }
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub moves_evaluated: u64,
    pub edges_expanded: u64,
    pub selections: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestMoveResult {
    /// `None` only when a heuristic expanded nothing.
    pub best: Option<Move>,
    pub stats: SearchStats,
    /// Tour positions of the expanded pivots, in expansion order.
    pub expanded_edges: Vec<usize>,
}

impl BestMoveResult {
    pub fn gain(&self) -> Option<f64> {
        self.best.map(|m| m.gain)
    }
}

/// Best move seen so far. The empty state stands for a gain of minus
/// infinity, so every key passes the pivot test until the first evaluation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Champion {
    best: Option<Move>,
}

impl Champion {
    /// Pivot test: can an edge with this key still be part of a better move?
    #[inline]
    pub(crate) fn admits(&self, key: f64) -> bool {
        match self.best {
            None => true,
            Some(m) => key > m.gain / 2.0,
        }
    }

    #[inline]
    pub(crate) fn offer(&mut self, i: usize, j: usize, gain: f64) {
        match self.best {
            Some(m) if gain <= m.gain => {}
            _ => self.best = Some(Move { i, j, gain }),
        }
    }

    pub(crate) fn into_inner(self) -> Option<Move> {
        self.best
    }
}
