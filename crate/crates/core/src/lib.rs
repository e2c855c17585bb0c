//! Best 2-OPT move search for the symmetric TSP.
//!
//! The crate provides four ways of finding the best 2-OPT move on a tour:
//! complete enumeration, a greedy heap-driven pivot search, a blind pivot
//! scan, and a fixed-threshold heuristic. All of them count the moves they
//! evaluate, which is the complexity measure used throughout the experiment
//! harness. On top of the searches sit a best-improvement local search with a
//! switch to complete enumeration, probabilistic validators, and a
//! deterministic experiment runner that writes CSV.
//!
//! Nodes and tour positions are 0-based everywhere.

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod instance;
pub mod localsearch;
pub mod rng;
pub mod search;
pub mod tour;
pub mod tsplib;

pub use error::{Error, Result};
pub use instance::{CminTable, Instance, InstanceKind, Point};
pub use localsearch::{
    is_local_optimum, run_ce_localsearch, run_hybrid_localsearch, ConvergenceTrace, HybridConfig,
    IterationRecord,
};
pub use search::{
    best_move_blind, best_move_ce, best_move_fixed_threshold, best_move_greedy, delta_euclidean,
    delta_uniform, Algorithm, BestMoveResult, MoveSearcher, SearchStats, SearchVariant,
};
pub use tour::{Move, Tour};
pub use tsplib::parse_tsplib;
