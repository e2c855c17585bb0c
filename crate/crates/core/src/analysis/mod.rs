//! Probabilistic validators and complexity estimators.

mod fit;
mod oracle;
mod report;
mod tail;
mod witness;

pub use fit::{power_fit, power_fit_fixed_exponent, FitResult};
pub use oracle::{
    d_uncross_failure_bound, d_uncross_failure_limit, expected_evals_euclidean,
    expected_evals_uniform, no_ls_move_limit,
};
pub use report::{write_validator_rows, ValidatorRow};
pub use tail::{mc_tail_probability, tail_bound, TailEstimate, TAIL_BOUND_MIN_D};
pub use witness::{
    d_uncross_exists, d_uncross_gain_bound, instance_is_good, ls_move_exists, GridCells, Rect,
};
