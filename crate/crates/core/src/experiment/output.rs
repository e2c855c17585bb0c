//! CSV writers. Each file may start with a `# generated ...` comment line;
//! everything after it is a fixed function of the plan.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::analysis::{write_validator_rows, ValidatorRow};

use super::{AggregateRow, ConvergeRow, FitRow, TrialRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsvOptions {
    pub timestamp_header: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            timestamp_header: true,
        }
    }
}

fn header<W: Write>(out: &mut W, opts: CsvOptions) -> std::io::Result<()> {
    if opts.timestamp_header {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        writeln!(out, "# generated unix={secs}")?;
    }
    Ok(())
}

fn write_all<W: Write, T: serde::Serialize>(
    mut out: W,
    opts: CsvOptions,
    rows: &[T],
    empty_header: &[&str],
) -> csv::Result<()> {
    header(&mut out, opts)?;
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(empty_header)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

const TRIAL_COLUMNS: [&str; 13] = [
    "dist",
    "n",
    "instance",
    "tour",
    "seed",
    "algo",
    "variant",
    "moves_evaluated",
    "edges_expanded",
    "selections",
    "gain",
    "found",
    "optimal",
];

/// Per-trial rows; a `micros` column is appended when any row carries a
/// timing.
pub fn write_trials<W: Write>(mut out: W, opts: CsvOptions, rows: &[TrialRow]) -> csv::Result<()> {
    let timing = rows.iter().any(|r| r.micros.is_some());
    if !timing {
        return write_all(out, opts, rows, &TRIAL_COLUMNS);
    }
    header(&mut out, opts)?;
    let mut w = csv::Writer::from_writer(out);
    let mut cols: Vec<&str> = TRIAL_COLUMNS.to_vec();
    cols.push("micros");
    w.write_record(&cols)?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    for r in rows {
        w.write_record([
            r.dist.clone(),
            r.n.to_string(),
            r.instance.to_string(),
            r.tour.to_string(),
            r.seed.to_string(),
            r.algo.to_string(),
            r.variant.clone(),
            r.moves_evaluated.to_string(),
            r.edges_expanded.to_string(),
            r.selections.to_string(),
            opt(r.gain.map(|g| g.to_string())),
            r.found.to_string(),
            opt(r.optimal.map(|o| o.to_string())),
            opt(r.micros.map(|m| m.to_string())),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_aggregates<W: Write>(
    out: W,
    opts: CsvOptions,
    rows: &[AggregateRow],
) -> csv::Result<()> {
    write_all(
        out,
        opts,
        rows,
        &[
            "dist",
            "n",
            "trials",
            "ce",
            "greedy",
            "blind",
            "fixed",
            "f_bar",
            "ce_over_greedy",
            "blind_over_greedy",
            "fixed_success",
        ],
    )
}

pub fn write_converge<W: Write>(out: W, opts: CsvOptions, rows: &[ConvergeRow]) -> csv::Result<()> {
    write_all(
        out,
        opts,
        rows,
        &[
            "dist",
            "n",
            "instance",
            "tour",
            "mode",
            "beta",
            "L",
            "s",
            "total_evaluations",
            "avg_mpi",
            "evals_100",
            "initial_length",
            "final_length",
            "savings",
            "matches_ce",
        ],
    )
}

pub fn write_fits<W: Write>(out: W, opts: CsvOptions, rows: &[FitRow]) -> csv::Result<()> {
    write_all(
        out,
        opts,
        rows,
        &["dist", "algo", "points", "a", "b", "residual"],
    )
}

pub fn write_validation<W: Write>(
    mut out: W,
    opts: CsvOptions,
    rows: &[ValidatorRow],
) -> csv::Result<()> {
    header(&mut out, opts)?;
    write_validator_rows(rows, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{read_aggregates, run_best_move, ExperimentPlan};

    #[test]
    fn aggregates_round_trip_through_csv() {
        let plan = ExperimentPlan {
            sizes: vec![20, 30, 40],
            instances_per_size: 1,
            tours_per_instance: 2,
            oracle_samples: 10_000,
            ..Default::default()
        };
        let report = run_best_move(&plan).unwrap();
        let mut buf = Vec::new();
        write_aggregates(&mut buf, CsvOptions::default(), &report.aggregates).unwrap();
        assert!(buf.starts_with(b"# generated"));
        assert_eq!(read_aggregates(buf.as_slice()).unwrap(), report.aggregates);
    }

    #[test]
    fn header_suppression_gives_identical_bytes() {
        let plan = ExperimentPlan {
            sizes: vec![25],
            instances_per_size: 1,
            tours_per_instance: 3,
            ..Default::default()
        };
        let opts = CsvOptions {
            timestamp_header: false,
        };
        let write = || {
            let mut buf = Vec::new();
            write_trials(&mut buf, opts, &run_best_move(&plan).unwrap().trials).unwrap();
            buf
        };
        let a = write();
        assert_eq!(a, write());
        assert!(a.starts_with(b"dist,n,instance,tour,seed,algo,"));
    }
}
