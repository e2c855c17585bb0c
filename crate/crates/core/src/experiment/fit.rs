use std::io::Read;

use serde::Serialize;

use crate::analysis::{power_fit, FitResult};
use crate::error::{Error, Result};
use crate::search::Algorithm;

use super::AggregateRow;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRow {
    pub dist: String,
    pub algo: Algorithm,
    pub points: usize,
    pub a: f64,
    pub b: f64,
    pub residual: f64,
}

/// Reads aggregate rows, skipping `#` comment lines.
pub fn read_aggregates<R: Read>(input: R) -> Result<Vec<AggregateRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    rdr.deserialize()
        .enumerate()
        .map(|(k, row)| row.map_err(|e| Error::parse(k + 2, e.to_string())))
        .collect()
}

/// Fits `mean = a · n^b` per distribution and algorithm. Every distribution
/// needs at least three sizes.
pub fn fit_aggregates(rows: &[AggregateRow]) -> Result<Vec<FitRow>> {
    if rows.is_empty() {
        return Err(Error::Usage("no aggregate rows to fit".into()));
    }
    let mut dists: Vec<&str> = rows.iter().map(|r| r.dist.as_str()).collect();
    dists.sort();
    dists.dedup();
    let mut out = Vec::new();
    for dist in dists {
        let group: Vec<&AggregateRow> = rows.iter().filter(|r| r.dist == dist).collect();
        for algo in Algorithm::ALL {
            let points: Vec<(f64, f64)> = group
                .iter()
                .filter_map(|r| {
                    let v = match algo {
                        Algorithm::Ce => r.ce,
                        Algorithm::Greedy => r.greedy,
                        Algorithm::Blind => r.blind,
                        Algorithm::Fixed => r.fixed,
                    };
                    v.map(|v| (r.n as f64, v))
                })
                .collect();
            if points.is_empty() {
                continue;
            }
            if points.len() < 3 {
                return Err(Error::Usage(format!(
                    "{dist}/{algo}: a power fit needs at least 3 sizes, got {}",
                    points.len()
                )));
            }
            let FitResult { a, b, residual } = power_fit(&points)?;
            out.push(FitRow {
                dist: dist.to_string(),
                algo,
                points: points.len(),
                a,
                b,
                residual,
            });
        }
    }
    Ok(out)
}
