use std::io::Write;

use serde::Serialize;

/// One validator outcome. `bound` is the reference value the observed rate
/// was compared against; its meaning depends on `check`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidatorRow {
    pub check: String,
    pub n: usize,
    pub alpha_or_lambda: f64,
    pub trials: u64,
    pub successes: u64,
    pub bound: f64,
    pub pass: bool,
}

impl ValidatorRow {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

/// CSV with header `check,n,alpha_or_lambda,trials,successes,bound,pass`.
pub fn write_validator_rows<W: Write>(rows: &[ValidatorRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "check",
            "n",
            "alpha_or_lambda",
            "trials",
            "successes",
            "bound",
            "pass",
        ])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
