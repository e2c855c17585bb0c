//! Power-law fits `y = a · n^b` by least squares in log-log space.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub a: f64,
    pub b: f64,
    /// Mean squared error of `ln y` against the fitted line.
    pub residual: f64,
}

fn logs(points: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    if points.len() < 3 {
        return Err(Error::Usage(format!(
            "a power fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    points
        .iter()
        .map(|&(n, y)| {
            if !(n > 0.0 && n.is_finite()) {
                Err(Error::OutOfRange {
                    what: "n",
                    value: n,
                    range: "(0, inf)",
                })
            } else if !(y > 0.0 && y.is_finite()) {
                Err(Error::OutOfRange {
                    what: "mean",
                    value: y,
                    range: "(0, inf)",
                })
            } else {
                Ok((n.ln(), y.ln()))
            }
        })
        .collect()
}

fn residual(pts: &[(f64, f64)], ln_a: f64, b: f64) -> f64 {
    pts.iter()
        .map(|&(x, y)| (y - ln_a - b * x).powi(2))
        .sum::<f64>()
        / pts.len() as f64
}

/// Unweighted least squares on `(ln n, ln y)`.
pub fn power_fit(points: &[(f64, f64)]) -> Result<FitResult> {
    let pts = logs(points)?;
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Usage(
            "a power fit needs at least two distinct sizes".into(),
        ));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let b = sxy / sxx;
    let ln_a = my - b * mx;
    Ok(FitResult {
        a: ln_a.exp(),
        b,
        residual: residual(&pts, ln_a, b),
    })
}

/// Best constant `a` for a given exponent `b`.
pub fn power_fit_fixed_exponent(points: &[(f64, f64)], b: f64) -> Result<FitResult> {
    let pts = logs(points)?;
    let ln_a = pts.iter().map(|&(x, y)| y - b * x).sum::<f64>() / pts.len() as f64;
    Ok(FitResult {
        a: ln_a.exp(),
        b,
        residual: residual(&pts, ln_a, b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_recovery() {
        let pts: Vec<_> = [1000.0, 2000.0, 4000.0, 8000.0]
            .iter()
            .map(|&n: &f64| (n, 2.0 * n.powf(1.5)))
            .collect();
        let f = power_fit(&pts).unwrap();
        assert!((f.a - 2.0).abs() < 1e-9);
        assert!((f.b - 1.5).abs() < 1e-9);
        assert!(f.residual < 1e-20);
        let g = power_fit_fixed_exponent(&pts, 1.5).unwrap();
        assert!((g.a - 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(power_fit(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(power_fit(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(power_fit(&[(-1.0, 1.0), (2.0, 1.0), (3.0, 1.0)]).is_err());
        assert!(power_fit(&[(2.0, 1.0), (2.0, 3.0), (2.0, 5.0)]).is_err());
    }
}
