//! Baseline agree/disagree relation on the neutral calibration corpus.
//!
//! Log-probabilities of "agree" and "disagree" are strongly correlated for a
//! masked LM regardless of the statement. The relation is modelled as a line
//! through the origin, `log_agree = a * log_disagree`, fitted by least squares,
//! with residual spread `sigma`. Fits are per (model, gender).

use crate::domain::{CalibrationFit, Gender};
use crate::error::{Error, Result};
use crate::scorer::{pair, LogProbTable};

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Least-squares slope through the origin for `(x, y) = (log_disagree, log_agree)`
/// pairs: `a = sum(x*y) / sum(x^2)`.
pub fn fit_slope(pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.len() < 2 {
        return Err(Error::TooFewPoints(pairs.len()));
    }
    let sxx: f64 = pairs.iter().map(|(x, _)| x * x).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateX);
    }
    let sxy: f64 = pairs.iter().map(|(x, y)| x * y).sum();
    Ok(sxy / sxx)
}

/// Residual standard deviation around `y = a*x` with `n - 1` degrees of freedom.
pub fn residual_sigma(pairs: &[(f64, f64)], a: f64) -> Result<f64> {
    let n = pairs.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let sse: f64 = pairs.iter().map(|(x, y)| (y - a * x).powi(2)).sum();
    Ok((sse / (n - 1) as f64).sqrt())
}

/// Collects the complete `(log_disagree, log_agree)` pairs of one gender, in
/// statement-id order. Statements missing a polarity are an error.
pub fn calibration_pairs(table: &LogProbTable, gender: Gender) -> Result<Vec<(String, f64, f64)>> {
    table
        .statement_ids(gender)
        .into_iter()
        .map(|sid| {
            let (agree, disagree) = pair(table, sid, gender)?;
            Ok((sid.to_string(), disagree, agree))
        })
        .collect()
}

/// Fits slope, residual sigma and correlation for one gender of a table.
pub fn calibrate(table: &LogProbTable, gender: Gender) -> Result<CalibrationFit> {
    let rows = calibration_pairs(table, gender)?;
    if rows.len() < 2 {
        return Err(Error::InsufficientData { gender, n: rows.len() });
    }
    let pairs: Vec<(f64, f64)> = rows.iter().map(|(_, x, y)| (*x, *y)).collect();
    let a = fit_slope(&pairs)?;
    let sigma = residual_sigma(&pairs, a)?;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let pearson_r = match pearson(&xs, &ys) {
        Ok(r) => r,
        // Constant series: every point identical, the fit is still exact.
        Err(Error::ZeroVariance) if sigma == 0.0 => 1.0,
        Err(e) => return Err(e),
    };
    Ok(CalibrationFit {
        model_id: table.model_id().to_string(),
        gender,
        a,
        sigma,
        pearson_r,
        n: pairs.len(),
    })
}
