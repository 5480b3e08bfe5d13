//! Turning a statement's (LogAgree, LogDisagree) pair into a 1..5 rating.
//!
//! The residual `err = log_agree - a * log_disagree` is read against the
//! calibration spread: `P(agree) = Phi(err / sigma)`, and the probability is
//! mapped linearly onto the survey scale, `rating = 4 * P(agree) + 1`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::domain::{CalibrationFit, RatedStatement, Statement};
use crate::error::{Error, Result};
use crate::scorer::{pair, LogProbTable};

/// Deviation of the agree log-probability from the calibration line.
pub fn error_term(log_agree: f64, log_disagree: f64, a: f64) -> f64 {
    log_agree - a * log_disagree
}

/// Standard normal CDF, `Phi(z) = erfc(-z / sqrt(2)) / 2`.
///
/// `erfc` is the musl/FreeBSD implementation from `libm`, accurate to about one
/// ulp, so the absolute error of `Phi` stays well below 1e-7 over the whole
/// real line. Going through `erfc` rather than `1 + erf` keeps the lower tail
/// accurate.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Probability that the model leans towards agreeing.
pub fn p_agree(err: f64, sigma: f64) -> Result<f64> {
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::DegenerateSigma(sigma));
    }
    Ok(std_normal_cdf(err / sigma))
}

/// Maps a probability onto the 1..5 Likert scale.
pub fn rating(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRangeP(p));
    }
    Ok(4.0 * p + 1.0)
}

/// Rates one statement under one fit.
pub fn rate(statement_id: &str, log_agree: f64, log_disagree: f64, fit: &CalibrationFit) -> Result<RatedStatement> {
    let err = error_term(log_agree, log_disagree, fit.a);
    let p = p_agree(err, fit.sigma)?;
    Ok(RatedStatement {
        statement_id: statement_id.to_string(),
        gender: fit.gender,
        err,
        p_agree: p,
        rating: rating(p)?,
    })
}

/// Rates every survey statement for the gender of `fit`, in input order.
pub fn rescore_all(
    table: &LogProbTable,
    fit: &CalibrationFit,
    survey_statements: &[Statement],
) -> Result<Vec<RatedStatement>> {
    if fit.sigma.is_nan() || fit.sigma <= 0.0 {
        return Err(Error::DegenerateSigma(fit.sigma));
    }
    survey_statements
        .iter()
        .map(|s| {
            let (agree, disagree) = pair(table, &s.id, fit.gender)?;
            rate(&s.id, agree, disagree, fit)
        })
        .collect()
}
