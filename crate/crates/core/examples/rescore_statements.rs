//! Turns raw (log_agree, log_disagree) pairs into ratings under a fixed
//! calibration, printing each intermediate quantity.

use valueprobe::rescore::{error_term, p_agree, rate};
use valueprobe::{CalibrationFit, Gender};

fn main() -> anyhow::Result<()> {
    let fit = CalibrationFit {
        model_id: "example".into(),
        gender: Gender::Feminine,
        a: 0.85,
        sigma: 0.3,
        pearson_r: 0.97,
        n: 100,
    };
    // log_disagree fixed at -8; log_agree walks across the calibration line at -6.8
    let log_disagree = -8.0;
    println!("{:>10} {:>8} {:>8} {:>7}", "log_agree", "err", "P(agree)", "rating");
    for log_agree in [-7.8, -7.4, -7.1, -6.8, -6.5, -6.2, -5.8] {
        let r = rate("q", log_agree, log_disagree, &fit)?;
        assert_eq!(r.err, error_term(log_agree, log_disagree, fit.a));
        assert_eq!(r.p_agree, p_agree(r.err, fit.sigma)?);
        println!("{log_agree:>10.2} {:>8.3} {:>8.4} {:>7.3}", r.err, r.p_agree, r.rating);
    }
    Ok(())
}
