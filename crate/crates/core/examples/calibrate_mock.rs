//! Fits the agree/disagree line on the bundled calibration corpus scored by
//! mock backends of increasing noise, and compares the estimates with the
//! true parameters.

use valueprobe::calibration::calibrate;
use valueprobe::scorer::{score_all, MockScorer};
use valueprobe::templating::{default_templates, render_prompts};
use valueprobe::{calibration_corpus, Gender};

fn main() -> anyhow::Result<()> {
    let templates = default_templates();
    let mut variants = Vec::new();
    for s in &calibration_corpus() {
        variants.extend(render_prompts(s, &templates)?);
    }

    println!(
        "{:>6} {:>6} | {:>6} {:>6} {:>6} {:>6} {:>4}",
        "a", "sigma", "gender", "a_hat", "s_hat", "r", "n"
    );
    for (a, sigma) in [(0.85, 0.1), (0.85, 0.3), (0.85, 1.0), (1.1, 0.3)] {
        let table = score_all(&MockScorer::new(42, a, sigma), &variants)?;
        for g in Gender::ALL {
            let fit = calibrate(&table, g)?;
            println!(
                "{a:>6.2} {sigma:>6.2} | {:>6} {:>6.3} {:>6.3} {:>6.3} {:>4}",
                g.to_string(),
                fit.a,
                fit.sigma,
                fit.pearson_r,
                fit.n
            );
        }
    }
    Ok(())
}
