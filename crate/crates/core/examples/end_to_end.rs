//! The whole pipeline on synthetic inputs: prompts, mock log-probabilities,
//! calibration, rescoring and the survey comparison, written to a directory
//! exactly as the `probe` command would.
//!
//! ```text
//! cargo run --example end_to_end [out-dir]
//! ```

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use valueprobe::domain::write_statements;
use valueprobe::report::{self, OutputFormat, RunConfig};
use valueprobe::scorer::{score_all, MockScorer};
use valueprobe::survey::write_microdata;
use valueprobe::templating::{default_templates, render_prompts};
use valueprobe::{calibration_corpus, Gender, Statement, SurveyResponse, ValueCategory, CALIBRATION_CORPUS_CSV};

fn main() -> anyhow::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/end_to_end".into()));
    let inputs = dir.join("inputs");
    fs::create_dir_all(&inputs)?;

    let survey: Vec<Statement> = (1..=12)
        .map(|i| {
            Statement::survey(
                format!("q{i}"),
                format!("výrok číslo {i} je pravdivý."),
                ValueCategory::ALL[i % 4],
                i % 3 == 0,
            )
        })
        .collect();
    let templates = default_templates();
    let mock = |statements: &[Statement], seed: u64, sigma: f64| -> anyhow::Result<_> {
        let mut variants = Vec::new();
        for s in statements {
            variants.extend(render_prompts(s, &templates)?);
        }
        Ok(score_all(&MockScorer::new(seed, 0.85, sigma), &variants)?)
    };

    fs::write(inputs.join("calibration.csv"), CALIBRATION_CORPUS_CSV)?;
    write_statements(File::create(inputs.join("survey.csv"))?, &survey)?;
    mock(&calibration_corpus(), 1, 0.3)?
        .write_jsonl(BufWriter::new(File::create(inputs.join("calibration.jsonl"))?))?;
    mock(&survey, 2, 0.6)?.write_jsonl(BufWriter::new(File::create(inputs.join("survey.jsonl"))?))?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let responses: Vec<SurveyResponse> = (0..150)
        .map(|i| {
            let gender = if i % 2 == 0 {
                Gender::Feminine
            } else {
                Gender::Masculine
            };
            let answers: BTreeMap<String, u8> =
                survey.iter().map(|s| (s.id.clone(), rng.random_range(1..=5))).collect();
            SurveyResponse::new(format!("r{i}"), gender, i % 7 == 0, answers)
        })
        .collect::<Result<_, _>>()?;
    let ids: Vec<String> = survey.iter().map(|s| s.id.clone()).collect();
    write_microdata(File::create(inputs.join("microdata.csv"))?, &responses, &ids)?;

    let cfg = RunConfig {
        model_id: Some("mock".into()),
        calibration_statements: Some(inputs.join("calibration.csv")),
        calibration_logprobs: Some(inputs.join("calibration.jsonl")),
        survey_statements: Some(inputs.join("survey.csv")),
        survey_logprobs: Some(inputs.join("survey.jsonl")),
        survey_microdata: Some(inputs.join("microdata.csv")),
        out_dir: Some(dir.join("out")),
        format: Some(OutputFormat::Markdown),
        ..Default::default()
    };
    let n = report::cmd_templates(
        &inputs.join("survey.csv"),
        None,
        &dir.join("out").join(report::PROMPTS_FILE),
    )?;
    println!("{n} prompt variants");
    for f in report::cmd_calibrate(&cfg)?.fits {
        println!(
            "{} fit: a={:.3} sigma={:.3} r={:.3}",
            f.gender, f.a, f.sigma, f.pearson_r
        );
    }
    println!("{} ratings", report::cmd_score(&cfg)?.rated.len());
    let cmp = report::cmd_compare(&cfg)?;
    for f in &cmp.files {
        println!("wrote {}", f.display());
    }
    println!("\n{}", fs::read_to_string(dir.join("out/tables.md"))?);
    Ok(())
}
