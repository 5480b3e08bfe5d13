#![allow(dead_code)]

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use valueprobe::domain::write_statements;
use valueprobe::scorer::{score_all, LogProbTable, MockScorer};
use valueprobe::survey::write_microdata;
use valueprobe::templating::{default_templates, render_prompts};
use valueprobe::{Gender, Statement, SurveyResponse, ValueCategory};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// `n` survey statements cycling through the four values; every third item is
/// reverse-keyed.
pub fn synthetic_survey(n: usize) -> Vec<Statement> {
    (1..=n)
        .map(|i| {
            Statement::survey(
                format!("q{i}"),
                format!("tvrzení číslo {i} platí."),
                ValueCategory::ALL[i % 4],
                i % 3 == 0,
            )
        })
        .collect()
}

pub fn mock_table(statements: &[Statement], scorer: &MockScorer) -> LogProbTable {
    let templates = default_templates();
    let variants: Vec<_> = statements
        .iter()
        .flat_map(|s| render_prompts(s, &templates).unwrap())
        .collect();
    score_all(scorer, &variants).unwrap()
}

pub fn write_table(path: &Path, table: &LogProbTable) {
    table.write_jsonl(BufWriter::new(File::create(path).unwrap())).unwrap();
}

pub fn write_statements_file(path: &Path, statements: &[Statement]) {
    write_statements(File::create(path).unwrap(), statements).unwrap();
}

/// Seeded random respondents, about a fifth of them infected.
pub fn synthetic_microdata(statements: &[Statement], n: usize, seed: u64) -> Vec<SurveyResponse> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let gender = if rng.random_bool(0.8) {
                Gender::Feminine
            } else {
                Gender::Masculine
            };
            let mut answers = std::collections::BTreeMap::new();
            for s in statements {
                if rng.random_bool(0.95) {
                    answers.insert(s.id.clone(), rng.random_range(1..=5u8));
                }
            }
            SurveyResponse::new(format!("r{i}"), gender, rng.random_bool(0.2), answers).unwrap()
        })
        .collect()
}

pub fn write_microdata_file(path: &Path, statements: &[Statement], responses: &[SurveyResponse]) {
    let ids: Vec<String> = statements.iter().map(|s| s.id.clone()).collect();
    write_microdata(File::create(path).unwrap(), responses, &ids).unwrap();
}

/// Files of a complete synthetic run: calibration corpus, 34 survey items,
/// mock log-probabilities for both and 200 respondents.
pub struct SyntheticInputs {
    pub calibration_statements: PathBuf,
    pub calibration_logprobs: PathBuf,
    pub survey_statements: PathBuf,
    pub survey_logprobs: PathBuf,
    pub survey_microdata: PathBuf,
}

pub fn synthetic_inputs(dir: &Path) -> SyntheticInputs {
    fs::create_dir_all(dir).unwrap();
    let calibration = valueprobe::calibration_corpus();
    let survey = synthetic_survey(34);
    let calib_scorer = MockScorer::new(7, 0.85, 0.3);
    // Survey items get extra spread so ratings cover the scale.
    let survey_scorer = MockScorer::new(8, 0.85, 0.6);

    let inputs = SyntheticInputs {
        calibration_statements: dir.join("calibration.csv"),
        calibration_logprobs: dir.join("calibration.jsonl"),
        survey_statements: dir.join("survey.csv"),
        survey_logprobs: dir.join("survey.jsonl"),
        survey_microdata: dir.join("microdata.csv"),
    };
    fs::write(&inputs.calibration_statements, valueprobe::CALIBRATION_CORPUS_CSV).unwrap();
    write_table(&inputs.calibration_logprobs, &mock_table(&calibration, &calib_scorer));
    write_statements_file(&inputs.survey_statements, &survey);
    write_table(&inputs.survey_logprobs, &mock_table(&survey, &survey_scorer));
    write_microdata_file(&inputs.survey_microdata, &survey, &synthetic_microdata(&survey, 200, 3));
    inputs
}
