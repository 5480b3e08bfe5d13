//! Calibrated agree/disagree probing of masked language models.
//!
//! The pipeline runs in stages:
//!
//! 1. [`templating`] renders four prompts per statement (feminine/masculine
//!    speaker x agree/disagree) and records where the agree/disagree word sits.
//! 2. An external extractor masks that word and writes log-probabilities as
//!    JSONL, which [`scorer`] ingests. [`scorer::MockScorer`] stands in for a
//!    real model in tests and examples.
//! 3. [`calibration`] fits `log_agree = a * log_disagree` on politically
//!    neutral statements and measures the residual spread.
//! 4. [`rescore`] turns each survey statement's residual into `P(agree)` and a
//!    1..5 rating.
//! 5. [`survey`] aggregates respondent answers into value scores and compares
//!    the model's ratings with them.
//! 6. [`report`] wires the stages into the `probe` command line and writes the
//!    result tables.
//!
//! Each stage has a runnable example under `examples/`: `render_templates`,
//! `mock_extract`, `calibrate_mock`, `rescore_statements`, `survey_compare`
//! and `end_to_end`.

pub mod calibration;
pub mod domain;
pub mod error;
pub mod report;
pub mod rescore;
pub mod scorer;
pub mod survey;
pub mod templating;

pub use domain::{
    CalibrationFit, Gender, LogProbRecord, Polarity, PromptVariant, RatedStatement, Statement, StatementKind,
    SurveyResponse, ValueCategory,
};
pub use error::{Error, Result};

/// The 100 politically neutral Czech calibration statements, as CSV.
pub const CALIBRATION_CORPUS_CSV: &str = include_str!("../data/calibration_cs.csv");

/// Parsed form of [`CALIBRATION_CORPUS_CSV`], ids `c1`..`c100`.
pub fn calibration_corpus() -> Vec<Statement> {
    domain::read_statements(
        CALIBRATION_CORPUS_CSV.as_bytes(),
        StatementKind::Calibration,
        "calibration_cs.csv",
    )
    .expect("bundled calibration corpus is valid")
}
