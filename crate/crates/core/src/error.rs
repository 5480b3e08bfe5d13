use std::path::PathBuf;

use crate::domain::{Gender, Polarity, ValueCategory};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the pipeline can report.
///
/// Each variant maps to a stable upper-case code (see [`Error::code`]) which the
/// `probe` binary prints as the first token of its single-line error message.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("statement {id:?} has empty text")]
    EmptyText { id: String },
    #[error("survey statement {id:?} has no value category")]
    SurveyWithoutValue { id: String },
    #[error("calibration statement {id:?} must not carry a value category or reversal flag")]
    CalibrationWithValue { id: String },
    #[error("statement id {id:?} appears more than once")]
    DuplicateStatement { id: String },

    #[error("template ({gender}, {polarity}) has no \"___\" placeholder")]
    MissingPlaceholder { gender: Gender, polarity: Polarity },
    #[error("template ({gender}, {polarity}) has more than one \"___\" placeholder")]
    MultiplePlaceholders { gender: Gender, polarity: Polarity },
    #[error("invalid template set: {0}")]
    InvalidTemplates(String),

    #[error("duplicate record for ({statement_id}, {gender}, {polarity}) at line {line}")]
    DuplicateKey {
        statement_id: String,
        gender: Gender,
        polarity: Polarity,
        line: usize,
    },
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("line {line}: log-probability {logprob} is positive")]
    PositiveLogProb { line: usize, logprob: f64 },
    #[error("line {line}: model {found:?} differs from {expected:?}; one file holds one model")]
    MixedModels {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("no {polarity} record for ({statement_id}, {gender})")]
    MissingPolarity {
        statement_id: String,
        gender: Gender,
        polarity: Polarity,
    },
    #[error("model id mismatch: expected {expected:?}, found {found:?}")]
    ModelMismatch { expected: String, found: String },

    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("series has zero variance")]
    ZeroVariance,
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("sum of squared log-disagree values is zero")]
    DegenerateX,
    #[error("calibration for {gender} has {n} complete statement pairs; need at least 2")]
    InsufficientData { gender: Gender, n: usize },

    #[error("residual sigma {0} is not positive; calibration is degenerate")]
    DegenerateSigma(f64),
    #[error("probability {0} outside [0, 1]")]
    OutOfRangeP(f64),

    #[error("rating {0} outside [1, 5]")]
    OutOfRange(f64),
    #[error("question {0:?} is not a survey statement with a value category")]
    UnknownQuestion(String),
    #[error("answer set is empty")]
    EmptyAnswers,
    #[error("no observations for ({gender}, {value})")]
    EmptyGroup { gender: Gender, value: ValueCategory },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("path does not exist: {0}")]
    MissingPath(PathBuf),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyText { .. } => "EMPTY_TEXT",
            Error::SurveyWithoutValue { .. } => "SURVEY_WITHOUT_VALUE",
            Error::CalibrationWithValue { .. } => "CALIBRATION_WITH_VALUE",
            Error::DuplicateStatement { .. } => "DUPLICATE_STATEMENT",
            Error::MissingPlaceholder { .. } => "MISSING_PLACEHOLDER",
            Error::MultiplePlaceholders { .. } => "MULTIPLE_PLACEHOLDERS",
            Error::InvalidTemplates(_) => "INVALID_TEMPLATES",
            Error::DuplicateKey { .. } => "DUPLICATE_KEY",
            Error::MalformedLine { .. } => "MALFORMED_LINE",
            Error::PositiveLogProb { .. } => "POSITIVE_LOGPROB",
            Error::MixedModels { .. } => "MIXED_MODELS",
            Error::MissingPolarity { .. } => "MISSING_POLARITY",
            Error::ModelMismatch { .. } => "MODEL_MISMATCH",
            Error::LengthMismatch(..) => "LENGTH_MISMATCH",
            Error::ZeroVariance => "ZERO_VARIANCE",
            Error::TooFewPoints(_) => "TOO_FEW_POINTS",
            Error::DegenerateX => "DEGENERATE_X",
            Error::InsufficientData { .. } => "INSUFFICIENT_DATA",
            Error::DegenerateSigma(_) => "DEGENERATE_SIGMA",
            Error::OutOfRangeP(_) => "OUT_OF_RANGE_P",
            Error::OutOfRange(_) => "OUT_OF_RANGE",
            Error::UnknownQuestion(_) => "UNKNOWN_QUESTION",
            Error::EmptyAnswers => "EMPTY_ANSWERS",
            Error::EmptyGroup { .. } => "EMPTY_GROUP",
            Error::Parse { .. } => "PARSE",
            Error::MissingPath(_) => "MISSING_PATH",
            Error::Config(_) => "CONFIG",
            Error::Io(_) => "IO",
            Error::Json(_) => "JSON",
            Error::Csv(_) => "CSV",
        }
    }
}
