//! Core vocabulary shared by the rest of the crate.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{Read, Write};
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grammatical gender of the speaker in a prompt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gender {
    #[serde(rename = "F")]
    Feminine,
    #[serde(rename = "M")]
    Masculine,
}

impl Gender {
    pub const ALL: [Gender; 2] = [Gender::Feminine, Gender::Masculine];

    pub fn code(self) -> &'static str {
        match self {
            Gender::Feminine => "F",
            Gender::Masculine => "M",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Gender {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "F" | "f" => Ok(Gender::Feminine),
            "M" | "m" => Ok(Gender::Masculine),
            other => Err(format!("unknown gender {other:?} (expected F or M)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Agree,
    Disagree,
}

impl Polarity {
    pub const ALL: [Polarity; 2] = [Polarity::Agree, Polarity::Disagree];

    pub fn code(self) -> &'static str {
        match self {
            Polarity::Agree => "agree",
            Polarity::Disagree => "disagree",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "agree" => Ok(Polarity::Agree),
            "disagree" => Ok(Polarity::Disagree),
            other => Err(format!("unknown polarity {other:?} (expected agree or disagree)")),
        }
    }
}

/// The four aggregate political values of the reference survey.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ValueCategory {
    AntiAuth,
    CultLib,
    EconEq,
    Trib,
}

impl ValueCategory {
    pub const ALL: [ValueCategory; 4] = [
        ValueCategory::AntiAuth,
        ValueCategory::CultLib,
        ValueCategory::EconEq,
        ValueCategory::Trib,
    ];

    pub fn code(self) -> &'static str {
        match self {
            ValueCategory::AntiAuth => "AntiAuth",
            ValueCategory::CultLib => "CultLib",
            ValueCategory::EconEq => "EconEq",
            ValueCategory::Trib => "Trib",
        }
    }
}

impl fmt::Display for ValueCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ValueCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ValueCategory::ALL
            .into_iter()
            .find(|v| v.code() == s.trim())
            .ok_or_else(|| format!("unknown value category {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatementKind {
    Calibration,
    Survey,
}

/// One opinion clause that fills the template placeholder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub id: String,
    pub text_cs: String,
    pub kind: StatementKind,
    pub value: Option<ValueCategory>,
    pub reversed: bool,
}

impl Statement {
    pub fn calibration(id: impl Into<String>, text_cs: impl Into<String>) -> Self {
        Statement {
            id: id.into(),
            text_cs: text_cs.into(),
            kind: StatementKind::Calibration,
            value: None,
            reversed: false,
        }
    }

    pub fn survey(id: impl Into<String>, text_cs: impl Into<String>, value: ValueCategory, reversed: bool) -> Self {
        Statement {
            id: id.into(),
            text_cs: text_cs.into(),
            kind: StatementKind::Survey,
            value: Some(value),
            reversed,
        }
    }
}

/// Checks the statement invariants and hands the statement back unchanged.
pub fn validate_statement(s: Statement) -> Result<Statement> {
    if s.text_cs.trim().is_empty() {
        return Err(Error::EmptyText { id: s.id });
    }
    match s.kind {
        StatementKind::Survey if s.value.is_none() => Err(Error::SurveyWithoutValue { id: s.id }),
        StatementKind::Calibration if s.value.is_some() || s.reversed => Err(Error::CalibrationWithValue { id: s.id }),
        _ => Ok(s),
    }
}

#[derive(Debug, Deserialize)]
struct StatementRow {
    statement_id: String,
    text_cs: String,
    #[serde(default)]
    value: Option<String>,
    #[serde(default)]
    reversed: Option<String>,
}

fn parse_flag(raw: Option<&str>) -> std::result::Result<bool, String> {
    match raw.map(str::trim) {
        None | Some("") | Some("0") | Some("false") => Ok(false),
        Some("1") | Some("true") => Ok(true),
        Some(other) => Err(format!("invalid flag {other:?} (expected 0 or 1)")),
    }
}

/// Reads a statements CSV (`statement_id,text_cs[,value,reversed]`).
///
/// `source` names the input in error messages. Calibration files may omit the
/// last two columns. Row numbers in errors count the header as line 1.
pub fn read_statements<R: Read>(reader: R, kind: StatementKind, source: &str) -> Result<Vec<Statement>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(false).from_reader(reader);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (idx, row) in rdr.deserialize::<StatementRow>().enumerate() {
        let line = idx + 2;
        let parse_err = |message: String| Error::Parse {
            path: source.to_string(),
            message: format!("row {line}: {message}"),
        };
        let row = row.map_err(|e| parse_err(e.to_string()))?;
        let value = match row.value.as_deref().map(str::trim) {
            None | Some("") => None,
            Some(v) => Some(v.parse::<ValueCategory>().map_err(parse_err)?),
        };
        let reversed = parse_flag(row.reversed.as_deref()).map_err(parse_err)?;
        let stmt = validate_statement(Statement {
            id: row.statement_id,
            text_cs: row.text_cs,
            kind,
            value,
            reversed,
        })?;
        if !seen.insert(stmt.id.clone()) {
            return Err(Error::DuplicateStatement { id: stmt.id });
        }
        out.push(stmt);
    }
    Ok(out)
}

/// Writes statements in the same CSV layout [`read_statements`] accepts.
pub fn write_statements<W: Write>(writer: W, statements: &[Statement]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    // calibration-only files keep the two-column layout they are read with
    let survey = statements.iter().any(|s| s.kind == StatementKind::Survey);
    if survey {
        wtr.write_record(["statement_id", "text_cs", "value", "reversed"])?;
    } else {
        wtr.write_record(["statement_id", "text_cs"])?;
    }
    for s in statements {
        if survey {
            let value = s.value.map_or("", |v| v.code());
            wtr.write_record([s.id.as_str(), &s.text_cs, value, if s.reversed { "1" } else { "0" }])?;
        } else {
            wtr.write_record([s.id.as_str(), &s.text_cs])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// One rendered sentence with the location of its agree/disagree word.
///
/// Mask offsets count Unicode scalar values, not bytes, so they index the text
/// the same way a Python `str` slice would.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptVariant {
    pub statement_id: String,
    pub gender: Gender,
    pub polarity: Polarity,
    pub text: String,
    pub mask_char_start: usize,
    pub mask_char_end: usize,
    pub target_word: String,
}

impl PromptVariant {
    pub fn mask_span(&self) -> Range<usize> {
        self.mask_char_start..self.mask_char_end
    }

    /// The text covered by the mask span.
    pub fn masked_slice(&self) -> String {
        self.text
            .chars()
            .skip(self.mask_char_start)
            .take(self.mask_char_end - self.mask_char_start)
            .collect()
    }

    /// The text with the mask span removed.
    pub fn without_target(&self) -> String {
        self.text
            .chars()
            .enumerate()
            .filter(|(i, _)| !self.mask_span().contains(i))
            .map(|(_, c)| c)
            .collect()
    }
}

/// Total log-probability (nats) a model assigned to the masked target word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogProbRecord {
    pub model_id: String,
    pub statement_id: String,
    pub gender: Gender,
    pub polarity: Polarity,
    pub logprob: f64,
    pub n_target_tokens: u32,
}

/// Zero-intercept calibration of one model for one gender.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationFit {
    pub model_id: String,
    pub gender: Gender,
    /// Slope of `log_agree = a * log_disagree`.
    pub a: f64,
    /// Residual standard deviation in nats.
    pub sigma: f64,
    pub pearson_r: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatedStatement {
    pub statement_id: String,
    pub gender: Gender,
    pub err: f64,
    pub p_agree: f64,
    pub rating: f64,
}

/// One survey participant. Answers are on the 1..=5 Likert scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyResponse {
    pub respondent_id: String,
    pub gender: Gender,
    pub toxo_positive: bool,
    pub answers: BTreeMap<String, u8>,
}

impl SurveyResponse {
    pub fn new(
        respondent_id: impl Into<String>,
        gender: Gender,
        toxo_positive: bool,
        answers: BTreeMap<String, u8>,
    ) -> Result<Self> {
        if let Some((_, &bad)) = answers.iter().find(|(_, a)| !(1..=5).contains(*a)) {
            return Err(Error::OutOfRange(f64::from(bad)));
        }
        Ok(SurveyResponse {
            respondent_id: respondent_id.into(),
            gender,
            toxo_positive,
            answers,
        })
    }
}
