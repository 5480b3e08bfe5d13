//! Pipeline stages behind the `probe` command line and their output files.
//!
//! ```text
//! templates  statements.csv            -> prompts.jsonl
//! (extract)  prompts.jsonl             -> <model>.jsonl        external
//! calibrate  calibration logprobs      -> calibration_fits.json, scatter.csv
//! score      fits + survey logprobs    -> ratings.csv
//! compare    ratings + survey data     -> value_summary.csv, representativeness.csv,
//!                                         rating_distribution.csv
//! ```
//!
//! CSV outputs carry full `f64` precision. With `--format markdown` a rounded
//! `.md` rendering is written next to them.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::calibration::{calibrate, calibration_pairs};
use crate::domain::{read_statements, CalibrationFit, Gender, RatedStatement, Statement, StatementKind, ValueCategory};
use crate::error::{Error, Result};
use crate::rescore::rescore_all;
use crate::scorer::{ingest_logprobs, pair, LogProbTable};
use crate::survey::{
    build_value_scores, compare, read_microdata, representativeness, survey_baseline, ComparisonRow, ItemMap,
    ValueSummary,
};
use crate::templating::{default_templates, write_prompts_jsonl, TemplateSet};

pub const PROMPTS_FILE: &str = "prompts.jsonl";
pub const FITS_FILE: &str = "calibration_fits.json";
pub const SCATTER_FILE: &str = "scatter.csv";
pub const RATINGS_FILE: &str = "ratings.csv";
pub const VALUE_SUMMARY_FILE: &str = "value_summary.csv";
pub const REPRESENTATIVENESS_FILE: &str = "representativeness.csv";
pub const DISTRIBUTION_FILE: &str = "rating_distribution.csv";

/// Source label of the survey baseline rows.
pub const SURVEY_SOURCE: &str = "survey_per_question";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            other => Err(format!("unknown format {other:?} (expected csv or markdown)")),
        }
    }
}

/// Settings shared by all subcommands. Every field is optional so a config
/// file and command-line flags can be layered with [`RunConfig::overlay`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model_id: Option<String>,
    pub calibration_statements: Option<PathBuf>,
    pub survey_statements: Option<PathBuf>,
    pub survey_microdata: Option<PathBuf>,
    pub calibration_logprobs: Option<PathBuf>,
    pub survey_logprobs: Option<PathBuf>,
    pub fits: Option<PathBuf>,
    pub ratings: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl RunConfig {
    /// Loads a TOML config. Relative paths are taken relative to the file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|_| Error::MissingPath(path.to_path_buf()))?;
        let mut cfg: RunConfig = toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            message: e.to_string().replace('\n', " "),
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in cfg.paths_mut() {
            if let Some(p) = p.as_mut() {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        Ok(cfg)
    }

    fn paths_mut(&mut self) -> [&mut Option<PathBuf>; 8] {
        [
            &mut self.calibration_statements,
            &mut self.survey_statements,
            &mut self.survey_microdata,
            &mut self.calibration_logprobs,
            &mut self.survey_logprobs,
            &mut self.fits,
            &mut self.ratings,
            &mut self.out_dir,
        ]
    }

    /// Fields set in `top` win over `self`.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        RunConfig {
            model_id: top.model_id.or(self.model_id),
            calibration_statements: top.calibration_statements.or(self.calibration_statements),
            survey_statements: top.survey_statements.or(self.survey_statements),
            survey_microdata: top.survey_microdata.or(self.survey_microdata),
            calibration_logprobs: top.calibration_logprobs.or(self.calibration_logprobs),
            survey_logprobs: top.survey_logprobs.or(self.survey_logprobs),
            fits: top.fits.or(self.fits),
            ratings: top.ratings.or(self.ratings),
            out_dir: top.out_dir.or(self.out_dir),
            format: top.format.or(self.format),
        }
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"))
    }

    pub fn format(&self) -> OutputFormat {
        self.format.unwrap_or_default()
    }

    fn fits_path(&self) -> PathBuf {
        self.fits.clone().unwrap_or_else(|| self.out_dir().join(FITS_FILE))
    }

    fn ratings_path(&self) -> PathBuf {
        self.ratings
            .clone()
            .unwrap_or_else(|| self.out_dir().join(RATINGS_FILE))
    }
}

fn require<'a>(path: Option<&'a PathBuf>, flag: &str) -> Result<&'a Path> {
    let p = path.ok_or_else(|| Error::Config(format!("--{flag} is required")))?;
    existing(p)
}

fn existing(p: &Path) -> Result<&Path> {
    if p.exists() {
        Ok(p)
    } else {
        Err(Error::MissingPath(p.to_path_buf()))
    }
}

fn open(p: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(existing(p)?)?))
}

fn create(dir: &Path, name: &str) -> Result<(PathBuf, BufWriter<File>)> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let f = File::create(&path)?;
    Ok((path, BufWriter::new(f)))
}

/// Reads a statements CSV, treating it as a survey file when it has a `value`
/// column and as a calibration file otherwise.
pub fn load_statements(path: &Path) -> Result<Vec<Statement>> {
    let mut text = String::new();
    open(path)?.read_to_string(&mut text)?;
    let header = text.lines().next().unwrap_or("");
    let kind = if header.split(',').any(|h| h.trim() == "value") {
        StatementKind::Survey
    } else {
        StatementKind::Calibration
    };
    read_statements(text.as_bytes(), kind, &path.display().to_string())
}

pub fn load_logprobs(path: &Path) -> Result<LogProbTable> {
    ingest_logprobs(open(path)?).map_err(|e| match e {
        Error::MalformedLine { line, message } => Error::Parse {
            path: path.display().to_string(),
            message: format!("line {line}: {message}"),
        },
        other => other,
    })
}

fn check_model(expected: Option<&str>, found: &str) -> Result<()> {
    match expected {
        Some(m) if m != found => Err(Error::ModelMismatch {
            expected: m.to_string(),
            found: found.to_string(),
        }),
        _ => Ok(()),
    }
}

/// Renders prompt variants for every statement of `statements` into `out`.
/// Returns the number of variants written.
pub fn cmd_templates(statements: &Path, templates: Option<&Path>, out: &Path) -> Result<usize> {
    let statements = load_statements(statements)?;
    let templates = match templates {
        Some(p) => TemplateSet::parse(open(p)?)?,
        None => default_templates(),
    };
    if let Some(dir) = out.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(File::create(out)?);
    let n = write_prompts_jsonl(&mut w, &statements, &templates)?;
    w.flush()?;
    Ok(n)
}

#[derive(Debug, Clone)]
pub struct CalibrateOutput {
    pub fits: Vec<CalibrationFit>,
    pub files: Vec<PathBuf>,
}

/// Fits both genders on the calibration log-probabilities.
pub fn cmd_calibrate(cfg: &RunConfig) -> Result<CalibrateOutput> {
    let mut table = load_logprobs(require(cfg.calibration_logprobs.as_ref(), "calibration-logprobs")?)?;
    check_model(cfg.model_id.as_deref(), table.model_id())?;
    if let Some(p) = cfg.calibration_statements.as_ref() {
        let statements = load_statements(existing(p)?)?;
        table = restrict_complete(&table, &statements)?;
    }

    let fits = Gender::ALL
        .iter()
        .map(|&g| calibrate(&table, g))
        .collect::<Result<Vec<_>>>()?;

    let dir = cfg.out_dir();
    let mut files = Vec::new();

    let (path, mut w) = create(&dir, FITS_FILE)?;
    serde_json::to_writer_pretty(&mut w, &fits)?;
    w.write_all(b"\n")?;
    w.flush()?;
    files.push(path);

    let (path, w) = create(&dir, SCATTER_FILE)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["statement_id", "log_disagree", "log_agree", "gender"])?;
    for g in Gender::ALL {
        for (sid, x, y) in calibration_pairs(&table, g)? {
            csv.serialize((sid, x, y, g))?;
        }
    }
    csv.flush()?;
    files.push(path);

    if cfg.format() == OutputFormat::Markdown {
        let mut md = String::from("| model | gender | a | sigma | pearson r | n |\n|---|---|---|---|---|---|\n");
        for f in &fits {
            let _ = writeln!(
                md,
                "| {} | {} | {:.3} | {:.3} | {:.2} | {} |",
                f.model_id, f.gender, f.a, f.sigma, f.pearson_r, f.n
            );
        }
        files.push(write_text(&dir, "calibration.md", &md)?);
    }
    Ok(CalibrateOutput { fits, files })
}

/// Keeps only the listed statements and insists each has all four records.
fn restrict_complete(table: &LogProbTable, statements: &[Statement]) -> Result<LogProbTable> {
    let mut out = LogProbTable::new(table.model_id());
    for s in statements {
        for g in Gender::ALL {
            pair(table, &s.id, g)?;
            for r in table.records().filter(|r| r.statement_id == s.id && r.gender == g) {
                out.insert(r.clone(), 0)?;
            }
        }
    }
    Ok(out)
}

pub fn read_fits(path: &Path) -> Result<Vec<CalibrationFit>> {
    Ok(serde_json::from_reader(open(path)?)?)
}

pub fn write_ratings_csv<W: Write>(w: W, rated: &[RatedStatement]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for r in rated {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_ratings_csv<R: Read>(r: R) -> Result<Vec<RatedStatement>> {
    let mut rdr = csv::Reader::from_reader(r);
    Ok(rdr.deserialize().collect::<std::result::Result<Vec<_>, _>>()?)
}

#[derive(Debug, Clone)]
pub struct ScoreOutput {
    pub rated: Vec<RatedStatement>,
    pub files: Vec<PathBuf>,
}

/// Rates every survey statement for both genders.
pub fn cmd_score(cfg: &RunConfig) -> Result<ScoreOutput> {
    let fits = read_fits(&cfg.fits_path())?;
    let statements = load_statements(require(cfg.survey_statements.as_ref(), "survey-statements")?)?;
    let table = load_logprobs(require(cfg.survey_logprobs.as_ref(), "survey-logprobs")?)?;
    check_model(cfg.model_id.as_deref(), table.model_id())?;

    let mut rated = Vec::with_capacity(statements.len() * 2);
    for g in Gender::ALL {
        let fit = fits
            .iter()
            .find(|f| f.gender == g)
            .ok_or_else(|| Error::Config(format!("no calibration fit for gender {g}")))?;
        if !table.is_empty() {
            check_model(Some(&fit.model_id), table.model_id())?;
        }
        rated.extend(rescore_all(&table, fit, &statements)?);
    }

    let dir = cfg.out_dir();
    let mut files = Vec::new();
    let (path, mut w) = create(&dir, RATINGS_FILE)?;
    write_ratings_csv(&mut w, &rated)?;
    w.flush()?;
    files.push(path);

    if cfg.format() == OutputFormat::Markdown {
        let mut md = String::from("| statement | gender | err | P(agree) | rating |\n|---|---|---|---|---|\n");
        for r in &rated {
            let _ = writeln!(
                md,
                "| {} | {} | {:.2} | {:.2} | {:.1} |",
                r.statement_id, r.gender, r.err, r.p_agree, r.rating
            );
        }
        files.push(write_text(&dir, "ratings.md", &md)?);
    }
    Ok(ScoreOutput { rated, files })
}

/// Survey baseline for one (gender, value) with its self-representativeness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineRow {
    pub gender: Gender,
    pub value: ValueCategory,
    pub summary: ValueSummary,
    pub representativeness: f64,
    pub n_answers: usize,
}

#[derive(Debug, Clone)]
pub struct CompareOutput {
    pub model: Vec<ComparisonRow>,
    pub baseline: Vec<BaselineRow>,
    pub files: Vec<PathBuf>,
}

/// Compares the rated statements with the survey and writes the tables.
pub fn cmd_compare(cfg: &RunConfig) -> Result<CompareOutput> {
    let statements = load_statements(require(cfg.survey_statements.as_ref(), "survey-statements")?)?;
    let responses = {
        let p = require(cfg.survey_microdata.as_ref(), "survey-microdata")?;
        read_microdata(open(p)?, &statements, &p.display().to_string())?
    };
    let rated = read_ratings_csv(open(&cfg.ratings_path())?)?;

    let scores = build_value_scores(&responses, &statements)?;
    let model = compare(&rated, &statements, &scores)?;
    let baseline = survey_baseline(&responses, &statements)?
        .into_iter()
        .map(|((gender, value), summary)| {
            let answers = scores.get(gender, value);
            Ok(BaselineRow {
                gender,
                value,
                summary,
                representativeness: representativeness(summary.mean, answers)?,
                n_answers: answers.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let model_id = cfg.model_id.clone().unwrap_or_else(|| "model".to_string());
    let dir = cfg.out_dir();
    let mut files = Vec::new();

    let (path, w) = create(&dir, VALUE_SUMMARY_FILE)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["source", "gender", "value", "mean", "std", "n"])?;
    for b in &baseline {
        csv.serialize((
            SURVEY_SOURCE,
            b.gender,
            b.value,
            b.summary.mean,
            b.summary.std,
            b.summary.count,
        ))?;
    }
    for r in &model {
        csv.serialize((&model_id, r.gender, r.value, r.model.mean, r.model.std, r.model.count))?;
    }
    csv.flush()?;
    files.push(path);

    let (path, w) = create(&dir, REPRESENTATIVENESS_FILE)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["source", "gender", "value", "rating", "representativeness", "n_answers"])?;
    for b in &baseline {
        csv.serialize((
            SURVEY_SOURCE,
            b.gender,
            b.value,
            b.summary.mean,
            b.representativeness,
            b.n_answers,
        ))?;
    }
    for r in &model {
        csv.serialize((
            &model_id,
            r.gender,
            r.value,
            r.model.mean,
            r.representativeness,
            r.n_answers,
        ))?;
    }
    csv.flush()?;
    files.push(path);

    let (path, w) = create(&dir, DISTRIBUTION_FILE)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["statement_id", "value", "gender", "rating"])?;
    // Ratings here are aligned with their value (reversed items flipped),
    // i.e. exactly the numbers averaged into the value summary.
    let items = ItemMap::new(&statements);
    for r in &rated {
        let (value, aligned) = items.aligned(&r.statement_id, r.rating)?;
        csv.serialize((&r.statement_id, value, r.gender, aligned))?;
    }
    csv.flush()?;
    files.push(path);

    if cfg.format() == OutputFormat::Markdown {
        let md = markdown_tables(&model_id, &model, &baseline);
        files.push(write_text(&dir, "tables.md", &md)?);
    }
    Ok(CompareOutput { model, baseline, files })
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    let (path, mut w) = create(dir, name)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(path)
}

/// Wide tables: average rating and std per (value, gender), then
/// representativeness. Ratings round to one decimal, representativeness to two.
pub fn markdown_tables(model_id: &str, model: &[ComparisonRow], baseline: &[BaselineRow]) -> String {
    let cols: Vec<(ValueCategory, Gender)> = ValueCategory::ALL
        .iter()
        .flat_map(|&v| Gender::ALL.map(|g| (v, g)))
        .collect();
    let header: Vec<String> = cols.iter().map(|(v, g)| format!("{v} {g}")).collect();
    let sep = "|---".repeat(cols.len() + 1) + "|\n";

    let cell = |x: Option<f64>, prec: usize| x.map_or("–".to_string(), |x| format!("{x:.prec$}"));
    let model_at = |v, g| model.iter().find(|r| r.value == v && r.gender == g);
    let base_at = |v, g| baseline.iter().find(|r| r.value == v && r.gender == g);

    let mut out = String::new();
    for (title, pick_model, pick_base, prec) in [
        (
            "Average rating",
            (|r: &ComparisonRow| r.model.mean) as fn(&ComparisonRow) -> f64,
            (|b: &BaselineRow| b.summary.mean) as fn(&BaselineRow) -> f64,
            1,
        ),
        ("Standard deviation", |r| r.model.std, |b| b.summary.std, 1),
        (
            "Representativeness",
            |r| r.representativeness,
            |b| b.representativeness,
            2,
        ),
    ] {
        let _ = writeln!(out, "### {title}\n");
        let _ = writeln!(out, "| source | {} |", header.join(" | "));
        out.push_str(&sep);
        let base: Vec<String> = cols
            .iter()
            .map(|&(v, g)| cell(base_at(v, g).map(pick_base), prec))
            .collect();
        let _ = writeln!(out, "| Survey* | {} |", base.join(" | "));
        let row: Vec<String> = cols
            .iter()
            .map(|&(v, g)| cell(model_at(v, g).map(pick_model), prec))
            .collect();
        let _ = writeln!(out, "| {model_id} | {} |\n", row.join(" | "));
    }
    out.push_str("*Survey rows average answers per question first, then over the value's questions.\n");
    out
}
