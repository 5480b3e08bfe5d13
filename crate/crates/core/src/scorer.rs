//! Log-probability sources.
//!
//! Scores reach the pipeline through JSONL files produced by an external
//! masked-LM extractor, one record per line:
//!
//! ```text
//! {"model_id": "robeczech", "statement_id": "c1", "gender": "F", "polarity": "agree", "logprob": -8.1, "n_target_tokens": 1}
//! ```
//!
//! `logprob` is the natural-log probability summed over the target word's
//! tokens, so it is never positive. A file holds exactly one model.
//!
//! [`MockScorer`] produces records from a planted linear model and is used by
//! tests and examples that run without model weights.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use sha2::{Digest, Sha256};

use crate::domain::{Gender, LogProbRecord, Polarity, PromptVariant};
use crate::error::{Error, Result};

pub type RecordKey = (String, Gender, Polarity);

/// All records of one model, keyed by (statement, gender, polarity).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LogProbTable {
    model_id: String,
    records: BTreeMap<RecordKey, LogProbRecord>,
}

impl LogProbTable {
    pub fn new(model_id: impl Into<String>) -> Self {
        LogProbTable {
            model_id: model_id.into(),
            records: BTreeMap::new(),
        }
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &LogProbRecord> {
        self.records.values()
    }

    pub fn get(&self, statement_id: &str, gender: Gender, polarity: Polarity) -> Option<&LogProbRecord> {
        self.records.get(&(statement_id.to_string(), gender, polarity))
    }

    /// Adds a record. `line` is only used to label errors.
    pub fn insert(&mut self, record: LogProbRecord, line: usize) -> Result<()> {
        if self.records.is_empty() && self.model_id.is_empty() {
            self.model_id = record.model_id.clone();
        }
        if record.model_id != self.model_id {
            return Err(Error::MixedModels {
                line,
                expected: self.model_id.clone(),
                found: record.model_id,
            });
        }
        if record.logprob > 0.0 {
            return Err(Error::PositiveLogProb {
                line,
                logprob: record.logprob,
            });
        }
        if !record.logprob.is_finite() {
            return Err(Error::MalformedLine {
                line,
                message: format!("logprob {} is not finite", record.logprob),
            });
        }
        if record.n_target_tokens == 0 {
            return Err(Error::MalformedLine {
                line,
                message: "n_target_tokens must be at least 1".into(),
            });
        }
        let key = (record.statement_id.clone(), record.gender, record.polarity);
        if self.records.contains_key(&key) {
            return Err(Error::DuplicateKey {
                statement_id: key.0,
                gender: key.1,
                polarity: key.2,
                line,
            });
        }
        self.records.insert(key, record);
        Ok(())
    }

    /// Statement ids with at least one record for `gender`, in id order.
    pub fn statement_ids(&self, gender: Gender) -> Vec<&str> {
        let mut ids: Vec<&str> = self
            .records
            .keys()
            .filter(|(_, g, _)| *g == gender)
            .map(|(s, _, _)| s.as_str())
            .collect();
        ids.dedup();
        ids
    }

    /// Multiplies every log-probability by `factor`.
    pub fn scaled(&self, factor: f64) -> LogProbTable {
        let mut out = self.clone();
        for r in out.records.values_mut() {
            r.logprob *= factor;
        }
        out
    }

    /// Writes the table as JSONL in key order.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for r in self.records.values() {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Reads a JSONL stream of [`LogProbRecord`]s. Blank lines are skipped.
pub fn ingest_logprobs<R: BufRead>(reader: R) -> Result<LogProbTable> {
    let mut table = LogProbTable::default();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: LogProbRecord = serde_json::from_str(&line).map_err(|e| Error::MalformedLine {
            line: lineno,
            message: e.to_string(),
        })?;
        table.insert(record, lineno)?;
    }
    Ok(table)
}

/// Returns `(log_agree, log_disagree)` for one statement and gender.
pub fn pair(table: &LogProbTable, statement_id: &str, gender: Gender) -> Result<(f64, f64)> {
    let get = |polarity| {
        table
            .get(statement_id, gender, polarity)
            .map(|r| r.logprob)
            .ok_or_else(|| Error::MissingPolarity {
                statement_id: statement_id.to_string(),
                gender,
                polarity,
            })
    };
    Ok((get(Polarity::Agree)?, get(Polarity::Disagree)?))
}

/// Anything that can assign a log-probability to a prompt variant.
pub trait Scorer {
    fn score(&self, variant: &PromptVariant) -> Result<LogProbRecord>;
}

impl Scorer for LogProbTable {
    fn score(&self, variant: &PromptVariant) -> Result<LogProbRecord> {
        self.get(&variant.statement_id, variant.gender, variant.polarity)
            .cloned()
            .ok_or_else(|| Error::MissingPolarity {
                statement_id: variant.statement_id.clone(),
                gender: variant.gender,
                polarity: variant.polarity,
            })
    }
}

/// Scores every variant and collects the records into a table.
pub fn score_all<S: Scorer + ?Sized>(scorer: &S, variants: &[PromptVariant]) -> Result<LogProbTable> {
    let mut table = LogProbTable::default();
    for (i, v) in variants.iter().enumerate() {
        table.insert(scorer.score(v)?, i + 1)?;
    }
    Ok(table)
}

/// Range LogDisagree is drawn from.
pub const MOCK_LOG_DISAGREE_RANGE: (f64, f64) = (-15.0, -3.0);
const MOCK_CEILING: f64 = -1e-6;

/// Deterministic synthetic backend following
/// `log_agree = a_true * log_disagree + N(0, sigma_true^2)`.
///
/// Both polarities of a (statement, gender) pair are drawn from the same
/// stream, so scoring them separately yields a consistent pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MockScorer {
    pub model_id: String,
    pub seed: u64,
    pub a_true: f64,
    pub sigma_true: f64,
}

impl MockScorer {
    pub fn new(seed: u64, a_true: f64, sigma_true: f64) -> Self {
        assert!(a_true > 0.0, "a_true must be positive");
        assert!(sigma_true >= 0.0, "sigma_true must be non-negative");
        MockScorer {
            model_id: "mock".to_string(),
            seed,
            a_true,
            sigma_true,
        }
    }

    fn rng_for(&self, statement_id: &str, gender: Gender) -> ChaCha8Rng {
        let mut h = Sha256::new();
        h.update(self.seed.to_le_bytes());
        h.update(statement_id.as_bytes());
        h.update([0u8]);
        h.update(gender.code().as_bytes());
        ChaCha8Rng::from_seed(h.finalize().into())
    }

    /// `(log_agree, log_disagree)` for a key.
    pub fn pair(&self, statement_id: &str, gender: Gender) -> (f64, f64) {
        let mut rng = self.rng_for(statement_id, gender);
        let (lo, hi) = MOCK_LOG_DISAGREE_RANGE;
        let log_disagree: f64 = rng.random_range(lo..hi);
        let noise = if self.sigma_true > 0.0 {
            Normal::new(0.0, self.sigma_true)
                .expect("sigma is finite and positive")
                .sample(&mut rng)
        } else {
            0.0
        };
        let log_agree = self.a_true * log_disagree + noise;
        (log_agree.min(MOCK_CEILING), log_disagree.min(MOCK_CEILING))
    }
}

impl Scorer for MockScorer {
    fn score(&self, variant: &PromptVariant) -> Result<LogProbRecord> {
        let (agree, disagree) = self.pair(&variant.statement_id, variant.gender);
        Ok(LogProbRecord {
            model_id: self.model_id.clone(),
            statement_id: variant.statement_id.clone(),
            gender: variant.gender,
            polarity: variant.polarity,
            logprob: match variant.polarity {
                Polarity::Agree => agree,
                Polarity::Disagree => disagree,
            },
            n_target_tokens: 1,
        })
    }
}

/// Free-function form of [`MockScorer::score`].
pub fn mock_score(variant: &PromptVariant, seed: u64, a_true: f64, sigma_true: f64) -> LogProbRecord {
    MockScorer::new(seed, a_true, sigma_true)
        .score(variant)
        .expect("mock scoring is infallible")
}
