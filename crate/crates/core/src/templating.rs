//! Rendering of the four gendered agree/disagree prompts per statement.
//!
//! A [`TemplateSet`] holds one template per (gender, polarity). Templates
//! contain exactly one `___` placeholder that receives the statement text
//! verbatim. The agree and disagree templates of a gender must differ in one
//! word only; that word is the target the masked LM is asked to score. The
//! built-in set is the Czech framing
//!
//! ```text
//! F agree     Řekla, že souhlasí s tím, že ___
//! F disagree  Řekla, že nesouhlasí s tím, že ___
//! M agree     Řekl, že souhlasí s tím, že ___
//! M disagree  Řekl, že nesouhlasí s tím, že ___
//! ```

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::domain::{validate_statement, Gender, Polarity, PromptVariant, Statement};
use crate::error::{Error, Result};

pub const PLACEHOLDER: &str = "___";

#[derive(Debug, Clone, PartialEq, Eq)]
struct Template {
    text: String,
    /// Char offset of the target word inside `text`.
    target_start: usize,
    target_word: String,
    /// Char offset of the placeholder inside `text`.
    placeholder_at: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSet {
    templates: BTreeMap<(Gender, Polarity), Template>,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Char range `[start, end)` covering the single differing word of `a` against
/// `b`, or `None` when the templates are identical.
fn differing_word(a: &[char], b: &[char]) -> Option<((usize, usize), (usize, usize))> {
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    if prefix == a.len() && prefix == b.len() {
        return None;
    }
    let max_suffix = a.len().min(b.len()) - prefix;
    let suffix = a
        .iter()
        .rev()
        .zip(b.iter().rev())
        .take(max_suffix)
        .take_while(|(x, y)| x == y)
        .count();
    // Widen the raw diff to whole words; shared prefix/suffix chars are
    // identical in both, so the same widening applies to each side.
    let mut start = prefix;
    while start > 0 && is_word_char(a[start - 1]) {
        start -= 1;
    }
    let widen_end = |s: &[char]| {
        let mut end = s.len() - suffix;
        while end < s.len() && is_word_char(s[end]) {
            end += 1;
        }
        end
    };
    Some(((start, widen_end(a)), (start, widen_end(b))))
}

impl TemplateSet {
    /// Builds a set from four template strings and checks its invariants.
    pub fn new(raw: BTreeMap<(Gender, Polarity), String>) -> Result<Self> {
        for g in Gender::ALL {
            for p in Polarity::ALL {
                let text = raw
                    .get(&(g, p))
                    .ok_or_else(|| Error::InvalidTemplates(format!("missing template for ({g}, {p})")))?;
                match text.matches(PLACEHOLDER).count() {
                    0 => return Err(Error::MissingPlaceholder { gender: g, polarity: p }),
                    1 => {}
                    _ => return Err(Error::MultiplePlaceholders { gender: g, polarity: p }),
                }
            }
        }

        let mut templates = BTreeMap::new();
        let mut target_words: BTreeMap<Polarity, String> = BTreeMap::new();
        for g in Gender::ALL {
            let agree: Vec<char> = raw[&(g, Polarity::Agree)].chars().collect();
            let disagree: Vec<char> = raw[&(g, Polarity::Disagree)].chars().collect();
            let ((a0, a1), (d0, d1)) = differing_word(&agree, &disagree).ok_or_else(|| {
                Error::InvalidTemplates(format!("agree and disagree templates for {g} are identical"))
            })?;
            for (p, chars, (s, e)) in [
                (Polarity::Agree, &agree, (a0, a1)),
                (Polarity::Disagree, &disagree, (d0, d1)),
            ] {
                let word: String = chars[s..e].iter().collect();
                if word.is_empty() || !word.chars().all(is_word_char) {
                    return Err(Error::InvalidTemplates(format!(
                        "agree and disagree templates for {g} must differ in exactly one word, got {word:?}"
                    )));
                }
                if let Some(prev) = target_words.get(&p) {
                    if *prev != word {
                        return Err(Error::InvalidTemplates(format!(
                            "{p} target word differs between genders ({prev:?} vs {word:?})"
                        )));
                    }
                } else {
                    target_words.insert(p, word.clone());
                }
                let text: String = chars.iter().collect();
                let placeholder_at = text[..text.find(PLACEHOLDER).expect("checked above")].chars().count();
                if (s..e).contains(&placeholder_at) {
                    return Err(Error::InvalidTemplates(format!(
                        "placeholder overlaps the target word in ({g}, {p})"
                    )));
                }
                templates.insert(
                    (g, p),
                    Template {
                        text,
                        target_start: s,
                        target_word: word,
                        placeholder_at,
                    },
                );
            }
        }

        for p in Polarity::ALL {
            let fem: Vec<&str> = raw[&(Gender::Feminine, p)].split_whitespace().collect();
            let masc: Vec<&str> = raw[&(Gender::Masculine, p)].split_whitespace().collect();
            let diffs = fem.iter().zip(&masc).filter(|(f, m)| f != m).count();
            if fem.len() != masc.len() || diffs != 1 {
                return Err(Error::InvalidTemplates(format!(
                    "feminine and masculine {p} templates must differ in exactly one word"
                )));
            }
        }

        Ok(TemplateSet { templates })
    }

    /// Template text for one cell.
    pub fn template(&self, gender: Gender, polarity: Polarity) -> &str {
        &self.templates[&(gender, polarity)].text
    }

    pub fn target_word(&self, polarity: Polarity) -> &str {
        &self.templates[&(Gender::Feminine, polarity)].target_word
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    /// Parses the four-line `gender,polarity,template_text` format.
    ///
    /// Only the first two commas separate fields; the template text may contain
    /// further commas. Blank lines are skipped.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut raw = BTreeMap::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |message: String| Error::MalformedLine { line: lineno, message };
            let mut parts = line.splitn(3, ',');
            let (Some(g), Some(p), Some(text)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(malformed("expected gender,polarity,template_text".into()));
            };
            let gender: Gender = g.parse().map_err(malformed)?;
            let polarity: Polarity = p.parse().map_err(malformed)?;
            if raw.insert((gender, polarity), text.to_string()).is_some() {
                return Err(malformed(format!("duplicate template for ({gender}, {polarity})")));
            }
        }
        TemplateSet::new(raw)
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        for ((g, p), t) in &self.templates {
            writeln!(w, "{g},{p},{}", t.text)?;
        }
        Ok(())
    }
}

impl Default for TemplateSet {
    fn default() -> Self {
        default_templates()
    }
}

/// The built-in Czech templates.
pub fn default_templates() -> TemplateSet {
    let raw = BTreeMap::from([
        (
            (Gender::Feminine, Polarity::Agree),
            "Řekla, že souhlasí s tím, že ___".to_string(),
        ),
        (
            (Gender::Feminine, Polarity::Disagree),
            "Řekla, že nesouhlasí s tím, že ___".to_string(),
        ),
        (
            (Gender::Masculine, Polarity::Agree),
            "Řekl, že souhlasí s tím, že ___".to_string(),
        ),
        (
            (Gender::Masculine, Polarity::Disagree),
            "Řekl, že nesouhlasí s tím, že ___".to_string(),
        ),
    ]);
    TemplateSet::new(raw).expect("built-in templates are valid")
}

/// Renders the four variants of `statement`, ordered (F, agree), (F, disagree),
/// (M, agree), (M, disagree).
pub fn render_prompts(statement: &Statement, templates: &TemplateSet) -> Result<Vec<PromptVariant>> {
    let statement = validate_statement(statement.clone())?;
    let inserted = statement.text_cs.chars().count();
    let placeholder_len = PLACEHOLDER.chars().count();
    let mut out = Vec::with_capacity(4);
    for g in Gender::ALL {
        for p in Polarity::ALL {
            let t = &templates.templates[&(g, p)];
            let text = t.text.replacen(PLACEHOLDER, &statement.text_cs, 1);
            let mut start = t.target_start;
            if t.placeholder_at < t.target_start {
                start = start + inserted - placeholder_len;
            }
            out.push(PromptVariant {
                statement_id: statement.id.clone(),
                gender: g,
                polarity: p,
                text,
                mask_char_start: start,
                mask_char_end: start + t.target_word.chars().count(),
                target_word: t.target_word.clone(),
            });
        }
    }
    Ok(out)
}

/// Renders every statement and writes the variants as JSONL, one per line.
/// Returns the number of lines written.
pub fn write_prompts_jsonl<W: Write>(mut w: W, statements: &[Statement], templates: &TemplateSet) -> Result<usize> {
    let mut n = 0;
    for s in statements {
        for v in render_prompts(s, templates)? {
            serde_json::to_writer(&mut w, &v)?;
            w.write_all(b"\n")?;
            n += 1;
        }
    }
    Ok(n)
}
