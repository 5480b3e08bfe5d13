//! Survey microdata and its comparison with model ratings.
//!
//! Each survey question belongs to one of four political values and may be
//! negatively keyed, in which case its rating is reversed (`6 - r`) before it
//! is averaged into the value. Only respondents without a positive
//! toxoplasmosis test are used as the human reference.
//!
//! A respondent's value score is the plain mean of their (reversed where
//! needed) answers to that value's questions. The per-gender multiset of those
//! scores is the answer set a model rating is compared against.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use crate::domain::{Gender, RatedStatement, Statement, StatementKind, SurveyResponse, ValueCategory};
use crate::error::{Error, Result};

pub type GroupKey = (Gender, ValueCategory);

/// Maps a 1..5 rating onto its mirror image on the same scale.
pub fn reverse_rating(r: f64) -> Result<f64> {
    if !(1.0..=5.0).contains(&r) {
        return Err(Error::OutOfRange(r));
    }
    Ok(6.0 - r)
}

/// Question id -> (value, reversed) for the survey items.
#[derive(Debug, Clone, Default)]
pub struct ItemMap {
    items: HashMap<String, (ValueCategory, bool)>,
}

impl ItemMap {
    pub fn new(statements: &[Statement]) -> Self {
        let items = statements
            .iter()
            .filter(|s| s.kind == StatementKind::Survey)
            .filter_map(|s| s.value.map(|v| (s.id.clone(), (v, s.reversed))))
            .collect();
        ItemMap { items }
    }

    pub fn lookup(&self, question_id: &str) -> Result<(ValueCategory, bool)> {
        self.items
            .get(question_id)
            .copied()
            .ok_or_else(|| Error::UnknownQuestion(question_id.to_string()))
    }

    /// Rating aligned with its value: reversed items are flipped.
    pub fn aligned(&self, question_id: &str, rating: f64) -> Result<(ValueCategory, f64)> {
        let (value, reversed) = self.lookup(question_id)?;
        let r = if reversed { reverse_rating(rating)? } else { rating };
        Ok((value, r))
    }
}

/// Per-value scores of one respondent. Values without an answered question are
/// absent.
pub fn respondent_value_scores(
    resp: &SurveyResponse,
    statements: &[Statement],
) -> Result<BTreeMap<ValueCategory, f64>> {
    value_scores_with(resp, &ItemMap::new(statements))
}

fn value_scores_with(resp: &SurveyResponse, items: &ItemMap) -> Result<BTreeMap<ValueCategory, f64>> {
    let mut acc: BTreeMap<ValueCategory, (f64, usize)> = BTreeMap::new();
    for (qid, &answer) in &resp.answers {
        let (value, r) = items.aligned(qid, f64::from(answer))?;
        let e = acc.entry(value).or_default();
        e.0 += r;
        e.1 += 1;
    }
    Ok(acc.into_iter().map(|(v, (sum, n))| (v, sum / n as f64)).collect())
}

/// Respondent value scores grouped by (gender, value).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValueScoreSet {
    groups: BTreeMap<GroupKey, Vec<f64>>,
}

impl ValueScoreSet {
    pub fn get(&self, gender: Gender, value: ValueCategory) -> &[f64] {
        self.groups.get(&(gender, value)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn groups(&self) -> &BTreeMap<GroupKey, Vec<f64>> {
        &self.groups
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Aggregates non-infected respondents into per-(gender, value) score lists.
pub fn build_value_scores(responses: &[SurveyResponse], statements: &[Statement]) -> Result<ValueScoreSet> {
    let items = ItemMap::new(statements);
    let mut groups: BTreeMap<GroupKey, Vec<f64>> = BTreeMap::new();
    for resp in responses.iter().filter(|r| !r.toxo_positive) {
        for (value, score) in value_scores_with(resp, &items)? {
            groups.entry((resp.gender, value)).or_default().push(score);
        }
    }
    Ok(ValueScoreSet { groups })
}

/// `2 * min(#{x < rating}, #{x > rating}) / |answers|`.
///
/// 1 means the rating sits at the median of the answers, 0 that it lies
/// outside their range. Answers equal to the rating count on neither side.
pub fn representativeness(rating: f64, answers: &[f64]) -> Result<f64> {
    if answers.is_empty() {
        return Err(Error::EmptyAnswers);
    }
    let below = answers.iter().filter(|&&x| x < rating).count();
    let above = answers.iter().filter(|&&x| x > rating).count();
    Ok(2.0 * below.min(above) as f64 / answers.len() as f64)
}

/// Mean, sample standard deviation and size of one group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueSummary {
    pub mean: f64,
    /// `n - 1` denominator; 0 for a single observation.
    pub std: f64,
    pub count: usize,
}

pub fn summarize(xs: &[f64]) -> Option<ValueSummary> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let std = if xs.len() > 1 {
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Some(ValueSummary {
        mean,
        std,
        count: xs.len(),
    })
}

/// Summaries of every group; an empty group is an error.
pub fn value_summary(groups: &BTreeMap<GroupKey, Vec<f64>>) -> Result<BTreeMap<GroupKey, ValueSummary>> {
    groups
        .iter()
        .map(|(&(gender, value), xs)| {
            summarize(xs)
                .map(|s| ((gender, value), s))
                .ok_or(Error::EmptyGroup { gender, value })
        })
        .collect()
}

/// Model ratings aligned with their values, grouped by (gender, value).
pub fn model_value_ratings(rated: &[RatedStatement], statements: &[Statement]) -> Result<BTreeMap<GroupKey, Vec<f64>>> {
    let items = ItemMap::new(statements);
    let mut groups: BTreeMap<GroupKey, Vec<f64>> = BTreeMap::new();
    for r in rated {
        let (value, aligned) = items.aligned(&r.statement_id, r.rating)?;
        groups.entry((r.gender, value)).or_default().push(aligned);
    }
    Ok(groups)
}

/// One (gender, value) cell of a model/survey comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub gender: Gender,
    pub value: ValueCategory,
    pub model: ValueSummary,
    pub representativeness: f64,
    pub n_answers: usize,
}

/// Compares a model's ratings with the respondents' value scores.
///
/// The model's value rating is the mean of its aligned statement ratings; its
/// representativeness is measured against the respondent scores of the same
/// gender and value. Rows come out in (gender, value) order.
pub fn compare(
    rated: &[RatedStatement],
    statements: &[Statement],
    scores: &ValueScoreSet,
) -> Result<Vec<ComparisonRow>> {
    let model = value_summary(&model_value_ratings(rated, statements)?)?;
    model
        .into_iter()
        .map(|((gender, value), summary)| {
            let answers = scores.get(gender, value);
            Ok(ComparisonRow {
                gender,
                value,
                model: summary,
                representativeness: representativeness(summary.mean, answers)?,
                n_answers: answers.len(),
            })
        })
        .collect()
}

/// Survey baseline "averaged first per question": for each gender, every
/// question's aligned answers are averaged over non-infected respondents, and
/// the question means are then summarised per value.
///
/// This is a different aggregation from the per-respondent scores in
/// [`ValueScoreSet`]; the two agree on the mean only when every respondent
/// answers every question.
pub fn survey_baseline(
    responses: &[SurveyResponse],
    statements: &[Statement],
) -> Result<BTreeMap<GroupKey, ValueSummary>> {
    let items = ItemMap::new(statements);
    let mut per_question: BTreeMap<(Gender, ValueCategory, &str), (f64, usize)> = BTreeMap::new();
    for resp in responses.iter().filter(|r| !r.toxo_positive) {
        for (qid, &answer) in &resp.answers {
            let (value, r) = items.aligned(qid, f64::from(answer))?;
            let e = per_question.entry((resp.gender, value, qid.as_str())).or_default();
            e.0 += r;
            e.1 += 1;
        }
    }
    let mut groups: BTreeMap<GroupKey, Vec<f64>> = BTreeMap::new();
    for ((gender, value, _), (sum, n)) in per_question {
        groups.entry((gender, value)).or_default().push(sum / n as f64);
    }
    value_summary(&groups)
}

const QUESTION_PREFIX: &str = "q_";

/// Reads the microdata CSV: `respondent_id,gender,toxo_positive,q_<id>...`.
///
/// Every `q_<id>` column must name a survey statement; an empty cell means the
/// question was not answered. `toxo_positive` accepts 0/1 or false/true.
pub fn read_microdata<R: Read>(reader: R, statements: &[Statement], source: &str) -> Result<Vec<SurveyResponse>> {
    let items = ItemMap::new(statements);
    let mut rdr = csv::ReaderBuilder::new().flexible(false).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let parse_err = |message: String| Error::Parse {
        path: source.to_string(),
        message,
    };
    let fixed = ["respondent_id", "gender", "toxo_positive"];
    if headers.len() < 3 || headers.iter().take(3).ne(fixed) {
        return Err(parse_err(format!("header must start with {}", fixed.join(","))));
    }
    let mut questions = Vec::new();
    for h in headers.iter().skip(3) {
        let qid = h
            .strip_prefix(QUESTION_PREFIX)
            .ok_or_else(|| parse_err(format!("unexpected column {h:?}")))?;
        items.lookup(qid)?;
        questions.push(qid.to_string());
    }

    let mut out = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let row = idx + 2;
        let record = record.map_err(|e| parse_err(format!("row {row}: {e}")))?;
        let gender = record[1]
            .parse::<Gender>()
            .map_err(|e| parse_err(format!("row {row}: {e}")))?;
        let toxo = match record[2].trim() {
            "0" | "false" => false,
            "1" | "true" => true,
            other => return Err(parse_err(format!("row {row}: invalid toxo_positive {other:?}"))),
        };
        let mut answers = BTreeMap::new();
        for (qid, cell) in questions.iter().zip(record.iter().skip(3)) {
            let cell = cell.trim();
            if cell.is_empty() {
                continue;
            }
            let a: u8 = cell
                .parse()
                .ok()
                .filter(|a| (1..=5).contains(a))
                .ok_or_else(|| parse_err(format!("row {row}: answer {cell:?} to {qid} is not in 1..5")))?;
            answers.insert(qid.clone(), a);
        }
        out.push(SurveyResponse::new(&record[0], gender, toxo, answers)?);
    }
    Ok(out)
}

/// Writes responses in the layout [`read_microdata`] accepts, with one column
/// per question in `question_ids` order.
pub fn write_microdata<W: Write>(writer: W, responses: &[SurveyResponse], question_ids: &[String]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let mut header = vec!["respondent_id".to_string(), "gender".into(), "toxo_positive".into()];
    header.extend(question_ids.iter().map(|q| format!("{QUESTION_PREFIX}{q}")));
    wtr.write_record(&header)?;
    for r in responses {
        let mut row = vec![
            r.respondent_id.clone(),
            r.gender.code().to_string(),
            if r.toxo_positive { "1" } else { "0" }.to_string(),
        ];
        row.extend(
            question_ids
                .iter()
                .map(|q| r.answers.get(q).map(|a| a.to_string()).unwrap_or_default()),
        );
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn items() -> Vec<Statement> {
        vec![
            Statement::survey("q1", "a.", ValueCategory::AntiAuth, false),
            Statement::survey("q2", "b.", ValueCategory::AntiAuth, true),
            Statement::survey("q3", "c.", ValueCategory::CultLib, false),
        ]
    }

    fn resp(id: &str, g: Gender, toxo: bool, answers: &[(&str, u8)]) -> SurveyResponse {
        let answers = answers.iter().map(|(q, a)| (q.to_string(), *a)).collect();
        SurveyResponse::new(id, g, toxo, answers).unwrap()
    }

    /// Counting oracle written independently of `representativeness`.
    fn repr_oracle(rating: f64, answers: &[f64]) -> f64 {
        let mut below = 0usize;
        let mut above = 0usize;
        for &x in answers {
            match x.partial_cmp(&rating).unwrap() {
                std::cmp::Ordering::Less => below += 1,
                std::cmp::Ordering::Greater => above += 1,
                std::cmp::Ordering::Equal => {}
            }
        }
        let n = answers.len() as f64;
        2.0 * f64::min(below as f64 / n, above as f64 / n)
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse_rating(1.0).unwrap(), 5.0);
        assert_eq!(reverse_rating(3.0).unwrap(), 3.0);
        assert_eq!(reverse_rating(2.5).unwrap(), 3.5);
        assert!(matches!(reverse_rating(0.5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn respondent_scores_apply_reversal() {
        let r = resp("r", Gender::Feminine, false, &[("q1", 5), ("q2", 1)]);
        let scores = respondent_value_scores(&r, &items()).unwrap();
        assert_eq!(scores[&ValueCategory::AntiAuth], 5.0);
        assert!(!scores.contains_key(&ValueCategory::CultLib));

        let r = resp("r", Gender::Feminine, false, &[("q3", 3)]);
        assert_eq!(
            respondent_value_scores(&r, &items()).unwrap()[&ValueCategory::CultLib],
            3.0
        );

        let r = resp("r", Gender::Feminine, false, &[("q9", 3)]);
        assert!(matches!(respondent_value_scores(&r, &items()), Err(Error::UnknownQuestion(q)) if q == "q9"));
    }

    #[test]
    fn calibration_statements_are_not_questions() {
        let mut st = items();
        st.push(Statement::calibration("c1", "pizza je chutná."));
        let r = resp("r", Gender::Masculine, false, &[("c1", 3)]);
        assert!(matches!(
            respondent_value_scores(&r, &st),
            Err(Error::UnknownQuestion(_))
        ));
    }

    #[test]
    fn infected_respondents_are_dropped() {
        let responses = vec![
            resp("r1", Gender::Feminine, false, &[("q1", 4)]),
            resp("r2", Gender::Feminine, true, &[("q1", 1)]),
            resp("r3", Gender::Masculine, false, &[("q1", 2), ("q3", 5)]),
        ];
        let set = build_value_scores(&responses, &items()).unwrap();
        assert_eq!(set.get(Gender::Feminine, ValueCategory::AntiAuth), &[4.0]);
        assert_eq!(set.get(Gender::Masculine, ValueCategory::CultLib), &[5.0]);
        assert!(set.get(Gender::Feminine, ValueCategory::CultLib).is_empty());

        let all_infected: Vec<_> = responses
            .into_iter()
            .map(|mut r| {
                r.toxo_positive = true;
                r
            })
            .collect();
        assert!(build_value_scores(&all_infected, &items()).unwrap().is_empty());
    }

    #[test]
    fn representativeness_examples() {
        assert_eq!(representativeness(0.5, &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(representativeness(2.5, &[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap(), 0.8);
        assert_eq!(representativeness(3.0, &[1.0, 3.0, 5.0]).unwrap(), 2.0 / 3.0);
        assert_eq!(representativeness(3.0, &[3.0, 3.0]).unwrap(), 0.0);
        assert!(matches!(representativeness(3.0, &[]), Err(Error::EmptyAnswers)));
        // rating at the 9th decile of ten distinct answers
        let answers: Vec<f64> = (1..=10).map(|i| 1.0 + 0.4 * i as f64 - 0.2).collect();
        let r = representativeness(answers[8] + 0.2, &answers).unwrap();
        assert!((r - 0.2).abs() < 1e-15);
    }

    #[test]
    fn summary_examples() {
        let s = summarize(&[3.0, 3.0, 3.0]).unwrap();
        assert_eq!((s.mean, s.std, s.count), (3.0, 0.0, 3));
        let s = summarize(&[1.0, 5.0]).unwrap();
        assert_eq!(s.mean, 3.0);
        assert!((s.std - 8f64.sqrt()).abs() < 1e-15);
        let groups = BTreeMap::from([((Gender::Feminine, ValueCategory::Trib), vec![])]);
        assert!(matches!(value_summary(&groups), Err(Error::EmptyGroup { .. })));
    }

    #[test]
    fn equal_model_ratings_give_equal_gender_rows() {
        let rated: Vec<RatedStatement> = [("q1", 4.0), ("q2", 2.0), ("q3", 3.5)]
            .iter()
            .flat_map(|(q, r)| {
                Gender::ALL.map(|g| RatedStatement {
                    statement_id: q.to_string(),
                    gender: g,
                    err: 0.0,
                    p_agree: (r - 1.0) / 4.0,
                    rating: *r,
                })
            })
            .collect();
        let responses = vec![
            resp("r1", Gender::Feminine, false, &[("q1", 4), ("q3", 2)]),
            resp("r2", Gender::Masculine, false, &[("q1", 2), ("q3", 5)]),
        ];
        let scores = build_value_scores(&responses, &items()).unwrap();
        let rows = compare(&rated, &items(), &scores).unwrap();
        assert_eq!(rows.len(), 4);
        for v in [ValueCategory::AntiAuth, ValueCategory::CultLib] {
            let f = rows
                .iter()
                .find(|r| r.gender == Gender::Feminine && r.value == v)
                .unwrap();
            let m = rows
                .iter()
                .find(|r| r.gender == Gender::Masculine && r.value == v)
                .unwrap();
            assert_eq!(f.model, m.model);
        }
        let aa = rows.iter().find(|r| r.value == ValueCategory::AntiAuth).unwrap();
        assert_eq!(aa.model.mean, 4.0); // q2 reversed: 6 - 2
    }

    #[test]
    fn compare_without_answers_fails() {
        let rated = vec![RatedStatement {
            statement_id: "q3".into(),
            gender: Gender::Masculine,
            err: 0.0,
            p_agree: 0.5,
            rating: 3.0,
        }];
        assert!(matches!(
            compare(&rated, &items(), &ValueScoreSet::default()),
            Err(Error::EmptyAnswers)
        ));
    }

    #[test]
    fn microdata_parsing() {
        let csv = "respondent_id,gender,toxo_positive,q_q1,q_q2,q_q3\n\
                   r1,F,0,5,1,\n\
                   r2,M,1,2,,4\n";
        let rs = read_microdata(csv.as_bytes(), &items(), "m.csv").unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[0].answers.len(), 2);
        assert!(rs[1].toxo_positive);

        let unknown = "respondent_id,gender,toxo_positive,q_q7\nr1,F,0,5\n";
        assert!(matches!(
            read_microdata(unknown.as_bytes(), &items(), "m"),
            Err(Error::UnknownQuestion(_))
        ));
        let bad = "respondent_id,gender,toxo_positive,q_q1\nr1,F,0,6\n";
        let err = read_microdata(bad.as_bytes(), &items(), "m.csv").unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        let bad_header = "id,gender,toxo_positive\n";
        assert!(matches!(
            read_microdata(bad_header.as_bytes(), &items(), "m"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn baseline_averages_per_question_first() {
        // q1: 4 and 2 -> 3; q2 reversed: 6-2=4 only -> 4; AntiAuth mean 3.5
        let responses = vec![
            resp("r1", Gender::Feminine, false, &[("q1", 4), ("q2", 2)]),
            resp("r2", Gender::Feminine, false, &[("q1", 2)]),
            resp("r3", Gender::Feminine, true, &[("q1", 5)]),
        ];
        let b = survey_baseline(&responses, &items()).unwrap();
        let s = b[&(Gender::Feminine, ValueCategory::AntiAuth)];
        assert_eq!(s.mean, 3.5);
        assert_eq!(s.count, 2);
        // per-respondent reading differs: r1 = (4+4)/2 = 4, r2 = 2 -> 3
        let set = build_value_scores(&responses, &items()).unwrap();
        assert_eq!(
            summarize(set.get(Gender::Feminine, ValueCategory::AntiAuth))
                .unwrap()
                .mean,
            3.0
        );
    }

    fn arb_answers() -> impl Strategy<Value = Vec<f64>> {
        // quarter steps on the 1..5 scale give plenty of ties
        prop::collection::vec((4u32..=20).prop_map(|k| k as f64 / 4.0), 1..=50)
    }

    proptest! {
        #[test]
        fn matches_counting_oracle(answers in arb_answers(), k in 0u32..=96) {
            let rating = k as f64 / 16.0;
            let r = representativeness(rating, &answers).unwrap();
            prop_assert_eq!(r, repr_oracle(rating, &answers));
            prop_assert!((0.0..=1.0).contains(&r));
        }

        #[test]
        fn reflection_symmetry(answers in arb_answers(), k in 0u32..=96) {
            let rating = k as f64 / 16.0;
            let mirrored: Vec<f64> = answers.iter().map(|x| 6.0 - x).collect();
            prop_assert_eq!(
                representativeness(6.0 - rating, &mirrored).unwrap(),
                representativeness(rating, &answers).unwrap()
            );
        }

        #[test]
        fn zero_outside_range_or_all_ties(answers in arb_answers(), off in 0.01f64..3.0) {
            let min = answers.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = answers.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!(representativeness(min - off, &answers).unwrap(), 0.0);
            prop_assert_eq!(representativeness(max + off, &answers).unwrap(), 0.0);
            let ties = vec![answers[0]; answers.len()];
            prop_assert_eq!(representativeness(answers[0], &ties).unwrap(), 0.0);
        }

        #[test]
        fn unimodal_in_rating(answers in prop::collection::vec((4u32..=20).prop_map(|k| k as f64 / 4.0), 1..=12)) {
            let mut sorted = answers.clone();
            sorted.sort_by(f64::total_cmp);
            let n = sorted.len();
            let scan: Vec<(f64, f64)> = (0..=96)
                .map(|k| k as f64 / 16.0)
                .map(|r| (r, representativeness(r, &answers).unwrap()))
                .collect();
            let lo_med = sorted[(n - 1) / 2];
            let hi_med = sorted[n / 2];
            for w in scan.windows(2) {
                let ((r0, v0), (r1, v1)) = (w[0], w[1]);
                if r1 < lo_med {
                    prop_assert!(v1 >= v0, "not non-decreasing below the median at {r0}");
                }
                if r0 > hi_med {
                    prop_assert!(v1 <= v0, "not non-increasing above the median at {r0}");
                }
            }
        }

        #[test]
        fn value_scores_ignore_answer_order(a in 1u8..=5, b in 1u8..=5, c in 1u8..=5) {
            let st = items();
            let r1 = resp("r", Gender::Feminine, false, &[("q1", a), ("q2", b), ("q3", c)]);
            let r2 = resp("r", Gender::Feminine, false, &[("q3", c), ("q2", b), ("q1", a)]);
            prop_assert_eq!(respondent_value_scores(&r1, &st).unwrap(), respondent_value_scores(&r2, &st).unwrap());
        }

        #[test]
        fn microdata_round_trip(rows in prop::collection::vec(
            (any::<bool>(), any::<bool>(), prop::collection::vec(prop::option::of(1u8..=5), 3)), 0..8)
        ) {
            let qids: Vec<String> = ["q1", "q2", "q3"].map(String::from).to_vec();
            let responses: Vec<SurveyResponse> = rows
                .into_iter()
                .enumerate()
                .map(|(i, (fem, toxo, answers))| {
                    let answers = qids.iter().cloned().zip(answers).filter_map(|(q, a)| a.map(|a| (q, a))).collect();
                    SurveyResponse::new(
                        format!("r{i}"),
                        if fem { Gender::Feminine } else { Gender::Masculine },
                        toxo,
                        answers,
                    ).unwrap()
                })
                .collect();
            let mut buf = Vec::new();
            write_microdata(&mut buf, &responses, &qids).unwrap();
            prop_assert_eq!(read_microdata(buf.as_slice(), &items(), "mem").unwrap(), responses);
        }
    }
}
