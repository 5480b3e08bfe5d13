//! Aggregates a small survey into value scores and measures how
//! representative a set of model ratings is of each gender group.

use std::collections::BTreeMap;

use valueprobe::survey::{build_value_scores, compare, survey_baseline};
use valueprobe::{Gender, RatedStatement, Statement, SurveyResponse, ValueCategory};

fn main() -> anyhow::Result<()> {
    let statements = vec![
        Statement::survey("q1", "by měla mít vláda menší moc.", ValueCategory::AntiAuth, false),
        Statement::survey("q2", "poslušnost je důležitá ctnost.", ValueCategory::AntiAuth, true),
        Statement::survey(
            "q3",
            "na způsobu života druhých nezáleží.",
            ValueCategory::CultLib,
            false,
        ),
        Statement::survey("q4", "tradice je třeba chránit.", ValueCategory::CultLib, true),
    ];
    let answers = |xs: [u8; 4]| -> BTreeMap<String, u8> {
        ["q1", "q2", "q3", "q4"].iter().map(|q| q.to_string()).zip(xs).collect()
    };
    let responses = vec![
        SurveyResponse::new("r1", Gender::Feminine, false, answers([4, 2, 5, 1]))?,
        SurveyResponse::new("r2", Gender::Feminine, false, answers([2, 3, 4, 3]))?,
        SurveyResponse::new("r3", Gender::Masculine, false, answers([5, 1, 3, 2]))?,
        SurveyResponse::new("r4", Gender::Masculine, false, answers([3, 4, 2, 5]))?,
        // infected respondents are left out of every aggregate
        SurveyResponse::new("r5", Gender::Masculine, true, answers([1, 5, 1, 5]))?,
    ];

    let rated: Vec<RatedStatement> = [("q1", 3.6), ("q2", 2.1), ("q3", 4.2), ("q4", 2.9)]
        .into_iter()
        .flat_map(|(id, r)| {
            Gender::ALL.map(|gender| RatedStatement {
                statement_id: id.to_string(),
                gender,
                err: 0.0,
                p_agree: (r - 1.0) / 4.0,
                rating: r,
            })
        })
        .collect();

    let scores = build_value_scores(&responses, &statements)?;
    for ((gender, value), xs) in scores.groups() {
        println!("{gender} {value}: respondent value scores {xs:?}");
    }

    println!();
    for row in compare(&rated, &statements, &scores)? {
        println!(
            "model  {} {:<8} mean {:.2}  representativeness {:.2}",
            row.gender,
            row.value.to_string(),
            row.model.mean,
            row.representativeness
        );
    }
    for ((g, v), s) in survey_baseline(&responses, &statements)? {
        println!("survey {g} {:<8} mean {:.2}  std {:.2}", v.to_string(), s.mean, s.std);
    }
    Ok(())
}
