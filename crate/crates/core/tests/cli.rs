mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn probe(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_probe"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn probe")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// A failed run prints exactly one `error[CODE]: ...` line.
fn error_line(out: &Output) -> String {
    assert!(!out.status.success(), "expected failure");
    let err = stderr(out);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines.len(), 1, "stderr: {err}");
    let line = lines[0];
    let code = line
        .strip_prefix("error[")
        .and_then(|rest| rest.split_once("]: "))
        .map(|(code, _)| code)
        .unwrap_or_else(|| panic!("bad error line: {line}"));
    assert!(code.chars().all(|c| c.is_ascii_uppercase() || c == '_'), "{code}");
    line.to_string()
}

#[test]
fn templates_writes_four_variants_per_statement() {
    let tmp = tempfile::tempdir().unwrap();
    let out = probe(
        &[
            "templates",
            "--statements",
            common::fixture("survey_statements.csv").to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let jsonl = fs::read_to_string(tmp.path().join("out/prompts.jsonl")).unwrap();
    assert_eq!(jsonl.lines().count(), 16);
}

#[test]
fn templates_accepts_template_file() {
    let tmp = tempfile::tempdir().unwrap();
    let dest = tmp.path().join("p.jsonl");
    let out = probe(
        &[
            "templates",
            "--statements",
            common::fixture("survey_statements.csv").to_str().unwrap(),
            "--templates",
            common::fixture("templates_cs.txt").to_str().unwrap(),
            "--out",
            dest.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(fs::read_to_string(dest).unwrap().lines().count(), 16);
}

#[test]
fn empty_statements_file_gives_empty_output() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("empty.csv"), "statement_id,text_cs\n").unwrap();
    let out = probe(&["templates", "--statements", "empty.csv"], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(fs::read_to_string(tmp.path().join("out/prompts.jsonl")).unwrap(), "");
}

#[test]
fn malformed_statement_row_names_the_row() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(
        tmp.path().join("bad.csv"),
        "statement_id,text_cs,value,reversed\nq1,text one.,AntiAuth,0\nq2,text two.,Nonsense,0\n",
    )
    .unwrap();
    let out = probe(&["templates", "--statements", "bad.csv"], tmp.path());
    let line = error_line(&out);
    assert!(line.starts_with("error[PARSE]: bad.csv: row 3:"), "{line}");
}

#[test]
fn malformed_jsonl_line_is_reported() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("lp.jsonl"), "{\"model_id\": \"m\"\n").unwrap();
    let out = probe(&["calibrate", "--calibration-logprobs", "lp.jsonl"], tmp.path());
    let line = error_line(&out);
    assert!(line.starts_with("error[PARSE]: lp.jsonl: line 1:"), "{line}");
}

#[test]
fn missing_polarity_names_the_key() {
    let tmp = tempfile::tempdir().unwrap();
    let inputs = common::synthetic_inputs(tmp.path());
    // drop every c5 disagree record for the masculine form
    let text = fs::read_to_string(&inputs.calibration_logprobs).unwrap();
    let kept: String = text
        .lines()
        .filter(|l| {
            !(l.contains("\"statement_id\":\"c5\"") && l.contains("\"gender\":\"M\"") && l.contains("disagree"))
        })
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(kept.len() < text.len());
    fs::write(&inputs.calibration_logprobs, kept).unwrap();

    let out = probe(
        &[
            "calibrate",
            "--calibration-statements",
            inputs.calibration_statements.to_str().unwrap(),
            "--calibration-logprobs",
            inputs.calibration_logprobs.to_str().unwrap(),
        ],
        tmp.path(),
    );
    let line = error_line(&out);
    assert!(line.starts_with("error[MISSING_POLARITY]"), "{line}");
    assert!(
        line.contains("c5") && line.contains("disagree") && line.contains('M'),
        "{line}"
    );
}

#[test]
fn zero_sigma_fit_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let inputs = common::synthetic_inputs(tmp.path());
    fs::write(
        tmp.path().join("fits.json"),
        r#"[{"model_id":"mock","gender":"F","a":0.85,"sigma":0.0,"pearson_r":1.0,"n":100},
            {"model_id":"mock","gender":"M","a":0.85,"sigma":0.0,"pearson_r":1.0,"n":100}]"#,
    )
    .unwrap();
    let out = probe(
        &[
            "score",
            "--fits",
            "fits.json",
            "--survey-statements",
            inputs.survey_statements.to_str().unwrap(),
            "--survey-logprobs",
            inputs.survey_logprobs.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert!(error_line(&out).starts_with("error[DEGENERATE_SIGMA]"));
}

#[test]
fn missing_input_is_a_coded_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = probe(&["calibrate", "--calibration-logprobs", "nope.jsonl"], tmp.path());
    assert!(error_line(&out).starts_with("error[MISSING_PATH]"));
    let out = probe(&["calibrate"], tmp.path());
    error_line(&out);
}

#[test]
fn config_file_with_flag_override() {
    let tmp = tempfile::tempdir().unwrap();
    common::synthetic_inputs(&tmp.path().join("inputs"));
    fs::write(
        tmp.path().join("run.toml"),
        "model_id = \"mock\"\n\
         calibration_statements = \"inputs/calibration.csv\"\n\
         calibration_logprobs = \"inputs/calibration.jsonl\"\n\
         survey_statements = \"inputs/survey.csv\"\n\
         survey_logprobs = \"inputs/survey.jsonl\"\n\
         survey_microdata = \"inputs/microdata.csv\"\n\
         out_dir = \"from_config\"\n",
    )
    .unwrap();
    let elsewhere = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.toml");
    let cfg = cfg.to_str().unwrap();
    let flag_out = tmp.path().join("from_flag");

    for cmd in ["calibrate", "score", "compare"] {
        let out = probe(&[cmd, "--config", cfg], elsewhere.path());
        assert!(out.status.success(), "{cmd}: {}", stderr(&out));
    }
    let from_config = tmp.path().join("from_config");
    for f in [
        "calibration_fits.json",
        "scatter.csv",
        "ratings.csv",
        "value_summary.csv",
        "representativeness.csv",
    ] {
        assert!(from_config.join(f).is_file(), "{f}");
    }

    let out = probe(
        &[
            "calibrate",
            "--config",
            cfg,
            "--out-dir",
            flag_out.to_str().unwrap(),
            "--format",
            "markdown",
        ],
        elsewhere.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(flag_out.join("calibration_fits.json").is_file());
    assert!(flag_out.join("calibration.md").is_file());

    let out = probe(&["calibrate", "--config", cfg, "--model-id", "other"], elsewhere.path());
    assert!(error_line(&out).starts_with("error[MODEL_MISMATCH]"));
}

#[test]
fn unknown_config_key_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("run.toml"), "modle_id = \"x\"\n").unwrap();
    let out = probe(&["calibrate", "--config", "run.toml"], tmp.path());
    assert!(error_line(&out).starts_with("error[PARSE]"));
}

#[test]
fn markdown_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = probe(
        &[
            "compare",
            "--model-id",
            "fixture",
            "--survey-statements",
            common::fixture("survey_statements.csv").to_str().unwrap(),
            "--survey-microdata",
            common::fixture("microdata.csv").to_str().unwrap(),
            "--ratings",
            common::fixture("ratings.csv").to_str().unwrap(),
            "--format",
            "md",
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let md = fs::read_to_string(tmp.path().join("out/tables.md")).unwrap();
    assert!(md.contains("| AntiAuth F |"), "{md}");
    assert!(md.contains("| fixture | 1.00 | 0.00 | 0.00 | 1.00 |"), "{md}");
    assert!(md.contains("fixture"), "{md}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("representativeness=1.00"), "{stdout}");
}
