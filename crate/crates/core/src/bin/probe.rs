//! `probe`: command-line front end of the probing pipeline.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use valueprobe::report::{self, OutputFormat, RunConfig, PROMPTS_FILE};

#[derive(Parser)]
#[command(name = "probe", version, about = "Calibrated agree/disagree probing of masked LMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render the four gendered agree/disagree prompts per statement as JSONL.
    Templates {
        /// Statements CSV (statement_id,text_cs[,value,reversed]).
        #[arg(long)]
        statements: PathBuf,
        /// Template file with four `gender,polarity,template` lines.
        #[arg(long)]
        templates: Option<PathBuf>,
        /// Output file; defaults to <out-dir>/prompts.jsonl.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
    /// Fit the agree/disagree relation on calibration log-probabilities.
    Calibrate(Common),
    /// Rate survey statements with the calibration fits.
    Score(Common),
    /// Compare ratings with the survey and write the result tables.
    Compare(Common),
}

#[derive(Args)]
struct Common {
    /// TOML file with any of the settings below; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model_id: Option<String>,
    #[arg(long)]
    calibration_statements: Option<PathBuf>,
    #[arg(long)]
    calibration_logprobs: Option<PathBuf>,
    #[arg(long)]
    survey_statements: Option<PathBuf>,
    #[arg(long)]
    survey_logprobs: Option<PathBuf>,
    #[arg(long)]
    survey_microdata: Option<PathBuf>,
    /// Calibration fits JSON; defaults to <out-dir>/calibration_fits.json.
    #[arg(long)]
    fits: Option<PathBuf>,
    /// Ratings CSV; defaults to <out-dir>/ratings.csv.
    #[arg(long)]
    ratings: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

impl Common {
    fn resolve(self) -> valueprobe::Result<RunConfig> {
        let base = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        Ok(base.overlay(RunConfig {
            model_id: self.model_id,
            calibration_statements: self.calibration_statements,
            survey_statements: self.survey_statements,
            survey_microdata: self.survey_microdata,
            calibration_logprobs: self.calibration_logprobs,
            survey_logprobs: self.survey_logprobs,
            fits: self.fits,
            ratings: self.ratings,
            out_dir: self.out_dir,
            format: self.format,
        }))
    }
}

fn run(cli: Cli) -> valueprobe::Result<()> {
    match cli.command {
        Command::Templates {
            statements,
            templates,
            out,
            out_dir,
        } => {
            let out = out.unwrap_or_else(|| out_dir.join(PROMPTS_FILE));
            let n = report::cmd_templates(&statements, templates.as_deref(), &out)?;
            println!("wrote {n} prompt variants to {}", out.display());
        }
        Command::Calibrate(c) => {
            let res = report::cmd_calibrate(&c.resolve()?)?;
            for f in &res.fits {
                println!(
                    "{} {}: a={:.4} sigma={:.4} r={:.3} n={}",
                    f.model_id, f.gender, f.a, f.sigma, f.pearson_r, f.n
                );
            }
        }
        Command::Score(c) => {
            let res = report::cmd_score(&c.resolve()?)?;
            println!("rated {} statement/gender pairs", res.rated.len());
        }
        Command::Compare(c) => {
            let res = report::cmd_compare(&c.resolve()?)?;
            for r in &res.model {
                println!(
                    "{} {}: mean={:.2} std={:.2} representativeness={:.2}",
                    r.value, r.gender, r.model.mean, r.model.std, r.representativeness
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e.to_string().replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
