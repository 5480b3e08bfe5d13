//! Renders the four gendered agree/disagree prompts for a few statements and
//! shows where the masked word sits.
//!
//! ```text
//! cargo run --example render_templates [prompts.jsonl]
//! ```

use std::fs::File;
use std::io::BufWriter;

use valueprobe::templating::{default_templates, render_prompts, write_prompts_jsonl};
use valueprobe::{calibration_corpus, Statement, ValueCategory};

fn main() -> anyhow::Result<()> {
    let templates = default_templates();
    let statements = vec![
        calibration_corpus().remove(0),
        Statement::survey("q1", "by měla mít vláda menší moc.", ValueCategory::AntiAuth, false),
    ];

    for s in &statements {
        for v in render_prompts(s, &templates)? {
            let span = v.mask_span();
            let masked: String = v
                .text
                .chars()
                .take(span.start)
                .chain("<mask>".chars())
                .chain(v.text.chars().skip(span.end))
                .collect();
            println!(
                "{} {} {:<8} {:>2}..{:<2} {:<12} {masked}",
                v.statement_id,
                v.gender,
                v.polarity.to_string(),
                span.start,
                span.end,
                v.masked_slice()
            );
        }
    }

    if let Some(path) = std::env::args().nth(1) {
        let n = write_prompts_jsonl(BufWriter::new(File::create(&path)?), &statements, &templates)?;
        println!("wrote {n} variants to {path}");
    }
    Ok(())
}
