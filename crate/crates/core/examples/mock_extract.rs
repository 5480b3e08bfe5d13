//! Stand-in for the Python extractor: reads a prompts JSONL file and writes
//! the log-probability JSONL a real masked LM run would produce, using the
//! seeded mock backend.
//!
//! ```text
//! cargo run --example render_templates prompts.jsonl
//! cargo run --example mock_extract prompts.jsonl logprobs.jsonl [seed]
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter};

use anyhow::Context;
use valueprobe::scorer::{score_all, MockScorer};
use valueprobe::PromptVariant;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let (Some(input), Some(output)) = (args.next(), args.next()) else {
        anyhow::bail!("usage: mock_extract <prompts.jsonl> <logprobs.jsonl> [seed]");
    };
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);

    let mut variants = Vec::new();
    for (i, line) in BufReader::new(File::open(&input)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: PromptVariant = serde_json::from_str(&line).with_context(|| format!("{input}: line {}", i + 1))?;
        variants.push(v);
    }

    let table = score_all(&MockScorer::new(seed, 0.85, 0.3), &variants)?;
    table.write_jsonl(BufWriter::new(File::create(&output)?))?;
    println!("scored {} variants into {output}", table.len());
    Ok(())
}
