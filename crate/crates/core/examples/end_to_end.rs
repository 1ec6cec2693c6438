//! Synthetic corpus through extract, train, classify and evaluate, writing
//! every intermediate file.
//!
//! cargo run --example end_to_end [out-dir] [seed]

use std::path::PathBuf;

use wsd_kit::pipeline::run_demo;

fn main() -> wsd_kit::Result<()> {
    let mut args = std::env::args().skip(1);
    let out_dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("wsd-kit-end-to-end"));
    let seed = args
        .next()
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(0);

    let summary = run_demo(&out_dir, seed)?;
    println!("extracted {} sentences", summary.extracted);
    println!("{}", summary.train);
    println!(
        "classified {} ({} low-evidence, {} ties)",
        summary.classify.sentences, summary.classify.low_evidence, summary.classify.ties
    );
    println!("{}", summary.report.summary_line());
    println!("files under {}", out_dir.display());
    Ok(())
}
