//! Per-category P/R/FM report from a count table, here the bundled মাথা
//! counts.
//!
//! cargo run --example category_report [counts.csv]

use wsd_kit::evaluation::{build_report, compute_metrics, parse_count_table};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("../data/matha_category_counts.csv").to_string(),
    };
    let table = parse_count_table(&text)?;
    let metrics = table
        .categories
        .iter()
        .map(|c| compute_metrics(c, c.responded))
        .collect::<wsd_kit::Result<Vec<_>>>()?;
    let report = build_report(metrics, &table.class_ids)?;
    print!("{}", report.to_table());
    println!("{}", report.summary_line());
    Ok(())
}
