//! Frequency profile of a corpus, with the bundled stop words marked.
//! Useful when curating a stop-word list for a new corpus.
//!
//! cargo run --example stopword_profile [corpus-dir]

use std::path::PathBuf;

use wsd_kit::corpus::tokenize_text;
use wsd_kit::stopwords::{filter_stopwords, frequency_profile, StopwordLexicon};

fn main() -> wsd_kit::Result<()> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/corpus")));
    let lex = StopwordLexicon::bundled();
    println!("bundled lexicon: {} entries", lex.len());

    for (token, count) in frequency_profile(&root)?.iter().take(15) {
        let mark = if lex.contains(token) { "  (stop)" } else { "" };
        println!("{token:<12} {count:>3}{mark}");
    }

    let tokens = tokenize_text("আমি মাথা এবং ঘর");
    let kept = filter_stopwords(&tokens, &lex);
    let kept: Vec<&str> = kept.iter().map(|t| t.surface()).collect();
    println!("আমি মাথা এবং ঘর -> {kept:?}");
    Ok(())
}
