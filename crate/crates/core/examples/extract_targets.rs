//! Pull every sentence with a form of মাথা out of the bundled fixture corpus.
//!
//! cargo run --example extract_targets [corpus-dir] [lemma]

use std::path::PathBuf;

use wsd_kit::corpus::{extract_target_sentences, TargetMatcher};

fn main() -> wsd_kit::Result<()> {
    let mut args = std::env::args().skip(1);
    let root = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/corpus")));
    let lemma = args.next().unwrap_or_else(|| "মাথা".to_string());

    let matcher = TargetMatcher::new(&lemma)?;
    let sentences = extract_target_sentences(&root, &lemma)?;
    for s in &sentences {
        let forms: Vec<&str> = s.text.split(' ').filter(|w| matcher.matches(w)).collect();
        println!("{:<22} {:<14} {}", s.id(), forms.join(","), s.text);
    }
    println!("{} sentences", sentences.len());
    Ok(())
}
