//! Normalize raw Bengali text, split it into sentences and tokenize.
//!
//! cargo run --example normalize_and_split

use wsd_kit::corpus::{normalize_text, split_sentences, tokenize, RawDocument};

fn main() -> wsd_kit::Result<()> {
    // Decomposed য় (য + nukta), stray punctuation and a mix of terminals.
    let raw = "আমার মাথা\u{09AF}\u{09BC} ব্যথা।  কী হবে?সে বলল,\"চলো মাঠে যাই!\" তারপর চুপ।";
    let text = normalize_text(raw);
    println!("normalized: {text}");

    let doc = RawDocument::new("Novel", "sample.txt", text)?;
    for sentence in split_sentences(&doc) {
        let tokens = tokenize(&sentence);
        let tokens: Vec<&str> = tokens.iter().map(|t| t.surface()).collect();
        println!("{:<20} {}", sentence.id(), tokens.join(" | "));
    }
    Ok(())
}
