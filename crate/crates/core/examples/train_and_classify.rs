//! Train on the synthetic labeled sentences and classify a few new ones,
//! showing the per-class log scores.
//!
//! cargo run --example train_and_classify

use wsd_kit::corpus::{normalize_text, tokenize_text};
use wsd_kit::nb;
use wsd_kit::sense::{build_training_set, SenseInventory, DEFAULT_CAP};
use wsd_kit::stopwords::{filter_stopwords, StopwordLexicon};
use wsd_kit::synth::{generate, SyntheticConfig};

fn main() -> wsd_kit::Result<()> {
    let inventory = SenseInventory::bundled_matha();
    let lex = StopwordLexicon::bundled();
    let labeled = generate(&SyntheticConfig::default())?.training;
    let training = build_training_set(&inventory, &labeled, &lex, DEFAULT_CAP, 0)?;
    let model = nb::train(&training)?;
    println!("|V| = {}", model.vocab_size());

    for text in [
        "তার কপালে চন্দনের টিপ, মাথায় ঘাম।",
        "মাথার চুল আঁচড়ে চিরুনি রাখল।",
        "পাহাড়ের মাথায় একটি মন্দির।",
        "আমি এবং সে।",
    ] {
        let tokens = filter_stopwords(&tokenize_text(&normalize_text(text)), &lex);
        let result = model.classify(&tokens);
        let scores: Vec<String> = result
            .log_scores
            .iter()
            .map(|(c, s)| format!("{c}={s:.2}"))
            .collect();
        let mut flags = String::new();
        if result.low_evidence {
            flags.push_str(" low-evidence");
        }
        if result.tie {
            flags.push_str(" tie");
        }
        println!(
            "{text} -> {} [{}] oov={}{flags}",
            result.predicted_class,
            scores.join(" "),
            result.skipped_oov.len()
        );
    }
    Ok(())
}
