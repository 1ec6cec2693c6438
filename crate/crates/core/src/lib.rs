//! Word-sense classification for an ambiguous target word.
//!
//! Sentences containing any inflected form of a lemma are pulled out of a
//! categorized plain-text corpus, stop words are removed, and a multinomial
//! Naive Bayes model trained on a few labeled sentences per sense class
//! assigns each one a class. Results are reported per corpus category as
//! Precision, Recall and F-measure.
//!
//! | module | role |
//! |---|---|
//! | [`corpus`] | normalization, sentence splitting, tokens, target extraction |
//! | [`stopwords`] | curated stop-word lexicon, frequency profile |
//! | [`sense`] | sense inventory, class-capped training sets |
//! | [`nb`] | Laplace-smoothed Naive Bayes |
//! | [`evaluation`] | per-category P/R/FM report |
//! | [`pipeline`] | file-to-file steps behind the `wsd-kit` binary |
//! | [`synth`] | seeded synthetic corpus for demos and tests |
//!
//! Runnable examples live in `examples/`: `normalize_and_split`,
//! `extract_targets`, `stopword_profile`, `sense_inventory`,
//! `train_and_classify`, `category_report` and `end_to_end`.

pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod jsonl;
pub mod nb;
pub mod pipeline;
pub mod sense;
pub mod stopwords;
pub mod synth;

pub use error::{Error, Result};
