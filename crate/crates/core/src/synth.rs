//! Seeded synthetic corpus for the মাথা inventory.
//!
//! Each sense class has its own keyword pool. A target sentence carries one
//! inflected form of the lemma, a few keywords (mostly from its own class,
//! sometimes from another), shared filler words and some stop words, in
//! random order. Corpus files interleave target sentences with filler
//! sentences that never mention the lemma. One category receives filler
//! only, so the evaluation report has an empty row.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{normalize_text, split_sentences, RawDocument};
use crate::error::{Error, Result};
use crate::evaluation::GoldRecord;
use crate::jsonl;
use crate::sense::LabeledSentence;

pub const LEMMA: &str = "মাথা";

/// Inflected and compounded forms of মাথা that the prefix matcher must
/// accept.
pub const TARGET_FORMS: [&str; 12] = [
    "মাথা",
    "মাথায়",
    "মাথার",
    "মাথাতে",
    "মাথাটা",
    "মাথাটি",
    "মাথাগুলো",
    "মাথারা",
    "মাথাদের",
    "মাথারই",
    "মাথাব্যথা",
    "মাথাপিছু",
];

/// Keyword pools for classes `a`, `b`, `c` of the bundled inventory.
pub const CLASS_KEYWORDS: [(&str, [&str; 12]); 3] = [
    (
        "a",
        [
            "কপাল",
            "ললাট",
            "টিপ",
            "চন্দন",
            "তিলক",
            "ঘাম",
            "ভ্রু",
            "সিঁদুর",
            "ভাঁজ",
            "রেখা",
            "আভা",
            "মস্তক",
        ],
    ),
    (
        "b",
        [
            "চুল",
            "মস্তিষ্ক",
            "আঘাত",
            "যন্ত্রণা",
            "বালিশ",
            "টুপি",
            "চিরুনি",
            "মুণ্ড",
            "ঘাড়",
            "গলা",
            "চোখ",
            "কান",
        ],
    ),
    (
        "c",
        [
            "নৌকা",
            "পাহাড়",
            "বাড়ি",
            "শিখর",
            "চূড়া",
            "মন্দির",
            "গাছ",
            "ভবন",
            "সিঁড়ি",
            "রাস্তা",
            "অগ্রভাগ",
            "মাস্তুল",
        ],
    ),
];

const SHARED: [&str; 18] = [
    "দিন",
    "সময়",
    "লোক",
    "গ্রাম",
    "কথা",
    "কাজ",
    "পথ",
    "জল",
    "আলো",
    "সকাল",
    "বিকেল",
    "হঠাৎ",
    "দেখল",
    "বলল",
    "ছিল",
    "গেল",
    "করে",
    "হয়ে",
];

const STOP: [&str; 9] = ["আমি", "সে", "এবং", "কিন্তু", "থেকে", "খুব", "একটি", "তার", "ও"];

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub train_per_class: usize,
    pub held_out: usize,
    /// Probability that a keyword comes from the sentence's own class.
    pub purity: f64,
    /// Categories that receive target sentences.
    pub categories: Vec<String>,
    /// A category with filler sentences only.
    pub empty_category: Option<String>,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            seed: 0,
            train_per_class: 55,
            held_out: 100,
            purity: 0.9,
            categories: ["Agriculture", "MassMedia", "Novel", "Zoology"]
                .map(String::from)
                .to_vec(),
            empty_category: Some("Geology".to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub training: Vec<LabeledSentence>,
    pub documents: Vec<RawDocument>,
    /// Held-out target sentences with their classes, keyed by the id the
    /// extractor assigns.
    pub gold: Vec<GoldRecord>,
}

struct Generator {
    rng: ChaCha8Rng,
    purity: f64,
}

impl Generator {
    fn keywords(&self, class: usize) -> &'static [&'static str] {
        &CLASS_KEYWORDS[class].1
    }

    fn pick<'a>(&mut self, pool: &[&'a str]) -> &'a str {
        pool.choose(&mut self.rng).expect("non-empty pool")
    }

    fn finish(&mut self, mut words: Vec<&str>) -> String {
        words.shuffle(&mut self.rng);
        format!("{}।", words.join(" "))
    }

    fn target_sentence(&mut self, class: usize) -> String {
        let mut words = vec![self.pick(&TARGET_FORMS)];
        for _ in 0..self.rng.gen_range(3..=4) {
            let source = if self.rng.gen_bool(self.purity) {
                class
            } else {
                (class + self.rng.gen_range(1..CLASS_KEYWORDS.len())) % CLASS_KEYWORDS.len()
            };
            words.push(self.pick(self.keywords(source)));
        }
        for _ in 0..self.rng.gen_range(2..=4) {
            words.push(self.pick(&SHARED));
        }
        for _ in 0..self.rng.gen_range(1..=2) {
            words.push(self.pick(&STOP));
        }
        self.finish(words)
    }

    fn filler_sentence(&mut self) -> String {
        let mut words = Vec::new();
        for _ in 0..self.rng.gen_range(3..=6) {
            words.push(self.pick(&SHARED));
        }
        if self.rng.gen_bool(0.5) {
            let class = self.rng.gen_range(0..CLASS_KEYWORDS.len());
            words.push(self.pick(self.keywords(class)));
        }
        words.push(self.pick(&STOP));
        self.finish(words)
    }
}

pub fn generate(config: &SyntheticConfig) -> Result<SyntheticCorpus> {
    if config.categories.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one category is needed".into(),
        ));
    }
    let mut gen = Generator {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        purity: config.purity,
    };

    let mut training = Vec::new();
    for (class, (class_id, _)) in CLASS_KEYWORDS.iter().enumerate() {
        for _ in 0..config.train_per_class {
            training.push(LabeledSentence {
                text: gen.target_sentence(class),
                class_id: class_id.to_string(),
                category: "training".into(),
            });
        }
    }

    // Two files per category; held-out sentences are dealt round-robin.
    let files_per_category = 2;
    let slots = config.categories.len() * files_per_category;
    let mut files: Vec<Vec<(String, Option<usize>)>> = vec![Vec::new(); slots];
    for i in 0..config.held_out {
        let class = gen.rng.gen_range(0..CLASS_KEYWORDS.len());
        let slot = i % slots;
        if gen.rng.gen_bool(0.5) {
            let filler = gen.filler_sentence();
            files[slot].push((filler, None));
        }
        let sentence = gen.target_sentence(class);
        files[slot].push((sentence, Some(class)));
    }

    let mut documents = Vec::new();
    let mut gold = Vec::new();
    for (slot, sentences) in files.into_iter().enumerate() {
        let category = &config.categories[slot / files_per_category];
        let name = format!("part{}.txt", slot % files_per_category + 1);
        let body = sentences
            .iter()
            .map(|(s, _)| s.as_str())
            .collect::<Vec<_>>()
            .join("\n");
        let doc = RawDocument::new(category.clone(), name, body)?;

        let split = split_sentences(&RawDocument {
            body: normalize_text(&doc.body),
            ..doc.clone()
        });
        debug_assert_eq!(split.len(), sentences.len());
        for (sentence, (_, class)) in split.iter().zip(&sentences) {
            if let Some(class) = class {
                gold.push(GoldRecord {
                    id: sentence.id(),
                    text: sentence.text.clone(),
                    class_id: CLASS_KEYWORDS[*class].0.to_string(),
                    category: category.clone(),
                });
            }
        }
        documents.push(doc);
    }

    if let Some(empty) = &config.empty_category {
        let body = (0..3)
            .map(|_| gen.filler_sentence())
            .collect::<Vec<_>>()
            .join("\n");
        documents.push(RawDocument::new(empty.clone(), "part1.txt", body)?);
    }

    Ok(SyntheticCorpus {
        training,
        documents,
        gold,
    })
}

/// File names written by [`SyntheticCorpus::write_to`].
pub struct SyntheticLayout;

impl SyntheticLayout {
    pub const CORPUS_DIR: &'static str = "corpus";
    pub const TRAIN: &'static str = "train.jsonl";
    pub const GOLD: &'static str = "gold.jsonl";
}

impl SyntheticCorpus {
    /// Writes `corpus/<category>/<file>.txt`, `train.jsonl` and `gold.jsonl`
    /// under `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        for doc in &self.documents {
            let path = dir
                .join(SyntheticLayout::CORPUS_DIR)
                .join(&doc.category)
                .join(&doc.name);
            let mut body = doc.body.clone();
            body.push('\n');
            jsonl::write_file(&path, body.as_bytes())?;
        }
        jsonl::write(&dir.join(SyntheticLayout::TRAIN), &self.training)?;
        jsonl::write(&dir.join(SyntheticLayout::GOLD), &self.gold)
    }
}
