//! Sense inventories and class-balanced training sets.
//!
//! An inventory lists the fine-grained senses (glosses) of one lemma, as a
//! WordNet entry presents them, and groups them into the coarse classes the
//! classifier predicts. Training sets are built from labeled sentences,
//! stop-word filtered, and capped per class so that every class enters the
//! model with the same weight.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{normalize_text, read_utf8, tokenize_text, Token};
use crate::error::{Error, Result};
use crate::stopwords::{filter_stopwords, StopwordLexicon};

const BUNDLED_MATHA: &str = include_str!("../data/matha_inventory.json");

/// Per-class cap used when nothing else is specified.
pub const DEFAULT_CAP: usize = 55;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SenseDefinition {
    pub id: u32,
    pub pos: String,
    pub synonyms: Vec<String>,
    pub gloss: String,
    pub example: String,
    pub class_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseClass {
    pub class_id: String,
    pub label: String,
    pub member_sense_ids: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseInventory {
    pub lemma: String,
    pub classes: Vec<SenseClass>,
    pub senses: Vec<SenseDefinition>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InventoryFile {
    lemma: String,
    classes: Vec<ClassEntry>,
    senses: Vec<SenseDefinition>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassEntry {
    class_id: String,
    label: String,
}

impl SenseInventory {
    pub fn from_json(text: &str, path: Option<&Path>) -> Result<Self> {
        let text = text.strip_prefix('\u{FEFF}').unwrap_or(text);
        let file: InventoryFile =
            serde_json::from_str(text).map_err(|e| Error::format(path, e.line(), e.to_string()))?;
        let bad = |message: String| Error::format(path, 0, message);

        let lemma = normalize_text(&file.lemma);
        if lemma.is_empty() {
            return Err(bad("empty lemma".into()));
        }
        if file.classes.is_empty() {
            return Err(bad("no classes declared".into()));
        }

        let mut classes: Vec<SenseClass> = Vec::with_capacity(file.classes.len());
        for entry in file.classes {
            if entry.class_id.is_empty() {
                return Err(bad("empty class_id".into()));
            }
            if classes.iter().any(|c| c.class_id == entry.class_id) {
                return Err(bad(format!("duplicate class_id `{}`", entry.class_id)));
            }
            classes.push(SenseClass {
                class_id: entry.class_id,
                label: entry.label,
                member_sense_ids: Vec::new(),
            });
        }

        let mut seen = BTreeSet::new();
        for sense in &file.senses {
            if sense.id == 0 {
                return Err(bad("sense ids start at 1".into()));
            }
            if !seen.insert(sense.id) {
                return Err(bad(format!("duplicate sense id {}", sense.id)));
            }
            if sense.synonyms.is_empty() {
                return Err(bad(format!("sense {} has no synonyms", sense.id)));
            }
            let class = classes
                .iter_mut()
                .find(|c| c.class_id == sense.class_id)
                .ok_or_else(|| {
                    Error::Integrity(format!(
                        "sense {} refers to undeclared class `{}`",
                        sense.id, sense.class_id
                    ))
                })?;
            class.member_sense_ids.push(sense.id);
        }

        Ok(SenseInventory {
            lemma,
            classes,
            senses: file.senses,
        })
    }

    /// The five-gloss, three-class inventory for মাথা ("head").
    pub fn bundled_matha() -> Self {
        Self::from_json(BUNDLED_MATHA, None).expect("bundled inventory is well formed")
    }

    pub fn class(&self, class_id: &str) -> Option<&SenseClass> {
        self.classes.iter().find(|c| c.class_id == class_id)
    }

    pub fn class_ids(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.class_id.clone()).collect()
    }
}

pub fn load_sense_inventory(path: &Path) -> Result<SenseInventory> {
    SenseInventory::from_json(&read_utf8(path)?, Some(path))
}

/// One line of a labeled-sentence file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSentence {
    pub text: String,
    pub class_id: String,
    #[serde(default)]
    pub category: String,
}

pub fn load_labeled_sentences(path: &Path) -> Result<Vec<LabeledSentence>> {
    crate::jsonl::read(path)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingExample {
    pub tokens: Vec<Token>,
    pub class_id: String,
    pub source_category: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingSet {
    pub lemma: String,
    pub classes: Vec<SenseClass>,
    /// Grouped by class in declaration order, original order within a class.
    pub examples: Vec<TrainingExample>,
    pub cap: usize,
    /// Sentences left with no tokens after stop-word filtering.
    pub rejected: usize,
}

impl TrainingSet {
    pub fn class_ids(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.class_id.clone()).collect()
    }

    pub fn count_for(&self, class_id: &str) -> usize {
        self.examples
            .iter()
            .filter(|e| e.class_id == class_id)
            .count()
    }
}

/// Tokenizes and filters every labeled sentence, then keeps at most `cap`
/// per class. Classes with more than `cap` usable sentences are subsampled
/// with a ChaCha8 generator seeded from `seed`, so the result depends only
/// on the inputs.
pub fn build_training_set(
    inventory: &SenseInventory,
    labeled: &[LabeledSentence],
    lex: &StopwordLexicon,
    cap: usize,
    seed: u64,
) -> Result<TrainingSet> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }

    let mut by_class: BTreeMap<&str, Vec<TrainingExample>> = inventory
        .classes
        .iter()
        .map(|c| (c.class_id.as_str(), Vec::new()))
        .collect();
    let mut rejected = 0;

    for (i, item) in labeled.iter().enumerate() {
        let bucket = by_class.get_mut(item.class_id.as_str()).ok_or_else(|| {
            Error::Integrity(format!(
                "labeled sentence {} has unknown class `{}`",
                i + 1,
                item.class_id
            ))
        })?;
        let tokens = filter_stopwords(&tokenize_text(&normalize_text(&item.text)), lex);
        if tokens.is_empty() {
            rejected += 1;
            continue;
        }
        bucket.push(TrainingExample {
            tokens,
            class_id: item.class_id.clone(),
            source_category: item.category.clone(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut examples = Vec::new();
    for class in &inventory.classes {
        let mut pool = by_class.remove(class.class_id.as_str()).unwrap_or_default();
        if pool.is_empty() {
            return Err(Error::InsufficientData {
                class_id: class.class_id.clone(),
            });
        }
        if pool.len() > cap {
            let mut keep = index::sample(&mut rng, pool.len(), cap).into_vec();
            keep.sort_unstable();
            let mut slots: Vec<Option<TrainingExample>> = pool.into_iter().map(Some).collect();
            pool = keep
                .into_iter()
                .map(|i| slots[i].take().expect("indices are distinct"))
                .collect();
        }
        examples.extend(pool);
    }

    Ok(TrainingSet {
        lemma: inventory.lemma.clone(),
        classes: inventory.classes.clone(),
        examples,
        cap,
        rejected,
    })
}
