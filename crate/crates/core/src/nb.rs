//! Multinomial Naive Bayes with add-one (Laplace) smoothing.
//!
//! The model keeps exact integer counts: sentences per class, token
//! occurrences per class and word, the per-class token total `n_c` and the
//! vocabulary size `|V|`. Probabilities are derived on demand:
//!
//! ```text
//! P(c)     = sentences(c) / sentences
//! P(w | c) = (count(w, c) + 1) / (n_c + |V|)
//! score(c) = ln P(c) + sum over in-vocabulary tokens w of ln P(w | c)
//! ```
//!
//! Every occurrence of a token contributes once. Tokens never seen in
//! training are skipped and reported. When the best log scores are within
//! rounding distance of each other the decision is re-made with exact
//! rational arithmetic, so ties are real ties and go to the class declared
//! first.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::{Deserialize, Serialize};

use crate::corpus::{read_utf8, Token};
use crate::error::{Error, Result};
use crate::jsonl::write_file;
use crate::sense::TrainingSet;

pub const SMOOTHING: &str = "laplace-add-1";

/// Relative gap under which two log scores are compared exactly.
const NEAR_TIE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
struct ClassStats {
    class_id: String,
    sentences: u64,
    prior: f64,
    token_total: u64,
    word_counts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NbModel {
    lemma: String,
    classes: Vec<ClassStats>,
    vocab: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub predicted_class: String,
    /// Natural-log scores in class declaration order.
    pub log_scores: Vec<(String, f64)>,
    pub used_tokens: Vec<Token>,
    pub skipped_oov: Vec<Token>,
    pub tie: bool,
    /// No token was in the vocabulary; the priors alone decided.
    pub low_evidence: bool,
}

impl ClassificationResult {
    pub fn score(&self, class_id: &str) -> Option<f64> {
        self.log_scores
            .iter()
            .find(|(c, _)| c == class_id)
            .map(|(_, s)| *s)
    }
}

/// Counts-only view of a training set, used by [`train`] and handy for
/// building small models directly.
pub fn train_from_documents<'a, I>(lemma: &str, class_ids: &[String], docs: I) -> Result<NbModel>
where
    I: IntoIterator<Item = (&'a str, &'a [Token])>,
{
    if class_ids.is_empty() {
        return Err(Error::InvalidArgument("no classes".into()));
    }
    let mut classes: Vec<ClassStats> = Vec::with_capacity(class_ids.len());
    for id in class_ids {
        if classes.iter().any(|c| &c.class_id == id) {
            return Err(Error::InvalidArgument(format!("duplicate class `{id}`")));
        }
        classes.push(ClassStats {
            class_id: id.clone(),
            sentences: 0,
            prior: 0.0,
            token_total: 0,
            word_counts: BTreeMap::new(),
        });
    }

    for (class_id, tokens) in docs {
        let class = classes
            .iter_mut()
            .find(|c| c.class_id == class_id)
            .ok_or_else(|| {
                Error::Integrity(format!("training document for unknown class `{class_id}`"))
            })?;
        class.sentences += 1;
        for token in tokens {
            *class
                .word_counts
                .entry(token.surface().to_owned())
                .or_default() += 1;
            class.token_total += 1;
        }
    }

    if let Some(empty) = classes.iter().find(|c| c.sentences == 0) {
        return Err(Error::InsufficientData {
            class_id: empty.class_id.clone(),
        });
    }
    let total: u64 = classes.iter().map(|c| c.sentences).sum();
    for class in &mut classes {
        class.prior = class.sentences as f64 / total as f64;
    }
    let vocab = classes
        .iter()
        .flat_map(|c| c.word_counts.keys().cloned())
        .collect();

    Ok(NbModel {
        lemma: lemma.to_owned(),
        classes,
        vocab,
    })
}

pub fn train(ts: &TrainingSet) -> Result<NbModel> {
    train_from_documents(
        &ts.lemma,
        &ts.class_ids(),
        ts.examples
            .iter()
            .map(|e| (e.class_id.as_str(), e.tokens.as_slice())),
    )
}

impl NbModel {
    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn class_ids(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(|c| c.class_id.as_str())
    }

    pub fn vocab_size(&self) -> u64 {
        self.vocab.len() as u64
    }

    pub fn in_vocab(&self, word: &str) -> bool {
        self.vocab.contains(word)
    }

    pub fn vocab(&self) -> impl Iterator<Item = &str> {
        self.vocab.iter().map(String::as_str)
    }

    fn stats(&self, class_id: &str) -> Result<&ClassStats> {
        self.classes
            .iter()
            .find(|c| c.class_id == class_id)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class `{class_id}`")))
    }

    pub fn prior(&self, class_id: &str) -> Result<f64> {
        Ok(self.stats(class_id)?.prior)
    }

    pub fn prior_ratio(&self, class_id: &str) -> Result<Ratio<u64>> {
        let total = self.classes.iter().map(|c| c.sentences).sum();
        Ok(Ratio::new(self.stats(class_id)?.sentences, total))
    }

    pub fn sentence_count(&self, class_id: &str) -> Result<u64> {
        Ok(self.stats(class_id)?.sentences)
    }

    /// `n_c`: total token occurrences in the class.
    pub fn class_token_total(&self, class_id: &str) -> Result<u64> {
        Ok(self.stats(class_id)?.token_total)
    }

    pub fn word_count(&self, word: &str, class_id: &str) -> Result<u64> {
        Ok(self
            .stats(class_id)?
            .word_counts
            .get(word)
            .copied()
            .unwrap_or(0))
    }

    /// `P(w | c)` as an exact fraction. Words absent from the class, in or out
    /// of the vocabulary, count as zero.
    pub fn conditional_ratio(&self, word: &str, class_id: &str) -> Result<Ratio<u64>> {
        let stats = self.stats(class_id)?;
        let count = stats.word_counts.get(word).copied().unwrap_or(0);
        Ok(Ratio::new(count + 1, stats.token_total + self.vocab_size()))
    }

    pub fn conditional_prob(&self, word: &str, class_id: &str) -> Result<f64> {
        let stats = self.stats(class_id)?;
        Ok(Self::smoothed(stats, word, self.vocab_size()))
    }

    fn smoothed(stats: &ClassStats, word: &str, vocab_size: u64) -> f64 {
        let count = stats.word_counts.get(word).copied().unwrap_or(0);
        (count + 1) as f64 / (stats.token_total + vocab_size) as f64
    }

    /// `sum over w in V of P(w | c)`; 1 up to rounding for a valid model.
    pub fn normalization_sum(&self, class_id: &str) -> Result<f64> {
        let stats = self.stats(class_id)?;
        Ok(self
            .vocab
            .iter()
            .map(|w| Self::smoothed(stats, w, self.vocab_size()))
            .sum())
    }

    pub fn classify(&self, tokens: &[Token]) -> ClassificationResult {
        let mut bag: BTreeMap<&str, u64> = BTreeMap::new();
        let mut used_tokens = Vec::new();
        let mut skipped_oov = Vec::new();
        for token in tokens {
            if self.in_vocab(token.surface()) {
                *bag.entry(token.surface()).or_default() += 1;
                used_tokens.push(token.clone());
            } else {
                skipped_oov.push(token.clone());
            }
        }

        let vocab_size = self.vocab_size();
        let log_scores: Vec<(String, f64)> = self
            .classes
            .iter()
            .map(|class| {
                let evidence: f64 = bag
                    .iter()
                    .map(|(word, &k)| k as f64 * Self::smoothed(class, word, vocab_size).ln())
                    .sum();
                (class.class_id.clone(), class.prior.ln() + evidence)
            })
            .collect();

        let best = log_scores
            .iter()
            .map(|(_, s)| *s)
            .fold(f64::NEG_INFINITY, f64::max);
        let margin = NEAR_TIE * (1.0 + best.abs());
        let contenders: Vec<usize> = (0..log_scores.len())
            .filter(|&i| log_scores[i].1 >= best - margin)
            .collect();

        let (winner, tie) = if contenders.len() == 1 {
            (contenders[0], false)
        } else {
            self.resolve_exactly(&contenders, &bag)
        };

        ClassificationResult {
            predicted_class: self.classes[winner].class_id.clone(),
            log_scores,
            low_evidence: used_tokens.is_empty(),
            used_tokens,
            skipped_oov,
            tie,
        }
    }

    /// Picks the largest exact posterior among `contenders`, earliest class
    /// first on equality. Returns whether several classes share the maximum.
    fn resolve_exactly(&self, contenders: &[usize], bag: &BTreeMap<&str, u64>) -> (usize, bool) {
        let vocab_size = self.vocab_size();
        let exact: Vec<BigRational> = contenders
            .iter()
            .map(|&i| {
                let class = &self.classes[i];
                let denom = BigInt::from(class.token_total + vocab_size);
                let mut value = BigRational::from_integer(BigInt::from(class.sentences));
                for (word, &k) in bag {
                    let numer =
                        BigInt::from(class.word_counts.get(*word).copied().unwrap_or(0) + 1);
                    let factor = BigRational::new(numer, denom.clone());
                    value *= num_traits::pow(factor, k as usize);
                }
                value
            })
            .collect();
        let max = exact.iter().max().expect("at least two contenders");
        let first = exact.iter().position(|v| v == max).expect("max is present");
        let ties = exact.iter().filter(|v| *v == max).count();
        (contenders[first], ties > 1)
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            lemma: self.lemma.clone(),
            classes: self.classes.iter().map(|c| c.class_id.clone()).collect(),
            priors: self
                .classes
                .iter()
                .map(|c| (c.class_id.clone(), c.prior))
                .collect(),
            class_sentence_counts: self
                .classes
                .iter()
                .map(|c| (c.class_id.clone(), c.sentences))
                .collect(),
            class_token_totals: self
                .classes
                .iter()
                .map(|c| (c.class_id.clone(), c.token_total))
                .collect(),
            vocab_size: self.vocab_size(),
            word_counts: self
                .classes
                .iter()
                .map(|c| (c.class_id.clone(), c.word_counts.clone()))
                .collect(),
            smoothing: SMOOTHING.to_owned(),
        };
        let mut json = serde_json::to_string_pretty(&file).expect("model serializes");
        json.push('\n');
        json
    }

    pub fn from_json(text: &str, path: Option<&Path>) -> Result<Self> {
        let text = text.strip_prefix('\u{FEFF}').unwrap_or(text);
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| Error::format(path, e.line(), e.to_string()))?;
        file.into_model()
            .map_err(|message| Error::format(path, 0, message))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, self.to_json().as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read_utf8(path)?, Some(path))
    }
}

/// On-disk model. Maps are keyed by class id; `classes` carries the
/// declaration order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    lemma: String,
    classes: Vec<String>,
    priors: BTreeMap<String, f64>,
    class_sentence_counts: BTreeMap<String, u64>,
    class_token_totals: BTreeMap<String, u64>,
    vocab_size: u64,
    word_counts: BTreeMap<String, BTreeMap<String, u64>>,
    smoothing: String,
}

impl ModelFile {
    fn into_model(mut self) -> std::result::Result<NbModel, String> {
        if self.smoothing != SMOOTHING {
            return Err(format!("unsupported smoothing `{}`", self.smoothing));
        }
        if self.classes.is_empty() {
            return Err("no classes".into());
        }
        let declared: BTreeSet<&String> = self.classes.iter().collect();
        if declared.len() != self.classes.len() {
            return Err("duplicate class ids".into());
        }
        for (name, keys) in [
            ("priors", self.priors.keys().collect::<BTreeSet<_>>()),
            (
                "class_sentence_counts",
                self.class_sentence_counts.keys().collect(),
            ),
            (
                "class_token_totals",
                self.class_token_totals.keys().collect(),
            ),
            ("word_counts", self.word_counts.keys().collect()),
        ] {
            if keys != declared {
                return Err(format!("`{name}` is not keyed by the declared classes"));
            }
        }

        let total: u64 = self.class_sentence_counts.values().sum();
        let mut classes = Vec::with_capacity(self.classes.len());
        for id in &self.classes {
            let sentences = self.class_sentence_counts[id];
            let prior = self.priors[id];
            if sentences == 0 {
                return Err(format!("class `{id}` has no sentences"));
            }
            if (prior - sentences as f64 / total as f64).abs() > 1e-12 {
                return Err(format!("prior of `{id}` disagrees with its sentence count"));
            }
            let word_counts = self.word_counts.remove(id).unwrap_or_default();
            if word_counts.values().any(|&n| n == 0) {
                return Err(format!("zero word count stored for class `{id}`"));
            }
            let token_total = self.class_token_totals[id];
            if word_counts.values().sum::<u64>() != token_total {
                return Err(format!(
                    "token total of `{id}` does not match its word counts"
                ));
            }
            classes.push(ClassStats {
                class_id: id.clone(),
                sentences,
                prior,
                token_total,
                word_counts,
            });
        }

        if (classes.iter().map(|c| c.prior).sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err("priors do not sum to 1".into());
        }
        let vocab: BTreeSet<String> = classes
            .iter()
            .flat_map(|c| c.word_counts.keys().cloned())
            .collect();
        if vocab.len() as u64 != self.vocab_size {
            return Err(format!(
                "vocab_size {} but {} distinct words",
                self.vocab_size,
                vocab.len()
            ));
        }

        Ok(NbModel {
            lemma: self.lemma,
            classes,
            vocab,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(text: &str) -> Vec<Token> {
        text.split_whitespace()
            .map(|w| Token::new(w).unwrap())
            .collect()
    }

    fn model(docs: &[(&str, &str)], classes: &[&str]) -> NbModel {
        let classes: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
        let bags: Vec<(&str, Vec<Token>)> = docs.iter().map(|(c, t)| (*c, toks(t))).collect();
        train_from_documents("x", &classes, bags.iter().map(|(c, t)| (*c, t.as_slice()))).unwrap()
    }

    /// A = {"x x y"}, B = {"z z"}.
    fn hand_worked() -> NbModel {
        model(&[("A", "x x y"), ("B", "z z")], &["A", "B"])
    }

    #[test]
    fn hand_worked_parameters() {
        let m = hand_worked();
        assert_eq!(m.vocab_size(), 3);
        assert_eq!(m.prior_ratio("A").unwrap(), Ratio::new(1, 2));
        assert_eq!(m.prior("B").unwrap(), 0.5);
        assert_eq!(m.class_token_total("A").unwrap(), 3);
        assert_eq!(m.class_token_total("B").unwrap(), 2);
        assert_eq!(m.conditional_ratio("x", "A").unwrap(), Ratio::new(1, 2));
        assert_eq!(m.conditional_ratio("z", "A").unwrap(), Ratio::new(1, 6));
        assert_eq!(m.conditional_ratio("z", "B").unwrap(), Ratio::new(3, 5));
    }

    #[test]
    fn equal_class_sizes_give_uniform_priors() {
        let docs: Vec<(&str, &str)> = ["a", "b", "c"]
            .iter()
            .flat_map(|c| std::iter::repeat_n((*c, "w v"), 55))
            .collect();
        let m = model(&docs, &["a", "b", "c"]);
        for c in ["a", "b", "c"] {
            assert_eq!(m.prior_ratio(c).unwrap(), Ratio::new(1, 3));
        }
    }

    #[test]
    fn single_class_single_sentence() {
        let m = model(&[("only", "x")], &["only"]);
        assert_eq!(m.prior("only").unwrap(), 1.0);
        assert_eq!(m.vocab_size(), 1);
        assert_eq!(m.class_token_total("only").unwrap(), 1);
    }

    #[test]
    fn absent_word_gets_one_over_denominator() {
        // n_A = 10, |V| = 5, r never occurs in A
        let m = model(&[("A", "p p p p p q q q q q"), ("B", "r s t")], &["A", "B"]);
        assert_eq!(m.class_token_total("A").unwrap(), 10);
        assert_eq!(m.vocab_size(), 5);
        assert_eq!(m.conditional_ratio("r", "A").unwrap(), Ratio::new(1, 15));
        assert_eq!(
            m.conditional_ratio("never-seen", "A").unwrap(),
            Ratio::new(1, 15)
        );
    }

    #[test]
    fn unknown_class_is_rejected() {
        let m = hand_worked();
        assert!(matches!(
            m.conditional_prob("x", "Q"),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn empty_class_is_insufficient_data() {
        let classes = vec!["A".to_string(), "B".to_string()];
        let a = toks("x");
        let err = train_from_documents("x", &classes, [("A", a.as_slice())]).unwrap_err();
        assert!(matches!(err, Error::InsufficientData { ref class_id } if class_id == "B"));
    }

    #[test]
    fn hand_worked_classification() {
        let m = hand_worked();
        // P(A)·P(x|A)·P(z|A) = 1/2·1/2·1/6 = 1/24; P(B)·P(x|B)·P(z|B) = 1/2·1/5·3/5 = 3/50
        let r = m.classify(&toks("x z"));
        assert_eq!(r.predicted_class, "B");
        assert!((r.score("A").unwrap().exp() - 1.0 / 24.0).abs() < 1e-15);
        assert!((r.score("B").unwrap().exp() - 0.06).abs() < 1e-15);
        assert!(!r.tie && !r.low_evidence);

        // 1/2·1/2·1/6·... for [x, y]: A = 1/2·1/2·1/3 = 1/12, B = 1/2·1/5·1/5 = 1/50
        let r = m.classify(&toks("x y"));
        assert_eq!(r.predicted_class, "A");
        assert!((r.score("A").unwrap().exp() - 1.0 / 12.0).abs() < 1e-15);
        assert!((r.score("B").unwrap().exp() - 0.02).abs() < 1e-15);
    }

    #[test]
    fn symmetric_model_ties_to_first_class() {
        let m = model(&[("A", "x"), ("B", "y")], &["A", "B"]);
        let r = m.classify(&toks("x y"));
        assert!((r.score("A").unwrap().exp() - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(r.predicted_class, "A");
        assert!(r.tie);

        let r = model(&[("B", "x"), ("A", "y")], &["B", "A"]).classify(&toks("y x"));
        assert_eq!(r.predicted_class, "B");
        assert!(r.tie);
    }

    #[test]
    fn oov_tokens_are_skipped_and_reported() {
        let m = hand_worked();
        let r = m.classify(&toks("q x q"));
        assert_eq!(r.skipped_oov, toks("q q"));
        assert_eq!(r.used_tokens, toks("x"));
        assert_eq!(r.predicted_class, "A");

        let r = m.classify(&toks("q"));
        assert!(r.low_evidence);
        assert!(r.tie);
        assert_eq!(r.predicted_class, "A");
        assert!(m.classify(&[]).low_evidence);
    }

    #[test]
    fn priors_decide_without_evidence() {
        let m = model(&[("A", "x"), ("B", "y"), ("B", "y")], &["A", "B"]);
        let r = m.classify(&toks("nothing"));
        assert_eq!(r.predicted_class, "B");
        assert!(r.low_evidence && !r.tie);
    }

    #[test]
    fn duplicates_count_per_occurrence() {
        let m = hand_worked();
        let once = m.classify(&toks("x"));
        let twice = m.classify(&toks("x x"));
        let px = m.conditional_prob("x", "A").unwrap().ln();
        assert!((twice.score("A").unwrap() - once.score("A").unwrap() - px).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let m = model(
            &[("a", "কপাল ঘাম"), ("b", "চুল চুল"), ("c", "নৌকা")],
            &["c", "a", "b"],
        );
        let json = m.to_json();
        let back = NbModel::from_json(&json, None).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), json);
        assert_eq!(back.class_ids().collect::<Vec<_>>(), ["c", "a", "b"]);
        let doc = toks("চুল নৌকা অজানা");
        assert_eq!(back.classify(&doc), m.classify(&doc));
    }

    #[test]
    fn corrupt_models_are_rejected() {
        let json = hand_worked().to_json();
        for (from, to) in [
            ("\"vocab_size\": 3", "\"vocab_size\": 4"),
            ("\"laplace-add-1\"", "\"lidstone\""),
            ("\"A\": 3", "\"A\": 9"),
            ("\"A\": 0.5", "\"A\": 0.25"),
        ] {
            assert!(json.contains(from), "{from}");
            let bad = json.replacen(from, to, 1);
            assert!(
                matches!(NbModel::from_json(&bad, None), Err(Error::Format { .. })),
                "{from}"
            );
        }
        assert!(NbModel::from_json("{}", None).is_err());
    }

    fn small_model() -> impl Strategy<Value = (NbModel, Vec<Token>)> {
        let words = ["u", "v", "w", "x", "y", "z"];
        let doc = prop::collection::vec(prop::sample::select(words.to_vec()), 1..6);
        (
            prop::collection::vec((0usize..3, doc.clone()), 3..12),
            prop::collection::vec(
                prop::sample::select(["u", "v", "w", "x", "y", "z", "oov"].to_vec()),
                0..10,
            ),
        )
            .prop_filter_map("every class needs a sentence", |(docs, test)| {
                let classes: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
                let bags: Vec<(&str, Vec<Token>)> = docs
                    .iter()
                    .map(|(c, d)| (classes[*c].as_str(), toks(&d.join(" "))))
                    .collect();
                let m = train_from_documents(
                    "x",
                    &classes,
                    bags.iter().map(|(c, t)| (*c, t.as_slice())),
                )
                .ok()?;
                Some((m, toks(&test.join(" "))))
            })
    }

    proptest! {
        #[test]
        fn model_invariants((m, _) in small_model()) {
            let prior_sum: f64 = m.class_ids().map(|c| m.prior(c).unwrap()).sum();
            prop_assert!((prior_sum - 1.0).abs() <= 1e-12);
            for c in m.class_ids() {
                let n: u64 = m.vocab().map(|w| m.word_count(w, c).unwrap()).sum();
                prop_assert_eq!(n, m.class_token_total(c).unwrap());
                let exact: Ratio<u64> = m.vocab().map(|w| m.conditional_ratio(w, c).unwrap()).sum();
                prop_assert_eq!(exact, Ratio::from_integer(1));
                prop_assert!((m.normalization_sum(c).unwrap() - 1.0).abs() <= 1e-9);
                for w in m.vocab() {
                    let p = m.conditional_prob(w, c).unwrap();
                    prop_assert!(p > 0.0 && p < 1.0);
                }
            }
        }

        #[test]
        fn scores_ignore_token_order((m, doc) in small_model(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut shuffled = doc.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let a = m.classify(&doc);
            let b = m.classify(&shuffled);
            prop_assert_eq!(&a.log_scores, &b.log_scores);
            prop_assert_eq!(a.predicted_class, b.predicted_class);
        }

        #[test]
        fn prediction_attains_the_maximum((m, doc) in small_model()) {
            let r = m.classify(&doc);
            let best = r.log_scores.iter().map(|(_, s)| *s).fold(f64::NEG_INFINITY, f64::max);
            let predicted = r.score(&r.predicted_class).unwrap();
            prop_assert!(best - predicted <= 1e-9 * (1.0 + best.abs()));
            prop_assert_eq!(r.used_tokens.len() + r.skipped_oov.len(), doc.len());
        }
    }
}
