mod support;

use std::collections::BTreeMap;

use support::*;
use unicode_normalization::UnicodeNormalization;
use wsd_kit::corpus::{extract_target_sentences, read_corpus};
use wsd_kit::stopwords::{frequency_profile, StopwordLexicon};
use wsd_kit::Error;

#[test]
fn twelve_planted_targets_in_three_categories() {
    let sentences = extract_target_sentences(&fixture_corpus(), "মাথা").unwrap();
    assert_eq!(sentences.len(), 12);

    let mut per_category: BTreeMap<&str, usize> = BTreeMap::new();
    for s in &sentences {
        *per_category.entry(s.category.as_str()).or_default() += 1;
    }
    let expected: BTreeMap<&str, usize> = [("Agriculture", 4), ("Novel", 6), ("Zoology", 2)].into();
    assert_eq!(per_category, expected);

    let ids: Vec<String> = sentences.iter().map(|s| s.id()).collect();
    assert!(ids.contains(&"Agriculture/a1.txt#4".to_string()));
    assert!(sentences
        .iter()
        .any(|s| s.text.contains("মাথাব্যথা") && !s.text.contains("মাথা ")));
    assert!(sentences.iter().any(|s| s.text.contains("মাথাপিছু")));
    assert!(sentences.iter().all(|s| !s.text.contains("মাতা")));
}

#[test]
fn extracted_text_is_canonical() {
    for s in extract_target_sentences(&fixture_corpus(), "মাথা").unwrap() {
        assert_eq!(s.text.nfc().collect::<String>(), s.text);
        assert!(!s.text.contains('\u{09DF}'));
    }
}

#[test]
fn absent_lemma_yields_nothing() {
    assert!(extract_target_sentences(&fixture_corpus(), "কলম")
        .unwrap()
        .is_empty());
}

#[test]
fn corpus_without_categories_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(
        extract_target_sentences(dir.path(), "মাথা"),
        Err(Error::EmptyCorpus(_))
    ));
}

#[test]
fn documents_are_read_in_sorted_order() {
    let docs = read_corpus(&fixture_corpus()).unwrap();
    let names: Vec<String> = docs
        .iter()
        .map(|d| format!("{}/{}", d.category, d.name))
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 5);
}

#[test]
fn frequency_profile_counts_by_hand() {
    let profile = frequency_profile(&fixture_corpus()).unwrap();
    assert_eq!(profile[0], ("নদী".to_string(), 7));
    assert!(profile.contains(&("আচ্ছা".to_string(), 2)));
    assert!(profile.windows(2).all(|w| w[0].1 >= w[1].1));
}

#[test]
fn bundled_lexicon_has_core_function_words() {
    let lex = StopwordLexicon::bundled();
    for w in [
        "দিকে",
        "প্রতি",
        "এবং",
        "কিন্তু",
        "আমি",
        "তুমি",
        "সে",
        "লাল",
        "ভাল",
        "খুব",
        "সত্যি",
        "একটি",
    ] {
        assert!(lex.contains(w), "{w}");
    }
    assert!(!lex.contains("মাথা"));
}
