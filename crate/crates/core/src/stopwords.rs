//! Curated stop-word lexicon and corpus frequency profiling.
//!
//! Stop words are listed by hand, never derived from a frequency cut-off:
//! function words turn up at both ends of the frequency range, so no single
//! threshold separates them. [`frequency_profile`] is there to inspect that
//! distribution, not to build the list.

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use crate::corpus::{self, normalize_text, Token};
use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../data/stopwords_bn.txt");

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordLexicon {
    entries: BTreeSet<String>,
    source: Option<PathBuf>,
}

impl StopwordLexicon {
    /// Parses the one-token-per-line format. Blank lines and lines starting
    /// with `#` are skipped.
    pub fn parse(text: &str, source: Option<&Path>) -> Result<Self> {
        let text = text.strip_prefix('\u{FEFF}').unwrap_or(text);
        let mut entries = BTreeSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.contains(char::is_whitespace) {
                return Err(Error::format(
                    source,
                    lineno + 1,
                    format!("whitespace inside stop word `{line}`"),
                ));
            }
            let entry = normalize_text(line);
            if entry.contains(' ') {
                return Err(Error::format(
                    source,
                    lineno + 1,
                    format!("`{line}` is not a single token"),
                ));
            }
            entries.insert(entry);
        }
        Ok(StopwordLexicon {
            entries,
            source: source.map(Path::to_path_buf),
        })
    }

    /// The Bengali list shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED, None).expect("bundled stop-word list is well formed")
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.entries.contains(surface)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }

    pub fn source(&self) -> Option<&Path> {
        self.source.as_deref()
    }
}

pub fn load_stopword_list(path: &Path) -> Result<StopwordLexicon> {
    let text = corpus::read_utf8(path)?;
    StopwordLexicon::parse(&text, Some(path))
}

/// Drops every token that is in `lex`, keeping the order of the rest.
pub fn filter_stopwords(tokens: &[Token], lex: &StopwordLexicon) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| !lex.contains(t.surface()))
        .cloned()
        .collect()
}

/// Token frequencies over the whole corpus, most frequent first; ties are
/// ordered by code point.
pub fn frequency_profile(root: &Path) -> Result<Vec<(String, u64)>> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for doc in corpus::read_corpus(root)? {
        for sentence in corpus::split_sentences(&doc) {
            for token in corpus::tokenize(&sentence) {
                *counts.entry(token.into_string()).or_default() += 1;
            }
        }
    }
    let mut profile: Vec<_> = counts.into_iter().collect();
    profile.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(profile)
}

/// One `token → count` line per entry.
pub fn render_profile(profile: &[(String, u64)]) -> String {
    profile
        .iter()
        .map(|(token, count)| format!("{token} \u{2192} {count}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tokens(words: &[&str]) -> Vec<Token> {
        words.iter().map(|w| Token::new(*w).unwrap()).collect()
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let lex = StopwordLexicon::parse("এবং\nকিন্তু\n# comment\n\nআমি\n", None).unwrap();
        assert_eq!(lex.len(), 3);
        assert!(lex.contains("এবং") && lex.contains("কিন্তু") && lex.contains("আমি"));
    }

    #[test]
    fn parse_empty_and_duplicates() {
        assert!(StopwordLexicon::parse("", None).unwrap().is_empty());
        assert_eq!(StopwordLexicon::parse("সে\nসে\n", None).unwrap().len(), 1);
    }

    #[test]
    fn parse_rejects_inner_whitespace_with_line_number() {
        let err = StopwordLexicon::parse("এবং\n# x\nদুই শব্দ\n", None).unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err}");
    }

    #[test]
    fn parse_normalizes_entries() {
        // কো written with a decomposed vowel sign
        let lex = StopwordLexicon::parse("\u{0995}\u{09C7}\u{09BE}\n", None).unwrap();
        assert!(lex.contains("\u{0995}\u{09CB}"));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_stopword_list(Path::new("/nonexistent/stop.txt")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn bundled_list_contains_the_function_word_examples() {
        let lex = StopwordLexicon::bundled();
        for w in [
            "দিকে",
            "প্রতি",
            "এবং",
            "কিন্তু",
            "আহা",
            "আমি",
            "তুমি",
            "সে",
            "লাল",
            "ভাল",
            "খুব",
            "সত্যি",
            "একটি",
            "রাম",
            "কলকাতা",
        ] {
            assert!(lex.contains(w), "{w} missing");
        }
        assert!(!lex.contains("মাথা"));
    }

    #[test]
    fn filter_keeps_content_words_in_order() {
        let lex = StopwordLexicon::bundled();
        let out = filter_stopwords(&tokens(&["আমি", "মাথা", "এবং", "ঘর"]), &lex);
        assert_eq!(out, tokens(&["মাথা", "ঘর"]));
        assert!(filter_stopwords(&[], &lex).is_empty());
    }

    #[test]
    fn profile_rendering() {
        let rows = vec![
            ("মাথা".to_string(), 968),
            ("মাথায়".to_string(), 729),
            ("মাথার".to_string(), 398),
        ];
        assert_eq!(render_profile(&rows), "মাথা → 968\nমাথায় → 729\nমাথার → 398\n");
    }

    proptest! {
        #[test]
        fn filter_removes_exactly_the_lexicon_members(
            picks in prop::collection::vec(0usize..8, 0..30)
        ) {
            let vocab = ["আমি", "মাথা", "এবং", "ঘর", "সে", "নৌকা", "খুব", "চুল"];
            let lex = StopwordLexicon::bundled();
            let input = tokens(&picks.iter().map(|&i| vocab[i]).collect::<Vec<_>>());
            let out = filter_stopwords(&input, &lex);
            let removed = input.iter().filter(|t| lex.contains(t.surface())).count();
            prop_assert!(out.iter().all(|t| !lex.contains(t.surface())));
            prop_assert_eq!(out.len() + removed, input.len());
            prop_assert_eq!(filter_stopwords(&out, &lex), out.clone());
            let kept: Vec<_> = input.iter().filter(|t| !lex.contains(t.surface())).cloned().collect();
            prop_assert_eq!(out, kept);
        }
    }
}
