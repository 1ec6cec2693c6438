//! Text normalization, sentence segmentation, tokenization and target-word
//! extraction over a directory-per-category plain-text corpus.
//!
//! The corpus layout is `<root>/<category>/<file>.txt`. Every file is read as
//! UTF-8 (a leading byte-order mark is ignored), normalized, split into
//! sentences and tagged with its category, which is the directory name
//! verbatim.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Bengali danda.
pub const DANDA: char = '\u{0964}';

/// Sentence-terminal markers.
pub const TERMINALS: [char; 4] = [DANDA, '!', '?', '.'];

pub fn is_terminal(c: char) -> bool {
    TERMINALS.contains(&c)
}

/// Punctuation that is split off the words it is attached to.
///
/// The hyphen is not listed: it is only detached when it is used as a dash
/// (see [`normalize_text`]).
pub fn is_detachable(c: char) -> bool {
    matches!(
        c,
        '\'' | '"'
            | '\u{2018}'
            | '\u{2019}'
            | '\u{201C}'
            | '\u{201D}'
            | '\u{00AB}'
            | '\u{00BB}'
            | '('
            | ')'
            | ','
            | ';'
            | ':'
            | '/'
            | '\u{2013}'
            | '\u{2014}'
    )
}

fn is_angle_bracket(c: char) -> bool {
    matches!(
        c,
        '<' | '>' | '\u{2039}' | '\u{203A}' | '\u{2329}' | '\u{232A}' | '\u{3008}' | '\u{3009}'
    )
}

fn is_word_char(c: char) -> bool {
    !(c.is_whitespace() || c == '-' || is_detachable(c) || is_terminal(c) || is_angle_bracket(c))
}

fn is_edge_punct(c: char) -> bool {
    is_terminal(c)
        || is_detachable(c)
        || is_angle_bracket(c)
        || matches!(
            c,
            '-' | '[' | ']' | '{' | '}' | '`' | '\u{2026}' | '\u{0965}'
        )
}

/// Normalizes raw text:
///
/// * canonical composition (NFC);
/// * detachable punctuation, and hyphens used as dashes, are surrounded by
///   single spaces;
/// * angle brackets and control characters are removed;
/// * whitespace runs, including line breaks, collapse to one space and the
///   result is trimmed.
///
/// Idempotent.
pub fn normalize_text(raw: &str) -> String {
    let composed: Vec<char> = raw
        .chars()
        .filter(|c| !c.is_control() || c.is_whitespace())
        .nfc()
        .collect();
    let mut out = String::with_capacity(raw.len() + 8);

    for (i, &c) in composed.iter().enumerate() {
        if c.is_whitespace() || is_angle_bracket(c) {
            out.push(' ');
        } else if is_detachable(c) {
            out.push(' ');
            out.push(c);
            out.push(' ');
        } else if c == '-' {
            let prev_word = i > 0 && is_word_char(composed[i - 1]);
            let next_word = composed.get(i + 1).is_some_and(|&n| is_word_char(n));
            if prev_word && next_word {
                out.push('-');
            } else {
                out.push_str(" - ");
            }
        } else {
            out.push(c);
        }
    }

    out.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Decodes `bytes` as UTF-8 (skipping a byte-order mark) and normalizes it.
pub fn normalize_bytes(bytes: &[u8], path: Option<&Path>) -> Result<String> {
    Ok(normalize_text(decode_utf8(bytes, path)?))
}

pub(crate) fn decode_utf8<'a>(bytes: &'a [u8], path: Option<&Path>) -> Result<&'a str> {
    let (bytes, bom) = match bytes.strip_prefix(b"\xEF\xBB\xBF") {
        Some(rest) => (rest, 3),
        None => (bytes, 0),
    };
    std::str::from_utf8(bytes).map_err(|e| Error::Encoding {
        path: path.map(Path::to_path_buf),
        offset: bom + e.valid_up_to(),
    })
}

pub(crate) fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_utf8(&bytes, Some(path)).map(str::to_owned)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub category: String,
    /// File name within the category directory.
    pub name: String,
    pub body: String,
}

impl RawDocument {
    pub fn new(
        category: impl Into<String>,
        name: impl Into<String>,
        body: impl Into<String>,
    ) -> Result<Self> {
        let category = category.into();
        if category.is_empty() || category.contains(['/', '\\']) {
            return Err(Error::InvalidArgument(format!(
                "bad category label `{category}`"
            )));
        }
        Ok(RawDocument {
            category,
            name: name.into(),
            body: body.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub category: String,
    pub document: String,
    /// 0-based position within the document.
    pub index: usize,
}

impl Sentence {
    /// Stable identifier: `<category>/<document>#<index>`.
    pub fn id(&self) -> String {
        format!("{}/{}#{}", self.category, self.document, self.index)
    }
}

/// Splits a normalized document after every terminal marker. The marker stays
/// on the sentence it ends; fragments with no content besides the marker are
/// dropped.
pub fn split_sentences(doc: &RawDocument) -> Vec<Sentence> {
    let mut sentences = Vec::new();
    let push = |fragment: &str, sentences: &mut Vec<Sentence>| {
        let text = fragment.split_whitespace().collect::<Vec<_>>().join(" ");
        if text.chars().any(|c| !is_terminal(c)) {
            sentences.push(Sentence {
                text,
                category: doc.category.clone(),
                document: doc.name.clone(),
                index: sentences.len(),
            });
        }
    };

    let mut start = 0;
    for (i, c) in doc.body.char_indices() {
        if is_terminal(c) {
            let end = i + c.len_utf8();
            push(&doc.body[start..end], &mut sentences);
            start = end;
        }
    }
    push(&doc.body[start..], &mut sentences);
    sentences
}

/// A word surface: non-empty, no whitespace, no detachable punctuation at its
/// edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Token(String);

impl Token {
    /// Returns `None` if `surface` is not a valid token.
    pub fn new(surface: impl Into<String>) -> Option<Self> {
        let surface = surface.into();
        let valid = !surface.is_empty()
            && !surface
                .chars()
                .any(|c| c.is_whitespace() || is_detachable(c))
            && !surface.starts_with(is_edge_punct)
            && !surface.ends_with(is_edge_punct);
        valid.then_some(Token(surface))
    }

    pub fn surface(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub fn tokenize(sentence: &Sentence) -> Vec<Token> {
    tokenize_text(&sentence.text)
}

/// Whitespace tokenization of normalized text. Terminal markers and detached
/// punctuation are dropped; duplicates and order are kept.
pub fn tokenize_text(text: &str) -> Vec<Token> {
    text.split(|c: char| c.is_whitespace() || is_detachable(c))
        .filter_map(|piece| Token::new(piece.trim_matches(is_edge_punct)))
        .collect()
}

/// Prefix matcher for inflected and compounded forms of a lemma.
#[derive(Debug, Clone)]
pub struct TargetMatcher {
    lemma: String,
}

impl TargetMatcher {
    pub fn new(lemma: &str) -> Result<Self> {
        let lemma: String = lemma.trim().nfc().collect();
        if lemma.is_empty() {
            return Err(Error::InvalidArgument("lemma must not be empty".into()));
        }
        Ok(TargetMatcher { lemma })
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn matches(&self, surface: &str) -> bool {
        // Tokens produced by `tokenize_text` are already composed.
        if unicode_normalization::is_nfc(surface) {
            surface.starts_with(&self.lemma)
        } else {
            surface.nfc().collect::<String>().starts_with(&self.lemma)
        }
    }

    pub fn matches_sentence(&self, sentence: &Sentence) -> bool {
        tokenize(sentence).iter().any(|t| self.matches(t.surface()))
    }
}

/// True iff `token` begins with `lemma`, comparing code points after
/// canonical composition of both.
pub fn match_target(token: &Token, lemma: &str) -> Result<bool> {
    Ok(TargetMatcher::new(lemma)?.matches(token.surface()))
}

/// All normalized documents under `root`, ordered by category, then file
/// name. A root with no category directories yields an empty list.
pub fn read_corpus(root: &Path) -> Result<Vec<RawDocument>> {
    let mut docs = Vec::new();
    for category_dir in sorted_entries(root)? {
        if !category_dir.is_dir() {
            continue;
        }
        let category = file_name(&category_dir)?;
        for file in sorted_entries(&category_dir)? {
            if !file.is_file() || file.extension().is_none_or(|ext| ext != "txt") {
                continue;
            }
            let bytes = fs::read(&file).map_err(|e| Error::io(&file, e))?;
            let body = normalize_bytes(&bytes, Some(&file))?;
            docs.push(RawDocument::new(category.clone(), file_name(&file)?, body)?);
        }
    }
    Ok(docs)
}

fn category_count(root: &Path) -> Result<usize> {
    Ok(sorted_entries(root)?.iter().filter(|p| p.is_dir()).count())
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| Error::io(dir, e))?;
    entries.sort();
    Ok(entries)
}

fn file_name(path: &Path) -> Result<String> {
    path.file_name()
        .and_then(|n| n.to_str())
        .map(str::to_owned)
        .ok_or_else(|| Error::InvalidArgument(format!("non UTF-8 name: {}", path.display())))
}

/// Every sentence in the corpus containing at least one token that matches
/// `lemma`, ordered by category, file name, then sentence index.
pub fn extract_target_sentences(root: &Path, lemma: &str) -> Result<Vec<Sentence>> {
    let matcher = TargetMatcher::new(lemma)?;
    if category_count(root)? == 0 {
        return Err(Error::EmptyCorpus(root.to_path_buf()));
    }
    Ok(read_corpus(root)?
        .iter()
        .flat_map(split_sentences)
        .filter(|s| matcher.matches_sentence(s))
        .collect())
}
