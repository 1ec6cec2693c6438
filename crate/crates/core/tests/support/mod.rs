//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn fixture_corpus() -> PathBuf {
    data_dir().join("corpus")
}

pub fn bundled_stopwords() -> PathBuf {
    data_dir().join("stopwords_bn.txt")
}

pub fn bundled_inventory() -> PathBuf {
    data_dir().join("matha_inventory.json")
}

pub fn count_table_csv() -> String {
    std::fs::read_to_string(data_dir().join("matha_category_counts.csv")).unwrap()
}

pub fn cli<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_wsd-kit"))
        .args(args)
        .output()
        .expect("run wsd-kit")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Exact posterior argmax by direct enumeration, without logs or shortcuts.
///
/// `docs` holds (class index, tokens) pairs. Returns the winning class index
/// (earliest on ties), whether the top two were exactly equal, and the exact
/// unnormalized posterior of every class.
pub fn brute_force(
    n_classes: usize,
    docs: &[(usize, Vec<String>)],
    test: &[String],
) -> (usize, bool, Vec<BigRational>) {
    let mut vocab: Vec<&String> = docs.iter().flat_map(|(_, t)| t.iter()).collect();
    vocab.sort();
    vocab.dedup();
    let v = vocab.len() as i64;
    let n = docs.len() as i64;

    let mut posts = Vec::new();
    for c in 0..n_classes {
        let class_docs: Vec<&Vec<String>> = docs
            .iter()
            .filter(|(k, _)| *k == c)
            .map(|(_, t)| t)
            .collect();
        let n_c: i64 = class_docs.iter().map(|t| t.len() as i64).sum();
        let mut p = BigRational::new(BigInt::from(class_docs.len() as i64), BigInt::from(n));
        for w in test {
            if !vocab.contains(&w) {
                continue;
            }
            let count = class_docs
                .iter()
                .flat_map(|t| t.iter())
                .filter(|x| *x == w)
                .count() as i64;
            p *= BigRational::new(BigInt::from(count + 1), BigInt::from(n_c + v));
        }
        posts.push(p);
    }

    let mut best = 0;
    for c in 1..n_classes {
        if posts[c] > posts[best] {
            best = c;
        }
    }
    let ties = posts.iter().filter(|p| **p == posts[best]).count();
    (best, ties > 1, posts)
}

pub fn rational_sum(values: &[BigRational]) -> BigRational {
    values.iter().fold(BigRational::zero(), |acc, v| acc + v)
}

pub fn rational_one() -> BigRational {
    BigRational::one()
}

/// One row of the transcribed per-category count table.
pub struct CountRow {
    pub category: String,
    pub total: u64,
    /// (class, right, wrong)
    pub counts: Vec<(String, u64, u64)>,
    pub expected_r: String,
    pub expected_fm: String,
}

pub fn count_table_rows() -> Vec<CountRow> {
    let text = count_table_csv();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            let n = |name: &str| r[col(name)].parse::<u64>().unwrap();
            CountRow {
                category: r[col("category")].to_string(),
                total: n("total"),
                counts: ["a", "b", "c"]
                    .iter()
                    .map(|c| {
                        (
                            c.to_string(),
                            n(&format!("right_{c}")),
                            n(&format!("wrong_{c}")),
                        )
                    })
                    .collect(),
                expected_r: r[col("expected_R")].to_string(),
                expected_fm: r[col("expected_FM")].to_string(),
            }
        })
        .collect()
}

/// Expands the count table into prediction and gold JSON Lines. A wrong
/// prediction for class k is labeled with the next class.
pub fn count_table_as_jsonl() -> (String, String) {
    let classes = ["a", "b", "c"];
    let mut pred = String::new();
    let mut gold = String::new();
    for row in count_table_rows() {
        let mut i = 0;
        for (k, (class, right, wrong)) in row.counts.iter().enumerate() {
            for j in 0..right + wrong {
                let id = format!("{}#{i}", row.category);
                i += 1;
                let predicted = if j < *right {
                    class.as_str()
                } else {
                    classes[(k + 1) % 3]
                };
                gold.push_str(&format!(
                    "{{\"id\":\"{id}\",\"class_id\":\"{class}\",\"category\":\"{}\"}}\n",
                    row.category
                ));
                pred.push_str(&format!(
                    "{{\"id\":\"{id}\",\"class_id\":\"{predicted}\",\"log_scores\":{{}}}}\n"
                ));
            }
        }
    }
    (pred, gold)
}
