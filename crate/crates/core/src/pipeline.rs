//! File-to-file steps behind the `wsd-kit` subcommands:
//! extract → train → classify → evaluate, plus frequency profiling and a
//! self-contained demo.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::{self, extract_target_sentences, normalize_text, tokenize_text, Token};
use crate::error::{Error, Result};
use crate::evaluation::{self, EvaluationReport, GoldRecord};
use crate::jsonl;
use crate::nb::{self, NbModel};
use crate::sense::{self, build_training_set, SenseInventory, DEFAULT_CAP};
use crate::stopwords::{self, filter_stopwords, StopwordLexicon};
use crate::synth::{self, SyntheticConfig, SyntheticLayout};

/// One line of the extraction output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractedSentence {
    pub id: String,
    pub text: String,
    pub category: String,
    pub document: String,
    pub index: usize,
    /// Tokens left after stop-word filtering.
    pub tokens: Vec<Token>,
}

/// Input line for classification; anything else on the line is ignored.
#[derive(Debug, Clone, Deserialize)]
pub struct InputSentence {
    #[serde(default)]
    pub id: Option<String>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub id: String,
    pub class_id: String,
    pub log_scores: BTreeMap<String, f64>,
    #[serde(default)]
    pub used_tokens: usize,
    #[serde(default)]
    pub oov_tokens: usize,
    #[serde(default)]
    pub tie: bool,
    #[serde(default)]
    pub low_evidence: bool,
}

fn require_exists(path: &Path) -> Result<()> {
    if path.exists() {
        Ok(())
    } else {
        Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or directory"),
        ))
    }
}

fn content_tokens(text: &str, lex: &StopwordLexicon) -> Vec<Token> {
    filter_stopwords(&tokenize_text(&normalize_text(text)), lex)
}

pub fn extract(
    corpus_root: &Path,
    lemma: &str,
    lex: &StopwordLexicon,
) -> Result<Vec<ExtractedSentence>> {
    Ok(extract_target_sentences(corpus_root, lemma)?
        .into_iter()
        .map(|s| ExtractedSentence {
            id: s.id(),
            tokens: filter_stopwords(&corpus::tokenize(&s), lex),
            text: s.text,
            category: s.category,
            document: s.document,
            index: s.index,
        })
        .collect())
}

pub fn run_extract(
    corpus_root: &Path,
    lemma: &str,
    stopwords_path: &Path,
    out: &Path,
) -> Result<usize> {
    let lex = stopwords::load_stopword_list(stopwords_path)?;
    let sentences = extract(corpus_root, lemma, &lex)?;
    jsonl::write(out, &sentences)?;
    Ok(sentences.len())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassSummary {
    pub class_id: String,
    pub sentences: u64,
    pub tokens: u64,
    pub prior: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainSummary {
    pub vocab_size: u64,
    pub classes: Vec<ClassSummary>,
    pub rejected: usize,
}

impl TrainSummary {
    fn of(model: &NbModel, rejected: usize) -> Self {
        TrainSummary {
            vocab_size: model.vocab_size(),
            classes: model
                .class_ids()
                .map(|c| ClassSummary {
                    class_id: c.to_owned(),
                    sentences: model.sentence_count(c).expect("own class"),
                    tokens: model.class_token_total(c).expect("own class"),
                    prior: model.prior(c).expect("own class"),
                })
                .collect(),
            rejected,
        }
    }
}

impl fmt::Display for TrainSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vocabulary size |V| = {}", self.vocab_size)?;
        for c in &self.classes {
            writeln!(
                f,
                "class {}: {} sentences, {} tokens, prior {:.4}",
                c.class_id, c.sentences, c.tokens, c.prior
            )?;
        }
        write!(
            f,
            "rejected {} sentences with no content words",
            self.rejected
        )
    }
}

pub fn run_train(
    train_path: &Path,
    inventory_path: &Path,
    stopwords_path: &Path,
    cap: usize,
    seed: u64,
    out: &Path,
) -> Result<TrainSummary> {
    let inventory = sense::load_sense_inventory(inventory_path)?;
    let lex = stopwords::load_stopword_list(stopwords_path)?;
    let labeled = sense::load_labeled_sentences(train_path)?;
    let ts = build_training_set(&inventory, &labeled, &lex, cap, seed)?;
    let model = nb::train(&ts)?;
    model.save(out)?;
    Ok(TrainSummary::of(&model, ts.rejected))
}

pub fn classify_sentences(
    model: &NbModel,
    inputs: &[InputSentence],
    lex: &StopwordLexicon,
) -> Vec<PredictionRecord> {
    inputs
        .iter()
        .enumerate()
        .map(|(i, input)| {
            let result = model.classify(&content_tokens(&input.text, lex));
            PredictionRecord {
                id: input.id.clone().unwrap_or_else(|| (i + 1).to_string()),
                class_id: result.predicted_class,
                log_scores: result.log_scores.into_iter().collect(),
                used_tokens: result.used_tokens.len(),
                oov_tokens: result.skipped_oov.len(),
                tie: result.tie,
                low_evidence: result.low_evidence,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifySummary {
    pub sentences: usize,
    pub low_evidence: usize,
    pub ties: usize,
}

pub fn run_classify(
    model_path: &Path,
    input: &Path,
    stopwords_path: &Path,
    out: &Path,
) -> Result<ClassifySummary> {
    let model = NbModel::load(model_path)?;
    let lex = stopwords::load_stopword_list(stopwords_path)?;
    let inputs: Vec<InputSentence> = jsonl::read(input)?;
    let predictions = classify_sentences(&model, &inputs, &lex);
    jsonl::write(out, &predictions)?;
    Ok(ClassifySummary {
        sentences: predictions.len(),
        low_evidence: predictions.iter().filter(|p| p.low_evidence).count(),
        ties: predictions.iter().filter(|p| p.tie).count(),
    })
}

/// Category directory names under a corpus root.
pub fn corpus_categories(root: &Path) -> Result<Vec<String>> {
    let mut categories = Vec::new();
    for entry in std::fs::read_dir(root).map_err(|e| Error::io(root, e))? {
        let path = entry.map_err(|e| Error::io(root, e))?.path();
        if path.is_dir() {
            if let Some(name) = path.file_name().and_then(|n| n.to_str()) {
                categories.push(name.to_owned());
            }
        }
    }
    categories.sort();
    Ok(categories)
}

#[derive(Debug, Clone, Default)]
pub struct EvaluateOptions {
    /// Class order for the report columns; defaults to the sorted union of
    /// gold and predicted classes.
    pub class_ids: Option<Vec<String>>,
    /// Categories to report even when they have no gold sentences.
    pub categories: Vec<String>,
}

pub fn evaluate_records(
    predictions: &[PredictionRecord],
    gold: &[GoldRecord],
    options: &EvaluateOptions,
) -> Result<EvaluationReport> {
    let class_ids = match &options.class_ids {
        Some(ids) => ids.clone(),
        None => gold
            .iter()
            .map(|g| g.class_id.clone())
            .chain(predictions.iter().map(|p| p.class_id.clone()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    let pairs: Vec<(String, String)> = predictions
        .iter()
        .map(|p| (p.id.clone(), p.class_id.clone()))
        .collect();
    let table = evaluation::score(&pairs, gold, &class_ids)?;

    let mut metrics = table
        .categories
        .iter()
        .map(|c| evaluation::compute_metrics(c, c.responded))
        .collect::<Result<Vec<_>>>()?;
    for category in &options.categories {
        if !table.categories.iter().any(|c| &c.category == category) {
            let empty = evaluation::CategoryCounts {
                category: category.clone(),
                total: 0,
                per_class: class_ids
                    .iter()
                    .map(|c| (c.clone(), Default::default()))
                    .collect(),
                responded: 0,
            };
            metrics.push(evaluation::compute_metrics(&empty, 0)?);
        }
    }
    evaluation::build_report(metrics, &class_ids)
}

pub fn run_evaluate(
    pred_path: &Path,
    gold_path: &Path,
    out_csv: &Path,
    out_table: &Path,
    options: &EvaluateOptions,
) -> Result<EvaluationReport> {
    let predictions: Vec<PredictionRecord> = jsonl::read(pred_path)?;
    let gold: Vec<GoldRecord> = jsonl::read(gold_path)?;
    let report = evaluate_records(&predictions, &gold, options)?;
    jsonl::write_file(out_csv, report.to_csv().as_bytes())?;
    jsonl::write_file(out_table, report.to_table().as_bytes())?;
    Ok(report)
}

pub fn run_freq(corpus_root: &Path, top: usize) -> Result<Vec<(String, u64)>> {
    let mut profile = stopwords::frequency_profile(corpus_root)?;
    profile.truncate(top);
    Ok(profile)
}

/// Inputs and outputs of a full extract → train → classify → evaluate run.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub lemma: String,
    pub corpus_root: PathBuf,
    pub stopwords_path: PathBuf,
    pub inventory_path: PathBuf,
    pub train_path: PathBuf,
    pub gold_path: PathBuf,
    pub cap: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl PipelineConfig {
    pub fn extracted_path(&self) -> PathBuf {
        self.out_dir.join("extracted.jsonl")
    }

    pub fn model_path(&self) -> PathBuf {
        self.out_dir.join("model.json")
    }

    pub fn predictions_path(&self) -> PathBuf {
        self.out_dir.join("predictions.jsonl")
    }

    pub fn report_csv_path(&self) -> PathBuf {
        self.out_dir.join("report.csv")
    }

    pub fn report_table_path(&self) -> PathBuf {
        self.out_dir.join("report.txt")
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            return Err(Error::InvalidArgument("cap must be at least 1".into()));
        }
        for path in [
            &self.corpus_root,
            &self.stopwords_path,
            &self.inventory_path,
            &self.train_path,
            &self.gold_path,
        ] {
            require_exists(path)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PipelineSummary {
    pub extracted: usize,
    pub train: TrainSummary,
    pub classify: ClassifySummary,
    pub report: EvaluationReport,
}

pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineSummary> {
    config.validate()?;
    let extracted = run_extract(
        &config.corpus_root,
        &config.lemma,
        &config.stopwords_path,
        &config.extracted_path(),
    )?;
    let train = run_train(
        &config.train_path,
        &config.inventory_path,
        &config.stopwords_path,
        config.cap,
        config.seed,
        &config.model_path(),
    )?;
    let classify = run_classify(
        &config.model_path(),
        &config.extracted_path(),
        &config.stopwords_path,
        &config.predictions_path(),
    )?;
    let inventory = sense::load_sense_inventory(&config.inventory_path)?;
    let options = EvaluateOptions {
        class_ids: Some(inventory.class_ids()),
        categories: corpus_categories(&config.corpus_root)?,
    };
    let report = run_evaluate(
        &config.predictions_path(),
        &config.gold_path,
        &config.report_csv_path(),
        &config.report_table_path(),
        &options,
    )?;
    Ok(PipelineSummary {
        extracted,
        train,
        classify,
        report,
    })
}

/// Writes the bundled stop words, the bundled মাথা inventory and a seeded
/// synthetic corpus under `out_dir`, then runs the whole pipeline on them.
pub fn run_demo(out_dir: &Path, seed: u64) -> Result<PipelineSummary> {
    let corpus = synth::generate(&SyntheticConfig {
        seed,
        ..SyntheticConfig::default()
    })?;
    corpus.write_to(out_dir)?;

    let stopwords_path = out_dir.join("stopwords.txt");
    let inventory_path = out_dir.join("inventory.json");
    jsonl::write_file(&stopwords_path, include_bytes!("../data/stopwords_bn.txt"))?;
    jsonl::write_file(
        &inventory_path,
        include_bytes!("../data/matha_inventory.json"),
    )?;
    debug_assert_eq!(SenseInventory::bundled_matha().lemma, synth::LEMMA);

    run_pipeline(&PipelineConfig {
        lemma: synth::LEMMA.to_string(),
        corpus_root: out_dir.join(SyntheticLayout::CORPUS_DIR),
        stopwords_path,
        inventory_path,
        train_path: out_dir.join(SyntheticLayout::TRAIN),
        gold_path: out_dir.join(SyntheticLayout::GOLD),
        cap: DEFAULT_CAP,
        seed,
        out_dir: out_dir.join("out"),
    })
}
