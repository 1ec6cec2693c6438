use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wsd_kit::pipeline::{self, EvaluateOptions};
use wsd_kit::sense::DEFAULT_CAP;
use wsd_kit::stopwords::render_profile;
use wsd_kit::Result;

#[derive(Parser)]
#[command(
    name = "wsd-kit",
    version,
    about = "Naive Bayes word-sense classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract every sentence containing a form of the lemma.
    Extract {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        stopwords: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a class-capped training set and train the model.
    Train {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        inventory: PathBuf,
        #[arg(long)]
        stopwords: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Predict a sense class for every input sentence.
    Classify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        stopwords: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score predictions against gold labels and write the report.
    Evaluate {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        out_csv: PathBuf,
        #[arg(long)]
        out_table: PathBuf,
        /// Take the class column order from this model.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Report every category directory of this corpus, even empty ones.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Print the most frequent tokens of a corpus.
    Freq {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 50)]
        top: usize,
    },
    /// Run the bundled synthetic pipeline end to end.
    Demo {
        #[arg(long, default_value = "wsd-kit-demo")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Extract {
            corpus,
            lemma,
            stopwords,
            out,
        } => {
            let n = pipeline::run_extract(&corpus, &lemma, &stopwords, &out)?;
            if n == 0 {
                eprintln!("warning: no sentence contains a form of `{lemma}`");
            }
            println!("extracted {n} sentences");
        }
        Command::Train {
            train,
            inventory,
            stopwords,
            cap,
            seed,
            out,
        } => {
            let summary = pipeline::run_train(&train, &inventory, &stopwords, cap, seed, &out)?;
            println!("{summary}");
        }
        Command::Classify {
            model,
            input,
            stopwords,
            out,
        } => {
            let s = pipeline::run_classify(&model, &input, &stopwords, &out)?;
            println!(
                "classified {} sentences ({} low-evidence, {} ties)",
                s.sentences, s.low_evidence, s.ties
            );
        }
        Command::Evaluate {
            pred,
            gold,
            out_csv,
            out_table,
            model,
            corpus,
        } => {
            let options = EvaluateOptions {
                class_ids: model
                    .map(|m| {
                        wsd_kit::nb::NbModel::load(&m)
                            .map(|m| m.class_ids().map(String::from).collect())
                    })
                    .transpose()?,
                categories: corpus
                    .map(|c| pipeline::corpus_categories(&c))
                    .transpose()?
                    .unwrap_or_default(),
            };
            let report = pipeline::run_evaluate(&pred, &gold, &out_csv, &out_table, &options)?;
            println!("{}", report.summary_line());
        }
        Command::Freq { corpus, top } => {
            print!("{}", render_profile(&pipeline::run_freq(&corpus, top)?));
        }
        Command::Demo { out_dir, seed } => {
            let s = pipeline::run_demo(&out_dir, seed)?;
            println!("extracted {} sentences", s.extracted);
            println!("{}", s.train);
            println!("classified {} sentences", s.classify.sentences);
            print!("{}", s.report.to_table());
            println!("{}", s.report.summary_line());
            println!("outputs written to {}", out_dir.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
