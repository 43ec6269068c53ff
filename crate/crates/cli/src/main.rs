//! Command-line front end: one subcommand per analysis, each writing
//! deterministic CSV/JSON/SVG artifacts derived only from its inputs and
//! the seed.

mod commands;
mod config;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use poetics_core::{Error, Result};

use config::FileConfig;

#[derive(Parser)]
#[command(
    name = "poetics",
    version,
    about = "Corpus analysis for poetry collections: cleaning, similarity \
             maps, topics, distinctive words, and per-text profiles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Corpus directory containing manifest.csv (columns
    /// id,author,title,year,path)
    #[arg(long, global = true, value_name = "DIR")]
    corpus: Option<PathBuf>,

    /// WordNet 3.0 dictionary directory [default: $WORDNET_DIR, then
    /// ./wordnet/dict when present]
    #[arg(long, global = true, value_name = "DIR")]
    wordnet: Option<PathBuf>,

    /// Output directory [default: out]
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Random seed for every stochastic step [default: 42]
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Topic count for the factorization, clamped to the document count
    /// [default: 20]
    #[arg(long, global = true, value_name = "K")]
    topics: Option<usize>,

    /// Tokens per segment in the Bayesian comparison [default: 1000]
    #[arg(long = "segment-len", global = true, value_name = "N")]
    segment_len: Option<usize>,

    /// Minimum corpus frequency for a vocabulary term [default: 1]
    #[arg(long = "min-count", global = true, value_name = "N")]
    min_count: Option<u32>,

    /// Maximum fraction of documents a vocabulary term may appear in
    /// [default: 0.95]
    #[arg(long = "max-doc-fraction", global = true, value_name = "F")]
    max_doc_fraction: Option<f64>,

    /// Posterior samples kept per Gibbs run [default: 2000]
    #[arg(long, global = true, value_name = "N")]
    samples: Option<usize>,

    /// Gibbs burn-in iterations [default: 500]
    #[arg(long = "burn-in", global = true, value_name = "N")]
    burn_in: Option<usize>,

    /// key=value file supplying any of the options above; explicit flags
    /// win over file entries
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Clean every corpus text and report what was removed
    Clean,
    /// Build the author-level document-term matrix
    Dtm,
    /// Map author similarity via latent semantic analysis and
    /// multidimensional scaling
    Similarity,
    /// Factor the corpus into topics and chart author loadings
    Topics,
    /// Unique words and keyness between two authors
    Distinct(PairArgs),
    /// Segment-level Bayesian rate comparison for chosen words
    Bayes(BayesArgs),
    /// Per-author surface statistics, word classes, collocations, and
    /// dispersion
    Profile(ProfileArgs),
    /// Per-author affect means against WordNet-anchored emotion labels
    Affect,
    /// Per-author mean grapheme sonority
    Sonority,
    /// Per-author trigram surprisal under a whole-corpus model
    Surprisal,
    /// Run everything and write a plain-text summary
    Report,
}

#[derive(Args)]
struct PairArgs {
    /// First author of the comparison [default: alphabetically first]
    #[arg(long, value_name = "AUTHOR")]
    first: Option<String>,
    /// Second author of the comparison [default: alphabetically second]
    #[arg(long, value_name = "AUTHOR")]
    second: Option<String>,
}

#[derive(Args)]
struct BayesArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Comma-separated query words; each is stemmed before matching
    #[arg(long, value_name = "WORDS", value_delimiter = ',', required = true)]
    words: Vec<String>,
}

#[derive(Args)]
struct ProfileArgs {
    /// Comma-separated dispersion target words [default: love]
    #[arg(long, value_name = "WORDS", value_delimiter = ',')]
    words: Option<Vec<String>>,
}

/// Fully resolved options: flag, then config file, then the documented
/// default.
pub struct Settings {
    pub corpus: PathBuf,
    pub wordnet: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: u64,
    pub topics: usize,
    pub segment_len: usize,
    pub min_count: u32,
    pub max_doc_fraction: f64,
    pub samples: usize,
    pub burn_in: usize,
}

fn resolve(opts: GlobalOpts) -> Result<Settings> {
    let file = FileConfig::load(opts.config.as_deref())?;
    let corpus = opts
        .corpus
        .or_else(|| file.path("corpus"))
        .ok_or_else(|| {
            Error::InvalidArgument(
                "no corpus directory given; pass --corpus or set corpus= in a config file"
                    .into(),
            )
        })?;
    if !corpus.is_dir() {
        return Err(Error::InvalidArgument(format!(
            "corpus directory {} does not exist",
            corpus.display()
        )));
    }
    let manifest = corpus.join("manifest.csv");
    if !manifest.is_file() {
        return Err(Error::InvalidArgument(format!(
            "{} not found",
            manifest.display()
        )));
    }
    let wordnet = opts
        .wordnet
        .or_else(|| std::env::var_os("WORDNET_DIR").map(PathBuf::from))
        .or_else(|| file.path("wordnet"))
        .or_else(|| {
            let fallback = PathBuf::from("wordnet/dict");
            fallback.join("data.noun").is_file().then_some(fallback)
        });
    let settings = Settings {
        corpus,
        wordnet,
        out: opts
            .out
            .or_else(|| file.path("out"))
            .unwrap_or_else(|| PathBuf::from("out")),
        seed: opts.seed.or(file.parse("seed")?).unwrap_or(42),
        topics: opts.topics.or(file.parse("topics")?).unwrap_or(20),
        segment_len: opts
            .segment_len
            .or(file.parse("segment_len")?)
            .unwrap_or(1000),
        min_count: opts.min_count.or(file.parse("min_count")?).unwrap_or(1),
        max_doc_fraction: opts
            .max_doc_fraction
            .or(file.parse("max_doc_fraction")?)
            .unwrap_or(0.95),
        samples: opts.samples.or(file.parse("samples")?).unwrap_or(2000),
        burn_in: opts.burn_in.or(file.parse("burn_in")?).unwrap_or(500),
    };
    if settings.topics == 0 {
        return Err(Error::InvalidArgument("topic count must be positive".into()));
    }
    if settings.segment_len == 0 {
        return Err(Error::InvalidArgument("segment length must be positive".into()));
    }
    Ok(settings)
}

fn main() {
    let cli = Cli::parse();
    let outcome = resolve(cli.opts).and_then(|settings| commands::run(&cli.command, &settings));
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
