//! `tempevent` command-line interface.
//!
//! Exit codes: 0 on success, 2 for usage errors, unknown domains and unreadable
//! or malformed input files, 1 when the pipeline itself fails.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use tempevent_core::ace::DecodingStrategy;
use tempevent_core::duration::duration_metrics;
use tempevent_core::eval::score_corpus;
use tempevent_core::format::{render, OutputFormat};
use tempevent_core::{annotate, AnnotateOptions, AnnotationResult, DurationCategory, Error, Execution};
use tempevent_server::{router, AppState, Config};
use tracing_subscriber::EnvFilter;

#[derive(Debug, Parser)]
#[command(name = "tempevent", version, about = "Temporal event extraction and scoring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Annotate text and print the result.
    Annotate(AnnotateArgs),
    /// Score predicted annotations against gold (entity, Trig-I/C, Arg-I/C).
    Score {
        #[arg(long)]
        predicted: PathBuf,
        #[arg(long)]
        gold: PathBuf,
    },
    /// Duration accuracy, coarse accuracy and Spearman correlation.
    DurationMetrics {
        #[arg(long)]
        predicted: PathBuf,
        #[arg(long)]
        gold: PathBuf,
    },
    /// Run the HTTP service.
    Serve {
        /// Listen address; overrides the config file.
        #[arg(long)]
        addr: Option<SocketAddr>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// List registered domains.
    Domains {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct AnnotateArgs {
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    text: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value = "news")]
    domain: String,
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    max_sentence_gap: Option<usize>,
    #[arg(long, value_parser = parse_decoding)]
    decoding: Option<DecodingStrategy>,
}

fn parse_decoding(s: &str) -> Result<DecodingStrategy, String> {
    match s {
        "greedy" => Ok(DecodingStrategy::Greedy),
        "viterbi" => Ok(DecodingStrategy::Viterbi),
        other => Err(format!("unknown decoding `{other}` (expected greedy or viterbi)")),
    }
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownDomain { .. } | Error::InvalidOption(_) => 2,
            Error::Metrics(_) | Error::DocumentMismatch => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Annotate(args) => run_annotate(args),
        Command::Score { predicted, gold } => {
            let p = read_results(&predicted)?;
            let g = read_results(&gold)?;
            if p.len() != g.len() {
                return Err(Failure::usage(format!(
                    "{} predicted documents for {} gold documents",
                    p.len(),
                    g.len()
                )));
            }
            let pairs: Vec<_> = p.into_iter().zip(g).collect();
            let scores = score_corpus(&pairs, Execution::default())?;
            print_json(&scores);
            Ok(())
        }
        Command::DurationMetrics { predicted, gold } => {
            let p = read_durations(&predicted)?;
            let g = read_durations(&gold)?;
            print_json(&duration_metrics(&p, &g)?);
            Ok(())
        }
        Command::Serve { addr, config } => serve(addr, config.as_deref()),
        Command::Domains { config } => {
            let config = load_config(config.as_deref())?;
            let registry = config.registry().map_err(|e| Failure::usage(format!("{e:#}")))?;
            for d in registry.domains() {
                println!("{d}");
            }
            Ok(())
        }
    }
}

fn run_annotate(args: AnnotateArgs) -> Result<(), Failure> {
    let text = match (&args.text, &args.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => unreachable!("clap requires --text or --file"),
    };
    let config = load_config(args.config.as_deref())?;
    let registry = config.registry().map_err(|e| Failure::usage(format!("{e:#}")))?;
    let mut options = AnnotateOptions::default();
    if let Some(t) = args.threshold {
        options.trigger_threshold = t;
    }
    options.max_sentence_gap = args.max_sentence_gap;
    if let Some(d) = args.decoding {
        options.decoding = d;
    }
    let result = annotate(&text, &args.domain, &registry, &options)?;
    print!("{}", render(&result, args.format));
    Ok(())
}

fn serve(addr: Option<SocketAddr>, config: Option<&Path>) -> Result<(), Failure> {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")))
        .with_writer(std::io::stderr)
        .init();
    let config = load_config(config)?;
    let registry = config.registry().map_err(|e| Failure::usage(format!("{e:#}")))?;
    let addr = match addr {
        Some(a) => a,
        None => format!("{}:{}", config.server.host, config.server.port)
            .parse()
            .map_err(|e| Failure::usage(format!("bad listen address: {e}")))?,
    };
    let state = AppState::new(registry, config.server.max_text_chars);
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    runtime
        .block_on(async move {
            let listener = tokio::net::TcpListener::bind(addr).await?;
            tracing::info!(addr = %listener.local_addr()?, "listening");
            axum::serve(listener, router(state))
                .with_graceful_shutdown(async {
                    let _ = tokio::signal::ctrl_c().await;
                })
                .await
        })
        .map_err(|e| Failure {
            code: 1,
            message: e.to_string(),
        })
}

fn load_config(path: Option<&Path>) -> Result<Config, Failure> {
    Config::load(path).map_err(|e| Failure::usage(format!("{e:#}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    Many(Vec<T>),
    One(T),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::Many(v) => v,
            OneOrMany::One(x) => vec![x],
        }
    }
}

/// One annotation result or an array of them.
fn read_results(path: &Path) -> Result<Vec<AnnotationResult>, Failure> {
    Ok(parse::<OneOrMany<AnnotationResult>>(path)?.into_vec())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DurationFile {
    Labels(Vec<DurationCategory>),
    Results(OneOrMany<AnnotationResult>),
}

/// A JSON array of category names, or annotation results whose events'
/// durations are taken in order.
fn read_durations(path: &Path) -> Result<Vec<DurationCategory>, Failure> {
    match parse::<DurationFile>(path)? {
        DurationFile::Labels(v) => Ok(v),
        DurationFile::Results(r) => r
            .into_vec()
            .into_iter()
            .flat_map(|a| a.events)
            .map(|e| {
                e.duration
                    .ok_or_else(|| Failure::usage(format!("{}: event {} has no duration", path.display(), e.id)))
            })
            .collect(),
    }
}
