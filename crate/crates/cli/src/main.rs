use std::path::PathBuf;
use std::process::ExitCode;

use anea_cli::commands::{self, Rescore, RunArgs, Selection, TermSource};
use anea_cli::serve::{self, ServeArgs};
use anea_core::silver::{MetricsRow, ThresholdRule};
use clap::{ArgGroup, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "anea", version, about = "Automatic entity categorization for domain corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract terms and build categories.
    #[command(group(ArgGroup::new("input").required(true).args(["corpus", "terms"])))]
    #[command(group(ArgGroup::new("select").args(["z", "tta", "default_config"])))]
    Run {
        /// Directory of plain-text documents.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// CSV of `surface,frequency` rows.
        #[arg(long)]
        terms: Option<PathBuf>,
        /// Knowledge base dump (JSON lines).
        #[arg(long)]
        kb: PathBuf,
        /// Word vectors in text format.
        #[arg(long)]
        vectors: PathBuf,
        /// Keep the terms of the top 1/Z of head groups (Z >= 2).
        #[arg(long)]
        z: Option<u32>,
        /// Keep the first N terms in head-group order.
        #[arg(long)]
        tta: Option<usize>,
        /// Run the three default TTA sizes.
        #[arg(long)]
        default_config: bool,
        /// Hypernym expansion iterations (1 or 2).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        grow: u32,
        /// Hierarchical clustering instead of the domain graph.
        #[arg(long)]
        baseline: bool,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Combine 2-4 categories files by majority vote.
    Vote {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Recompute scores with these inputs (needs --vectors too).
        #[arg(long, requires = "vectors")]
        kb: Option<PathBuf>,
        #[arg(long, requires = "kb")]
        vectors: Option<PathBuf>,
    },
    /// Score categories files against assessment sheets.
    Eval {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        sheets: PathBuf,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Write the silver dataset derived from assessment sheets.
    Silver {
        #[arg(long)]
        sheets: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve a categories file for interactive review.
    Serve {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        vectors: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Append-only edit log; replayed on startup if present.
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", render(&e));
            ExitCode::FAILURE
        }
    }
}

/// Joins the error chain, skipping causes already embedded in their parent's message.
fn render(e: &anyhow::Error) -> String {
    let mut out = e.to_string();
    let mut last = out.clone();
    for cause in e.chain().skip(1) {
        let msg = cause.to_string();
        if !last.contains(&msg) {
            out.push_str(": ");
            out.push_str(&msg);
        }
        last = msg;
    }
    out
}

fn dispatch(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Run {
            corpus,
            terms,
            kb,
            vectors,
            z,
            tta,
            default_config: _,
            grow,
            baseline,
            out,
        } => {
            let source = match (corpus, terms) {
                (Some(c), _) => TermSource::Corpus(c),
                (_, Some(t)) => TermSource::Terms(t),
                _ => unreachable!("clap enforces one input"),
            };
            let selection = match (z, tta) {
                (Some(z), _) => Selection::Fraction(z),
                (_, Some(y)) => Selection::Count(y),
                _ => Selection::Default,
            };
            let summary = commands::run(&RunArgs {
                source,
                kb,
                vectors,
                selection,
                grow,
                baseline,
                out,
            })?;
            for (path, file) in &summary.outputs {
                println!("{}\t{} categories", path.display(), file.categories.len());
            }
            println!("{}", summary.manifest.display());
        }
        Command::Vote {
            files,
            out,
            kb,
            vectors,
        } => {
            let rescore = kb.zip(vectors).map(|(kb, vectors)| Rescore { kb, vectors });
            let file = commands::vote(&files, rescore.as_ref())?;
            file.write(&out).map_err(anea_core::Error::from)?;
            println!("{}\t{} categories", out.display(), file.categories.len());
        }
        Command::Eval { files, sheets, json } => {
            let report = commands::eval(&files, &sheets, &ThresholdRule::default())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("# threshold {}", report.threshold);
                print!("{}", MetricsRow::table(&report.rows));
            }
        }
        Command::Silver { sheets, out } => {
            let file = commands::silver_dataset(&sheets, &ThresholdRule::default())?;
            file.write(&out).map_err(anea_core::Error::from)?;
            println!("{}\t{} categories", out.display(), file.categories.len());
        }
        Command::Serve {
            state,
            kb,
            vectors,
            port,
            log,
        } => {
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(serve::serve(ServeArgs {
                state,
                kb,
                vectors,
                port,
                log,
            }))?;
        }
    }
    Ok(())
}
