use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use forge_core::encoding::{count_mismatches, distinct_categories};
use forge_core::model::read_raw_records;
use forge_core::{run, AuthenticityPolicy, Lexicon, MappingSet, Normalizer, PipelineConfig};

#[derive(Debug, Parser)]
#[command(
    name = "forge",
    version,
    about = "Build a tabular dataset from Palaeohispanic inscription records"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Process a raw export into the 36-column dataset.
    Run {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Directory with the municipality and province gazetteers.
        #[arg(long)]
        gazetteers: PathBuf,
        #[arg(long)]
        mappings: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        modifiers: PathBuf,
        /// Drop records marked FALSA.
        #[arg(long)]
        drop_false: bool,
        /// Drop records marked SUSPICIOUS (implies --drop-false).
        #[arg(long)]
        drop_suspicious: bool,
        /// Write a JSON run report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Validate a mapping file against the per-attribute category ceilings.
    CheckMappings {
        #[arg(long)]
        mappings: PathBuf,
        /// Full raw export; distinct categories must then equal the ceilings exactly.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Normalize a single transcription.
    Normalize {
        #[arg(long)]
        text: String,
        #[arg(long)]
        lexicon: Option<PathBuf>,
        /// Print the text after every rule.
        #[arg(long)]
        trace: bool,
    },
}

fn check_mappings(mappings: &Path, corpus: Option<&Path>) -> Result<bool> {
    let set = MappingSet::load(mappings)
        .with_context(|| format!("mapping file {} rejected", mappings.display()))?;
    for mapping in set.iter() {
        println!(
            "{:<18} {:>3} / {:>3}",
            mapping.attribute.name(),
            mapping.category_count(),
            mapping.attribute.ceiling()
        );
    }
    let Some(corpus) = corpus else {
        return Ok(true);
    };
    let (records, warnings) = read_raw_records(corpus)?;
    for w in warnings {
        log::warn!("{w}");
    }
    let mismatches = count_mismatches(&distinct_categories(&records, &set));
    for (attribute, seen, expected) in &mismatches {
        println!("{attribute}: corpus has {seen} categories, expected {expected}");
    }
    if mismatches.is_empty() {
        println!("corpus category counts match");
    }
    Ok(mismatches.is_empty())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            input,
            output,
            gazetteers,
            mappings,
            lexicon,
            modifiers,
            drop_false,
            drop_suspicious,
            report,
        } => {
            let policy = match (drop_false, drop_suspicious) {
                (_, true) => AuthenticityPolicy::DropFalseAndSuspicious,
                (true, false) => AuthenticityPolicy::DropFalse,
                (false, false) => AuthenticityPolicy::KeepAll,
            };
            let config = PipelineConfig {
                input,
                output,
                gazetteers,
                mappings,
                lexicon,
                modifiers,
                policy,
                report,
            };
            run(&config).map_err(anyhow::Error::from).map(|report| {
                eprintln!(
                    "{} records in, {} out, {} filtered",
                    report.records_in, report.records_out, report.records_filtered
                );
                true
            })
        }
        Command::CheckMappings { mappings, corpus } => check_mappings(&mappings, corpus.as_deref()),
        Command::Normalize {
            text,
            lexicon,
            trace,
        } => (|| {
            let lexicon = match lexicon {
                Some(path) => Lexicon::load(&path)?,
                None => Lexicon::builtin(),
            };
            let normalizer = Normalizer::new(lexicon);
            if trace {
                for (step, value) in normalizer.trace(&text) {
                    println!("{step:<17} {value}");
                }
            }
            println!("{}", normalizer.normalize(&text));
            Ok(true)
        })(),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
