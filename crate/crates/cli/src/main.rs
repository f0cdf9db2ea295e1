//! `ts22`: extract the 22 canonical features, classify with them, run the
//! feature-selection pipeline, time extraction, or project a dataset onto
//! its two most informative features.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use ts22_core::io::TableFormat;

#[derive(Parser, Debug)]
#[command(name = "ts22", version, about)]
pub struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for data-parallel work (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => TableFormat::Csv,
            Format::Json => TableFormat::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the 22 features for every series in a dataset file.
    Extract {
        #[arg(long)]
        input: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Fit a decision tree on the training split's features and score the test split.
    Classify {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the selection pipeline over every dataset in a directory.
    Select {
        /// Directory of dataset files, or of `*.features.csv` pool tables.
        #[arg(long)]
        input: PathBuf,
        /// Pipeline config (TOML or JSON). Flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        repeats: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Time extraction over a grid of lengths and fit the scaling exponent.
    Bench {
        /// Comma-separated series lengths.
        #[arg(long, value_delimiter = ',', default_values_t = ts22_core::bench::DEFAULT_LENGTHS)]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Directory of series files to time instead of the synthetic corpus.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Timing table (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Where to write the fit summary (stderr when omitted).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Pick the best two features by forward selection and emit plot data.
    Project2d {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let outcome = std::panic::catch_unwind(|| {
        ts22_core::par::with_threads(threads, || commands::run(&cli))
    });
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(3)
        }
    }
}
