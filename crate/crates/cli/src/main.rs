//! `fras`: build, index, query and benchmark grammar-compressed texts.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fras::BitvectorKind;

#[derive(Parser, Debug)]
#[command(
    name = "fras",
    version,
    about = "Random access over grammar-compressed text"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compress a text file with RePair and write the grammar.
    Build {
        #[arg(long)]
        input: PathBuf,
        /// Grammar file; a `.fgt` extension selects the text format.
        #[arg(long)]
        output: PathBuf,
        /// Inline every rule that is referenced exactly once.
        #[arg(long)]
        inline_single_use: bool,
    },
    /// Build a random-access index over a grammar file.
    Index {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Structure::Fras)]
        structure: Structure,
        #[arg(long, value_enum, default_value_t = Bitvector::Sparse)]
        bitvector: Bitvector,
    },
    /// Write T[p..p+l-1] to standard output.
    Get {
        #[arg(long)]
        index: PathBuf,
        /// 1-based start position.
        #[arg(short = 'p', long = "position")]
        position: u64,
        #[arg(short = 'l', long = "length", default_value_t = 1)]
        length: u64,
    },
    /// Check that a grammar expands to exactly the given text.
    Verify {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        text: PathBuf,
    },
    /// Print rules,depth,start,size,n as one CSV row.
    Stats {
        #[arg(long)]
        grammar: PathBuf,
    },
    /// Print the space formulas and the measured size of an index.
    Space {
        #[arg(long)]
        index: PathBuf,
    },
    /// Time seeded random extractions and write a CSV report.
    Bench {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, default_value_t = fras::bench::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = fras::bench::DEFAULT_ITERATIONS)]
        iterations: u64,
        /// Comma-separated substring lengths.
        #[arg(long, value_delimiter = ',', default_values_t = fras::bench::DEFAULT_LENGTHS,
              value_parser = clap::value_parser!(u64).range(1..))]
        lengths: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Corpus label for the CSV; defaults to the index file stem.
        #[arg(long)]
        corpus: Option<String>,
        /// Also write the queried positions as `substring_len,position` rows.
        #[arg(long)]
        positions_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Structure {
    Fras,
    Folklore,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Bitvector {
    Sparse,
    Plain,
}

impl From<Bitvector> for BitvectorKind {
    fn from(b: Bitvector) -> Self {
        match b {
            Bitvector::Sparse => BitvectorKind::Sparse,
            Bitvector::Plain => BitvectorKind::Plain,
        }
    }
}

const USAGE_ERROR: u8 = 1;
const DATA_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(DATA_ERROR)
        }
    }
}
