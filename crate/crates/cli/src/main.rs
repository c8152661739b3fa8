//! `chainlab`: addition-chain lengths, defects and their catalog.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use chainlab_core::{ChainClass, Engine, LabError, LengthCache};
use clap::{Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Debug, Parser)]
#[command(name = "chainlab", version, about = "Exact addition-chain laboratory")]
struct Cli {
    /// Chain class searched.
    #[arg(long, global = true, value_enum, default_value_t = ClassArg::All)]
    class: ClassArg,

    /// Node budget for each search.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,

    /// Doublings followed by stability probes.
    #[arg(long, global = true, default_value_t = 16)]
    horizon: u32,

    /// Length cache file (`class,n,length` CSV), loaded at start and saved at exit.
    #[arg(long, global = true, env = "CHAINLAB_CACHE")]
    cache: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    All,
    Star,
    Binary,
}

impl From<ClassArg> for ChainClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => ChainClass::All,
            ClassArg::Star => ChainClass::Star,
            ClassArg::Binary => ChainClass::Binary,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shortest chain, its length, defect and small steps.
    Chain { n: u64 },
    /// Exact defect `len(n) - log2 n`.
    Defect { n: u64 },
    /// Defect trajectory of `2^k n` and the stability verdict.
    Stability { n: u64 },
    /// Smallest number sharing the defect of `n`.
    Leader { n: u64 },
    /// Small-steps bucket from the binary expansion (any size).
    Classify { n: String },
    /// Buckets for every `n` in `lo..=hi`.
    ClassifyRange {
        lo: u64,
        hi: u64,
        /// Cross-check each bucket against searched small steps.
        #[arg(long)]
        verify: bool,
    },
    /// Defect values up to a threshold among `n <= max`.
    Catalog {
        /// Threshold, as a decimal or fraction (`0.999`, `7/10`).
        #[arg(long)]
        bound: String,
        #[arg(long)]
        max: u64,
    },
    /// Largest Hamming weight with defect at most the bound among `n <= max`.
    Q {
        #[arg(long)]
        bound: String,
        #[arg(long)]
        max: u64,
    },
    /// The smallest elements of `S_k`.
    Sk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        count: usize,
    },
    /// Values `2 + floor(log2 n) - log2 n` over one two-small-step form.
    Tset {
        #[arg(long)]
        form: u8,
        #[arg(long)]
        cap: u64,
        /// Check by search that each value is attained as a defect.
        #[arg(long)]
        check: bool,
    },
    /// Check a lower bound or conjecture over a range.
    Verify {
        #[arg(value_enum)]
        which: Verifier,
        /// Largest `n` (largest exponent for scholz-brauer).
        #[arg(long)]
        max: u64,
    },
    /// Certified constants.
    Constant {
        #[command(subcommand)]
        which: ConstantCmd,
    },
    /// Ordinal arithmetic below `omega^omega`.
    Ordinal {
        #[command(subcommand)]
        op: OrdinalCmd,
    },
    /// Smallest `n` with `len(2n) = len(n)`.
    DropScan {
        #[arg(long)]
        max: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verifier {
    Schonhage,
    KnuthStolarsky,
    ScholzBrauer,
}

#[derive(Debug, Subcommand)]
enum ConstantCmd {
    /// Enclosure of Schönhage's constant.
    Cs {
        #[arg(long, default_value_t = 64)]
        precision: u32,
    },
    /// Known bracket for `f(k)`.
    F {
        #[arg(long)]
        k: u64,
    },
}

#[derive(Debug, Subcommand)]
enum OrdinalCmd {
    /// Natural sum of two ordinals.
    Sum { x: String, y: String },
    /// Compare two ordinals.
    Compare { x: String, y: String },
    /// Order-type bound for weight `q`.
    Bound { q: u64 },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                LabError::BudgetExhausted { .. } => 3,
                _ => 1,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8, LabError> {
    let plan = commands::plan(&cli.command)?;
    let cache = match &cli.cache {
        Some(path) => LengthCache::open(path)?,
        None => LengthCache::new(),
    };
    let engine = Engine::new(cli.class.into())
        .with_budget(cli.budget)
        .with_cache(Arc::new(cache));
    let result = commands::execute(plan, &engine, cli.horizon);
    engine.cache().save()?;
    let report = result?;
    print!("{}", report.render(cli.format));
    Ok(report.outcome.exit_code())
}
