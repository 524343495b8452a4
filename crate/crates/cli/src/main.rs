use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::info;
use num_bigint::BigInt;

use polyak::classify::classify;
use polyak::gaussword::{double_factorial, for_each_canonical};
use polyak::invariant::{build_table_with, compute, InvariantTable};
use polyak::presentation::{build_presentation, count_presentation};
use polyak::smith::{snf_dense_naive, snf_sparse_mod2k, verify_cokernel_map, CyclicDecomposition};
use polyak::{GaussWord, SparseMatrix, UStrategy};

/// Largest rank `enumerate` will print; rank 13 already has 7.9 billion words.
const MAX_ENUMERATE_RANK: usize = 12;

#[derive(Parser)]
#[command(name = "polyak", version, about = "Gauss word invariants from the truncated Polyak algebra")]
struct Cli {
    /// Worker threads; defaults to the available parallelism, 1 runs sequentially.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List canonical Gauss words of one rank.
    Enumerate {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the generators and relations of H_n.
    Presentation {
        #[arg(long)]
        degree: usize,
        /// Only print counts, without keeping the relations.
        #[arg(long)]
        counts_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the structure of G_n.
    Group {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum)]
        u_strategy: Option<StrategyArg>,
    },
    /// Compute the invariant table of degree n.
    Table {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        u_strategy: Option<StrategyArg>,
    },
    /// Evaluate a table on Gauss words.
    Eval {
        #[arg(long)]
        table: PathBuf,
        /// Gauss word in letters A-Z, `-` for the empty word; may be repeated.
        #[arg(long, required = true)]
        word: Vec<String>,
    },
    /// Partition all words up to a rank into homotopy classes.
    Classify {
        #[arg(long, alias = "max-rank")]
        rank: usize,
        #[arg(long)]
        table: PathBuf,
        /// Largest rank visited during move searches; defaults to rank + 2.
        #[arg(long)]
        rank_cap: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        node_budget: usize,
        /// Write `<word> <class-id> <value>` lines here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write move traces from each class representative here.
        #[arg(long)]
        traces: Option<PathBuf>,
    },
    /// Smith normal form of a matrix file (`s t` then `i j v` lines).
    Snf {
        matrix: PathBuf,
        /// Work modulo 2^bits; without it the exact integer form is computed.
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, value_enum)]
        u_strategy: Option<StrategyArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Dense,
    Replay,
}

fn strategy(arg: Option<StrategyArg>) -> UStrategy {
    match arg {
        None => UStrategy::Auto,
        Some(StrategyArg::Dense) => UStrategy::Dense,
        Some(StrategyArg::Replay) => UStrategy::Replay,
    }
}

/// Bad arguments or inputs, as opposed to a failure during computation.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(message: impl Into<String>) -> Result<T> {
    Err(UsageError(message.into()).into())
}

/// Opens the output before any work starts so a bad path fails fast.
fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => match File::create(p) {
            Ok(f) => Ok(Box::new(BufWriter::new(f))),
            Err(e) => usage(format!("cannot create {}: {e}", p.display())),
        },
    }
}

fn open_input(path: &Path) -> Result<BufReader<File>> {
    match File::open(path) {
        Ok(f) => Ok(BufReader::new(f)),
        Err(e) => usage(format!("cannot open {}: {e}", path.display())),
    }
}

fn parse_word(text: &str) -> Result<GaussWord> {
    match text.parse::<GaussWord>() {
        Ok(w) => Ok(w),
        Err(e) => usage(format!("invalid word {text:?}: {e}")),
    }
}

fn load_table(path: &Path) -> Result<InvariantTable> {
    let input = open_input(path)?;
    InvariantTable::load(input).with_context(|| format!("reading table {}", path.display()))
}

fn cmd_enumerate(rank: usize, out: Option<&Path>) -> Result<()> {
    if rank > MAX_ENUMERATE_RANK {
        return usage(format!("rank {rank} exceeds the enumeration limit {MAX_ENUMERATE_RANK}"));
    }
    let mut dest = open_output(out)?;
    let mut result = Ok(());
    let mut count = 0u64;
    for_each_canonical(rank, |w| {
        if result.is_ok() {
            result = writeln!(dest, "{w}");
            count += 1;
        }
    });
    result?;
    dest.flush()?;
    debug_assert_eq!(count, double_factorial(rank));
    if out.is_some() {
        println!("{count}");
    } else {
        eprintln!("{count} word{} of rank {rank}", if count == 1 { "" } else { "s" });
    }
    Ok(())
}

fn cmd_presentation(degree: usize, counts_only: bool, out: Option<&Path>) -> Result<()> {
    if counts_only {
        let (generators, raw, unique) = count_presentation(degree)?;
        println!("generators {generators}");
        println!("g2 {}", raw.g2_nonempty);
        println!("g3 {}", raw.g3_nonempty);
        println!("unique {unique}");
        return Ok(());
    }
    let mut dest = open_output(out)?;
    let p = build_presentation(degree)?;
    p.write_to(&mut dest)?;
    dest.flush()?;
    eprintln!("{} generators, {} unique relations", p.generators.len(), p.relations.len());
    Ok(())
}

fn cmd_group(degree: usize, u_strategy: UStrategy) -> Result<()> {
    let start = Instant::now();
    let (structure, counts) = if degree <= 1 {
        // no generators at all
        (CyclicDecomposition::default(), count_presentation(degree)?)
    } else if degree - 1 <= 8 {
        let c = compute::<u8>(degree, u_strategy)?;
        if !c.verify() {
            bail!("cokernel map check failed");
        }
        let counts = (c.presentation.generators.len(), c.presentation.raw_counts, c.presentation.relations.len());
        (c.smith.structure(), counts)
    } else {
        let c = compute::<u64>(degree, u_strategy)?;
        if !c.verify() {
            bail!("cokernel map check failed");
        }
        let counts = (c.presentation.generators.len(), c.presentation.raw_counts, c.presentation.relations.len());
        (c.smith.structure(), counts)
    };
    info!("group computed in {:.2?}", start.elapsed());
    let (generators, raw, unique) = counts;
    println!("G{degree} = {structure}");
    let mult: Vec<String> = structure.multiplicity.iter().map(usize::to_string).collect();
    println!("multiplicities {}", if mult.is_empty() { "-".to_string() } else { mult.join(" ") });
    println!("generators {generators}");
    println!("g2 {}", raw.g2_nonempty);
    println!("g3 {}", raw.g3_nonempty);
    println!("unique {unique}");
    Ok(())
}

fn cmd_table(degree: usize, out: Option<&Path>, u_strategy: UStrategy) -> Result<()> {
    if degree == 0 {
        return usage("degree must be at least 1");
    }
    let mut dest = open_output(out)?;
    let table = build_table_with(degree, u_strategy)?;
    table.save(&mut dest)?;
    dest.flush()?;
    eprintln!("{} nonzero entries", table.len());
    Ok(())
}

fn cmd_eval(table: &Path, words: &[String]) -> Result<()> {
    let words: Vec<GaussWord> = words.iter().map(|w| parse_word(w)).collect::<Result<_>>()?;
    let table = load_table(table)?;
    for w in &words {
        let v = table.evaluate(w);
        if v.is_zero() {
            println!("{v}");
        } else {
            println!("{v} (order {})", table.element_order(&v));
        }
    }
    Ok(())
}

fn cmd_classify(
    rank: usize,
    table: &Path,
    rank_cap: Option<usize>,
    node_budget: usize,
    out: Option<&Path>,
    traces: Option<&Path>,
) -> Result<()> {
    let cap = rank_cap.unwrap_or(rank + 2);
    if cap < rank {
        return usage(format!("rank cap {cap} is below the rank {rank}"));
    }
    let table = load_table(table)?;
    let mut assignments = out.map(|p| open_output(Some(p))).transpose()?;
    let mut trace_out = traces.map(|p| open_output(Some(p))).transpose()?;
    let c = classify(rank, &table, cap, node_budget);
    let stdout = io::stdout();
    let mut report = BufWriter::new(stdout.lock());
    c.report(&mut report)?;
    report.flush()?;
    if let Some(dest) = assignments.as_mut() {
        c.write_assignments(dest)?;
        dest.flush()?;
    }
    if let Some(dest) = trace_out.as_mut() {
        c.write_traces(dest)?;
        dest.flush()?;
    }
    Ok(())
}

fn cmd_snf(path: &Path, bits: Option<u32>, u_strategy: UStrategy) -> Result<()> {
    let input = open_input(path)?;
    let a = SparseMatrix::read_from(input).with_context(|| format!("reading matrix {}", path.display()))?;
    let divisors: Vec<String> = match bits {
        Some(k) => {
            if k == 0 || k > 64 {
                return usage(format!("bits must be between 1 and 64, got {k}"));
            }
            let r = snf_sparse_mod2k::<u64>(&a, k, u_strategy)?;
            if !verify_cokernel_map(&a, &r) {
                bail!("cokernel map check failed");
            }
            r.divisors.iter().map(u128::to_string).collect()
        }
        None => {
            let dense: Vec<Vec<BigInt>> =
                a.to_dense().into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
            let (diag, _, _) = snf_dense_naive(&dense, a.cols());
            diag.iter().map(BigInt::to_string).collect()
        }
    };
    println!("divisors {}", if divisors.is_empty() { "-".to_string() } else { divisors.join(" ") });
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return usage("--workers must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Enumerate { rank, out } => cmd_enumerate(rank, out.as_deref()),
        Command::Presentation { degree, counts_only, out } => cmd_presentation(degree, counts_only, out.as_deref()),
        Command::Group { degree, u_strategy } => cmd_group(degree, strategy(u_strategy)),
        Command::Table { degree, out, u_strategy } => cmd_table(degree, out.as_deref(), strategy(u_strategy)),
        Command::Eval { table, word } => cmd_eval(&table, &word),
        Command::Classify { rank, table, rank_cap, node_budget, out, traces } => {
            cmd_classify(rank, &table, rank_cap, node_budget, out.as_deref(), traces.as_deref())
        }
        Command::Snf { matrix, bits, u_strategy } => cmd_snf(&matrix, bits, strategy(u_strategy)),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
