//! Command-line front end: `build`, `query`, `export`, `verify`, `bench`.
//!
//! Exit status is 0 on success, 1 on a failed verification or runtime
//! error, and 2 on a usage error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::augmented::AugmentedHeap;
use crate::error::{Error, Result};
use crate::heap::{oracle_build, PositionHeap};
use crate::index::{to_dot, IndexFile};
use crate::verify::{self, VerifyConfig};
use crate::{bench, search};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "posheap", version, about = "Position heap text index")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an index from a text file (or `-` for stdin).
    Build {
        input: PathBuf,
        /// Feed the input to the builder one byte at a time as it is read.
        #[arg(long)]
        stream: bool,
        /// Output path; stdout if omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the 1-based starting positions of a pattern.
    Query {
        index: PathBuf,
        #[arg(long, short)]
        pattern: String,
        /// Print only the number of occurrences.
        #[arg(long)]
        count: bool,
    },
    /// Re-render a saved index.
    Export {
        index: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Cross-check every structure against brute-force references.
    Verify {
        /// Longest text in the exhaustive suite.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        alphabet_size: usize,
        #[arg(long, default_value_t = 6)]
        max_pattern: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Random texts in the large suite (scaled by POSHEAP_VERIFY_SCALE).
        #[arg(long, default_value_t = 20)]
        random_texts: usize,
        #[arg(long, default_value_t = 10_000)]
        random_n: usize,
        /// Check a saved index file against a fresh build instead.
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// Time construction on random and periodic texts; CSV on stdout.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![1_000_000, 2_000_000, 4_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyPattern => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `std::env::args` and runs the command.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Build {
            input,
            stream,
            out,
            format,
        } => cmd_build(&input, stream, out.as_deref(), format),
        Command::Query {
            index,
            pattern,
            count,
        } => cmd_query(&index, pattern.as_bytes(), count),
        Command::Export { index, format, out } => cmd_export(&index, format, out.as_deref()),
        Command::Verify {
            max_n,
            alphabet_size,
            max_pattern,
            seed,
            random_texts,
            random_n,
            index,
        } => match index {
            Some(path) => cmd_verify_index(&path),
            None => cmd_verify(VerifyConfig {
                max_n,
                alphabet_size,
                max_pattern,
                seed,
                random_texts,
                random_n,
                ..VerifyConfig::default()
            }),
        },
        Command::Bench {
            sizes,
            seed,
            repeats,
        } => cmd_bench(&sizes, seed, repeats),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn open_input(path: &Path) -> io::Result<Box<dyn Read>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(io::stdin().lock()))
    } else {
        Ok(Box::new(File::open(path)?))
    }
}

fn with_output(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> CmdResult {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn render(index: &AugmentedHeap, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => IndexFile::from_index(index)?.save(out),
        Format::Dot => Ok(out.write_all(to_dot(index).as_bytes())?),
    }
}

fn load_index(path: &Path) -> Result<AugmentedHeap> {
    IndexFile::load(BufReader::new(File::open(path)?))?.to_index()
}

fn cmd_build(input: &Path, stream: bool, out: Option<&Path>, format: Format) -> CmdResult {
    let reader = open_input(input)?;
    let mut heap = if stream {
        let mut heap = PositionHeap::new();
        for byte in BufReader::new(reader).bytes() {
            heap.append(byte?)?;
        }
        heap
    } else {
        let mut text = Vec::new();
        BufReader::new(reader).read_to_end(&mut text)?;
        PositionHeap::build(&text)?
    };
    heap.finalize();
    eprintln!(
        "n={} nodes={} depth={} active_position={}",
        heap.len(),
        heap.node_count(),
        heap.height(),
        heap.active_position()
    );
    let index = AugmentedHeap::new(heap)?;
    with_output(out, |w| render(&index, format, w))
}

fn cmd_query(index: &Path, pattern: &[u8], count: bool) -> CmdResult {
    search::Pattern::new(pattern)?;
    let index = load_index(index)?;
    let found = index.find_all(pattern)?;
    let mut out = io::stdout().lock();
    if count {
        writeln!(out, "{}", found.len())?;
    } else {
        for p in found.positions() {
            writeln!(out, "{p}")?;
        }
    }
    Ok(())
}

fn cmd_export(index: &Path, format: Format, out: Option<&Path>) -> CmdResult {
    let index = load_index(index)?;
    with_output(out, |w| render(&index, format, w))
}

fn cmd_verify(config: VerifyConfig) -> CmdResult {
    let config = config.scaled_from_env();
    match verify::run(&config) {
        Ok(report) => {
            println!("{report}");
            println!("all checks passed");
            Ok(())
        }
        Err(d) => Err(Failure::Runtime(d.to_string())),
    }
}

/// Loads a saved index and compares it with the definitional build of the
/// text it encodes.
fn cmd_verify_index(path: &Path) -> CmdResult {
    let file = IndexFile::load(BufReader::new(File::open(path)?))?;
    let index = file.to_index()?;
    let expected = oracle_build(index.text());
    if *index.heap() != expected {
        return Err(Failure::Runtime(format!(
            "index does not match a fresh build: {}",
            verify::structural_diff(index.heap(), &expected)
        )));
    }
    verify::check_builder_invariants(index.heap()).map_err(|d| Failure::Runtime(d.to_string()))?;
    verify::check_mrp(&index).map_err(|d| Failure::Runtime(d.to_string()))?;
    println!(
        "index ok: n={} nodes={}",
        index.len(),
        index.heap().node_count()
    );
    Ok(())
}

fn cmd_bench(sizes: &[usize], seed: u64, repeats: usize) -> CmdResult {
    let rows = bench::run(sizes, seed, repeats);
    print!("{}", bench::to_csv(&rows));
    Ok(())
}
