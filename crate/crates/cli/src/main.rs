//! `knc`: command-line front end for exact Krichever-Novikov computations.

mod commands;
mod error;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;
use report::{emit_report, Format};

/// Degree window `[lo, hi]`, written `8` (for `[-8, 8]`), `-5:5` or `-5,5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window(pub i64, pub i64);

fn parse_window(s: &str) -> Result<Window, String> {
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    let w = match s.split_once([':', ',']) {
        Some((a, b)) => Window(num(a)?, num(b)?),
        None => {
            let w = num(s)?;
            if w < 0 {
                return Err("a single window value must be nonnegative".into());
            }
            Window(-w, w)
        }
    };
    if w.0 > w.1 {
        return Err(format!("empty window [{}, {}]", w.0, w.1));
    }
    Ok(w)
}

#[derive(Parser, Debug)]
#[command(name = "knc", version, about = "Exact Krichever-Novikov algebras, cocycles and current algebras")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Marked-point configuration JSON; the classical `{0} | {inf}` when absent.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Degree window.
    #[arg(long, global = true, default_value = "-8:8", value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Window,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Function,
    Vector,
    Mixing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    FunMul,
    VfBracket,
    Lie,
    D1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Duality,
    Grading,
    Virasoro,
    Locality,
    LevelZero,
    Pullcyc,
    Properties,
    Decompose,
    Affine,
    Connection,
    Appendix,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the basis element f^λ_{n,p}.
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        p: usize,
    },
    /// KN pairing <f^λ_{n,p}, f^{1-λ}_{m,r}>.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Structure constants of one operation over the window.
    Table {
        #[arg(long, value_enum)]
        op: OpArg,
        /// Weight acted on by `--op lie`.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lambda: i64,
    },
    /// Values of a geometric cocycle, optionally plus a coboundary.
    Cocycle {
        #[command(flatten)]
        source: Source,
        /// Only this level, zeros included.
        #[arg(long, allow_hyphen_values = true)]
        level: Option<i64>,
    },
    /// Locality scan over a band of levels.
    Scan {
        #[command(flatten)]
        source: Source,
        /// Levels to scan; defaults to the degree window.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        levels: Option<Window>,
    },
    /// Split a cocycle bounded from above into point cocycles and a coboundary.
    Decompose {
        #[command(flatten)]
        source: Source,
        /// Decompose the matching part of the gl(∞) pullback at this weight instead.
        #[arg(long, allow_hyphen_values = true)]
        pullback: Option<i64>,
    },
    /// Pullback of the standard gl(∞) cocycle at weight λ.
    Pullcyc {
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        /// Dump Φ_λ of this generator, e.g. `e[2,1]`.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Central extension of a current algebra g ⊗ A.
    Affine {
        /// `sl2`, `glN` or a Lie algebra JSON file.
        #[arg(long, default_value = "sl2")]
        lie: String,
        #[arg(long, default_value = "sep")]
        cycle: String,
        /// Multiple of the function cocycle.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        scale: String,
        /// Check tr(x)tr(y)ψ(f,g) with ψ(A[0,1], A[3,1]) = 1 instead.
        #[arg(long)]
        counterexample: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
    },
}

/// A cocycle given on the command line.
#[derive(Args, Debug, Clone)]
pub struct Source {
    #[arg(long, value_enum, default_value = "function")]
    pub kind: KindArg,
    /// `sep`, `P:i`, `Q:j` or a signed combination such as `2*P:1-1*Q:1`.
    #[arg(long, default_value = "sep", allow_hyphen_values = true)]
    pub cycle: String,
    /// Coboundary JSON `{"kind": "W"|"V", "terms": [{"n", "r", "coefficient"}]}` to add.
    #[arg(long)]
    pub coboundary: Option<PathBuf>,
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("KNC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("KNC_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    init_threads()?;
    let report = commands::dispatch(&cli.command, &cli.common)?;
    emit_report(&report, cli.common.format, cli.common.out.as_deref())?;
    Ok(report.exit_status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("knc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
