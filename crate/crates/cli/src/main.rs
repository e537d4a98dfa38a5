mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "wgcoe", version, about = "Exact CUE/COE matrix-entry moments via Weingarten calculus")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Directory holding wgcoe-cache.json.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Neither read nor write the cache.
    #[arg(long, global = true, conflicts_with = "cache_dir")]
    pub no_cache: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// `--N` or `--symbolic`; symbolic when neither is given.
#[derive(Args, Debug, Clone, Copy)]
pub struct EvalArgs {
    /// Evaluate at this matrix dimension.
    #[arg(long = "N", value_name = "N")]
    pub big_n: Option<u64>,

    /// Keep the result as a rational function of N.
    #[arg(long, conflicts_with = "big_n")]
    pub symbolic: bool,

    /// Also print the first K terms of the large-N expansion.
    #[arg(long, value_name = "K")]
    pub series: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weingarten function Wg_n at a cycle type.
    Wg {
        #[arg(long)]
        n: usize,
        /// Cycle type, e.g. `2,1,1` or `2,1^2`.
        #[arg(long)]
        cycle_type: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Haar-unitary moments.
    CueMoment {
        #[command(subcommand)]
        which: CueCommand,
    },
    /// COE moments.
    CoeMoment {
        #[command(subcommand)]
        which: CoeCommand,
    },
    /// Degree-two COE trace moments.
    TraceMoments {
        /// One of tr4, tr2sq, mixed; all three when omitted.
        #[arg(long)]
        which: Option<String>,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Combinatorial self-checks; exit 3 if any fails.
    Identities {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Monte Carlo estimates against exact values.
    Sample {
        /// cue, coe, orthogonal or cue-uncorrected.
        #[arg(long)]
        ensemble: String,
        #[arg(long = "N", value_name = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Moment spec, e.g. `|v(1,1)|^4` or `tr4` (repeatable).
        #[arg(long = "spec", required = true)]
        specs: Vec<String>,
        /// Check unitarity/symmetry residuals on every sample.
        #[arg(long)]
        verify: bool,
        /// Exit 3 if any z-score reaches 4.
        #[arg(long)]
        gate: bool,
    },
    /// Rescaled COE moments against the Gaussian limit n!.
    GaussianLimit {
        #[arg(long, value_enum)]
        entry: EntryArg,
        #[arg(long)]
        n: usize,
        /// Comma-separated dimensions.
        #[arg(long = "N", value_name = "N,...", value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Monte Carlo samples per dimension; 0 for exact values only.
        #[arg(long, default_value_t = 0)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CueCommand {
    /// E[u_{i1 j1}⋯u_{in jn} conj(u_{i'1 j'1}⋯u_{i'n j'n})].
    Joint {
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        i_prime: String,
        #[arg(long)]
        j_prime: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// E|u_{1 i1}⋯u_{1 in}|² for a row sequence of type mu.
    Row {
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// E|u_{i1 i1}⋯u_{in in}|² for a sequence of type mu.
    Diagonal {
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoeCommand {
    /// E|v_11|^{2n}.
    Diag {
        #[arg(long)]
        n: usize,
        /// closed, expansion or enumerate.
        #[arg(long, default_value = "closed")]
        method: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// E|v_12|^{2n}.
    Off {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "closed")]
        method: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// E[v_{j1 j2}⋯ conj(v_{j'1 j'2}⋯)]; consecutive pairs index entries.
    Joint {
        #[arg(long)]
        j: String,
        #[arg(long)]
        j_prime: String,
        #[arg(long, default_value = "expansion")]
        method: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// The double-coset sum W(mu, N).
    W {
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Two-term large-N expansion, checked against the exact result.
    Asymptotics {
        #[arg(long, value_enum)]
        entry: EntryArg,
        #[arg(long)]
        n: usize,
    },
    /// List the registered computation methods.
    Methods,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EntryArg {
    Diagonal,
    Offdiagonal,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut cache = if cli.no_cache {
        Cache::disabled()
    } else {
        match cache::resolve_dir(cli.cache_dir.as_deref()) {
            Some(dir) => Cache::open(dir),
            None => Cache::disabled(),
        }
    };
    let result = commands::run(&cli);
    cache.store();
    for w in &cache.warnings {
        eprintln!("warning: {w}");
    }
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
