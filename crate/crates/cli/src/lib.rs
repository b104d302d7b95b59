//! Command-line front end for the twist L-value library.

pub mod commands;
pub mod config;
pub mod output;

use clap::{Args, Parser, Subcommand};
use cmtwist::lseries::TwistKind;
use commands::{Outcome, PathChoice, Source, What};
use config::{Format, Overrides, RunConfig, PRECISION_ENV};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "cmtwist", version, about = "Algebraic L-values of quadratic and cubic twists of y^2 = 4x^3 - 27")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// Working precision in bits
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// Absolute error target for truncating series
    #[arg(long, global = true)]
    pub target: Option<f64>,
    /// Largest denominator accepted when recognizing values
    #[arg(long, global = true)]
    pub denom_bound: Option<u64>,
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for table rows
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Table fixture file [default: the bundled twist_table.csv]
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    /// Flat key=value configuration file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Algebraic L-value of one twist, with a BSD report when --p is given
    Lvalue {
        /// quadratic or cubic
        #[arg(long)]
        kind: TwistKind,
        /// Twist parameter: an integer, a factored product like 7^2*37, or a+b*w
        #[arg(long)]
        d: String,
        /// Prime for the valuation and BSD report
        #[arg(long, value_parser = clap::builder::TypedValueParser::map(clap::builder::PossibleValuesParser::new(["2", "3"]), |s: String| s.parse::<u64>().unwrap()))]
        p: Option<u64>,
    },
    /// Reproduce the stored table or evaluate every qualifying prime up to --bound
    Table {
        /// Restrict to quadratic or cubic twists
        #[arg(long)]
        kind: Option<TwistKind>,
        /// Stored fixture rows, or every qualifying prime up to --bound
        #[arg(long, value_enum, default_value = "fixtures")]
        source: Source,
        /// Norm bound for --source range
        #[arg(long, default_value_t = 2000)]
        bound: u64,
    },
    /// Path equivalence, valuation bounds or the field-theoretic model checks
    Verify {
        /// Restrict to quadratic or cubic twists
        #[arg(long)]
        kind: Option<TwistKind>,
        /// Twist parameter, required except with --what models
        #[arg(long)]
        d: Option<String>,
        /// Which check to run
        #[arg(long, value_enum)]
        what: What,
    },
    /// Special split or cubic-special classification of a prime, a range, or the density count
    Classify {
        /// A rational prime or an element a+b*w
        prime: Option<String>,
        /// Restrict to quadratic or cubic twists
        #[arg(long)]
        kind: Option<TwistKind>,
        /// List qualifying primes with norm up to this bound
        #[arg(long)]
        bound: Option<u64>,
        /// Count cubic-special primes among primes 1 mod 27 up to --bound
        #[arg(long)]
        density: bool,
    },
    /// Raw averaged sums over the sub-twists of D
    Phi {
        /// quadratic or cubic
        #[arg(long)]
        kind: TwistKind,
        /// Twist parameter: an integer, a factored product like 7^2*37, or a+b*w
        #[arg(long)]
        d: String,
        /// Character exponents, e.g. "1,2"; all characters when omitted
        #[arg(long)]
        chi: Option<String>,
        /// Evaluation route for the sums
        #[arg(long, value_enum, default_value = "both")]
        path: PathChoice,
    },
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            precision: self.precision,
            target: self.target,
            denom_bound: self.denom_bound,
            format: self.format,
            jobs: self.jobs,
            fixtures: self.fixtures.clone(),
        }
    }

    pub fn resolve(&self, env_precision: Option<&str>) -> Result<RunConfig, String> {
        let file = match &self.config {
            Some(p) => Some(std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?),
            None => None,
        };
        RunConfig::resolve(file.as_deref(), env_precision, &self.overrides())
    }
}

/// Runs a parsed command line with the given value of CM_TWIST_PRECISION.
pub fn run(cli: &Cli, env_precision: Option<&str>) -> Outcome {
    let cfg = match cli.global.resolve(env_precision) {
        Ok(c) => c,
        Err(e) => return Outcome { stderr: e + "\n", code: commands::EXIT_ERROR, ..Default::default() },
    };
    match &cli.command {
        Command::Lvalue { kind, d, p } => commands::cmd_lvalue(&cfg, *kind, d, *p),
        Command::Table { kind, source, bound } => commands::cmd_table(&cfg, *kind, *source, *bound),
        Command::Verify { kind, d, what } => commands::cmd_verify(&cfg, *kind, d.as_deref(), *what),
        Command::Classify { prime, kind, bound, density } => {
            commands::cmd_classify(&cfg, prime.as_deref(), *kind, *bound, *density)
        }
        Command::Phi { kind, d, chi, path } => commands::cmd_phi(&cfg, *kind, d, chi.as_deref(), *path),
    }
}

/// Parses arguments, runs, prints and returns the exit code. Usage errors exit 1
/// so that 2 keeps its meaning of a failed recognition.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_ERROR } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let env = std::env::var(PRECISION_ENV).ok();
    let out = run(&cli, env.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
