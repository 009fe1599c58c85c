//! Argument parsing and dispatch for the `factorlens` binary.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{self, Context, Route};
use crate::report::{Format, Report};
use crate::spec::{parse_length_list, Input, DEFAULT_STORE_BOUND};
use crate::suite::{self, Outcome, SuiteConfig, DEFAULT_SEED};
use crate::target::Target;
use crate::{exit, AppError, DEFAULT_BUDGET};

#[derive(Debug, Parser)]
#[command(
    name = "factorlens",
    version,
    about = "Factorization invariants of monoids"
)]
pub struct Cli {
    /// Spec file, or inline JSON starting with `{`.
    #[arg(long, global = true)]
    pub spec: Option<String>,
    /// Horizon K: unions U_1..U_K.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: Option<u64>,
    /// Cap on enumerated candidates and completion steps.
    #[arg(
        long,
        global = true,
        env = "FACTORLENS_BUDGET",
        default_value_t = DEFAULT_BUDGET,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Atoms, distances, elasticity, omega, tame and catenary degrees.
    Invariants,
    /// Rows (k, lambda_k, rho_k, |U_k|, M_k, U_k).
    Unions,
    /// Structure of unions and the property checks.
    StructureCheck,
    /// Realize a length set such as `2,3,5` by a Krull monoid.
    Realize { lengths: String },
    /// The smallest admissible coproduct counterexample.
    Counterexample {
        #[arg(long, default_value_t = 2)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Route::Closed)]
        route: Route,
    },
    /// The power monoid example with atoms [0,1] and {1} ∪ 2·[0,n].
    PowerExample {
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_STORE_BOUND)]
        store_bound: u64,
    },
    /// Runs every acceptance criterion.
    PaperSuite {
        /// Alter one atom of the realized monoids (negative control).
        #[arg(long)]
        perturb: bool,
        /// Only these criteria, e.g. `1,5`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
        /// Include wall-clock times in the report.
        #[arg(long)]
        timings: bool,
        /// Seed of the random families.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Parses `args`, runs the command and writes the report. Returns the exit
/// code; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return exit::INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return exit::OK;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::INPUT;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok((report, code)) => {
            let text = report.render(cli.format);
            let written = match &cli.out {
                Some(path) => fs::write(path, text),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return exit::INPUT;
            }
            for note in &report.partial {
                let _ = writeln!(err, "partial: {note}");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Report, i32), AppError> {
    let ctx = Context {
        budget: cli.budget,
        k_max: cli.k_max,
    };
    let target = || -> Result<Target, AppError> {
        let spec = cli
            .spec
            .as_deref()
            .ok_or_else(|| AppError::Input("this command needs --spec".into()))?;
        Target::build(&Input::load(spec)?, cli.budget)
    };
    let report = match &cli.command {
        Command::Invariants => commands::invariants(&target()?, &ctx)?,
        Command::Unions => commands::unions(&target()?, &ctx)?,
        Command::StructureCheck => commands::structure_check(&target()?, &ctx)?,
        Command::Realize { lengths } => commands::realize(&parse_length_list(lengths)?, &ctx)?,
        Command::Counterexample { d, route } => commands::counterexample(*d, *route, &ctx)?,
        Command::PowerExample { n, store_bound } => {
            commands::power_example(*n, *store_bound, &ctx)?
        }
        Command::PaperSuite {
            perturb,
            only,
            timings,
            seed,
        } => {
            let config = SuiteConfig {
                budget: cli.budget,
                perturb: *perturb,
                only: only.clone(),
                seed: *seed,
            };
            let verdicts = suite::run(&config);
            let code = if verdicts.iter().any(|v| v.outcome == Outcome::Fail) {
                exit::FAILED
            } else if verdicts.iter().any(|v| v.outcome == Outcome::Partial) {
                exit::PARTIAL
            } else {
                exit::OK
            };
            return Ok((suite::report(&verdicts, *timings), code));
        }
    };
    let code = if report.is_partial() {
        exit::PARTIAL
    } else {
        exit::OK
    };
    Ok((report, code))
}
