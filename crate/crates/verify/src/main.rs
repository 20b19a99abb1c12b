use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use turan_verify::{emit_report, run_suites, select_suites, Config, Format, Suite, VerifyError, CONFIG_ENV};

/// Verify Turán-type inequalities for reciprocal-gamma series over parameter grids.
#[derive(Parser)]
#[command(name = "verify", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more suites and emit a report.
    Run {
        /// Suite name; repeat or comma-separate for several. Defaults to `[run] suites`.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Scan the conjecture's finite sums for counterexamples.
    Conjecture {
        #[command(flatten)]
        common: Common,
    },
    /// List the available suites.
    ListSuites,
}

#[derive(Args)]
struct Common {
    /// TOML config; built-in defaults apply when neither this nor the env variable is set.
    #[arg(long, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; 1 runs serially.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn execute(suites: Vec<String>, common: Common) -> Result<bool, VerifyError> {
    let config = match &common.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if common.jobs == Some(0) {
        return Err(VerifyError::Config("--jobs must be at least 1".into()));
    }
    let selected = select_suites(&suites, &config)?;
    let report = run_suites(&selected, &config, common.jobs)?;
    let bytes = emit_report(&report, common.format)?;
    match &common.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|source| VerifyError::Io {
            path: path.clone(),
            source,
        })?,
        None => std::io::stdout().write_all(&bytes).map_err(|source| VerifyError::Io {
            path: "<stdout>".into(),
            source,
        })?,
    }
    let s = &report.summary;
    eprintln!(
        "{}: {} checks, {} pass, {} fail, {} skipped, {} hypothesis_violation",
        report.suite, s.total, s.pass, s.fail, s.skipped, s.hypothesis_violation
    );
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::ListSuites => {
            for s in Suite::ALL {
                println!("{:<18} {}", s.name(), s.about());
            }
            return ExitCode::SUCCESS;
        }
        Command::Run { suite, common } => execute(suite, common),
        Command::Conjecture { common } => execute(vec![Suite::Conjecture.name().to_string()], common),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
