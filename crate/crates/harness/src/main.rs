use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use trivext_harness::cli::{self, IdealOp};
use trivext_harness::report::ReportFile;
use trivext_harness::ringspec::RingSpec;

/// Exact checks of ideal-theoretic identities in trivial ring extensions.
///
/// The element budget can be overridden with TRIVEXT_BUDGET.
#[derive(Parser)]
#[command(name = "trivext", version)]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run registered checks and write a JSON report.
    Check {
        /// Built-in suite: `default` or `small`.
        #[arg(long)]
        suite: Option<String>,
        /// Ring-spec file whose finite rings form the suite.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Comma-separated check ids, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compute an ideal operation in a ring from a spec file.
    Ideal {
        #[arg(long)]
        spec: PathBuf,
        /// Ring name; defaults to the ring of a named ideal argument.
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, value_enum)]
        op: IdealOp,
        /// Ideal names, generator lists `{(2, 0), (0, 1)}`, or an element for `ann`.
        #[arg(long, num_args = 1.., required = true)]
        args: Vec<String>,
    },
    /// Print a free presentation and the projective-dimension verdict.
    Resolve {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Replay the counterexamples recorded in a report.
    Replay {
        #[arg(long)]
        report: PathBuf,
    },
    /// List the registered checks.
    List,
}

/// Failures that exit with status 1.
enum Failure {
    Parse(String),
    Run(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Run(e)
    }
}

fn load_spec(path: &Path) -> Result<RingSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    RingSpec::parse(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

/// Write to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn run(args: Args) -> Result<u8, Failure> {
    cli::apply_budget_env()?;
    match args.cmd {
        Cmd::Check { suite, spec, checks, seed, report } => {
            let spec = spec.as_deref().map(load_spec).transpose()?;
            let file = cli::check(suite.as_deref(), spec.as_ref(), &checks, seed)?;
            emit(&cli::summary(&file));
            if let Some(path) = report {
                std::fs::write(&path, file.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(file.exit_code() as u8)
        }
        Cmd::Ideal { spec, ring, op, args } => {
            let spec = load_spec(&spec)?;
            emit(&cli::ideal(&spec, ring.as_deref(), op, &args)?);
            Ok(0)
        }
        Cmd::Resolve { spec, module, depth } => {
            let spec = load_spec(&spec)?;
            emit(&cli::resolve(&spec, &module, depth)?);
            Ok(0)
        }
        Cmd::Replay { report } => {
            let text = std::fs::read_to_string(&report).with_context(|| format!("reading {}", report.display()))?;
            let file = ReportFile::from_json(&text).map_err(|e| Failure::Parse(format!("{}: {e}", report.display())))?;
            let (out, all) = cli::replay_report(&file)?;
            emit(&out);
            Ok(if all { 0 } else { 2 })
        }
        Cmd::List => {
            for d in trivext_harness::checks::registry() {
                let open = if d.status == trivext_harness::report::RegistryStatus::Open { " [open]" } else { "" };
                emit(&format!("{}{open}  {}\n", d.id, d.anchor));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
