use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hopfcheck::double::{drinfeld_double, heisenberg};
use hopfcheck::format::{self, Loaded};
use hopfcheck::report::CheckReport;
use hopfcheck::suites::{self, Options, Suite};
use hopfcheck::{catalog, Result};

/// Exact checks for Drinfeld and Heisenberg doubles of finite-dimensional Hopf algebras.
///
/// Exit status: 0 when every check passes, 1 when some check fails, 2 on invalid input.
/// HOPFCHECK_THREADS caps the number of worker threads.
#[derive(Parser)]
#[command(name = "hopfcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load an algebra file and verify its axioms.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List or export builtin algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Build a derived algebra from a file or `catalog:<name>`.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        source: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a check suite on a file or `catalog:<name>`.
    Check {
        /// hopf, pairing, double, ybe, iota, moment, reduction, rtt or all
        suite: String,
        source: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also run parts whose ambient space exceeds 256 dimensions.
        #[arg(long)]
        heavy: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Double,
    Dual,
    Tdual,
    Heisenberg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

fn write_out(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn finish(report: &CheckReport, format: ReportFormat, output: &Option<PathBuf>) -> Result<ExitCode> {
    let text = match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    };
    write_out(output, &text)?;
    for c in report.failed() {
        eprintln!("failed: {} [{}]: {}", c.name, c.anchor, c.witness.as_deref().unwrap_or(""));
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { file, report, output } => {
            let loaded = format::load_path(&file)?;
            finish(&suites::validate(&loaded), report, &output)
        }
        Command::Catalog { action: CatalogAction::List } => {
            for name in catalog::NAMES {
                let h = catalog::build(name)?;
                println!("{name}\tdim {}\t{}", h.dim(), h.alg.field);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { action: CatalogAction::Emit { name, output } } => {
            write_out(&output, &format::emit_hopf(&catalog::build(&name)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Build { kind, source, output } => {
            let a = format::load_source(&source)?.into_hopf()?;
            let built = match kind {
                BuildKind::Double => Loaded::Hopf(drinfeld_double(&a)?),
                BuildKind::Dual => Loaded::Hopf(a.dual().with_name(format!("{}*", a.name()))),
                BuildKind::Tdual => Loaded::Hopf(drinfeld_double(&a)?.dual().with_name(format!("T({})", a.name()))),
                BuildKind::Heisenberg => Loaded::Plain(heisenberg(&a)?.alg),
            };
            write_out(&output, &format::emit(&built))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { suite, source, report, output, heavy } => {
            let suite: Suite = suite.parse()?;
            let a = format::load_source(&source)?.into_hopf()?;
            finish(&suites::run(suite, &a, Options { heavy })?, report, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("HOPFCHECK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|n| *n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hopfcheck: {e}");
            ExitCode::from(2)
        }
    }
}
