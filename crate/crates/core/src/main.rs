use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use propertime::scenario::{emit, parse_scenario, run, OutputFormat, ScenarioKind};

#[derive(Parser)]
#[command(
    name = "propertime",
    version,
    about = "Proper-time quantum evolution toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification check families of a verify scenario.
    Verify(Common),
    /// Propagate a wavepacket as described by a propagate scenario.
    Propagate(Common),
    /// Integrate proper time and phases along a frame scenario's trajectory.
    Frame(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Scenario file.
    scenario: PathBuf,
    /// Override the scenario's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format; defaults to the extension of --out, else json.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Suppress the per-check summary on stderr.
    #[arg(long)]
    quiet: bool,
    /// Include wall-clock timings in the report (makes it nondeterministic).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (expected, args) = match cli.command {
        Command::Verify(a) => (ScenarioKind::Verify, a),
        Command::Propagate(a) => (ScenarioKind::Propagate, a),
        Command::Frame(a) => (ScenarioKind::Frame, a),
    };
    match execute(expected, &args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum Failure {
    Usage(String),
    Run(String),
}

fn execute(expected: ScenarioKind, args: &Common) -> Result<bool, Failure> {
    let mut scenario = parse_scenario(&args.scenario).map_err(|e| Failure::Usage(e.to_string()))?;
    if scenario.kind() != expected {
        return Err(Failure::Usage(format!(
            "{} is a {} scenario; run it with `propertime {}`",
            args.scenario.display(),
            scenario.kind().name(),
            scenario.kind().name()
        )));
    }
    if let Some(seed) = args.seed {
        scenario.seed = seed;
    }
    let format = match (args.format, &args.out) {
        (Some(Format::Csv), _) => OutputFormat::Csv,
        (Some(Format::Json), _) => OutputFormat::Json,
        (None, Some(path))
            if path
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("csv")) =>
        {
            OutputFormat::Csv
        }
        (None, _) => OutputFormat::Json,
    };

    let mut report = run(&scenario).map_err(|e| Failure::Run(e.to_string()))?;
    if !args.quiet {
        for check in &report.checks {
            eprintln!("{}", check.summary_line());
        }
        for t in &report.timings {
            eprintln!("time {}: {:.3} s", t.label, t.seconds);
        }
        eprintln!(
            "{} {}: {} checks, {} failed",
            if report.passed { "PASS" } else { "FAIL" },
            report.scenario,
            report.checks.len(),
            report.failed_checks().count()
        );
    }
    if !args.timings {
        report.timings.clear();
    }
    emit(&report, format, args.out.as_deref())
        .map_err(|e| Failure::Run(format!("writing report: {e}")))?;
    Ok(report.passed)
}
