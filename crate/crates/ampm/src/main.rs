use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use ampm::{commands, CliError, Format, Report};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ampm", version, about = "Exact quantum search by analytical multiphase matching")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output here instead of stdout. For `qasm` this is the
    /// circuit file and the predicted distribution still goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phase schedule for a target fraction.
    Schedule {
        #[arg(long)]
        lambda: f64,
        /// Iteration count; defaults to the minimum exact one.
        #[arg(long)]
        l: Option<u32>,
    },
    /// Simulate a search instance.
    Run {
        #[arg(long)]
        n: u32,
        /// Marked basis states, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<usize>,
        #[arg(long)]
        l: Option<u32>,
        /// Sample this many measurement outcomes.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Success probability of one schedule across actual target fractions.
    Sweep {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, default_value_t = 999)]
        grid: usize,
    },
    /// Minimal exact iteration count against the Grover count.
    CompareIterations {
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
    /// Export the full search circuit as OpenQASM 2.0.
    Qasm {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<usize>,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Statistical fidelity between two distribution files.
    Fidelity { a: PathBuf, b: PathBuf },
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let text = match cli.command {
        Command::Schedule { lambda, l } => commands::schedule(lambda, l)?.render(cli.format)?,
        Command::Run { n, targets, l, shots, seed } => {
            commands::run(n, &targets, l, shots, seed)?.render(cli.format)?
        }
        Command::Sweep { lambda, l, grid } => commands::sweep(lambda, l, grid)?.render(cli.format)?,
        Command::CompareIterations { grid } => commands::compare_iterations(grid)?.render(cli.format)?,
        Command::Qasm { n, targets, l } => {
            let report = commands::qasm(n, &targets, l)?;
            return match &cli.out {
                Some(path) => {
                    std::fs::write(path, &report.qasm).map_err(|e| CliError::io(path, e))?;
                    write_output(None, &report.render(cli.format)?)
                }
                None => write_output(None, &report.qasm),
            };
        }
        Command::Fidelity { a, b } => commands::fidelity(&a, &b)?.render(cli.format)?,
    };
    write_output(cli.out.as_ref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
