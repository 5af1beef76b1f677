use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cmlab::parse::parse;
use cmlab::report::Report;
use cmlab::run::{run, RunOptions};
use cmlab::scenarios::{bundled, BUNDLED};

#[derive(Parser)]
#[command(
    name = "cmlab",
    version,
    about = "Check grade, proregularity and Cohen-Macaulay scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Step budget per check; overrides the scenario and CMLAB_BUDGET.
    #[arg(long)]
    budget: Option<u64>,
    /// Number of checks run at once.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Include wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a bundled scenario.
    Run {
        scenario: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run scenario text given on the command line.
    Check {
        text: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the names of the bundled scenarios.
    ListScenarios,
}

fn execute(text: &str, default_name: &str, common: &Common) -> ExitCode {
    let scenario = match parse(text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("cmlab: syntax error at {e}");
            return ExitCode::from(2);
        }
    };
    let name = scenario.name.clone().unwrap_or_else(|| default_name.to_string());
    let opts = RunOptions {
        budget: common.budget,
        jobs: common.jobs,
        timings: common.timings,
    };
    let report: Report = run(&scenario, &name, &opts);
    match common.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, common } => {
            let text = if Path::new(&scenario).exists() {
                match std::fs::read_to_string(&scenario) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("cmlab: cannot read {scenario}: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else if let Some(t) = bundled(&scenario) {
                t.to_string()
            } else {
                eprintln!("cmlab: no file or bundled scenario named '{scenario}'");
                return ExitCode::from(2);
            };
            let stem = Path::new(&scenario)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("scenario")
                .to_string();
            execute(&text, &stem, &common)
        }
        Command::Check { text, common } => execute(&text, "inline", &common),
        Command::ListScenarios => {
            for (name, _) in BUNDLED {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
    }
}
