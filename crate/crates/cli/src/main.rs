use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use defdyn::defsets::{set_modulus_guard, DEFAULT_MODULUS_GUARD};
use defdyn_cli::{catalog, run_scenario, text, Options, EXIT_SCHEMA};

/// Runs definable-dynamics scenarios and prints a report.
#[derive(Parser, Debug)]
#[command(name = "defdyn", version)]
struct Args {
    /// Scenario file (JSON).
    #[arg(long, required_unless_present = "catalog")]
    scenario: Option<PathBuf>,
    /// Print a human-readable rendering instead of JSON.
    #[arg(long)]
    text: bool,
    /// Re-run tasks that have a brute-force counterpart and compare.
    #[arg(long)]
    with_oracle: bool,
    /// Largest modulus or level any set or task may use.
    #[arg(long, default_value_t = DEFAULT_MODULUS_GUARD)]
    level_guard: u64,
    /// Print the operation catalog and exit.
    #[arg(long)]
    catalog: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.catalog {
        println!("{}", serde_json::to_string_pretty(&catalog::list_capabilities()).expect("catalog"));
        return ExitCode::SUCCESS;
    }
    let path = args.scenario.expect("clap enforces --scenario");
    if args.level_guard == 0 {
        eprintln!("the level guard must be positive");
        return ExitCode::from(EXIT_SCHEMA as u8);
    }
    set_modulus_guard(args.level_guard);
    let opts = Options { with_oracle: args.with_oracle, level_guard: args.level_guard };
    match run_scenario(&path, &opts) {
        Ok(report) => {
            let wants_text = args.text || report.input.pointer("/output/text") == Some(&serde_json::Value::Bool(true));
            if wants_text {
                print!("{}", text::render_report(&report));
            } else {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("report"));
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_SCHEMA as u8)
        }
    }
}
