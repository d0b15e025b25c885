use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use folres::acceptance::{run_all, seed_from_env};
use folres::{export_dot, run_scenario, CliError, Overrides, Scenario};

#[derive(Parser)]
#[command(name = "folres", version, about = "Resolve 1-foliations over F_p by ordinary and weighted blow-ups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run {
        scenario: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the blow-up tree as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        degree_bound: Option<u64>,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Run the acceptance suite.
    Selftest,
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn run(scenario: PathBuf, report: Option<PathBuf>, dot: Option<PathBuf>, ov: Overrides) -> Result<i32, CliError> {
    let s = Scenario::load(&scenario)?;
    let rep = run_scenario(&s, &ov)?;
    let json = rep.to_json();
    match report {
        Some(path) => std::fs::write(path, json + "\n")?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{json}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    if let Some(path) = dot {
        let text = match &rep.resolution {
            Some(res) => export_dot(res),
            None => "digraph blowup_tree {\n}\n".to_string(),
        };
        std::fs::write(path, text)?;
    }
    if let Some(d) = &rep.diagnostic {
        eprintln!("{}: {d}", rep.driver);
    }
    Ok(rep.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return exit(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::Run {
            scenario,
            report,
            dot,
            degree_bound,
            max_depth,
        } => match run(scenario, report, dot, Overrides { degree_bound, max_depth }) {
            Ok(code) => exit(code),
            Err(e) => {
                eprintln!("folres: {e}");
                exit(match e {
                    CliError::Parse(_) => 2,
                    CliError::Internal(_) => 3,
                    CliError::Io(_) => 2,
                })
            }
        },
        Command::Selftest => {
            let seed = seed_from_env();
            println!("seed {seed}");
            let results = run_all(seed);
            for r in &results {
                println!("{r}");
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} passed, {failed} failed", results.len() - failed);
            exit(if failed == 0 { 0 } else { 1 })
        }
    }
}
