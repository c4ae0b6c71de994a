use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use ltlsynth::pipeline::{run_text, Emit, Options, Stats};
use ltlsynth_core::automata::Limits;
use ltlsynth_core::hierarchy::classify;
use ltlsynth_core::ltl::{parse_with, Formula};

#[derive(Parser)]
#[command(
    name = "ltlsynth",
    version,
    about = "GR(1) synthesis from recurrence LTL specifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide realizability of a spec file and write the artifacts.
    Synth {
        spec: PathBuf,
        /// Directory for the artifacts; nothing is written without it.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        skip_verify: bool,
        #[arg(long, default_value_t = 16)]
        max_vars: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random lassos per conjunct in the automaton check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Emit::Both)]
        emit: Emit,
    },
    /// Print the hierarchy classes of a formula.
    Classify { formula: String },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<u8> {
    match Cli::parse().command {
        Command::Synth {
            spec,
            out,
            skip_verify,
            max_vars,
            seed,
            samples,
            emit,
        } => {
            let text = std::fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
            let options = Options {
                limits: Limits {
                    max_vars,
                    ..Limits::default()
                },
                skip_verify,
                seed,
                samples,
                emit,
            };
            match run_text(&text, &options) {
                Ok(s) => {
                    if let Some(dir) = &out {
                        s.write_artifacts(dir)
                            .with_context(|| format!("writing {}", dir.display()))?;
                    }
                    println!("{}", if s.realizable { "REALIZABLE" } else { "UNREALIZABLE" });
                    println!("{}", Stats::header());
                    println!("{}", s.stats.row());
                    Ok(s.exit_code() as u8)
                }
                Err(f) => {
                    eprintln!("{}: {f}", spec.display());
                    Ok(f.exit_code() as u8)
                }
            }
        }
        Command::Classify { formula } => {
            let f: Formula = match parse_with(&formula, |_| true) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(2);
                }
            };
            println!("{}", classify(&f));
            Ok(0)
        }
    }
}
