//! `lgsound`: Leggett-Garg simulations, spectrum sonification and
//! measurement-driven Shepard-tone music.

mod compose_cmd;
mod config;
mod lg_cmd;
mod manifest;
mod sonify_cmd;

use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "lgsound", version, about)]
#[command(after_help = "Global option: --config FILE reads `key = value` lines as default flags for the subcommand.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate the three interval record sets for one angle and compute K.
    LgRun(lg_cmd::RunArgs),
    /// K at the standard angles (π/3, π/2, 0.712π, π) as a CSV table.
    LgTable(lg_cmd::TableArgs),
    /// Write a synthetic spectrum directory.
    GenSynth(sonify_cmd::GenSynthArgs),
    /// Turn a directory of spectra into audio, a spectrogram and switch events.
    Sonify(sonify_cmd::SonifyArgs),
    /// Render measurement records as Shepard-tone movements.
    Compose(compose_cmd::ComposeArgs),
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::LgRun(a) => lg_cmd::run(a),
        Command::LgTable(a) => lg_cmd::table(a),
        Command::GenSynth(a) => sonify_cmd::gen_synth(a),
        Command::Sonify(a) => sonify_cmd::run(a),
        Command::Compose(a) => compose_cmd::run(a),
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = parse(argv).unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Later occurrences of a flag replace earlier ones, so command-line flags
/// win over values spliced in from a config file.
fn parse(argv: Vec<String>) -> Result<Cli, clap::Error> {
    let cmd = Cli::command().mut_subcommands(|s| s.args_override_self(true));
    Cli::from_arg_matches(&cmd.try_get_matches_from(argv)?)
}

/// Parses `a:b` into a pair.
pub(crate) fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad number `{x}` in `{s}`"));
    Ok((p(a)?, p(b)?))
}

pub(crate) fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

pub(crate) fn create_dir(dir: &std::path::Path) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))
}
