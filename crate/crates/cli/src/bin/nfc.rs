use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nfc_algebra::{parse_bigrat, BigRat};
use nfc_cli::emit::{emit, Format};
use nfc_cli::input::{parse_input, parse_mode};
use nfc_cli::run::{classify, run, RunOptions};
use nfc_cli::verify::{run_suite, Suite};
use nfc_cli::CliError;
use nfc_core::{LevelTag, Mode};

/// Normal forms of non-resonant double-Hopf vector fields.
#[derive(Parser, Debug)]
#[command(name = "nfc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classification invariants of the first-level field.
    Classify(RunArgs),
    /// Normal form at the requested level.
    Normalize {
        #[command(flatten)]
        run: RunArgs,
        /// s+1, r+1 or infinite.
        #[arg(long, default_value = "infinite", value_parser = parse_level)]
        level: LevelTag,
    },
    /// First-level normal form only.
    FirstLevel(RunArgs),
    /// Runs built-in verification suites; all of them when none is named.
    Verify {
        #[arg(value_parser = parse_suite)]
        suites: Vec<Suite>,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Input file.
    input: PathBuf,
    /// state, orbital or parametric.
    #[arg(long, value_parser = parse_mode_arg)]
    mode: Option<Mode>,
    /// Maximal index sum N.
    #[arg(long)]
    degree: Option<u32>,
    /// Maximal parameter degree M.
    #[arg(long = "mu-degree")]
    mu_degree: Option<u32>,
    /// Numeric substitution `name=p/q`, repeatable.
    #[arg(long, value_parser = parse_subst)]
    subst: Vec<(String, BigRat)>,
    /// text, json or latex.
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
    /// Output file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_mode_arg(s: &str) -> Result<Mode, String> {
    parse_mode(s).ok_or_else(|| format!("unknown mode `{s}`"))
}

fn parse_level(s: &str) -> Result<LevelTag, String> {
    match s {
        "first" => Ok(LevelTag::First),
        "s+1" => Ok(LevelTag::SPlus1),
        "r+1" => Ok(LevelTag::RPlus1),
        "infinite" => Ok(LevelTag::Infinite),
        _ => Err(format!("unknown level `{s}`")),
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::parse(s).ok_or_else(|| format!("unknown format `{s}`"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("unknown suite `{s}`, expected one of {}", names.join(", "))
    })
}

fn parse_subst(s: &str) -> Result<(String, BigRat), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=p/q, got `{s}`"))?;
    let value = parse_bigrat(value).map_err(|e| e.to_string())?;
    Ok((name.trim().to_string(), value))
}

fn init_threads() {
    if let Some(n) = std::env::var("NFC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn execute(args: &RunArgs, level: LevelTag, classify_only: bool) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)?;
    let spec = parse_input(&text)?;
    let opts = RunOptions { mode: args.mode, level, degree: args.degree, mu_degree: args.mu_degree, subst: args.subst.clone() };
    let report = if classify_only { classify(&spec, &opts)? } else { run(&spec, &opts)? };
    let out = emit(&report, args.format)?;
    match &args.out {
        Some(path) => std::fs::write(path, out)?,
        None => print!("{out}"),
    }
    Ok(())
}

fn verify(suites: &[Suite]) -> Result<(), CliError> {
    let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let mut failed = Vec::new();
    for s in suites {
        let rep = run_suite(s);
        println!("{}", rep.render());
        if !rep.passed() {
            failed.push(s.name());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(failed.join(", ")))
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => execute(a, LevelTag::First, true),
        Command::Normalize { run, level } => execute(run, *level, false),
        Command::FirstLevel(a) => execute(a, LevelTag::First, false),
        Command::Verify { suites } => verify(suites),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
