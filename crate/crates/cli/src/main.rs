use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use dualhs_cli::{run_text, FieldChoice, Format, Options};

/// Run a dual Hilbert-Samuel session script.
#[derive(Parser, Debug)]
#[command(name = "dualhs", version, about)]
struct Args {
    /// Session file; `-` or nothing reads standard input.
    script: Option<PathBuf>,
    /// Seed for every randomized choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coefficient field, `Q` or `Fp:<p>`; overrides the script.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldChoice>,
    /// Window length for superficial-element checks.
    #[arg(long)]
    window: Option<usize>,
    /// Largest n a value table may grow to.
    #[arg(long)]
    nmax: Option<usize>,
    /// Format for the final report and for `report` lines without one.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

fn parse_field(s: &str) -> Result<FieldChoice, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn read_script(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

fn main() -> Result<ExitCode> {
    let args = Args::parse();
    let text = read_script(args.script.as_ref())?;
    let opts = Options { seed: args.seed, field: args.field, window: args.window, nmax: args.nmax, format: args.format };
    let outcome = match run_text(&text, &opts) {
        Ok(o) => o,
        Err(errors) => {
            for e in errors {
                eprintln!("error: {e}");
            }
            return Ok(ExitCode::from(2));
        }
    };
    let mut stdout = std::io::stdout().lock();
    for e in &outcome.emissions {
        match &e.path {
            Some(p) => std::fs::write(p, &e.text).with_context(|| format!("writing {p}"))?,
            None => stdout.write_all(e.text.as_bytes())?,
        }
    }
    for r in outcome.reports.iter().filter(|r| r.error.is_some()) {
        eprintln!("error: line {}: {}", r.line, r.error.as_deref().unwrap_or_default());
    }
    Ok(ExitCode::from(outcome.exit_code() as u8))
}
