//! Command-line front end: configuration parsing, command execution and
//! table output for `fkin`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use config::{parse_config, Format, RunConfig};
use error::CliError;
use std::fs;
use std::io::Write;

pub const USAGE: &str = "\
usage: fkin [--config <path>] [--command <name>] [--out <path>] [--format csv|json] [--<key> <value>]...

commands: eval, solve, oracle-compare, laplace-check
Every --<key> <value> pair overrides the same key from the config file.
Exit status: 0 success, 1 invalid input, 2 a comparison exceeded its tolerance.";

/// Splits the argument list into an optional config path and key/value
/// overrides (`--key value` or `--key=value`).
/// A config file path (if given) and the `--key value` overrides, in order.
pub type ParsedArgs = (Option<String>, Vec<(String, String)>);

pub fn parse_args(args: &[String]) -> Result<ParsedArgs, CliError> {
    let mut config = None;
    let mut overrides = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let Some(flag) = arg.strip_prefix("--") else {
            return Err(CliError::Usage(format!("unexpected argument '{arg}'")));
        };
        let (key, value) = match flag.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage(format!("flag --{flag} needs a value")))?;
                (flag.to_string(), v.clone())
            }
        };
        if key == "config" {
            config = Some(value);
        } else {
            overrides.push((key, value));
        }
    }
    Ok((config, overrides))
}

/// Loads and validates the run described by the command-line arguments.
pub fn load(args: &[String]) -> Result<RunConfig, CliError> {
    let (path, overrides) = parse_args(args)?;
    let text = match &path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Io(format!("cannot read config '{p}': {e}")))?,
        None => String::new(),
    };
    parse_config(&text, &overrides)
}

/// Runs the configuration and writes its table. Returns the exit status.
pub fn execute(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let outcome = commands::run(cfg)?;
    let mut buf = Vec::new();
    match cfg.format {
        Format::Csv => output::write_csv(&outcome.table, &mut buf)?,
        Format::Json => output::write_json(&outcome.table, &mut buf)?,
    }
    match &cfg.out {
        Some(path) => {
            fs::write(path, &buf).map_err(|e| CliError::Io(format!("cannot write '{}': {e}", path.display())))?
        }
        None => stdout.write_all(&buf).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(outcome.exit_code)
}

/// Entry point shared by the binary and the tests.
pub fn main_with_args(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if args.iter().any(|a| a == "--help" || a == "-h") {
        let _ = writeln!(stdout, "{USAGE}");
        return 0;
    }
    let result = load(args).and_then(|cfg| execute(&cfg, stdout));
    match result {
        Ok(code) => code,
        Err(e) => {
            let kind = match e {
                CliError::Parse { .. } => "parse error",
                CliError::Validation(_) => "validation error",
                CliError::Usage(_) => "usage error",
                CliError::Io(_) => "i/o error",
            };
            let _ = writeln!(stderr, "fkin: {kind}: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(stderr, "{USAGE}");
            }
            e.exit_code()
        }
    }
}
