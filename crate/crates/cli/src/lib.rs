//! Command-line front end: every subcommand prints one JSON document
//! `{"certificates", "command", "input", "result", "version"}` with sorted
//! keys.

mod args;
mod commands;
pub mod params;
pub mod verify;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use endoatlas::endoclass::EndoError;
use endoatlas::exactmath::ExactError;
use endoatlas::numfield::NumFieldError;
use endoatlas::quatorder::QuatError;
use serde_json::{json, Value};
use thiserror::Error;

pub use commands::SEEDED;
use params::{JobSpec, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SCHEMA: i32 = 65;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SEED_ENV: &str = "ENDOATLAS_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    NumField(#[from] NumFieldError),
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// What the process should print and exit with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Interactive,
    Job,
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values serialise");
    s.push('\n');
    s
}

fn error_doc(command: Option<&str>, input: Value, kind: &str, message: String) -> Value {
    json!({
        "command": command,
        "input": input,
        "error": { "kind": kind, "message": message },
        "version": VERSION,
    })
}

fn fail(code: i32, command: Option<&str>, input: Value, kind: &str, message: String) -> Output {
    Output { code, stdout: render(&error_doc(command, input, kind, message)) }
}

fn resolve_seed(explicit: Option<u64>, env_seed: Option<&str>, mode: Mode) -> Result<(u64, &'static str), String> {
    if let Some(s) = explicit {
        return Ok((s, "explicit"));
    }
    if let Some(text) = env_seed {
        return text
            .trim()
            .parse()
            .map(|s| (s, "environment"))
            .map_err(|_| format!("{SEED_ENV}={text:?} is not an unsigned integer"));
    }
    match mode {
        Mode::Interactive => Ok((0, "default")),
        Mode::Job => Err(format!("job files must give \"seed\" (or set {SEED_ENV}) for randomised commands")),
    }
}

fn dispatch(name: &str, params: Params, mode: Mode, env_seed: Option<&str>, output: Option<std::path::PathBuf>) -> Output {
    let invalid_code = if mode == Mode::Job { EXIT_SCHEMA } else { EXIT_USAGE };
    let invalid_kind = if mode == Mode::Job { "schema" } else { "usage" };
    let seeded = SEEDED.contains(&name);
    let seed = if seeded {
        match resolve_seed(params.seed, env_seed, mode) {
            Ok(s) => Some(s),
            Err(msg) => return fail(invalid_code, Some(name), Value::Null, invalid_kind, msg),
        }
    } else {
        None
    };
    let out = match commands::execute(name, &params, seed.map_or(0, |s| s.0)) {
        Ok(mut o) => {
            if let Some((_, source)) = seed {
                o.input["seed_source"] = json!(source);
            }
            let code = match o.status {
                commands::Status::Ok => EXIT_OK,
                commands::Status::HypothesisFailure => EXIT_HYPOTHESIS,
                commands::Status::Failed => EXIT_ERROR,
            };
            let doc = json!({
                "command": name,
                "input": o.input,
                "result": o.result,
                "certificates": o.certificates,
                "version": VERSION,
            });
            Output { code, stdout: render(&doc) }
        }
        Err(CliError::Invalid(msg)) => fail(invalid_code, Some(name), Value::Null, invalid_kind, msg),
        Err(e) => fail(EXIT_ERROR, Some(name), Value::Null, "computation", e.to_string()),
    };
    if let Some(path) = output {
        if let Err(e) = std::fs::write(&path, &out.stdout) {
            return fail(EXIT_ERROR, Some(name), Value::Null, "io", format!("{}: {e}", path.display()));
        }
    }
    out
}

fn run_job(path: &std::path::Path, env_seed: Option<&str>, output: Option<std::path::PathBuf>) -> Output {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_USAGE, None, Value::Null, "usage", format!("{}: {e}", path.display())),
    };
    let job: JobSpec = match serde_json::from_str(&text) {
        Ok(j) => j,
        Err(e) => return fail(EXIT_SCHEMA, None, Value::Null, "schema", e.to_string()),
    };
    if !commands::COMMANDS.contains(&job.command.as_str()) {
        return fail(EXIT_SCHEMA, None, Value::Null, "schema", format!("unknown command {:?}", job.command));
    }
    let name = commands::COMMANDS.iter().find(|c| **c == job.command).expect("checked");
    dispatch(name, job.params, Mode::Job, env_seed, output.or(job.output))
}

/// Runs one invocation with an explicit value for the seed environment
/// variable, so callers can test without touching the process environment.
pub fn run_with_env<I, T>(argv: I, env_seed: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output { code: EXIT_OK, stdout: e.to_string() },
                _ => fail(EXIT_USAGE, None, Value::Null, "usage", e.to_string()),
            };
        }
    };
    match (cli.job, cli.command) {
        (Some(path), None) => run_job(&path, env_seed, cli.output),
        (None, Some(cmd)) => match cmd.into_params() {
            Ok((name, params)) => dispatch(name, params, Mode::Interactive, env_seed, cli.output),
            Err(e) => fail(EXIT_USAGE, None, Value::Null, "usage", e.to_string()),
        },
        _ => fail(EXIT_USAGE, None, Value::Null, "usage", "give a subcommand or --job FILE".into()),
    }
}

/// Runs one invocation, reading the seed fallback from the environment.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    run_with_env(argv, env_seed.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_resolution_order() {
        assert_eq!(resolve_seed(Some(4), Some("7"), Mode::Job), Ok((4, "explicit")));
        assert_eq!(resolve_seed(None, Some(" 7 "), Mode::Job), Ok((7, "environment")));
        assert_eq!(resolve_seed(None, None, Mode::Interactive), Ok((0, "default")));
        assert!(resolve_seed(None, None, Mode::Job).is_err());
        assert!(resolve_seed(None, Some("-1"), Mode::Interactive).is_err());
    }

    #[test]
    fn rendering_is_canonical() {
        let doc = json!({ "version": "x", "command": "c", "input": {}, "result": 1, "certificates": null });
        let text = render(&doc);
        assert!(text.ends_with('\n'));
        assert!(text.find("\"certificates\"").unwrap() < text.find("\"command\"").unwrap());
        assert!(text.find("\"result\"").unwrap() < text.find("\"version\"").unwrap());
    }
}
