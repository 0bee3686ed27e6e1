//! The `rpr` command line: argument parsing, a validated [`RunConfig`],
//! subcommand dispatch and report emission.
//!
//! Exit codes: 0 on success (including "searched and found nothing"),
//! 1 on parse or precondition errors, 2 when a budget ran out (partial
//! results are still emitted), 3 when the verifier rejects a search result.

pub mod args;
mod exec;
pub mod run_config;

use clap::Parser;
use rpr_core::report::Envelope;

pub use args::Format;
pub use run_config::{ConfigSource, Ratio, RunConfig, SeparateSpec, SubcommandKind};

const GRAMMAR_DOC: &str = "docs/grammar.md";

/// What a finished invocation wrote and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn diagnostic(msg: &str) -> String {
    let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("error").trim();
    let line = line.strip_prefix("error: ").unwrap_or(line);
    if line.contains(GRAMMAR_DOC) {
        format!("rpr: error: {line}\n")
    } else {
        format!("rpr: error: {line} (see {GRAMMAR_DOC})\n")
    }
}

fn fail(code: i32, msg: &str) -> Invocation {
    Invocation { code, stdout: String::new(), stderr: diagnostic(msg) }
}

/// Runs `rpr` on `argv` (including the program name) without touching the
/// process's own streams, except for `--output` files.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return Invocation { code: 0, stdout: e.to_string(), stderr: String::new() };
        }
        Err(e) => return fail(1, &e.to_string()),
    };
    let rc = match RunConfig::from_cli(&cli) {
        Ok(rc) => rc,
        Err(msg) => return fail(1, &msg),
    };
    run_config(&rc)
}

/// Runs an already validated configuration.
pub fn run_config(rc: &RunConfig) -> Invocation {
    let out = match exec::execute(rc) {
        Ok(out) => out,
        Err(exec::Failure::User(msg)) => return fail(1, &msg),
        Err(exec::Failure::Unsound(msg)) => {
            return Invocation { code: 3, stdout: String::new(), stderr: format!("rpr: internal error: {msg}\n") }
        }
    };
    let body = match rc.format {
        Format::Json => {
            let mut env = Envelope::new(serde_json::to_value(rc).expect("serializable"), out.result);
            env.citations = out.citations;
            env.nodes = out.nodes;
            env.to_json() + "\n"
        }
        Format::Text => out.text,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.table.header).expect("in-memory write");
            for row in &out.table.rows {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
        }
    };
    let mut stderr = String::new();
    if out.code == 2 {
        stderr.push_str("rpr: budget exhausted; results are partial\n");
    }
    match &rc.output {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Invocation { code: out.code, stdout: String::new(), stderr },
            Err(e) => fail(1, &format!("cannot write {}: {e}", path.display())),
        },
        None => Invocation { code: out.code, stdout: body, stderr },
    }
}
