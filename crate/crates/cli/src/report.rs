use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use crate::Format;

/// Input errors. Failed checks are reported through [`Report::passed`] instead.
#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn input<E: Display>(context: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError(format!("{context}: {e}"))
}

/// Output of one command in both renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Report {
    pub fn value(text: impl Into<String>, json: Value) -> Self {
        Report { text: text.into(), json, passed: true }
    }

    pub fn check(text: impl Into<String>, json: Value, passed: bool) -> Self {
        Report { text: text.into(), json, passed }
    }

    /// A single displayable result, rendered as a JSON string.
    pub fn display(x: impl Display) -> Self {
        let s = x.to_string();
        Report::value(s.clone(), json!(s))
    }

    pub fn emit(&self, format: Format) {
        let body = match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serialisable"),
        };
        // a closed pipe (e.g. `| head`) is not an error worth a panic
        let _ = writeln!(std::io::stdout().lock(), "{body}");
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// Inline text, or the contents of a file when written as `@path`.
pub fn inline_or_file(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => read_file(Path::new(path)),
        None => Ok(arg.to_string()),
    }
}
