use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use complete_orthoscheme::{Error, ErrorKind, SweepRow};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1.0";

pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_REGIME: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_IO: u8 = 74;

pub const CSV_HEADER: [&str; 6] = ["h", "regime", "dv_dh", "volume", "method", "error"];

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// Flag values that parse but are rejected before reaching the library.
    Domain(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => EXIT_DOMAIN,
                ErrorKind::Regime => EXIT_REGIME,
            },
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn to_json(&self) -> String {
        let (code, detail) = match self {
            CliError::Core(e) => (e.code(), e.to_string()),
            CliError::Domain(msg) => ("invalid_params", msg.clone()),
            CliError::Io(e) => ("io", e.to_string()),
        };
        json!({ "error": code, "detail": detail }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Envelope for every single-object command.
#[derive(Debug, Serialize)]
pub struct OutputRecord<P: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub params: P,
    pub payload: Value,
    pub warnings: Vec<String>,
}

impl<P: Serialize> OutputRecord<P> {
    pub fn new(command: &'static str, params: P, payload: Value) -> Self {
        Self { schema_version: SCHEMA_VERSION, command, params, payload, warnings: Vec::new() }
    }
}

pub fn to_json_line<S: Serialize>(value: &S) -> Result<String, CliError> {
    let mut s = serde_json::to_string(value).map_err(io::Error::other)?;
    s.push('\n');
    Ok(s)
}

/// Shortest round-trip decimal, switching to exponent form for very small or large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record([
            fmt_f64(row.h),
            row.regime.as_str().to_string(),
            opt_f64(row.dv_dh),
            opt_f64(row.volume),
            row.method.map(|m| m.as_str()).unwrap_or_default().to_string(),
            opt_f64(row.error),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| io::Error::other(e).into())
}

/// One `{"warning": …, "h": …}` line per row diagnostic.
pub fn sweep_diagnostics(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    for row in rows {
        for d in &row.diagnostics {
            let _ = writeln!(out, "{}", json!({ "warning": d, "h": row.h }));
        }
    }
    out
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
