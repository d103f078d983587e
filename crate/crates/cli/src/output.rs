use serde::Serialize;
use serde_json::{Map, Value};
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One output line. `diff` is only present for `--method both`.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub command: String,
    pub params: Map<String, Value>,
    pub lambda: Option<f64>,
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub err: Option<f64>,
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<f64>,
}

impl Record {
    pub fn new(command: &str, params: Map<String, Value>) -> Self {
        Record { command: command.to_string(), params, lambda: None, re: None, im: None, err: None, residual: None, diff: None }
    }
}

pub fn write_records(records: &[Record], format: Format, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["command", "params", "lambda", "re", "im", "err", "residual", "diff"])?;
            let cell = |x: Option<f64>| x.map(|v| format!("{v:?}")).unwrap_or_default();
            for r in records {
                w.write_record([
                    r.command.clone(),
                    Value::Object(r.params.clone()).to_string(),
                    cell(r.lambda),
                    cell(r.re),
                    cell(r.im),
                    cell(r.err),
                    cell(r.residual),
                    cell(r.diff),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
