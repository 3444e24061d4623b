use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use cremona_core::oracle::ORACLE_VERSION;
use cremona_core::weyl::{CATALOG_VERSION, FILTER_VERSION};
use serde_json::Value;

use crate::config::{Format, RunConfig};

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// What a subcommand produced, before formatting.
pub struct Report {
    pub command: &'static str,
    pub catalog_hash: Option<String>,
    pub result: Value,
    pub text: String,
    pub table: Option<Table>,
    /// False when a verification the command performs did not hold.
    pub verified: bool,
}

impl Report {
    pub fn new(command: &'static str, result: Value, text: String) -> Self {
        Report { command, catalog_hash: None, result, text, table: None, verified: true }
    }

    pub fn hash(mut self, h: impl Into<String>) -> Self {
        self.catalog_hash = Some(h.into());
        self
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header: header.iter().map(|s| s.to_string()).collect(), rows });
        self
    }

    pub fn verified(mut self, ok: bool) -> Self {
        self.verified = ok;
        self
    }
}

pub fn provenance(cfg: &RunConfig, catalog_hash: Option<&str>) -> Value {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    serde_json::json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "catalog_version": CATALOG_VERSION,
        "filter_version": FILTER_VERSION,
        "oracle_version": ORACLE_VERSION,
        "catalog_hash": catalog_hash,
        "config": cfg.to_json(),
        "generated_at": now,
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flat_rows(v: &Value) -> Vec<Vec<String>> {
    match v {
        Value::Object(map) => map.iter().map(|(k, x)| vec![k.clone(), scalar(x)]).collect(),
        other => vec![vec!["value".into(), scalar(other)]],
    }
}

pub fn emit(report: &Report, cfg: &RunConfig, out: &mut impl Write) -> std::io::Result<()> {
    let hash = report.catalog_hash.as_deref();
    match cfg.format {
        Format::Json => {
            let doc = serde_json::json!({
                "command": report.command,
                "verified": report.verified,
                "provenance": provenance(cfg, hash),
                "result": report.result,
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            writeln!(
                out,
                "# command={} catalog_version={} filter_version={} oracle_version={} catalog_hash={} seed={} prime={}",
                report.command,
                CATALOG_VERSION,
                FILTER_VERSION,
                ORACLE_VERSION,
                hash.unwrap_or("-"),
                cfg.seed,
                cfg.prime
            )?;
            let mut w = csv::Writer::from_writer(&mut *out);
            match &report.table {
                Some(t) => {
                    w.write_record(&t.header)?;
                    for r in &t.rows {
                        w.write_record(r)?;
                    }
                }
                None => {
                    w.write_record(["field", "value"])?;
                    for r in flat_rows(&report.result) {
                        w.write_record(&r)?;
                    }
                }
            }
            w.flush()
        }
        Format::Text => {
            write!(out, "{}", report.text)?;
            if !report.text.ends_with('\n') {
                writeln!(out)?;
            }
            writeln!(
                out,
                "[catalog v{} filter v{} hash {}]",
                CATALOG_VERSION,
                FILTER_VERSION,
                hash.unwrap_or("-")
            )
        }
    }
}
