use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use qapery_core::VerificationReport;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Cli, Format};

/// One line of `converge.csv`.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergeRow {
    pub identity: String,
    pub q: String,
    pub r: u32,
    pub digits: u32,
    pub terms_plain: Option<usize>,
    pub terms_accelerated: Option<usize>,
    pub millis_plain: u64,
    pub millis_accelerated: u64,
    pub plain_status: String,
}

const CONVERGE_HEADER: &str =
    "identity,q,r,digits,terms_plain,terms_accelerated,millis_plain,millis_accelerated,plain_status";

impl ConvergeRow {
    fn csv(&self) -> String {
        let opt = |v: Option<usize>| v.map(|t| t.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.identity,
            csv_field(&self.q),
            self.r,
            self.digits,
            opt(self.terms_plain),
            opt(self.terms_accelerated),
            self.millis_plain,
            self.millis_accelerated,
            self.plain_status
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The run configuration recorded in every report.
pub fn run_config(cli: &Cli) -> Value {
    json!({
        "command": cli.command,
        "out": cli.common.out.display().to_string(),
        "format": cli.common.format,
        "precision": cli.common.precision,
    })
}

/// A report as written to disk: everything deterministic at top level, wall
/// time under `metadata`.
pub fn report_document(report: &VerificationReport, config: &Value) -> Value {
    let mut doc = serde_json::to_value(report).expect("report serializes");
    let obj = doc.as_object_mut().expect("report is an object");
    let millis = obj.remove("millis").unwrap_or(Value::Null);
    obj.insert("config".into(), config.clone());
    obj.insert("metadata".into(), json!({ "millis": millis }));
    doc
}

fn clear_previous(dir: &Path) -> Result<()> {
    if !dir.exists() {
        return Ok(());
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        let ours = path
            .extension()
            .is_some_and(|e| e == "json" || e == "csv");
        if ours && path.is_file() {
            fs::remove_file(&path).with_context(|| format!("removing stale {}", path.display()))?;
        }
    }
    Ok(())
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes one JSON file per report plus `summary.json` (and `converge.csv`
/// when rows are given) under `<out>/<command>/`, prints the table, and
/// returns whether every report passed.
pub fn write_campaign(cli: &Cli, reports: &[VerificationReport], rows: Option<&[ConvergeRow]>) -> Result<bool> {
    let config = run_config(cli);
    let dir = cli.common.out.join(cli.command.name());
    clear_previous(&dir)?;
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;

    let mut index = Vec::with_capacity(reports.len());
    let mut total_millis = 0u64;
    for (i, report) in reports.iter().enumerate() {
        let file = format!("{:04}-{}.json", i + 1, report.check);
        write_json(&dir.join(&file), &report_document(report, &config))?;
        total_millis += report.millis;
        index.push(json!({
            "file": file,
            "check": report.check,
            "params": report.params,
            "status": report.status,
        }));
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let summary = json!({
        "config": config,
        "total": reports.len(),
        "passed": passed,
        "failed": reports.len() - passed,
        "reports": index,
        "metadata": { "millis": total_millis },
    });
    write_json(&dir.join("summary.json"), &summary)?;

    if let Some(rows) = rows {
        let mut csv = String::from(CONVERGE_HEADER);
        csv.push('\n');
        for row in rows {
            csv.push_str(&row.csv());
            csv.push('\n');
        }
        fs::write(dir.join("converge.csv"), &csv)?;
    }

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match (cli.common.format, rows) {
        (Format::Json, _) => writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?,
        (Format::Csv, Some(rows)) => {
            writeln!(out, "{CONVERGE_HEADER}")?;
            for row in rows {
                writeln!(out, "{}", row.csv())?;
            }
        }
        (Format::Csv, None) => {
            writeln!(out, "check,params,status,residual_digits,terms,max_degree,witness")?;
            for r in reports {
                let opt = |v: Option<String>| v.unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.check,
                    csv_field(&r.param_string()),
                    r.status,
                    opt(r.residual_digits.map(|d| format!("{d:.2}"))),
                    opt(r.terms.map(|t| t.to_string())),
                    opt(r.max_degree.map(|d| d.to_string())),
                    csv_field(&r.witness)
                )?;
            }
        }
        (Format::Text, _) => {
            for r in reports {
                let witness: String = r.witness.chars().take(80).collect();
                writeln!(
                    out,
                    "{:<4}  {:<24} {:<40} {}",
                    r.status.to_string().to_uppercase(),
                    r.check,
                    r.param_string(),
                    witness
                )?;
            }
            writeln!(out, "{passed}/{} checks passed; reports in {}", reports.len(), dir.display())?;
        }
    }
    Ok(passed == reports.len())
}
