//! Record formats for reports: plain text, CSV and JSON lines.
//!
//! Exact values are written as `num/2^k` in CSV and JSON lines and as a
//! reduced fraction in plain text. Every row has the same columns whichever
//! formulas ran; a formula that was not selected or was skipped leaves its
//! value empty (CSV), `null` (JSON) or `-` / `skipped` (plain).

use std::str::FromStr;

use serde::Serialize;

use crate::invariants::Formula;
use crate::verify::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(OutputFormat::Plain),
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            other => Err(format!("unknown output format `{other}`")),
        }
    }
}

/// Column order of the CSV output.
pub const CSV_HEADER: &str = "graph6,n,m,phi_definition,phi_eulerian,psi,equal,skipped,\
claim_checked,parity_checked,identity_violations,\
elapsed_ms_definition,elapsed_ms_eulerian,elapsed_ms_corank";

const COLUMNS: [(Formula, &str); 3] = [
    (Formula::Definition, "phi_definition"),
    (Formula::Eulerian, "phi_eulerian"),
    (Formula::Corank, "psi"),
];

#[derive(Serialize)]
struct ElapsedMs {
    definition: Option<f64>,
    eulerian: Option<f64>,
    corank: Option<f64>,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    graph6: &'a str,
    n: usize,
    m: usize,
    phi_definition: Option<String>,
    phi_definition_approx: Option<f64>,
    phi_eulerian: Option<String>,
    phi_eulerian_approx: Option<f64>,
    psi: Option<String>,
    psi_approx: Option<f64>,
    equal: bool,
    skipped: Vec<&'static str>,
    claim_checked: u64,
    parity_checked: u64,
    identity_violations: u64,
    elapsed_ms: Option<ElapsedMs>,
}

fn elapsed_ms(r: &VerificationReport, f: Formula) -> Option<f64> {
    r.run(f).map(|run| run.elapsed.as_secs_f64() * 1e3)
}

fn exact(r: &VerificationReport, f: Formula) -> Option<String> {
    r.value(f).map(ToString::to_string)
}

fn skipped(r: &VerificationReport) -> Vec<&'static str> {
    r.skipped().map(|(f, _)| f.name()).collect()
}

/// Renders one report as a single line (no trailing newline). Timings are
/// only included when `timings` is set, so that untimed output is reproducible.
pub fn format_report(r: &VerificationReport, format: OutputFormat, timings: bool) -> String {
    match format {
        OutputFormat::Jsonl => {
            let record = JsonRecord {
                graph6: &r.graph6,
                n: r.n,
                m: r.m,
                phi_definition: exact(r, Formula::Definition),
                phi_definition_approx: r.value(Formula::Definition).map(|v| v.to_f64()),
                phi_eulerian: exact(r, Formula::Eulerian),
                phi_eulerian_approx: r.value(Formula::Eulerian).map(|v| v.to_f64()),
                psi: exact(r, Formula::Corank),
                psi_approx: r.value(Formula::Corank).map(|v| v.to_f64()),
                equal: r.all_equal,
                skipped: skipped(r),
                claim_checked: r.claim_checked,
                parity_checked: r.parity_checked,
                identity_violations: r.identity_violations,
                elapsed_ms: timings.then(|| ElapsedMs {
                    definition: elapsed_ms(r, Formula::Definition),
                    eulerian: elapsed_ms(r, Formula::Eulerian),
                    corank: elapsed_ms(r, Formula::Corank),
                }),
            };
            serde_json::to_string(&record).expect("record serializes")
        }
        OutputFormat::Csv => {
            let mut fields = vec![r.graph6.clone(), r.n.to_string(), r.m.to_string()];
            fields.extend(
                COLUMNS
                    .iter()
                    .map(|&(f, _)| exact(r, f).unwrap_or_default()),
            );
            fields.push(r.all_equal.to_string());
            fields.push(skipped(r).join(";"));
            fields.push(r.claim_checked.to_string());
            fields.push(r.parity_checked.to_string());
            fields.push(r.identity_violations.to_string());
            for (f, _) in COLUMNS {
                fields.push(match (timings, elapsed_ms(r, f)) {
                    (true, Some(ms)) => format!("{ms:.3}"),
                    _ => String::new(),
                });
            }
            fields.join(",")
        }
        OutputFormat::Plain => {
            let mut line = format!("{} n={} m={}", r.graph6, r.n, r.m);
            for (f, label) in COLUMNS {
                let value = match r.run(f) {
                    None => "-".to_string(),
                    Some(run) => match &run.result {
                        Ok(v) => v.value.to_fraction_string(),
                        Err(_) => "skipped".to_string(),
                    },
                };
                line.push_str(&format!(" {label}={value}"));
            }
            line.push_str(if r.all_equal { " equal" } else { " MISMATCH" });
            if r.claim_checked + r.parity_checked > 0 {
                line.push_str(&format!(
                    " claim={} parity={} violations={}",
                    r.claim_checked, r.parity_checked, r.identity_violations
                ));
            }
            if timings {
                for (f, _) in COLUMNS {
                    if let Some(ms) = elapsed_ms(r, f) {
                        line.push_str(&format!(" t_{}={ms:.3}ms", f.name()));
                    }
                }
            }
            line
        }
    }
}
