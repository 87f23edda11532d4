//! Structured run reports and their JSON/CSV encodings.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use jsr_core::bounds::JsrInterval;
use jsr_core::certificates::TheoremReport;
use jsr_core::ultrametric::PAdicMagnitude;
use jsr_core::{ComplexMatrix, Word};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const TOOL: &str = "jsr";

/// One run. Everything except `wall_time_s` is a function of the input
/// bytes, the configuration and the seed.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub config: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(command: &str, input: &[u8], seed: u64) -> Self {
        Self {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            input_digest: digest(input),
            seed,
            config: BTreeMap::new(),
            results: BTreeMap::new(),
            notes: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are plain JSON");
        s.push('\n');
        s
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Finite floats as numbers; infinities and NaN as strings, which JSON
/// numbers cannot express.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn num_map(m: &BTreeMap<String, f64>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), num(*v))).collect())
}

pub fn word(w: &Word) -> Value {
    json!(w.indices())
}

pub fn matrix(a: &ComplexMatrix) -> Value {
    let d = a.dim();
    json!((0..d).map(|i| a.row(i).iter().map(|z| [num(z.re), num(z.im)]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn interval(iv: &JsrInterval) -> Value {
    json!({
        "lower": num(iv.lower),
        "upper": num(iv.upper),
        "width": num(iv.width()),
        "lower_witness": word(&iv.lower_witness),
        "upper_depth": iv.upper_depth,
        "norm": iv.norm_used.name(),
        "budget_exceeded": iv.budget_exceeded(),
        "diagnostics": num_map(&iv.diagnostics),
    })
}

pub fn theorem(r: &TheoremReport) -> Value {
    json!({
        "theorem": r.theorem.name(),
        "verdict": r.verdict.to_string(),
        "lhs": num(r.lhs),
        "rhs_at_lower": num(r.rhs_at_lower),
        "rhs_at_upper": num(r.rhs_at_upper),
        "witnesses": r.witnesses.iter().map(word).collect::<Vec<_>>(),
        "constants": num_map(&r.constants),
        "budget": num_map(&r.budget),
        "clamped": r.clamped,
        "notes": r.notes,
    })
}

/// `{"zero": true}` for the bottom element, otherwise the exponent `e` of
/// `p^(-e)` as a reduced fraction with its decimal value.
pub fn magnitude(m: &PAdicMagnitude, p: u64) -> Value {
    let display = magnitude_text(m, p);
    match m.exponent() {
        None => json!({ "zero": true, "display": display, "value": 0.0 }),
        Some(e) => json!({
            "zero": false,
            "display": display,
            "exponent_numerator": *e.numer(),
            "exponent_denominator": *e.denom(),
            "value": num(m.to_f64(p)),
        }),
    }
}

/// `2^(-1/2)` rather than the generic `p^(-1/2)`.
pub fn magnitude_text(m: &PAdicMagnitude, p: u64) -> String {
    m.to_string().replacen('p', &p.to_string(), 1)
}

/// Appends rows to a CSV file, writing the header only when the file is new
/// or empty, so repeated runs build one table.
pub fn append_csv(path: &Path, header: &[&str], row: &[String]) -> Result<(), CliError> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if fresh {
        w.write_record(header)?;
    }
    w.write_record(row)?;
    w.flush()?;
    Ok(())
}

pub fn word_text(w: &Word) -> String {
    w.indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_json<W: Write + ?Sized>(out: &mut W, report: &RunReport) -> std::io::Result<()> {
    out.write_all(report.to_json_string().as_bytes())
}
