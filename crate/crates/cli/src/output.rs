use std::collections::BTreeMap;
use std::io::Write;

use mzeta_core::sumformula::VerificationReport;
use mzeta_core::{EvalResult, Method};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::literal::format_complex;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub re: f64,
    pub im: f64,
    pub err_bound: f64,
    pub terms: u64,
    pub method: Method,
}

impl From<&EvalResult> for ValueRecord {
    fn from(r: &EvalResult) -> Self {
        ValueRecord {
            re: r.value.re,
            im: r.value.im,
            err_bound: r.err_bound,
            terms: r.terms_used,
            method: r.method,
        }
    }
}

impl ValueRecord {
    pub fn to_eval(&self) -> EvalResult {
        EvalResult::new(
            Complex64::new(self.re, self.im),
            self.err_bound,
            self.terms,
            self.method,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub identity_id: String,
    pub parameters: BTreeMap<String, String>,
    pub lhs: ValueRecord,
    pub rhs: ValueRecord,
    pub abs_diff: f64,
    pub tol: f64,
    pub passed: bool,
    pub wall_ms: f64,
}

impl From<&VerificationReport> for ReportRecord {
    fn from(r: &VerificationReport) -> Self {
        ReportRecord {
            identity_id: r.identity_id.clone(),
            parameters: r.parameters.clone(),
            lhs: (&r.lhs).into(),
            rhs: (&r.rhs).into(),
            abs_diff: r.abs_diff,
            tol: r.tol,
            passed: r.passed,
            wall_ms: r.wall_time.as_secs_f64() * 1e3,
        }
    }
}

impl ReportRecord {
    /// Re-applies the pass rule to the stored numbers.
    pub fn rejudge(&self) -> bool {
        VerificationReport::decide(
            self.abs_diff,
            self.tol,
            &self.lhs.to_eval(),
            &self.rhs.to_eval(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub args: Vec<Complex64>,
    pub value: ValueRecord,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub item: String,
    pub message: String,
    /// Best estimate carried by a budget failure.
    pub best: Option<ValueRecord>,
}

/// Everything a run emits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub version: u32,
    pub config: RunConfig,
    pub reports: Vec<ReportRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evaluations: Vec<EvalRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<ErrorRecord>,
}

pub fn write_json(doc: &Document, out: &mut dyn Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

fn params_flat(p: &BTreeMap<String, String>) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn write_csv(doc: &Document, out: &mut dyn Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let side = |prefix: &str| {
        ["re", "im", "err_bound", "terms", "method"].map(|f| format!("{prefix}_{f}"))
    };
    let mut header = vec!["identity_id".to_string(), "parameters".to_string()];
    header.extend(side("lhs"));
    header.extend(side("rhs"));
    header.extend(["abs_diff", "tol", "passed", "wall_ms"].map(String::from));
    w.write_record(&header)?;
    let cells = |v: Option<&ValueRecord>| match v {
        Some(v) => vec![
            v.re.to_string(),
            v.im.to_string(),
            v.err_bound.to_string(),
            v.terms.to_string(),
            v.method.to_string(),
        ],
        None => vec![String::new(); 5],
    };
    for r in &doc.reports {
        let mut row = vec![r.identity_id.clone(), params_flat(&r.parameters)];
        row.extend(cells(Some(&r.lhs)));
        row.extend(cells(Some(&r.rhs)));
        row.extend([
            r.abs_diff.to_string(),
            r.tol.to_string(),
            r.passed.to_string(),
            format!("{:.3}", r.wall_ms),
        ]);
        w.write_record(&row)?;
    }
    for e in &doc.evaluations {
        let args: Vec<String> = e.args.iter().map(|&z| format_complex(z)).collect();
        let mut row = vec!["eval".to_string(), format!("args={}", args.join(","))];
        row.extend(cells(Some(&e.value)));
        row.extend(cells(None));
        row.extend([
            String::new(),
            String::new(),
            String::new(),
            format!("{:.3}", e.wall_ms),
        ]);
        w.write_record(&row)?;
    }
    w.flush()
}

pub fn write_plain(doc: &Document, out: &mut dyn Write) -> std::io::Result<()> {
    for e in &doc.evaluations {
        let args: Vec<String> = e.args.iter().map(|&z| format_complex(z)).collect();
        writeln!(
            out,
            "zeta({}) = {} +/- {:.2e} ({}, {} terms)",
            args.join(", "),
            format_complex(Complex64::new(e.value.re, e.value.im)),
            e.value.err_bound,
            e.value.method,
            e.value.terms
        )?;
    }
    for r in &doc.reports {
        writeln!(
            out,
            "{} {} [{}] lhs {} rhs {} |diff| {:.3e} tol {:.1e} ({:.1} ms)",
            if r.passed { "PASS" } else { "FAIL" },
            r.identity_id,
            params_flat(&r.parameters),
            format_complex(Complex64::new(r.lhs.re, r.lhs.im)),
            format_complex(Complex64::new(r.rhs.re, r.rhs.im)),
            r.abs_diff,
            r.tol,
            r.wall_ms
        )?;
    }
    for e in &doc.errors {
        writeln!(out, "ERROR {}: {}", e.item, e.message)?;
    }
    Ok(())
}
