use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

use mzeta_core::mzf::{mzf_direct, mzf_eval, ArgVector};
use mzeta_core::sumformula::{
    classical_sum_formula, lemma31_check, theorem1_check, theorem2_check, VerificationReport,
};
use mzeta_core::{EvalResult, Method, MzError, TruncationBudget};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Command, OutputFormat, RunConfig};
use crate::literal::format_complex;
use crate::output::{
    write_csv, write_json, write_plain, Document, ErrorRecord, EvalRecord, SCHEMA_VERSION,
};

/// Number of random stuffle pairs in the suite.
pub const SUITE_STUFFLE_PAIRS: usize = 4;

/// One unit of work.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Eval(Vec<Complex64>),
    SumFormula {
        k: u32,
        r: u32,
    },
    Theorem1(Complex64),
    Theorem2 {
        b: u32,
        s: Complex64,
    },
    Lemma31 {
        d: usize,
        big_d: u64,
        s: Complex64,
    },
    Stuffle {
        a: Complex64,
        b: Complex64,
        seed: u64,
    },
}

impl Job {
    fn label(&self) -> String {
        match self {
            Job::Eval(args) => {
                let a: Vec<String> = args.iter().map(|&z| format_complex(z)).collect();
                format!("eval({})", a.join(","))
            }
            Job::SumFormula { k, r } => format!("sumformula(k={k}, r={r})"),
            Job::Theorem1(s) => format!("theorem1(s={})", format_complex(*s)),
            Job::Theorem2 { b, s } => format!("theorem2(b={b}, s={})", format_complex(*s)),
            Job::Lemma31 { d, big_d, s } => {
                format!("lemma31(d={d}, D={big_d}, s={})", format_complex(*s))
            }
            Job::Stuffle { a, b, .. } => format!(
                "stuffle(a={}, b={})",
                format_complex(*a),
                format_complex(*b)
            ),
        }
    }
}

enum JobOutput {
    Report(VerificationReport),
    Eval(EvalRecord),
}

/// The suite items in declared order.
pub fn suite_jobs(seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    for k in 2..=6u32 {
        for r in 1..=3u32.min(k - 1) {
            jobs.push(Job::SumFormula { k, r });
        }
    }
    for s in [
        Complex64::new(2.5, 0.0),
        Complex64::new(4.0, 0.0),
        Complex64::new(3.0, 2.0),
    ] {
        jobs.push(Job::Theorem1(s));
    }
    for (b, s) in [(1u32, 3.0), (2, 5.0), (3, 6.0)] {
        jobs.push(Job::Theorem2 {
            b,
            s: Complex64::new(s, 0.0),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SUITE_STUFFLE_PAIRS {
        let mut draw = || Complex64::new(rng.gen_range(1.5..4.0), rng.gen_range(-3.0..3.0));
        let (a, b) = (draw(), draw());
        jobs.push(Job::Stuffle { a, b, seed });
    }
    jobs
}

/// `zeta(a) zeta(b) = zeta(a, b) + zeta(b, a) + zeta(a + b)`.
fn stuffle_check(
    a: Complex64,
    b: Complex64,
    seed: u64,
    budget: &TruncationBudget,
) -> Result<VerificationReport, MzError> {
    let start = Instant::now();
    let z = |v: &[Complex64]| mzf_direct(&ArgVector::new(v.to_vec())?, budget);
    let (za, zb) = (z(&[a])?, z(&[b])?);
    let (zab, zba, zsum) = (z(&[a, b])?, z(&[b, a])?, z(&[a + b])?);
    let lhs = EvalResult::new(
        za.value * zb.value,
        za.err_bound * zb.value.norm()
            + zb.err_bound * za.value.norm()
            + za.err_bound * zb.err_bound,
        za.terms_used + zb.terms_used,
        Method::DirectSeries,
    );
    let rhs = EvalResult::new(
        zab.value + zba.value + zsum.value,
        zab.err_bound + zba.err_bound + zsum.err_bound,
        zab.terms_used + zba.terms_used + zsum.terms_used,
        Method::DirectSeries,
    );
    let mut params = BTreeMap::new();
    params.insert("a".to_string(), format_complex(a));
    params.insert("b".to_string(), format_complex(b));
    params.insert("seed".to_string(), seed.to_string());
    Ok(VerificationReport::new(
        "stuffle",
        lhs,
        rhs,
        budget.tol,
        start.elapsed(),
        params,
    ))
}

fn execute(job: &Job, budget: &TruncationBudget) -> Result<JobOutput, MzError> {
    log::info!("running {}", job.label());
    let out = match *job {
        Job::Eval(ref args) => {
            let start = Instant::now();
            let v = mzf_eval(&ArgVector::new(args.clone())?, budget)?;
            JobOutput::Eval(EvalRecord {
                args: args.clone(),
                value: (&v).into(),
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        }
        Job::SumFormula { k, r } => JobOutput::Report(classical_sum_formula(k, r, budget)?),
        Job::Theorem1(s) => JobOutput::Report(theorem1_check(s, budget)?),
        Job::Theorem2 { b, s } => JobOutput::Report(theorem2_check(b, s, budget)?),
        Job::Lemma31 { d, big_d, s } => JobOutput::Report(lemma31_check(d, big_d, s, budget)?),
        Job::Stuffle { a, b, seed } => JobOutput::Report(stuffle_check(a, b, seed, budget)?),
    };
    if let JobOutput::Report(ref r) = out {
        log::debug!(
            "{}: passed={} |diff|={:e}",
            job.label(),
            r.passed,
            r.abs_diff
        );
    }
    Ok(out)
}

/// The jobs a configuration asks for.
pub fn jobs_for(config: &RunConfig) -> Vec<Job> {
    match config.command {
        Command::Eval { ref args } => vec![Job::Eval(args.clone())],
        Command::VerifySumFormula { k, r } => vec![Job::SumFormula { k, r }],
        Command::VerifyTheorem1 { s } => vec![Job::Theorem1(s)],
        Command::VerifyTheorem2 { b, s } => vec![Job::Theorem2 { b, s }],
        Command::VerifyLemma31 { d, big_d, s } => vec![Job::Lemma31 { d, big_d, s }],
        Command::Suite => suite_jobs(config.seed),
    }
}

/// Runs every job of `config` and collects the results in job order, with the exit code.
pub fn build_document(config: &RunConfig) -> Result<(Document, i32), String> {
    let jobs = jobs_for(config);
    let workers = if config.deterministic {
        1
    } else {
        config.workers.unwrap_or(0)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| format!("cannot start worker pool: {e}"))?;
    let results: Vec<Result<JobOutput, MzError>> = pool.install(|| {
        jobs.par_iter()
            .map(|j| execute(j, &config.budget))
            .collect()
    });

    let mut doc = Document {
        version: SCHEMA_VERSION,
        config: config.clone(),
        reports: Vec::new(),
        evaluations: Vec::new(),
        errors: Vec::new(),
    };
    let (mut failed, mut usage) = (false, false);
    for (job, res) in jobs.iter().zip(results) {
        match res {
            Ok(JobOutput::Report(r)) => {
                failed |= !r.passed;
                doc.reports.push((&r).into());
            }
            Ok(JobOutput::Eval(e)) => doc.evaluations.push(e),
            Err(e) => {
                if e.is_domain_class() {
                    usage = true;
                } else {
                    failed = true;
                }
                doc.errors.push(ErrorRecord {
                    item: job.label(),
                    message: e.to_string(),
                    best: e.best_estimate().map(Into::into),
                });
            }
        }
    }
    let code = if usage {
        2
    } else if failed {
        1
    } else {
        0
    };
    Ok((doc, code))
}

fn emit(doc: &Document, config: &RunConfig) -> std::io::Result<()> {
    let mut sink: Box<dyn Write> = match config.output_path {
        Some(ref p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    match config.output_format {
        OutputFormat::Json => write_json(doc, &mut *sink)?,
        OutputFormat::Csv => write_csv(doc, &mut *sink)?,
        OutputFormat::Plain => write_plain(doc, &mut *sink)?,
    }
    sink.flush()
}

/// Executes the configured command, writes the output and returns the exit code:
/// 0 all identities passed, 1 a check failed or ran out of budget, 2 usage/domain/I/O error.
pub fn run(config: &RunConfig) -> i32 {
    let (doc, code) = match build_document(config) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("mzeta: {msg}");
            return 2;
        }
    };
    if !matches!(config.output_format, OutputFormat::Json) {
        for e in &doc.errors {
            eprintln!("mzeta: {}: {}", e.item, e.message);
        }
    }
    if let Err(e) = emit(&doc, config) {
        eprintln!("mzeta: cannot write output: {e}");
        return 2;
    }
    code
}
