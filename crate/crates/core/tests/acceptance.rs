//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines always show in
//! `cargo test` output. Criteria listed in `KNOWN_FALSE` are mathematically
//! false as stated; they are still run and reported, and the process fails
//! if one of them unexpectedly passes or any other criterion fails.

use std::time::{Duration, Instant};

use mzeta_core::mzf::{mzf_depth2_em, mzf_direct, ArgVector};
use mzeta_core::numkernel::{bernoulli, harmonic, pochhammer, riemann_zeta};
use mzeta_core::sumformula::{
    classical_sum_formula, composition_sum, g_ab_recursive, lemma31_check, theorem1_check,
    theorem1_term, theorem2_check, GabSpec,
};
use mzeta_core::{cx, Accel, ComplexValue, TruncationBudget};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const KNOWN_FALSE: &[u32] = &[8];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn budget(tol: f64) -> TruncationBudget {
    TruncationBudget::default().with_tol(tol)
}

fn zeta_re(s: f64) -> f64 {
    riemann_zeta(cx(s, 0.0), &budget(1e-15)).unwrap().value.re
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let b = budget(1e-6);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 2..=6u32 {
        for r in 1..=3u32.min(k - 1) {
            count += 1;
            match classical_sum_formula(k, r, &b) {
                Ok(rep) => {
                    worst = worst.max(rep.abs_diff);
                    if !rep.passed {
                        failures.push(format!("(k={k}, r={r}) diff {:e}", rep.abs_diff));
                    }
                }
                Err(e) => failures.push(format!("(k={k}, r={r}) error {e}")),
            }
        }
    }
    let t = start.elapsed();
    let ok = failures.is_empty() && t < Duration::from_secs(120);
    outcome(
        ok,
        format!(
            "{count} (k, r) pairs, max |diff| {worst:.2e}, {:.2} s {}",
            t.as_secs_f64(),
            failures.join("; ")
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    let points: [(ComplexValue, f64); 4] = [
        (cx(4.0, 0.0), 1e-6),
        (cx(2.5, 0.0), 1e-6),
        (cx(3.0, 2.0), 1e-6),
        (cx(1.5, 0.0), 1e-4),
    ];
    for (s, tol) in points {
        let start = Instant::now();
        let b = budget(tol).with_accel(Accel::Richardson);
        match theorem1_check(s, &b) {
            Ok(rep) => {
                let t = start.elapsed();
                let good = rep.passed && t < Duration::from_secs(60);
                ok &= good;
                parts.push(format!(
                    "s={s}: |diff| {:.2e} (err {:.1e}, {} terms) {:.2} s",
                    rep.abs_diff,
                    rep.lhs.err_bound,
                    rep.lhs.terms_used,
                    t.as_secs_f64()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("s={s}: error {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn criterion_3() -> Outcome {
    let b = budget(1e-6);
    let mut parts = Vec::new();
    let mut ok = true;
    for (bb, s) in [(1u32, 3.0), (2, 5.0), (3, 6.0)] {
        match theorem2_check(bb, cx(s, 0.0), &b) {
            Ok(rep) => {
                ok &= rep.passed;
                parts.push(format!("(b={bb}, s={s}) |diff| {:.2e}", rep.abs_diff));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("(b={bb}, s={s}) error {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn overlap_grid() -> Vec<(ComplexValue, ComplexValue)> {
    vec![
        (cx(2.0, 0.0), cx(3.0, 0.0)),
        (cx(3.0, 0.0), cx(4.0, 0.0)),
        (cx(1.0, 0.0), cx(2.0, 0.0)),
        (cx(2.0, 0.0), cx(2.0, 0.0)),
        (cx(1.5, 0.0), cx(1.5, 0.0)),
        (cx(0.5, 0.0), cx(2.5, 0.0)),
        (cx(-0.5, 0.0), cx(3.25, 0.0)),
        (cx(-1.0, 0.0), cx(4.0, 0.0)),
        (cx(4.5, 0.0), cx(1.2, 0.0)),
        (cx(2.0, 1.0), cx(3.0, -1.0)),
        (cx(1.5, 2.0), cx(2.0, 0.5)),
        (cx(0.25, -3.0), cx(2.5, 1.0)),
        (cx(3.0, 5.0), cx(1.75, -2.0)),
        (cx(-0.75, 0.5), cx(3.5, 0.0)),
        (cx(1.0, -1.0), cx(1.5, 1.0)),
        (cx(2.2, 0.3), cx(1.1, 0.7)),
        (cx(0.0, 4.0), cx(3.0, -4.0)),
        (cx(5.0, -2.0), cx(2.0, 2.0)),
        (cx(1.25, 0.0), cx(1.25, 10.0)),
        (cx(-1.5, 1.5), cx(4.5, -0.5)),
    ]
}

fn criterion_4() -> Outcome {
    let b = budget(1e-10);
    let mut worst_slack = f64::NEG_INFINITY;
    let mut failures = Vec::new();
    let mut integer_diff = 0.0f64;
    for (s1, s2) in overlap_grid() {
        assert!(s2.re > 1.0 && (s1 + s2).re > 2.0);
        let d = mzf_direct(&ArgVector::new(vec![s1, s2]).unwrap(), &b);
        let e = mzf_depth2_em(s1, s2, &b);
        match (d, e) {
            (Ok(d), Ok(e)) => {
                let diff = (d.value - e.value).norm();
                worst_slack = worst_slack.max(diff - d.err_bound - e.err_bound);
                if diff > d.err_bound + e.err_bound {
                    failures.push(format!("({s1}, {s2}) diff {diff:e}"));
                }
                if s1.im == 0.0
                    && s2.im == 0.0
                    && [(2.0, 3.0), (3.0, 4.0)].contains(&(s1.re, s2.re))
                {
                    integer_diff = integer_diff.max(diff);
                }
            }
            (d, e) => failures.push(format!(
                "({s1}, {s2}) direct {:?} em {:?}",
                d.err(),
                e.err()
            )),
        }
    }
    let ok = failures.is_empty() && integer_diff <= 1e-8;
    outcome(
        ok,
        format!(
            "20 points, max(diff - bounds) {worst_slack:.2e}, integer points |diff| {integer_diff:.2e} {}",
            failures.join("; ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let b = budget(1e-10);
    let want = (zeta_re(2.0) - zeta_re(3.0)) / 2.0;
    let d = mzf_direct(&ArgVector::from_reals(&[-1.0, 4.0]).unwrap(), &b);
    let e = mzf_depth2_em(cx(-1.0, 0.0), cx(4.0, 0.0), &b);
    match (d, e) {
        (Ok(d), Ok(e)) => {
            let dd = (d.value - cx(want, 0.0)).norm();
            let de = (e.value - cx(want, 0.0)).norm();
            outcome(
                dd <= 1e-8 && de <= 1e-8,
                format!("direct {dd:.2e}, continuation {de:.2e}"),
            )
        }
        (d, e) => outcome(
            false,
            format!("direct {:?}, continuation {:?}", d.err(), e.err()),
        ),
    }
}

fn criterion_6() -> Outcome {
    let b = budget(1e-5);
    let mut parts = Vec::new();
    let mut ok = true;
    for (d, big_d, s) in [(1usize, 0u64, 6.0), (1, 1, 7.0), (2, 0, 8.0)] {
        let start = Instant::now();
        match lemma31_check(d, big_d, cx(s, 0.0), &b) {
            Ok(rep) => {
                ok &= rep.passed;
                parts.push(format!(
                    "(d={d}, D={big_d}, s={s}) |diff| {:.2e} {:.2} s",
                    rep.abs_diff,
                    start.elapsed().as_secs_f64()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("(d={d}, D={big_d}, s={s}) error {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let b = budget(1e-8);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for s in 3..=8u32 {
        let spec = GabSpec::new(Vec::new(), cx(s as f64, 0.0), 2).unwrap();
        let g = g_ab_recursive(&spec, 4, &b);
        let f = composition_sum(&[], 2, s, &b);
        match (g, f) {
            (Ok(g), Ok(f)) => {
                let diff = (g.value - f.value).norm();
                worst = worst.max(diff);
                if diff > 1e-6 {
                    failures.push(format!("s={s} diff {diff:e}"));
                }
            }
            (g, f) => failures.push(format!("s={s} {:?} {:?}", g.err(), f.err())),
        }
    }
    outcome(
        failures.is_empty(),
        format!("s = 3..8, max |diff| {worst:.2e} {}", failures.join("; ")),
    )
}

fn criterion_8() -> Outcome {
    let b = budget(1e-14);
    let n = 200usize;
    let mut parts = Vec::new();
    let mut ok = true;
    for s in [4.0, 2.5] {
        match theorem1_term(cx(s, 0.0), n, &b) {
            Ok(t) => {
                let nf = n as f64;
                let normalized = t.value.re * (nf + 1.0) * (s + nf - 1.0);
                let target = (s - 2.0) * zeta_re(s - 1.0);
                let rel = (normalized / target - 1.0).abs();
                ok &= rel <= 0.1;
                parts.push(format!(
                    "s={s}: normalized term {normalized:.4e} vs {target:.4e} (rel {rel:.2}), term * n^s = {:.4}",
                    t.value.re * nf.powf(s)
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("s={s}: error {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

/// B_n (with B_1 = +1/2) by the Akiyama-Tanigawa algorithm.
fn akiyama_tanigawa(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = (0..=n)
        .map(|m| BigRational::new(BigInt::one(), BigInt::from(m + 1)))
        .collect();
    for m in 1..=n {
        for j in (m..=n).rev() {
            let k = BigRational::from_integer(BigInt::from(j - m + 1));
            a[j] = k * (&a[j - 1] - &a[j]);
        }
        a[m - 1] = BigRational::zero();
    }
    a[n].clone()
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();

    // Bernoulli: recurrence sum_{j<=q} C(q+1, j) B_j = 0 and an independent algorithm
    for q in 1..=64usize {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for j in 0..=q {
            acc += bernoulli(j).unwrap() * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(q + 1 - j) / BigInt::from(j + 1);
        }
        if !acc.is_zero() {
            failures.push(format!("recurrence fails at q={q}"));
        }
        let mut want = akiyama_tanigawa(q);
        if q == 1 {
            want = -want;
        }
        if bernoulli(q).unwrap() != want {
            failures.push(format!("B_{q} disagrees with Akiyama-Tanigawa"));
        }
    }

    // Pochhammer: (s)_{m+n} = (s)_m (s+m)_n
    for &s in &[cx(0.5, 0.0), cx(-2.5, 1.0), cx(3.0, -4.0)] {
        for m in 0..8 {
            for n in 0..8 {
                let lhs = pochhammer(s, m + n);
                let rhs = pochhammer(s, m) * pochhammer(s + m as f64, n);
                if (lhs - rhs).norm() > 1e-12 * lhs.norm().max(1.0) {
                    failures.push(format!("Pochhammer at s={s}, m={m}, n={n}"));
                }
            }
        }
    }

    // harmonic telescoping, exactly: H_m = P_m / m! with P_m = m P_{m-1} + (m-1)!
    let mut p = BigInt::zero();
    let mut fact_prev = BigInt::one();
    for m in 1..=10_000u64 {
        let next = &p * m + &fact_prev;
        // H_m - H_{m-1} = (P_m - m P_{m-1}) / m! must equal 1/m, i.e. (m-1)!/m!
        if &next - &p * m != fact_prev {
            failures.push(format!("harmonic telescoping at m={m}"));
            break;
        }
        p = next;
        fact_prev *= m;
    }
    if (harmonic(10_000) - harmonic(9_999) - 1e-4).abs() > 1e-12 {
        failures.push("floating harmonic difference".into());
    }

    // zeta(conj s) = conj zeta(s)
    let b = budget(1e-13);
    for &s in &[
        cx(0.5, 14.134725),
        cx(2.0, 3.0),
        cx(-3.5, 1.0),
        cx(1.5, -20.0),
    ] {
        let a = riemann_zeta(s, &b).unwrap().value;
        let c = riemann_zeta(s.conj(), &b).unwrap().value;
        if (a.conj() - c).norm() > 1e-12 {
            failures.push(format!("conjugation at s={s}"));
        }
    }
    let t = start.elapsed();
    outcome(
        failures.is_empty() && t < Duration::from_secs(10),
        format!("{:.2} s {}", t.as_secs_f64(), failures.join("; ")),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [Criterion; 9] = [
        (1, "classical sum formula, r < k <= 6, r <= 3", criterion_1),
        (2, "depth-2 series equals zeta(s)", criterion_2),
        (3, "G_{0,b}(s) = zeta(s)", criterion_3),
        (
            4,
            "continuation agrees with nested series on the overlap",
            criterion_4,
        ),
        (5, "zeta(-1, 4) = (zeta(2) - zeta(3)) / 2", criterion_5),
        (6, "F_d telescoping identity", criterion_6),
        (
            7,
            "G_{0,2}(s) equals the finite composition sum",
            criterion_7,
        ),
        (
            8,
            "normalized series terms tend to (s-2) zeta(s-1)",
            criterion_8,
        ),
        (9, "kernel invariants", criterion_9),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let known = KNOWN_FALSE.contains(&id);
        let tag = match (o.passed, known) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known false as stated)",
            (true, true) => "PASS (unexpected for a known-false criterion)",
        };
        if o.passed == known {
            unexpected += 1;
        }
        println!(
            "criterion {id} {tag}: {name} [{:.2} s] {}",
            start.elapsed().as_secs_f64(),
            o.detail.trim()
        );
    }
    if unexpected > 0 {
        println!("acceptance: {unexpected} unexpected outcome(s)");
        std::process::exit(1);
    }
    println!("acceptance: all outcomes as expected");
}
