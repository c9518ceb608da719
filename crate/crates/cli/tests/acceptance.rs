//! Acceptance run: one PASS/FAIL line per criterion (and per sub-check), exit
//! status nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qapery_core::identity::verify_step_s_telescope_with;
use qapery_core::numeric::{classical_limit_check, first_increase, series_agreement};
use qapery_core::{
    harmonic_q, harmonic_q_bruteforce, kl_classical_check, markov_parametric_check, q_binomial,
    remainder_decay_profile, verify_finite_form, verify_lemma_partial_fraction,
    verify_step_combination, verify_step_k_telescope, verify_step_s_telescope, ExactRational,
    HarmonicDepth, QPolynomial, Sabotage, SeriesSpec, SummationOptions, VerificationReport,
};
use rayon::prelude::*;

struct Tally {
    failed: Vec<String>,
}

impl Tally {
    fn line(&mut self, id: &str, ok: bool, detail: impl AsRef<str>) -> bool {
        println!("{} [{id}] {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
        if !ok {
            self.failed.push(id.to_string());
        }
        ok
    }
}

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

fn all_pass(reports: &[qapery_core::Result<VerificationReport>]) -> (usize, usize) {
    let passed = reports.iter().filter(|r| matches!(r, Ok(r) if r.passed())).count();
    (passed, reports.len())
}

fn criterion_exact_theorem(t: &mut Tally) {
    let started = Instant::now();
    let cells: Vec<(u64, u32)> = (1..=10).flat_map(|n| (0..=4).map(move |r| (n, r))).collect();
    let reports: Vec<_> = cells.par_iter().map(|&(n, r)| verify_finite_form(n, r)).collect();
    let zero_witness = reports.iter().all(|r| matches!(r, Ok(r) if r.witness == "0"));
    let (passed, total) = all_pass(&reports);
    let elapsed = started.elapsed();
    t.line(
        "1",
        passed == 50 && total == 50 && zero_witness && elapsed < Duration::from_secs(120),
        format!("finite form exact for (N, r) in [1..10]x[0..4]: {passed}/{total} zero differences in {:.1} s (limit 120 s)", elapsed.as_secs_f64()),
    );
}

fn criterion_proof_steps(t: &mut Tally) {
    let started = Instant::now();
    let mut jobs: Vec<Box<dyn Fn() -> qapery_core::Result<VerificationReport> + Send + Sync>> = Vec::new();
    for n in 2..=8u64 {
        for s in 0..=3 {
            jobs.push(Box::new(move || verify_step_k_telescope(n, s)));
        }
        for k in 1..n {
            jobs.push(Box::new(move || verify_lemma_partial_fraction(n, k)));
            for s in 1..=3 {
                jobs.push(Box::new(move || verify_step_combination(n, k, s)));
            }
            for r in 1..=4 {
                jobs.push(Box::new(move || verify_step_s_telescope(n, k, r)));
            }
        }
    }
    let reports: Vec<_> = jobs.par_iter().map(|j| j()).collect();
    let (passed, total) = all_pass(&reports);
    let control_fails = (2..=8u64)
        .flat_map(|n| (1..n).map(move |k| (n, k)))
        .all(|(n, k)| {
            (1..=4).all(|r| matches!(verify_step_s_telescope_with(n, k, r, Sabotage::DepthMinusOneIsOne), Ok(rep) if !rep.passed()))
        });
    t.line(
        "2",
        passed == total && control_fails,
        format!(
            "proof steps: {passed}/{total} exact passes; depth -1 := 1 control fails everywhere: {control_fails} ({:.1} s)",
            started.elapsed().as_secs_f64()
        ),
    );
}

fn agreement(t: &mut Tally, id: &str, lhs: SeriesSpec, rhs: SeriesSpec, q: ExactRational, x: Option<ExactRational>, (sum, check): (u32, u32)) -> bool {
    let what = format!("{lhs} vs {rhs} at q={q}{}", x.as_ref().map(|x| format!(", x={x}")).unwrap_or_default());
    match series_agreement(&lhs, &rhs, Some(&q), x.as_ref(), sum, check, &SummationOptions::default()) {
        Ok(r) => t.line(id, r.passed(), format!("{what}: residual {} <= 1e-{check}", r.witness)),
        Err(e) => t.line(id, false, format!("{what}: {e}")),
    }
}

fn criterion_numeric_residuals(t: &mut Tally) {
    let half = rat(1, 2);
    let mut ok = agreement(t, "3a", SeriesSpec::PlainQZeta { r: 0 }, SeriesSpec::RFamilyRhs { r: 0 }, half.clone(), None, (30, 28));
    ok &= agreement(t, "3b", SeriesSpec::QEvenLhs, SeriesSpec::QEvenRhs, half.clone(), Some(rat(1, 3)), (25, 23));
    ok &= agreement(t, "3c", SeriesSpec::MainBivariateLhs, SeriesSpec::MainBivariateRhs, half, Some(rat(1, 2)), (25, 23));
    for q in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        ok &= agreement(t, "3d", SeriesSpec::QEvenLhs, SeriesSpec::QEvenRhs, q, None, (27, 25));
    }
    t.line("3", ok, "numeric identity residuals at the stated tolerances");
}

fn criterion_classical_limits(t: &mut Tally) {
    let mut ok = match classical_limit_check(0, 12) {
        Ok(r) => {
            let terms = r.terms.unwrap_or(u64::MAX);
            t.line("4a", r.passed() && terms <= 40, format!("zeta(3) to 1e-12 in {terms} terms (<= 40): residual {}", r.witness))
        }
        Err(e) => t.line("4a", false, e.to_string()),
    };
    for r in 1..=3 {
        ok &= match classical_limit_check(r, 10) {
            Ok(rep) => t.line("4b", rep.passed(), format!("zeta({}) to 1e-10: residual {}", 2 * r + 3, rep.witness)),
            Err(e) => t.line("4b", false, e.to_string()),
        };
    }
    for a in 0..=3 {
        ok &= match markov_parametric_check(a, 10) {
            Ok(rep) => t.line("4c", rep.passed(), format!("parametric identity a={a} to 1e-10: residual {}", rep.witness)),
            Err(e) => t.line("4c", false, e.to_string()),
        };
    }
    ok &= match kl_classical_check(4, &rat(1, 2), 10) {
        Ok(rep) => t.line("4d", rep.passed(), format!("generating function at x=1/2 to 1e-10: {}", rep.witness)),
        Err(e) => t.line("4d", false, e.to_string()),
    };
    t.line("4", ok, "classical limits");
}

fn criterion_acceleration(t: &mut Tally) {
    let out = std::env::temp_dir().join(format!("qapery-acceptance-{}", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_qapery"))
        .args(["converge", "--r", "0", "--q", "1/2", "--digits", "30", "--format", "csv", "--out"])
        .arg(&out)
        .output();
    let csv = std::fs::read_to_string(out.join("converge").join("converge.csv")).unwrap_or_default();
    let _ = std::fs::remove_dir_all(&out);
    let row: Vec<String> = csv.lines().nth(1).unwrap_or("").split(',').map(str::to_string).collect();
    let (plain, fast) = (
        row.get(4).and_then(|v| v.parse::<f64>().ok()),
        row.get(5).and_then(|v| v.parse::<f64>().ok()),
    );
    let ok = matches!(status, Ok(ref s) if s.status.success())
        && matches!((plain, fast), (Some(p), Some(f)) if p >= 3.0 * f);
    t.line(
        "5",
        ok,
        format!("converge.csv at q=1/2, 30 digits: terms_plain={:?}, terms_accelerated={:?} (ratio >= 3)", plain, fast),
    );
}

fn product_formula(n: i64, k: i64) -> QPolynomial {
    let one_minus = |e: i64| {
        let mut cs = vec![0i64; e as usize + 1];
        cs[0] = 1;
        cs[e as usize] -= 1;
        QPolynomial::from_ints(&cs)
    };
    let (mut num, mut den) = (QPolynomial::one(), QPolynomial::one());
    for i in 1..=k {
        num = &num * &one_minus(n - k + i);
        den = &den * &one_minus(i);
    }
    num.exact_div(&den).expect("Gaussian binomial is a polynomial")
}

fn criterion_oracles(t: &mut Tally) {
    let harmonic = (0..=8u64).all(|k| {
        (0..=4u64).all(|s| harmonic_q(k, HarmonicDepth::new(s as i64).unwrap()) == harmonic_q_bruteforce(k, s))
    });
    let binomial = (0..=12i64).all(|n| (0..=n).all(|k| q_binomial(n, k).unwrap() == product_formula(n, k)));
    t.line(
        "6",
        harmonic && binomial,
        format!("harmonic_q == brute force (k<=8, s<=4): {harmonic}; q_binomial == product formula (n<=12): {binomial}"),
    );
}

fn criterion_remainder_decay(t: &mut Tally) {
    let mut ok = true;
    for (q, label) in [(rat(1, 2), "1/2"), (rat(9, 10), "9/10")] {
        for r in [0u32, 2] {
            let profile = match remainder_decay_profile(r, &q, 12) {
                Ok(p) => p,
                Err(e) => {
                    ok &= t.line("7", false, format!("q={label} r={r}: {e}"));
                    continue;
                }
            };
            let as_f64 = |v: &ExactRational| v.to_f64().unwrap_or(f64::NAN);
            let listing: Vec<String> = profile.iter().map(|(n, v)| format!("{n}:{:.3e}", as_f64(v))).collect();
            let increase = first_increase(&profile, 3);
            ok &= t.line(
                "7",
                increase.is_none(),
                format!(
                    "q={label} r={r}: strictly decreasing for N >= 3{} [{}]",
                    increase.map(|n| format!(" violated at N={n}")).unwrap_or_default(),
                    listing.join(" ")
                ),
            );
            if label == "1/2" {
                let eps = rat(1, 1_000_000);
                let hit = profile.iter().find(|(n, v)| *n >= 3 && *v < eps).map(|(n, _)| *n);
                ok &= t.line(
                    "7",
                    hit.is_some(),
                    format!(
                        "q={label} r={r}: |remainder| < 1e-6 for some 3 <= N <= 12{}",
                        hit.map(|n| format!(" (first at N={n})"))
                            .unwrap_or_else(|| format!(" not reached; N=12 gives {:.3e}", as_f64(&profile[11].1)))
                    ),
                );
            }
        }
    }
    t.line("7", ok, "remainder decay profile");
}

fn main() -> ExitCode {
    let mut t = Tally { failed: Vec::new() };
    criterion_exact_theorem(&mut t);
    criterion_proof_steps(&mut t);
    criterion_numeric_residuals(&mut t);
    criterion_classical_limits(&mut t);
    criterion_acceleration(&mut t);
    criterion_oracles(&mut t);
    criterion_remainder_decay(&mut t);
    let mut failed = t.failed.clone();
    failed.dedup();
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
