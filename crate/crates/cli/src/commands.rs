use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::Result;
use num_traits::{One, Signed};
use qapery_core::identity::{
    params, verify_finite_form_with, verify_step_combination_with, verify_step_s_telescope_with,
};
use qapery_core::numeric::{classical_limit_check, series_agreement};
use qapery_core::{
    kl_classical_check, markov_parametric_check, terms_to_tolerance, verify_lemma_partial_fraction,
    verify_step_k_telescope, Error, ExactRational, FiniteFormOptions, PrecisionReal, Sabotage,
    SeriesSpec, Status, SummationOptions, VerificationReport,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{write_campaign, ConvergeRow};
use crate::{Cli, Command, ConvergeIdentity, NumericIdentity, Outcome, Step};

type Check = Box<dyn Fn() -> qapery_core::Result<VerificationReport> + Send + Sync>;

/// One grid cell: what to run, and how to label it if it errors out.
struct Task {
    check: &'static str,
    params: BTreeMap<String, Value>,
    run: Check,
}

impl Task {
    fn new(
        check: &'static str,
        params: BTreeMap<String, Value>,
        run: impl Fn() -> qapery_core::Result<VerificationReport> + Send + Sync + 'static,
    ) -> Self {
        Self { check, params, run: Box::new(run) }
    }

    fn execute(&self) -> VerificationReport {
        let started = Instant::now();
        (self.run)().unwrap_or_else(|e| error_report(self.check, self.params.clone(), &e, started))
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NegativeArgument { .. } => "negative-argument",
        Error::InexactDivision(_) => "inexact-division",
        Error::DivisionByZero => "division-by-zero",
        Error::Pole { .. } | Error::PoleAtPoint(_) => "pole",
        Error::ResourceCap { .. } => "resource-cap",
        Error::NonGeometric { .. } => "non-geometric",
        Error::Precondition(_) => "precondition",
        Error::Domain(_) => "domain",
        Error::Parse(_) => "parse",
    }
}

fn error_report(check: &str, mut params: BTreeMap<String, Value>, e: &Error, started: Instant) -> VerificationReport {
    params.insert("error".into(), json!(error_kind(e)));
    VerificationReport {
        check: check.to_string(),
        params,
        status: Status::Fail,
        witness: e.to_string(),
        residual_digits: None,
        terms: None,
        max_degree: match e {
            Error::ResourceCap { degree, .. } => Some(*degree),
            _ => None,
        },
        tolerance: None,
        millis: started.elapsed().as_millis() as u64,
    }
}

fn run_tasks(tasks: &[Task]) -> Vec<VerificationReport> {
    tasks.par_iter().map(Task::execute).collect()
}

fn usage(msg: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Usage(msg.into()))
}

fn parse_sabotage(s: &str) -> std::result::Result<Sabotage, String> {
    s.parse::<Sabotage>().map_err(|e| e.to_string())
}

fn in_unit_interval(values: &[ExactRational], name: &str) -> std::result::Result<(), String> {
    match values.iter().find(|v| !v.is_positive() || **v >= ExactRational::one()) {
        Some(v) => Err(format!("{name} must lie in (0, 1), got {v}")),
        None => Ok(()),
    }
}

fn summation_options(cli: &Cli) -> SummationOptions {
    SummationOptions {
        precision_bits: cli.common.precision.map(|p| p as usize),
        ..Default::default()
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let tasks = match &cli.command {
        Command::VerifyFinite { n, r, max_degree, sabotage } => {
            let sabotage = match parse_sabotage(sabotage) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            if n.is_empty() || r.is_empty() {
                return usage("empty N or r grid");
            }
            if n.min() == Some(0) {
                return usage("N >= 1 required");
            }
            let opts = FiniteFormOptions { max_degree: *max_degree };
            let mut tasks = Vec::new();
            for &nv in n.values() {
                for &rv in r.values() {
                    let rv = rv as u32;
                    tasks.push(Task::new(
                        "finite-form",
                        params([("N", json!(nv)), ("r", json!(rv))]),
                        move || verify_finite_form_with(nv, rv, &opts, sabotage),
                    ));
                }
            }
            tasks
        }
        Command::VerifyProof { steps, n, s, r, sabotage } => {
            let sabotage = match parse_sabotage(sabotage) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let tasks = proof_tasks(steps, n.values(), s.values(), r.values(), sabotage);
            if tasks.is_empty() {
                return usage("the proof-step grid is empty (n >= 2 is required)");
            }
            tasks
        }
        Command::Numeric { identity, q, x, r, a, r_max, digits, check_digits } => {
            let check_digits = check_digits.unwrap_or(digits.saturating_sub(2).max(1));
            let uses_q = !matches!(identity, NumericIdentity::KlClassical | NumericIdentity::MarkovParametric);
            if uses_q {
                if let Err(e) = in_unit_interval(&q.0, "q") {
                    return usage(e);
                }
            }
            if *identity == NumericIdentity::KlClassical {
                if let Some(v) = x.0.iter().find(|v| v.is_negative() || **v >= ExactRational::one()) {
                    return usage(format!("x must lie in [0, 1) for kl-classical, got {v}"));
                }
            }
            let tasks = numeric_tasks(*identity, &q.0, &x.0, r.values(), a.values(), *r_max, *digits, check_digits, summation_options(cli));
            if tasks.is_empty() {
                return usage("empty parameter grid");
            }
            tasks
        }
        Command::Converge { identity, q, r, digits } => {
            if *identity == ConvergeIdentity::RFamily {
                if let Err(e) = in_unit_interval(&q.0, "q") {
                    return usage(e);
                }
            }
            if r.is_empty() {
                return usage("empty r grid");
            }
            return converge(cli, *identity, &q.0, r.values(), *digits);
        }
        Command::LimitCheck { r, markov_a, kl_x, r_max, digits } => {
            let default_r: Option<Vec<u64>> = (r.is_none() && markov_a.is_none() && kl_x.is_none()).then(|| (0..=3).collect());
            let rs: Vec<u64> = r.as_ref().map(|s| s.values().to_vec()).or(default_r).unwrap_or_default();
            let mut tasks = Vec::new();
            let digits = *digits;
            for rv in rs {
                let rv = rv as u32;
                tasks.push(Task::new("classical-limit", params([("r", json!(rv))]), move || {
                    classical_limit_check(rv, digits)
                }));
            }
            for &av in markov_a.as_ref().map(|s| s.values()).unwrap_or_default() {
                let av = av as u32;
                tasks.push(Task::new("markov-parametric", params([("a", json!(av))]), move || {
                    markov_parametric_check(av, digits)
                }));
            }
            if let Some(xs) = kl_x {
                if let Some(v) = xs.0.iter().find(|v| v.is_negative() || **v >= ExactRational::one()) {
                    return usage(format!("x must lie in [0, 1), got {v}"));
                }
                for xv in xs.0.clone() {
                    let r_max = *r_max;
                    tasks.push(Task::new("kl-classical", params([("x", json!(xv.to_string()))]), move || {
                        kl_classical_check(r_max, &xv, digits)
                    }));
                }
            }
            if tasks.is_empty() {
                return usage("empty parameter grid");
            }
            tasks
        }
    };
    let reports = run_tasks(&tasks);
    let all_passed = write_campaign(cli, &reports, None)?;
    Ok(if all_passed { Outcome::AllPassed } else { Outcome::SomeFailed })
}

fn proof_tasks(steps: &[Step], ns: &[u64], ss: &[u64], rs: &[u64], sabotage: Sabotage) -> Vec<Task> {
    let mut tasks = Vec::new();
    let mut steps = steps.to_vec();
    steps.dedup();
    for step in steps {
        for &n in ns.iter().filter(|&&n| n >= 2) {
            match step {
                Step::KTelescope => {
                    for &s in ss {
                        let s = s as u32;
                        tasks.push(Task::new("step-k-telescope", params([("n", json!(n)), ("s", json!(s))]), move || {
                            verify_step_k_telescope(n, s)
                        }));
                    }
                }
                Step::PartialFraction => {
                    for k in 1..n {
                        tasks.push(Task::new(
                            "lemma-partial-fraction",
                            params([("n", json!(n)), ("k", json!(k))]),
                            move || verify_lemma_partial_fraction(n, k),
                        ));
                    }
                }
                Step::Combination => {
                    for k in 1..n {
                        for &s in ss.iter().filter(|&&s| s >= 1) {
                            let s = s as u32;
                            tasks.push(Task::new(
                                "step-combination",
                                params([("n", json!(n)), ("k", json!(k)), ("s", json!(s))]),
                                move || verify_step_combination_with(n, k, s, sabotage),
                            ));
                        }
                    }
                }
                Step::STelescope => {
                    for k in 1..n {
                        for &r in rs.iter().filter(|&&r| r >= 1) {
                            let r = r as u32;
                            tasks.push(Task::new(
                                "step-s-telescope",
                                params([("n", json!(n)), ("k", json!(k)), ("r", json!(r))]),
                                move || verify_step_s_telescope_with(n, k, r, sabotage),
                            ));
                        }
                    }
                }
            }
        }
    }
    tasks
}

#[allow(clippy::too_many_arguments)]
fn numeric_tasks(
    identity: NumericIdentity,
    qs: &[ExactRational],
    xs: &[ExactRational],
    rs: &[u64],
    as_: &[u64],
    r_max: u32,
    digits: u32,
    check_digits: u32,
    opts: SummationOptions,
) -> Vec<Task> {
    let mut tasks = Vec::new();
    let pair = |check: &'static str, lhs: SeriesSpec, rhs: SeriesSpec, q: ExactRational, x: Option<ExactRational>| {
        let mut p = params([("lhs", json!(lhs.to_string())), ("q", json!(q.to_string()))]);
        if let Some(x) = &x {
            p.insert("x".into(), json!(x.to_string()));
        }
        Task::new(check, p, move || {
            let mut report = series_agreement(&lhs, &rhs, Some(&q), x.as_ref(), digits, check_digits, &opts)?;
            report.check = check.to_string();
            Ok(report)
        })
    };
    match identity {
        NumericIdentity::QEven | NumericIdentity::MainBivariate => {
            let (check, lhs, rhs) = if identity == NumericIdentity::QEven {
                ("q-even", SeriesSpec::QEvenLhs, SeriesSpec::QEvenRhs)
            } else {
                ("main-bivariate", SeriesSpec::MainBivariateLhs, SeriesSpec::MainBivariateRhs)
            };
            for q in qs {
                for x in xs {
                    tasks.push(pair(check, lhs, rhs, q.clone(), Some(x.clone())));
                }
            }
        }
        NumericIdentity::QEvenX0 => {
            for q in qs {
                tasks.push(pair("q-even-x0", SeriesSpec::QEvenLhs, SeriesSpec::QEvenRhs, q.clone(), None));
            }
        }
        NumericIdentity::RFamily => {
            for q in qs {
                for &r in rs {
                    let r = r as u32;
                    tasks.push(pair("r-family", SeriesSpec::PlainQZeta { r }, SeriesSpec::RFamilyRhs { r }, q.clone(), None));
                }
            }
        }
        NumericIdentity::KlClassical => {
            for x in xs {
                let x = x.clone();
                tasks.push(Task::new("kl-classical", params([("x", json!(x.to_string()))]), move || {
                    kl_classical_check(r_max, &x, check_digits)
                }));
            }
        }
        NumericIdentity::MarkovParametric => {
            for &a in as_ {
                let a = a as u32;
                tasks.push(Task::new("markov-parametric", params([("a", json!(a))]), move || {
                    markov_parametric_check(a, check_digits)
                }));
            }
        }
    }
    tasks
}

/// Terms (and wall time) to reach `10^-digits` for a plain and an accelerated
/// series. Returns `None` for the term count when the plain series never
/// satisfies the geometric stopping rule.
fn time_terms(spec: &SeriesSpec, q: Option<&PrecisionReal>, digits: u32, opts: &SummationOptions) -> (Result<usize, Error>, u64) {
    let started = Instant::now();
    let terms = terms_to_tolerance(spec, q, None, digits, opts);
    (terms, started.elapsed().as_millis() as u64)
}

fn converge(cli: &Cli, identity: ConvergeIdentity, qs: &[ExactRational], rs: &[u64], digits: u32) -> Result<Outcome> {
    let opts = summation_options(cli);
    let prec = opts.precision_bits.unwrap_or_else(|| PrecisionReal::working_bits(digits));
    let cells: Vec<(Option<ExactRational>, u32)> = match identity {
        ConvergeIdentity::RFamily => qs
            .iter()
            .flat_map(|q| rs.iter().map(move |&r| (Some(q.clone()), r as u32)))
            .collect(),
        ConvergeIdentity::MarkovAperyClassical => rs.iter().map(|&r| (None, r as u32)).collect(),
    };
    let rows: Vec<(ConvergeRow, VerificationReport)> = cells
        .par_iter()
        .map(|(q, r)| {
            let started = Instant::now();
            let qf = q.as_ref().map(|q| PrecisionReal::from_rational(q, prec));
            let (plain_spec, fast_spec, name) = match identity {
                ConvergeIdentity::RFamily => (
                    Some(SeriesSpec::PlainQZeta { r: *r }),
                    SeriesSpec::RFamilyRhs { r: *r },
                    "r-family",
                ),
                ConvergeIdentity::MarkovAperyClassical => (
                    (*r == 0).then_some(SeriesSpec::MarkovParametricLhs { a: 0 }),
                    SeriesSpec::MarkovAperyClassical { r: *r },
                    "markov-apery-classical",
                ),
            };
            let (plain, plain_ms) = match &plain_spec {
                Some(spec) => time_terms(spec, qf.as_ref(), digits, &opts),
                None => (Err(Error::Precondition("no plain series".into())), 0),
            };
            let (fast, fast_ms) = time_terms(&fast_spec, qf.as_ref(), digits, &opts);
            let plain_status = match (&plain_spec, &plain) {
                (None, _) => "n/a".to_string(),
                (_, Ok(_)) => "converged".to_string(),
                (_, Err(e)) => error_kind(e).to_string(),
            };
            let ok = match (&fast, &plain) {
                (Ok(f), Ok(p)) => f < p,
                (Ok(_), Err(Error::NonGeometric { .. })) => true,
                (Ok(_), Err(_)) => plain_spec.is_none(),
                (Err(_), _) => false,
            };
            let row = ConvergeRow {
                identity: name.to_string(),
                q: q.as_ref().map(ToString::to_string).unwrap_or_else(|| "1".into()),
                r: *r,
                digits,
                terms_plain: plain.as_ref().ok().copied(),
                terms_accelerated: fast.as_ref().ok().copied(),
                millis_plain: plain_ms,
                millis_accelerated: fast_ms,
                plain_status: plain_status.clone(),
            };
            let mut p = params([
                ("identity", json!(name)),
                ("q", json!(row.q)),
                ("r", json!(r)),
                ("terms_plain", json!(row.terms_plain)),
                ("terms_accelerated", json!(row.terms_accelerated)),
                ("plain_status", json!(plain_status)),
            ]);
            if let Some((f, pl)) = row.terms_accelerated.zip(row.terms_plain) {
                p.insert("ratio".into(), json!(format!("{:.3}", pl as f64 / f as f64)));
            }
            let witness = match &fast {
                Ok(f) => format!("accelerated {f} terms, plain {}", row.terms_plain.map_or(plain_status.clone(), |t| t.to_string())),
                Err(e) => e.to_string(),
            };
            let report = VerificationReport {
                check: "converge".into(),
                params: p,
                status: Status::from_bool(ok),
                witness,
                residual_digits: None,
                terms: fast.as_ref().ok().map(|&t| t as u64),
                max_degree: None,
                tolerance: Some(format!("1e-{digits}")),
                millis: started.elapsed().as_millis() as u64,
            };
            (row, report)
        })
        .collect();
    let (rows, reports): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let all_passed = write_campaign(cli, &reports, Some(&rows))?;
    Ok(if all_passed { Outcome::AllPassed } else { Outcome::SomeFailed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn unit_interval_validation() {
        let half = ExactRational::new(1.into(), 2.into());
        assert!(in_unit_interval(&[half], "q").is_ok());
        assert!(in_unit_interval(&[ExactRational::one()], "q").is_err());
        assert!(in_unit_interval(&[ExactRational::zero()], "q").is_err());
    }

    #[test]
    fn proof_grid_respects_bounds() {
        let all = [Step::Combination, Step::KTelescope, Step::PartialFraction, Step::STelescope];
        assert!(proof_tasks(&all, &[1], &[0, 1], &[1], Sabotage::None).is_empty());
        // n = 3: combination 2 k x 1 s, k-telescope 2 s, lemma 2 k, s-telescope 2 k x 1 r
        assert_eq!(proof_tasks(&all, &[3], &[0, 1], &[1], Sabotage::None).len(), 8);
    }
}
