use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::json;

use super::real::PrecisionReal;
use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::identity::{series_term, SeriesSpec, VerificationReport};

/// Knobs for [`sum_series`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummationOptions {
    /// Working precision in bits; `None` uses the digits plus guard digits.
    pub precision_bits: Option<usize>,
    /// Give up (with [`Error::NonGeometric`]) after this many terms.
    pub term_cap: usize,
    /// The fitted term ratio must drop below this before stopping.
    pub ratio_threshold: f64,
}

impl Default for SummationOptions {
    fn default() -> Self {
        Self {
            precision_bits: None,
            term_cap: 5000,
            ratio_threshold: 0.9,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SummationResult {
    pub value: PrecisionReal,
    pub terms: usize,
    pub last_term: PrecisionReal,
    /// `|t_K| rho / (1 - rho)` at the stopping index.
    pub tail_bound: PrecisionReal,
    pub ratio: f64,
    pub converged: bool,
    pub precision_bits: usize,
}

fn check_q(spec: &SeriesSpec, q0: Option<&PrecisionReal>) -> Result<()> {
    if !spec.uses_q() {
        return Ok(());
    }
    let q0 = q0.ok_or_else(|| Error::Domain(format!("{spec} needs a value for q")))?;
    let p = q0.precision();
    if q0 <= &PrecisionReal::zero(p) || q0 >= &PrecisionReal::from_i64(1, p) {
        return Err(Error::Domain(format!("q must lie in (0, 1), got {}", q0.to_decimal(12))));
    }
    Ok(())
}

/// Sums `spec` at `(q0, x0)` until the geometric stopping rule certifies a
/// tail below `10^-digits / 2`.
///
/// Every term is evaluated at the working precision; `q0` and `x0` are
/// re-rounded to it. Classical series ignore `q0`.
pub fn sum_series(
    spec: &SeriesSpec,
    q0: Option<&PrecisionReal>,
    x0: Option<&PrecisionReal>,
    digits: u32,
    opts: &SummationOptions,
) -> Result<SummationResult> {
    check_q(spec, q0)?;
    let prec = opts
        .precision_bits
        .unwrap_or_else(|| PrecisionReal::working_bits(digits));
    let q = q0
        .map(|q| q.with_precision(prec))
        .unwrap_or_else(|| PrecisionReal::zero(prec));
    let x = x0.map(|x| x.with_precision(prec));
    // |t| rho / (1 - rho) < 10^-digits / 2, compared in log2.
    let target = -(digits as f64) * std::f64::consts::LOG2_10 - 1.0;

    let mut sum = PrecisionReal::zero(prec);
    let mut logs: Vec<f64> = Vec::new();
    let mut rho = f64::NAN;
    for k in 1..=opts.term_cap as u64 {
        let t = series_term(spec, k, &q, x.as_ref())?;
        sum = sum.add(&t);
        logs.push(t.log2_abs());
        let n = logs.len();
        if n < 3 {
            continue;
        }
        let (lk, lk2) = (logs[n - 1], logs[n - 3]);
        if lk2 == f64::NEG_INFINITY {
            continue;
        }
        rho = if lk == f64::NEG_INFINITY {
            0.0
        } else {
            ((lk - lk2) / 2.0).exp2()
        };
        if rho < opts.ratio_threshold {
            let tail_log = lk + rho.log2() - (1.0 - rho).log2();
            if lk == f64::NEG_INFINITY || tail_log < target {
                let tail = if rho == 0.0 {
                    PrecisionReal::zero(prec)
                } else {
                    t.abs()
                        .mul(&PrecisionReal::from_rational(&f64_ratio(rho / (1.0 - rho)), prec))
                };
                return Ok(SummationResult {
                    value: sum,
                    terms: k as usize,
                    last_term: t.abs(),
                    tail_bound: tail,
                    ratio: rho,
                    converged: true,
                    precision_bits: prec,
                });
            }
        }
    }
    Err(Error::NonGeometric {
        terms: opts.term_cap,
        ratio: rho,
    })
}

fn f64_ratio(v: f64) -> ExactRational {
    ExactRational::from_float(v).expect("finite ratio")
}

/// How many terms [`sum_series`] consumes.
pub fn terms_to_tolerance(
    spec: &SeriesSpec,
    q0: Option<&PrecisionReal>,
    x0: Option<&PrecisionReal>,
    digits: u32,
    opts: &SummationOptions,
) -> Result<usize> {
    sum_series(spec, q0, x0, digits, opts).map(|r| r.terms)
}

/// Sums two series at the same point to `sum_digits` and passes iff they agree
/// within `10^-check_digits`.
pub fn series_agreement(
    lhs: &SeriesSpec,
    rhs: &SeriesSpec,
    q0: Option<&ExactRational>,
    x0: Option<&ExactRational>,
    sum_digits: u32,
    check_digits: u32,
    opts: &SummationOptions,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let prec = opts
        .precision_bits
        .unwrap_or_else(|| PrecisionReal::working_bits(sum_digits));
    let q = q0.map(|q| PrecisionReal::from_rational(q, prec));
    let x = x0.map(|x| PrecisionReal::from_rational(x, prec));
    let a = sum_series(lhs, q.as_ref(), x.as_ref(), sum_digits, opts)?;
    let b = sum_series(rhs, q.as_ref(), x.as_ref(), sum_digits, opts)?;
    let residual = a.value.sub(&b.value).abs();
    let mut params = BTreeMap::new();
    params.insert("lhs".to_string(), json!(lhs.to_string()));
    params.insert("rhs".to_string(), json!(rhs.to_string()));
    if let Some(q) = q0 {
        params.insert("q".to_string(), json!(q.to_string()));
    }
    if let Some(x) = x0 {
        params.insert("x".to_string(), json!(x.to_string()));
    }
    params.insert("value".to_string(), json!(a.value.to_decimal(sum_digits as usize)));
    params.insert("terms_lhs".to_string(), json!(a.terms));
    params.insert("terms_rhs".to_string(), json!(b.terms));
    params.insert("precision_bits".to_string(), json!(prec));
    Ok(VerificationReport::numeric(
        "series-agreement",
        params,
        residual.to_decimal(6),
        residual.log10_abs(),
        check_digits,
        Some((a.terms + b.terms) as u64),
        started,
    ))
}
