//! Classical (`q = 1`) checks against an independent direct-summation oracle
//! for `zeta(m)`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::real::PrecisionReal;
use super::summation::{sum_series, SummationOptions};
use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::identity::{params, SeriesSpec, Status, VerificationReport};

/// Upper limit on directly summed terms in [`zeta_reference`].
pub const MAX_DIRECT_TERMS: u64 = 50_000_000;

/// `sum_{k < cutoff} f(k)` at precision `prec`, summed from the smallest term up.
fn direct_sum(cutoff: u64, prec: usize, f: impl Fn(&PrecisionReal) -> PrecisionReal) -> PrecisionReal {
    let mut acc = PrecisionReal::zero(prec);
    for k in (1..cutoff).rev() {
        acc = acc.add(&f(&PrecisionReal::from_i64(k as i64, prec)));
    }
    acc
}

/// `zeta(m)` to `digits` decimals: `sum_{k < K} k^-m` plus the midpoint of
/// the enclosure `K^(1-m)/(m-1) < tail < (K-1)^(1-m)/(m-1)`, with `K` chosen
/// so the half-width of the enclosure is at most `10^-digits / 10`.
pub fn zeta_reference(m: u32, digits: u32) -> Result<PrecisionReal> {
    if m < 2 {
        return Err(Error::Precondition(format!("zeta_reference needs m >= 2, got {m}")));
    }
    let cutoff = zeta_cutoff(m, digits)?;
    let prec = PrecisionReal::working_bits(digits) + 2 * (64 - cutoff.leading_zeros() as usize);
    let one = PrecisionReal::from_i64(1, prec);
    let head = direct_sum(cutoff, prec, |k| one.div(&k.powi(m)).expect("k >= 1"));
    let mm1 = PrecisionReal::from_i64(m as i64 - 1, prec);
    let lo = one
        .div(&PrecisionReal::from_i64(cutoff as i64, prec).powi(m - 1).mul(&mm1))
        .expect("nonzero");
    let hi = one
        .div(&PrecisionReal::from_i64(cutoff as i64 - 1, prec).powi(m - 1).mul(&mm1))
        .expect("nonzero");
    let mid = lo.add(&hi).div(&PrecisionReal::from_i64(2, prec)).expect("nonzero");
    Ok(head.add(&mid))
}

/// Smallest `K` with `((K-1)^(1-m) - K^(1-m)) / (2(m-1)) <= 10^-digits / 10`,
/// using the bound `(K-1)^-m / 2` for the half-width.
fn zeta_cutoff(m: u32, digits: u32) -> Result<u64> {
    let log10_k = (digits as f64 + 1.0 - 2f64.log10()) / m as f64;
    let k = 10f64.powf(log10_k).ceil() + 2.0;
    if k > MAX_DIRECT_TERMS as f64 {
        return Err(Error::Domain(format!(
            "zeta({m}) to {digits} digits needs about {k:.0} direct terms (limit {MAX_DIRECT_TERMS})"
        )));
    }
    Ok((k as u64).max(3))
}

fn residual_report(
    check: &str,
    p: std::collections::BTreeMap<String, serde_json::Value>,
    a: &PrecisionReal,
    b: &PrecisionReal,
    tol_digits: u32,
    terms: Option<u64>,
    started: Instant,
) -> VerificationReport {
    let residual = a.sub(b).abs();
    VerificationReport::numeric(check, p, residual.to_decimal(6), residual.log10_abs(), tol_digits, terms, started)
}

/// `zeta(3) - sum_{k<=a} k^-3` against the parametric accelerated series.
pub fn markov_parametric_check(a: u32, tol_digits: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let digits = tol_digits + 2;
    let zeta3 = zeta_reference(3, digits)?;
    let prec = zeta3.precision();
    let head: ExactRational = (1..=a as i64)
        .map(|k| ExactRational::new(BigInt::one(), BigInt::from(k).pow(3)))
        .fold(ExactRational::zero(), |s, t| s + t);
    let lhs = zeta3.sub(&PrecisionReal::from_rational(&head, prec));
    let rhs = sum_series(
        &SeriesSpec::MarkovParametricRhs { a },
        None,
        None,
        digits,
        &SummationOptions { precision_bits: Some(prec), ..Default::default() },
    )?;
    let p = params([("a", json!(a)), ("value", json!(lhs.to_decimal(digits as usize)))]);
    Ok(residual_report("markov-parametric", p, &lhs, &rhs.value, tol_digits, Some(rhs.terms as u64), started))
}

/// `sum_{k >= K} 1/(k(k^2-x^2))` enclosed between the integrals from `K` and
/// `K - 1`; returns the midpoint. `int_K^inf = -ln(1 - x^2/K^2) / (2 x^2)`,
/// expanded as `(1/(2K^2)) sum_j u^(j-1)/j` with `u = x^2/K^2` so `x = 0` is
/// regular.
fn kl_tail(cutoff: u64, x2: &PrecisionReal, prec: usize) -> PrecisionReal {
    let integral = |from: u64| {
        let kk = PrecisionReal::from_i64((from * from) as i64, prec);
        let u = x2.div(&kk).expect("K >= 1");
        let mut acc = PrecisionReal::zero(prec);
        let mut upow = PrecisionReal::from_i64(1, prec);
        for j in 1..=(prec as i64) {
            let t = upow.div(&PrecisionReal::from_i64(j, prec)).expect("j >= 1");
            acc = acc.add(&t);
            if t.is_zero() || t.log2_abs() < -(prec as f64) - 8.0 {
                break;
            }
            upow = upow.mul(&u);
        }
        acc.div(&kk.mul(&PrecisionReal::from_i64(2, prec))).expect("nonzero")
    };
    integral(cutoff)
        .add(&integral(cutoff - 1))
        .div(&PrecisionReal::from_i64(2, prec))
        .expect("nonzero")
}

fn validate_x(x0: &ExactRational) -> Result<()> {
    if x0.is_negative() {
        return Err(Error::Domain(format!("x must lie in [0, 1), got {x0}")));
    }
    if x0.is_integer() && !x0.is_zero() {
        return Err(Error::Pole {
            k: x0.to_integer().try_into().unwrap_or(u64::MAX),
            detail: format!("k^2 - x^2 vanishes at x = {x0}"),
        });
    }
    if *x0 >= ExactRational::one() {
        return Err(Error::Domain(format!("x must lie in [0, 1), got {x0}")));
    }
    Ok(())
}

/// Compares both sides of the classical generating-function identity at `x0`,
/// and the direct side against `sum_{r <= r_max} zeta(2r+3) x0^(2r)` within
/// `x0^(2 r_max + 2) zeta(2 r_max + 5) / (1 - x0^2)` plus the tolerance.
pub fn kl_classical_check(r_max: u32, x0: &ExactRational, tol_digits: u32) -> Result<VerificationReport> {
    validate_x(x0)?;
    let started = Instant::now();
    let digits = tol_digits + 2;
    let half_width = (digits as f64 + 1.0 - 2f64.log10()) / 3.0;
    let cutoff = (10f64.powf(half_width).ceil() as u64 + 2).max(3);
    let prec = PrecisionReal::working_bits(digits) + 2 * (64 - cutoff.leading_zeros() as usize);
    let x = PrecisionReal::from_rational(x0, prec);
    let x2 = x.mul(&x);
    let one = PrecisionReal::from_i64(1, prec);
    let middle = direct_sum(cutoff, prec, |k| {
        one.div(&k.mul(&k.mul(k).sub(&x2))).expect("k > x")
    })
    .add(&kl_tail(cutoff, &x2, prec));

    let rhs = sum_series(
        &SeriesSpec::KlClassicalRhs,
        None,
        Some(&x),
        digits,
        &SummationOptions { precision_bits: Some(prec), ..Default::default() },
    )?;

    let mut generating = PrecisionReal::zero(prec);
    let mut x_pow = one.clone();
    for r in 0..=r_max {
        generating = generating.add(&zeta_reference(2 * r + 3, digits)?.mul(&x_pow));
        x_pow = x_pow.mul(&x2);
    }
    let bound = x_pow
        .mul(&zeta_reference(2 * r_max + 5, digits)?)
        .div(&one.sub(&x2))
        .expect("x < 1")
        .add(&PrecisionReal::ten_pow(-(tol_digits as i32), prec));
    let gen_gap = middle.sub(&generating).abs();
    let gen_ok = gen_gap <= bound;

    let p = params([
        ("x", json!(x0.to_string())),
        ("r_max", json!(r_max)),
        ("value", json!(middle.to_decimal(digits as usize))),
        ("generating_gap", json!(gen_gap.to_decimal(6))),
        ("generating_bound", json!(bound.to_decimal(6))),
    ]);
    let mut report = residual_report("kl-classical", p, &middle, &rhs.value, tol_digits, Some(rhs.terms as u64), started);
    if !gen_ok {
        report.status = Status::Fail;
        report.witness = format!(
            "{}; generating-function gap {} exceeds {}",
            report.witness,
            gen_gap.to_decimal(6),
            bound.to_decimal(6)
        );
    }
    Ok(report)
}

/// Accelerated classical series for `zeta(2r+3)` against [`zeta_reference`].
pub fn classical_limit_check(r: u32, tol_digits: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let digits = tol_digits + 2;
    let reference = zeta_reference(2 * r + 3, digits)?;
    let series = sum_series(
        &SeriesSpec::MarkovAperyClassical { r },
        None,
        None,
        digits,
        &SummationOptions { precision_bits: Some(reference.precision()), ..Default::default() },
    )?;
    let p = params([
        ("r", json!(r)),
        ("m", json!(2 * r + 3)),
        ("value", json!(reference.to_decimal(digits as usize))),
    ]);
    Ok(residual_report(
        "classical-limit",
        p,
        &reference,
        &series.value,
        tol_digits,
        Some(series.terms as u64),
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta2_matches_pi_squared_over_six() {
        let z = zeta_reference(2, 10).unwrap();
        assert_eq!(z.to_decimal(10), "1.644934066e0");
        assert!((z.to_f64() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-10);
    }

    #[test]
    fn zeta_reference_guards() {
        assert!(zeta_reference(1, 5).is_err());
        assert!(matches!(zeta_reference(2, 40), Err(Error::Domain(_))));
    }

    #[test]
    fn kl_x_validation() {
        let one = ExactRational::one();
        assert!(matches!(kl_classical_check(2, &one, 10), Err(Error::Pole { k: 1, .. })));
        let neg = ExactRational::new((-1).into(), 2.into());
        assert!(matches!(kl_classical_check(2, &neg, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn parametric_a1() {
        assert!(markov_parametric_check(1, 12).unwrap().passed());
    }
}
