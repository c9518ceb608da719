//! Exact checks of the intermediate identities that assemble the finite form.

use std::time::Instant;

use serde_json::json;

use super::finite_form::{qi, qm, sign, Sabotage};
use super::report::{params, VerificationReport};
use crate::error::{Error, Result};
use crate::exact::QRationalFunction;
use crate::qobjects::{harmonic_q_with, interval_product, q_binomial, q_factorial, DepthConvention, HarmonicDepth};

fn h(k: u64, s: i64, convention: DepthConvention) -> QRationalFunction {
    harmonic_q_with(k, HarmonicDepth::new(s).expect("depth >= -1"), convention)
}

fn ip(a: u64, b: u64) -> QRationalFunction {
    QRationalFunction::from_poly(&interval_product(a as i64, b as i64).expect("a >= 1"))
}

fn fact(n: u64) -> QRationalFunction {
    QRationalFunction::from_poly(&q_factorial(n as i64).expect("non-negative"))
}

fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn need(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what()))
    }
}

fn degree_of(values: &[&QRationalFunction]) -> usize {
    values.iter().map(|v| v.degree()).max().unwrap_or(0)
}

/// Both sides of the one-step combination at `(n, k, s)`.
pub fn combination_sides(
    n: u64,
    k: u64,
    s: u32,
    sabotage: Sabotage,
) -> (QRationalFunction, QRationalFunction) {
    let s = s as i64;
    let z = DepthConvention::Zero;
    let bk2 = qi(k).pow(2);
    let lhs = &(&qm(n as i64 - k as i64) * &h(k, s, z))
        + &(&(&(&qi(n + k) * &qi(n - k)) / &bk2) * &h(k - 1, s, z));
    let mut rhs = &(&qi(n).pow(2) / &bk2) * &h(k - 1, s, z);
    if sabotage != Sabotage::DropLowerDepth {
        rhs = &rhs + &(&(&qm(n as i64) / &bk2) * &h(k - 1, s - 1, z));
    }
    (lhs, rhs)
}

pub fn verify_step_combination(n: u64, k: u64, s: u32) -> Result<VerificationReport> {
    verify_step_combination_with(n, k, s, Sabotage::None)
}

/// `q^(n-k) H_k(s) + [n+k][n-k]/[k]^2 H_{k-1}(s) = [n]^2/[k]^2 H_{k-1}(s) + q^n/[k]^2 H_{k-1}(s-1)`.
pub fn verify_step_combination_with(n: u64, k: u64, s: u32, sabotage: Sabotage) -> Result<VerificationReport> {
    need(n >= 2 && 1 <= k && k < n, || format!("combination needs 1 <= k <= n-1, got n={n}, k={k}"))?;
    need(s >= 1, || "combination needs s >= 1".into())?;
    let started = Instant::now();
    let (lhs, rhs) = combination_sides(n, k, s, sabotage);
    let diff = &lhs - &rhs;
    let mut p = params([("n", json!(n)), ("k", json!(k)), ("s", json!(s))]);
    tag(&mut p, sabotage);
    Ok(VerificationReport::exact("step-combination", p, &diff, degree_of(&[&lhs, &rhs]), started))
}

fn tag(p: &mut std::collections::BTreeMap<String, serde_json::Value>, sabotage: Sabotage) {
    if sabotage != Sabotage::None {
        p.insert("sabotage".into(), json!(sabotage.name()));
    }
}

/// `(-1)^k q^(-C(n-k+1,2)) ([k]!)^2 / prod_{j=n-k}^{n+k} [j]`.
fn k_multiplier(n: u64, k: u64) -> QRationalFunction {
    let ki = k as i64;
    let num = &(&sign(ki) * &qm(-c2(n as i64 - ki + 1))) * &fact(k).pow(2);
    &num / &ip(n - k, n + k)
}

/// `(-1)^k q^(-C(n-k,2)) ([k]!)^2 / prod_{j=n-k}^{n+k} [j] * H_k(s)`; the
/// multiplied combination at index `k` is `T(k) - T(k-1)`.
fn k_potential(n: u64, k: u64, s: i64) -> QRationalFunction {
    let ki = k as i64;
    let num = &(&sign(ki) * &qm(-c2(n as i64 - ki))) * &fact(k).pow(2);
    &(&num / &ip(n - k, n + k)) * &h(k, s, DepthConvention::Zero)
}

/// `sum_{k=1}^{n-1}` of the multiplied combination left-hand side, together
/// with the closed boundary expression.
pub fn k_telescope_sides(n: u64, s: u32) -> (QRationalFunction, QRationalFunction, Vec<QRationalFunction>) {
    let si = s as i64;
    let z = DepthConvention::Zero;
    let mut total = QRationalFunction::zero();
    let mut per_k = Vec::new();
    for k in 1..n {
        let inner = &(&qm(n as i64 - k as i64) * &h(k, si, z))
            + &(&(&(&qi(n + k) * &qi(n - k)) / &qi(k).pow(2)) * &h(k - 1, si, z));
        let term = &k_multiplier(n, k) * &inner;
        let step = &k_potential(n, k, si) - &k_potential(n, k - 1, si);
        per_k.push(&term - &step);
        total = &total + &term;
    }
    let ni = n as i64;
    let central = QRationalFunction::from_poly(&q_binomial(2 * ni, ni).expect("non-negative"));
    let first = &(&(&sign(ni - 1) * &(&QRationalFunction::one() + &qm(ni))) / &(&qi(n) * &central))
        * &h(n - 1, si, z);
    let second = &(&qm(-c2(ni)) / &qi(n)) * &h(0, si, z);
    (total, &first - &second, per_k)
}

/// The summed, multiplied combination equals its two boundary terms; each
/// summand is also checked against its own telescoping difference.
pub fn verify_step_k_telescope(n: u64, s: u32) -> Result<VerificationReport> {
    need(n >= 2, || format!("k-telescope needs n >= 2, got {n}"))?;
    let started = Instant::now();
    let (total, boundary, per_k) = k_telescope_sides(n, s);
    let diff = &total - &boundary;
    let diff = if diff.is_zero() {
        per_k.into_iter().find(|d| !d.is_zero()).unwrap_or(diff)
    } else {
        diff
    };
    let p = params([("n", json!(n)), ("s", json!(s))]);
    Ok(VerificationReport::exact("step-k-telescope", p, &diff, degree_of(&[&total, &boundary]), started))
}

/// `(1+q^n) q^(nk) / IP(n-k, n+k)` and
/// `(q^(nk)/IP(n-k, n+k-1) - q^((n+1)k)/IP(n-k+1, n+k)) / [k]`.
pub fn partial_fraction_sides(n: u64, k: u64) -> (QRationalFunction, QRationalFunction) {
    let nk = (n * k) as i64;
    let lhs = &(&(&QRationalFunction::one() + &qm(n as i64)) * &qm(nk)) / &ip(n - k, n + k);
    let rhs = &(&(&qm(nk) / &ip(n - k, n + k - 1)) - &(&qm(nk + k as i64) / &ip(n - k + 1, n + k)))
        / &qi(k);
    (lhs, rhs)
}

pub fn verify_lemma_partial_fraction(n: u64, k: u64) -> Result<VerificationReport> {
    need(1 <= k && k < n, || {
        format!("partial fraction needs 1 <= k <= n-1 so that [n-k] != 0, got n={n}, k={k}")
    })?;
    let started = Instant::now();
    let (lhs, rhs) = partial_fraction_sides(n, k);
    let diff = &lhs - &rhs;
    let p = params([("n", json!(n)), ("k", json!(k))]);
    Ok(VerificationReport::exact("lemma-partial-fraction", p, &diff, degree_of(&[&lhs, &rhs]), started))
}

/// The `s = 0..r-1` sum and its collapsed value `(-1)^(r-1) q^n H_{k-1}(r-1)`.
pub fn s_telescope_sides(
    n: u64,
    k: u64,
    r: u32,
    convention: DepthConvention,
) -> (QRationalFunction, QRationalFunction) {
    let ri = r as i64;
    let ni = n as i64;
    let bn = qi(n);
    let mut total = QRationalFunction::zero();
    for s in 0..ri {
        let a = &(&(&sign(s) * &qm((ri - s) * ni)) / &bn.pow((2 * (ri - s) - 2) as u32))
            * &h(k - 1, s, convention);
        let b = &(&(&sign(s - 1) * &qm((ri - s + 1) * ni)) / &bn.pow((2 * (ri - s)) as u32))
            * &h(k - 1, s - 1, convention);
        total = &total + &(&a - &b);
    }
    let closed = &(&sign(ri - 1) * &qm(ni)) * &h(k - 1, ri - 1, convention);
    (total, closed)
}

pub fn verify_step_s_telescope(n: u64, k: u64, r: u32) -> Result<VerificationReport> {
    verify_step_s_telescope_with(n, k, r, Sabotage::None)
}

/// `Sabotage::DepthMinusOneIsOne` evaluates the depth `-1` sum as 1, which
/// must break the identity.
pub fn verify_step_s_telescope_with(n: u64, k: u64, r: u32, sabotage: Sabotage) -> Result<VerificationReport> {
    need(n >= 2 && 1 <= k && k < n, || format!("s-telescope needs 1 <= k <= n-1, got n={n}, k={k}"))?;
    need(r >= 1, || "s-telescope needs r >= 1".into())?;
    let started = Instant::now();
    let convention = if sabotage == Sabotage::DepthMinusOneIsOne {
        DepthConvention::One
    } else {
        DepthConvention::Zero
    };
    let (total, closed) = s_telescope_sides(n, k, r, convention);
    let diff = &total - &closed;
    let mut p = params([("n", json!(n)), ("k", json!(k)), ("r", json!(r))]);
    tag(&mut p, sabotage);
    Ok(VerificationReport::exact("step-s-telescope", p, &diff, degree_of(&[&total, &closed]), started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_cases_pass() {
        assert!(verify_step_combination(2, 1, 1).unwrap().passed());
        assert!(verify_step_combination(5, 3, 2).unwrap().passed());
        assert!(verify_step_k_telescope(2, 0).unwrap().passed());
        assert!(verify_step_k_telescope(4, 1).unwrap().passed());
        assert!(verify_step_k_telescope(6, 2).unwrap().passed());
        assert!(verify_lemma_partial_fraction(2, 1).unwrap().passed());
        assert!(verify_lemma_partial_fraction(5, 4).unwrap().passed());
        assert!(verify_step_s_telescope(2, 1, 1).unwrap().passed());
        assert!(verify_step_s_telescope(4, 2, 3).unwrap().passed());
    }

    #[test]
    fn negative_controls_fail() {
        assert!(!verify_step_combination_with(5, 3, 2, Sabotage::DropLowerDepth).unwrap().passed());
        let r = verify_step_s_telescope_with(4, 2, 3, Sabotage::DepthMinusOneIsOne).unwrap();
        assert!(!r.passed());
        assert_ne!(r.witness, "0");
        assert!(!verify_step_s_telescope_with(2, 1, 1, Sabotage::DepthMinusOneIsOne).unwrap().passed());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(verify_lemma_partial_fraction(3, 3), Err(Error::Precondition(_))));
        assert!(verify_lemma_partial_fraction(3, 0).is_err());
        assert!(verify_step_combination(3, 1, 0).is_err());
        assert!(verify_step_k_telescope(1, 0).is_err());
        assert!(verify_step_s_telescope(3, 1, 0).is_err());
    }
}
