use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::json;

use super::report::{params, VerificationReport};
use crate::error::{Error, Result};
use crate::exact::QRationalFunction;
use crate::qobjects::{harmonic_q, q_binomial, q_int, HarmonicDepth};

/// The three members of the truncated identity at fixed `(N, r)`:
/// `lhs = rhs_main - remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFormSides {
    pub n: u64,
    pub r: u32,
    pub lhs: QRationalFunction,
    pub rhs_main: QRationalFunction,
    pub remainder: QRationalFunction,
}

impl FiniteFormSides {
    /// `lhs - rhs_main + remainder`, zero exactly when the identity holds.
    pub fn difference(&self) -> QRationalFunction {
        &(&self.lhs - &self.rhs_main) + &self.remainder
    }

    pub fn max_degree(&self) -> usize {
        self.lhs
            .degree()
            .max(self.rhs_main.degree())
            .max(self.remainder.degree())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteFormOptions {
    /// Largest numerator or denominator degree any partial sum may reach.
    pub max_degree: usize,
}

impl Default for FiniteFormOptions {
    fn default() -> Self {
        Self { max_degree: 20_000 }
    }
}

/// Deliberate perturbations used as negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Sabotage {
    #[default]
    None,
    /// Flip the sign of the remainder in the finite form.
    RemainderSign,
    /// Omit the `H({2}^(s-1))` term from the combination step.
    DropLowerDepth,
    /// Evaluate `H({2}^-1)` as 1 instead of 0.
    DepthMinusOneIsOne,
}

impl Sabotage {
    pub fn name(self) -> &'static str {
        match self {
            Sabotage::None => "none",
            Sabotage::RemainderSign => "remainder-sign",
            Sabotage::DropLowerDepth => "drop-lower-depth",
            Sabotage::DepthMinusOneIsOne => "depth-minus-one",
        }
    }
}

impl fmt::Display for Sabotage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sabotage {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Sabotage::None,
            Sabotage::RemainderSign,
            Sabotage::DropLowerDepth,
            Sabotage::DepthMinusOneIsOne,
        ]
        .into_iter()
        .find(|v| v.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown sabotage {s:?}")))
    }
}

pub(crate) fn qi(n: u64) -> QRationalFunction {
    QRationalFunction::from_poly(&q_int(n as i64).expect("non-negative"))
}

pub(crate) fn qm(e: i64) -> QRationalFunction {
    QRationalFunction::q_monomial(e)
}

pub(crate) fn sign(e: i64) -> QRationalFunction {
    QRationalFunction::from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn qbin(n: u64, k: u64) -> QRationalFunction {
    QRationalFunction::from_poly(&q_binomial(n as i64, k as i64).expect("non-negative"))
}

fn h(k: u64, s: i64) -> QRationalFunction {
    harmonic_q(k, HarmonicDepth::new(s).expect("depth >= -1"))
}

fn cap(value: &QRationalFunction, opts: &FiniteFormOptions) -> Result<()> {
    let degree = value.degree();
    if degree > opts.max_degree {
        return Err(Error::ResourceCap { degree, cap: opts.max_degree });
    }
    Ok(())
}

/// The `k`-th term of the truncated left-hand side.
pub fn lhs_term(k: u64, r: u32) -> QRationalFunction {
    let r = r as i64;
    let num = &qm((r + 1) * k as i64) + &qm((r + 2) * k as i64);
    &num / &qi(k).pow(2 * r as u32 + 3)
}

/// The `k`-th term of the accelerated main sum.
pub fn main_term(k: u64, r: u32) -> QRationalFunction {
    let ki = k as i64;
    let ri = r as i64;
    let bk = qi(k);
    let bk2 = bk.pow(2);
    let qk = qm(ki);
    let lead = &(&sign(ki - 1 + ri) * &qm(ki * (ki + 1) / 2)) / &(&(&bk2 * &bk) * &qbin(2 * k, k));
    let one = QRationalFunction::one();
    let first = &(&(&one + &(&QRationalFunction::from_int(3) * &qk)) + &qm(2 * ki)) * &h(k - 1, ri);
    let mut inner = QRationalFunction::zero();
    for j in 1..=ri {
        let t = &(&sign(j) * &(&qm(ki * j) / &bk2.pow(j as u32))) * &h(k - 1, ri - j);
        inner = &inner + &t;
    }
    let one_plus = &one + &qk;
    let weight = &first + &(&(&one_plus * &one_plus) * &inner);
    &lead * &weight
}

/// The `k`-th term of the remainder at truncation `N`.
pub fn remainder_term(n: u64, k: u64, r: u32) -> QRationalFunction {
    let ki = k as i64;
    let ni = n as i64;
    let e = -(ki * (ki - 1) / 2) + ni * ki + ki;
    let den = &(&qi(k).pow(3) * &qbin(n, k)) * &qbin(n + k, k);
    &(&(&sign(ki - 1 + r as i64) * &qm(e)) / &den) * &h(k - 1, r as i64)
}

/// The exact remainder member for truncation `N`.
pub fn remainder(n: u64, r: u32) -> QRationalFunction {
    (1..=n).map(|k| remainder_term(n, k, r)).sum()
}

/// All three members as canonical rational functions in `q`.
pub fn build_finite_form(n: u64, r: u32) -> Result<FiniteFormSides> {
    build_finite_form_with(n, r, &FiniteFormOptions::default())
}

/// [`build_finite_form`] with a degree cap on every partial sum.
pub fn build_finite_form_with(n: u64, r: u32, opts: &FiniteFormOptions) -> Result<FiniteFormSides> {
    if n < 1 {
        return Err(Error::Precondition(format!("truncation N must be >= 1, got {n}")));
    }
    let mut lhs = QRationalFunction::zero();
    let mut rhs_main = QRationalFunction::zero();
    let mut rem = QRationalFunction::zero();
    for k in 1..=n {
        lhs = &lhs + &lhs_term(k, r);
        cap(&lhs, opts)?;
        rhs_main = &rhs_main + &main_term(k, r);
        cap(&rhs_main, opts)?;
        rem = &rem + &remainder_term(n, k, r);
        cap(&rem, opts)?;
    }
    Ok(FiniteFormSides { n, r, lhs, rhs_main, remainder: rem })
}

pub fn verify_finite_form(n: u64, r: u32) -> Result<VerificationReport> {
    verify_finite_form_with(n, r, &FiniteFormOptions::default(), Sabotage::None)
}

/// Checks `lhs - rhs_main + remainder == 0`. A resource cap is returned as an
/// error, never as a failed report.
pub fn verify_finite_form_with(
    n: u64,
    r: u32,
    opts: &FiniteFormOptions,
    sabotage: Sabotage,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut sides = build_finite_form_with(n, r, opts)?;
    if sabotage == Sabotage::RemainderSign {
        sides.remainder = -sides.remainder;
    }
    let diff = sides.difference();
    let mut p = params([("N", json!(n)), ("r", json!(r))]);
    if sabotage != Sabotage::None {
        p.insert("sabotage".into(), json!(sabotage.name()));
    }
    Ok(VerificationReport::exact("finite-form", p, &diff, sides.max_degree(), started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QPolynomial;

    fn p(cs: &[i64]) -> QPolynomial {
        QPolynomial::from_ints(cs)
    }

    #[test]
    fn n1_r0_members() {
        let s = build_finite_form(1, 0).unwrap();
        assert_eq!(s.lhs, QRationalFunction::from_poly(&p(&[0, 1, 1])));
        assert_eq!(s.rhs_main, QRationalFunction::new(&p(&[0, 1, 3, 1]), &p(&[1, 1])).unwrap());
        assert_eq!(s.remainder, QRationalFunction::new(&p(&[0, 0, 1]), &p(&[1, 1])).unwrap());
        assert!(s.difference().is_zero());
    }

    #[test]
    fn n1_r1_remainder_vanishes() {
        let s = build_finite_form(1, 1).unwrap();
        assert!(s.remainder.is_zero());
        assert_eq!(s.lhs, QRationalFunction::from_poly(&p(&[0, 0, 1, 1])));
        assert!(s.difference().is_zero());
    }

    #[test]
    fn small_grid_and_sabotage() {
        for n in 1..=4 {
            for r in 0..=2 {
                assert!(verify_finite_form(n, r).unwrap().passed(), "N={n} r={r}");
            }
        }
        let bad = verify_finite_form_with(2, 0, &FiniteFormOptions::default(), Sabotage::RemainderSign)
            .unwrap();
        assert!(!bad.passed());
        assert_ne!(bad.witness, "0");
    }

    #[test]
    fn degree_cap_is_an_error() {
        let err = build_finite_form_with(4, 1, &FiniteFormOptions { max_degree: 5 }).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { cap: 5, .. }));
        assert!(matches!(build_finite_form(0, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn sabotage_names_round_trip() {
        for s in [Sabotage::None, Sabotage::RemainderSign, Sabotage::DepthMinusOneIsOne] {
            assert_eq!(s.name().parse::<Sabotage>().unwrap(), s);
        }
    }
}
