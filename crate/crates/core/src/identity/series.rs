//! Term-level transcriptions of every infinite series in the identity family.
//!
//! A [`SeriesSpec`] fixes which series; [`series_term`] produces its `k`-th
//! term in any [`Scalar`]: exact rationals, symbolic rational functions in `q`
//! or [`PrecisionReal`]s. All q-quantities are built from finite sums and
//! products (`[n]_q` as `1 + q + ... + q^(n-1)`), so `q = 1` evaluates exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExactRational, QRationalFunction};
use crate::numeric::PrecisionReal;

/// Arithmetic needed to evaluate a series term.
pub trait Scalar: Clone + fmt::Debug {
    /// A constant in the same arithmetic (and precision) as `self`.
    fn lift(&self, r: &ExactRational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// `None` when `other` is zero, or numerically indistinguishable from it.
    fn checked_div(&self, other: &Self) -> Option<Self>;
    /// Sign, when the arithmetic can decide it (not for symbolic `q`).
    fn sign(&self) -> Option<Ordering>;

    fn lift_int(&self, n: i64) -> Self {
        self.lift(&ExactRational::from_integer(BigInt::from(n)))
    }

    fn negated(&self) -> Self {
        self.lift_int(0).minus(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.lift_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Scalar for ExactRational {
    fn lift(&self, r: &ExactRational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
    fn sign(&self) -> Option<Ordering> {
        Some(self.cmp(&ExactRational::zero()))
    }
}

impl Scalar for QRationalFunction {
    fn lift(&self, r: &ExactRational) -> Self {
        QRationalFunction::from_rational(r.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        QRationalFunction::checked_div(self, other).ok()
    }
    fn sign(&self) -> Option<Ordering> {
        None
    }
    fn pow(&self, e: u32) -> Self {
        QRationalFunction::pow(self, e)
    }
}

impl Scalar for PrecisionReal {
    fn lift(&self, r: &ExactRational) -> Self {
        PrecisionReal::from_rational(r, self.precision())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    /// Divisors below `2^-(precision/2)` in magnitude count as poles.
    fn checked_div(&self, other: &Self) -> Option<Self> {
        let floor = -((self.precision().max(other.precision()) / 2) as f64);
        if other.is_zero() || other.log2_abs() < floor {
            return None;
        }
        self.div(other).ok()
    }
    fn sign(&self) -> Option<Ordering> {
        Some(self.signum())
    }
    fn pow(&self, e: u32) -> Self {
        self.powi(e)
    }
}

/// One displayed infinite series, identified by what it sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesSpec {
    /// `sum (q^k + q^2k) / ([k] ([k]^2 - x^2 q^k))`
    MainBivariateLhs,
    /// The accelerated side of the bivariate q-identity.
    MainBivariateRhs,
    /// `sum (q^((r+1)k) + q^((r+2)k)) / [k]^(2r+3)`
    RFamilyLhs { r: u32 },
    /// Accelerated side of the r-indexed family, with `H_{q,k-1}({2}^s)` weights.
    RFamilyRhs { r: u32 },
    /// `sum q^k / ([k]^2 - x^2 q^2k)`
    QEvenLhs,
    /// Accelerated side of the q-analogue for even zeta values.
    QEvenRhs,
    /// Classical accelerated series for `zeta(2r+3)`; `r = 0` is
    /// `5/2 sum (-1)^(k-1) / (k^3 C(2k,k))`.
    MarkovAperyClassical { r: u32 },
    /// `sum_{k >= 1} 1/(k+a)^3`
    MarkovParametricLhs { a: u32 },
    /// `sum (-1)^(k-1) (5/2 k^2 + 3ak + a^2) / (k^5 C(2k,k) C(a+k,a)^4)`
    MarkovParametricRhs { a: u32 },
    /// `sum 1 / (k (k^2 - x^2))`
    KlClassicalLhs,
    /// `1/2 sum (-1)^(k-1)/(k^3 C(2k,k)) (5k^2 - x^2)/(k^2 - x^2) prod (1 - x^2/m^2)`
    KlClassicalRhs,
    /// Non-accelerated `sum q^((r+1)k) (1 + q^k) / [k]^(2r+3)`.
    PlainQZeta { r: u32 },
}

impl SeriesSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::MainBivariateLhs => "main-bivariate-lhs",
            Self::MainBivariateRhs => "main-bivariate-rhs",
            Self::RFamilyLhs { .. } => "r-family-lhs",
            Self::RFamilyRhs { .. } => "r-family-rhs",
            Self::QEvenLhs => "q-even-lhs",
            Self::QEvenRhs => "q-even-rhs",
            Self::MarkovAperyClassical { .. } => "markov-apery-classical",
            Self::MarkovParametricLhs { .. } => "markov-parametric-lhs",
            Self::MarkovParametricRhs { .. } => "markov-parametric-rhs",
            Self::KlClassicalLhs => "kl-classical-lhs",
            Self::KlClassicalRhs => "kl-classical-rhs",
            Self::PlainQZeta { .. } => "plain-qzeta",
        }
    }

    /// `r` or `a`, when the series has one.
    pub fn parameter(&self) -> Option<u32> {
        match *self {
            Self::RFamilyLhs { r }
            | Self::RFamilyRhs { r }
            | Self::MarkovAperyClassical { r }
            | Self::PlainQZeta { r } => Some(r),
            Self::MarkovParametricLhs { a } | Self::MarkovParametricRhs { a } => Some(a),
            _ => None,
        }
    }

    pub fn uses_q(&self) -> bool {
        !matches!(
            self,
            Self::MarkovAperyClassical { .. }
                | Self::MarkovParametricLhs { .. }
                | Self::MarkovParametricRhs { .. }
                | Self::KlClassicalLhs
                | Self::KlClassicalRhs
        )
    }

    pub fn uses_x(&self) -> bool {
        matches!(
            self,
            Self::MainBivariateLhs
                | Self::MainBivariateRhs
                | Self::QEvenLhs
                | Self::QEvenRhs
                | Self::KlClassicalLhs
                | Self::KlClassicalRhs
        )
    }

    /// Rebuilds a spec from its name and optional `r`/`a` parameter
    /// (defaulting to 0).
    pub fn from_name(name: &str, parameter: Option<u32>) -> Result<Self> {
        let v = parameter.unwrap_or(0);
        Ok(match name {
            "main-bivariate-lhs" => Self::MainBivariateLhs,
            "main-bivariate-rhs" => Self::MainBivariateRhs,
            "r-family-lhs" => Self::RFamilyLhs { r: v },
            "r-family-rhs" => Self::RFamilyRhs { r: v },
            "q-even-lhs" => Self::QEvenLhs,
            "q-even-rhs" => Self::QEvenRhs,
            "markov-apery-classical" => Self::MarkovAperyClassical { r: v },
            "markov-parametric-lhs" => Self::MarkovParametricLhs { a: v },
            "markov-parametric-rhs" => Self::MarkovParametricRhs { a: v },
            "kl-classical-lhs" => Self::KlClassicalLhs,
            "kl-classical-rhs" => Self::KlClassicalRhs,
            "plain-qzeta" => Self::PlainQZeta { r: v },
            other => return Err(Error::Parse(format!("unknown series {other:?}"))),
        })
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.parameter(), self) {
            (Some(a), Self::MarkovParametricLhs { .. } | Self::MarkovParametricRhs { .. }) => {
                write!(f, "{}[a={a}]", self.name())
            }
            (Some(r), _) => write!(f, "{}[r={r}]", self.name()),
            (None, _) => f.write_str(self.name()),
        }
    }
}

impl FromStr for SeriesSpec {
    type Err = Error;

    /// Accepts `name` or `name[r=2]` / `name[a=1]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('[') {
            None => Self::from_name(s, None),
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(']')
                    .and_then(|r| r.split_once('='))
                    .ok_or_else(|| Error::Parse(format!("bad series parameter in {s:?}")))?;
                let v: u32 = inner
                    .1
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad series parameter in {s:?}")))?;
                Self::from_name(name, Some(v))
            }
        }
    }
}

fn sign_pm(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

/// `[n]_q` by Horner on `1 + q + ... + q^(n-1)`.
fn q_int<T: Scalar>(q: &T, n: u64) -> T {
    let one = q.lift_int(1);
    let mut acc = q.lift_int(0);
    for _ in 0..n {
        acc = acc.times(q).plus(&one);
    }
    acc
}

fn div<T: Scalar>(num: &T, den: &T, k: u64, what: &str) -> Result<T> {
    num.checked_div(den).ok_or_else(|| Error::Pole {
        k,
        detail: format!("{what} vanishes"),
    })
}

/// Requires `den > 0` when the sign is decidable.
fn positive<T: Scalar>(den: &T, k: u64, what: &str) -> Result<()> {
    match den.sign() {
        Some(Ordering::Greater) | None => Ok(()),
        Some(Ordering::Equal) => Err(Error::Pole {
            k,
            detail: format!("{what} = 0"),
        }),
        Some(Ordering::Less) => Err(Error::Domain(format!(
            "{what} < 0 at k = {k}; x is outside the region where every denominator stays positive"
        ))),
    }
}

/// Central Gaussian binomial `[2k; k]_q = prod_{i=1..k} [k+i]_q / [i]_q`.
fn q_central_binomial<T: Scalar>(q: &T, k: u64) -> Result<T> {
    let mut num = q.lift_int(1);
    let mut den = q.lift_int(1);
    for i in 1..=k {
        num = num.times(&q_int(q, k + i));
        den = den.times(&q_int(q, i));
    }
    div(&num, &den, k, "[k]_q!")
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `H_{q,k-1}({2}^s)` for `s = 0..=r`, via the one-step recurrence.
fn harmonic_column<T: Scalar>(q: &T, upto: u64, r: u32) -> Result<Vec<T>> {
    let mut h: Vec<T> = (0..=r).map(|s| q.lift_int(i64::from(s == 0))).collect();
    let mut qm = q.lift_int(1);
    for m in 1..=upto {
        qm = qm.times(q);
        let w = div(&qm, &q_int(q, m).pow(2), m, "[m]_q^2")?;
        for s in (1..=r as usize).rev() {
            h[s] = h[s].plus(&w.times(&h[s - 1]));
        }
    }
    Ok(h)
}

/// Classical `H_{k-1}({2}^s)` for `s = 0..=r`, exact.
fn classical_harmonic_column(upto: u64, r: u32) -> Vec<ExactRational> {
    let mut h: Vec<ExactRational> = (0..=r)
        .map(|s| if s == 0 { ExactRational::one() } else { ExactRational::zero() })
        .collect();
    for m in 1..=upto {
        let w = ratio(1, m * m);
        for s in (1..=r as usize).rev() {
            let add = &w * &h[s - 1];
            h[s] += add;
        }
    }
    h
}

/// The `k`-th term (`k >= 1`) of `spec` at `q` and `x`.
///
/// Classical series ignore `q` except as the carrier of the arithmetic and
/// precision; a missing `x` means `x = 0`.
pub fn series_term<T: Scalar>(spec: &SeriesSpec, k: u64, q: &T, x: Option<&T>) -> Result<T> {
    if k == 0 {
        return Err(Error::Precondition("series terms are indexed from k = 1".into()));
    }
    let zero = q.lift_int(0);
    let x2 = x.map(|x| x.times(x)).unwrap_or_else(|| zero.clone());
    let one = q.lift_int(1);
    let ki = k as i64;
    match *spec {
        SeriesSpec::MainBivariateLhs => {
            let qk = q.pow(k as u32);
            let bk = q_int(q, k);
            let d = bk.times(&bk).minus(&x2.times(&qk));
            positive(&d, k, "[k]^2 - x^2 q^k")?;
            let num = qk.plus(&qk.times(&qk));
            div(&num, &bk.times(&d), k, "[k] ([k]^2 - x^2 q^k)")
        }
        SeriesSpec::MainBivariateRhs => {
            let qk = q.pow(k as u32);
            let bk = q_int(q, k);
            let bk2 = bk.times(&bk);
            let d = bk2.minus(&x2.times(&qk));
            positive(&d, k, "[k]^2 - x^2 q^k")?;
            let lead = q
                .pow((k * (k + 1) / 2) as u32)
                .times(&one.lift_int(sign_pm(ki - 1)));
            let lead = div(&lead, &bk2.times(&bk).times(&q_central_binomial(q, k)?), k, "[k]^3 [2k;k]")?;
            let weight = one
                .plus(&qk.lift_int(3).times(&qk))
                .plus(&qk.times(&qk))
                .times(&bk2)
                .minus(&x2.times(&qk).times(&qk));
            let mut prod = one.clone();
            let mut qm = one.clone();
            for m in 1..k {
                qm = qm.times(q);
                let bm = q_int(q, m);
                let f = div(&x2.times(&qm), &bm.times(&bm), m, "[m]^2")?;
                prod = prod.times(&one.minus(&f));
            }
            Ok(lead.times(&div(&weight, &d, k, "[k]^2 - x^2 q^k")?).times(&prod))
        }
        SeriesSpec::RFamilyLhs { r } => {
            let bk = q_int(q, k);
            let num = q.pow((r as u64 + 1) as u32 * k as u32).plus(&q.pow((r + 2) * k as u32));
            div(&num, &bk.pow(2 * r + 3), k, "[k]^(2r+3)")
        }
        SeriesSpec::PlainQZeta { r } => {
            let bk = q_int(q, k);
            let qk = q.pow(k as u32);
            let num = q.pow((r + 1) * k as u32).times(&one.plus(&qk));
            div(&num, &bk.pow(2 * r + 3), k, "[k]^(2r+3)")
        }
        SeriesSpec::RFamilyRhs { r } => {
            let qk = q.pow(k as u32);
            let bk = q_int(q, k);
            let bk2 = bk.times(&bk);
            let h = harmonic_column(q, k - 1, r)?;
            let lead = q
                .pow((k * (k + 1) / 2) as u32)
                .times(&one.lift_int(sign_pm(ki - 1 + r as i64)));
            let lead = div(&lead, &bk2.times(&bk).times(&q_central_binomial(q, k)?), k, "[k]^3 [2k;k]")?;
            let mut weight = one
                .plus(&qk.lift_int(3).times(&qk))
                .plus(&qk.times(&qk))
                .times(&h[r as usize]);
            let one_plus_qk = one.plus(&qk);
            let mut inner = zero.clone();
            for j in 1..=r {
                let t = div(&qk.pow(j), &bk2.pow(j), k, "[k]^2j")?
                    .times(&h[(r - j) as usize])
                    .times(&one.lift_int(sign_pm(j as i64)));
                inner = inner.plus(&t);
            }
            weight = weight.plus(&one_plus_qk.times(&one_plus_qk).times(&inner));
            Ok(lead.times(&weight))
        }
        SeriesSpec::QEvenLhs => {
            let bk = q_int(q, k);
            let d = bk.times(&bk).minus(&x2.times(&q.pow(2 * k as u32)));
            positive(&d, k, "[k]^2 - x^2 q^2k")?;
            div(&q.pow(k as u32), &d, k, "[k]^2 - x^2 q^2k")
        }
        SeriesSpec::QEvenRhs => {
            let qk = q.pow(k as u32);
            let bk = q_int(q, k);
            let lead = q.pow((k * k) as u32).times(&one.plus(&qk.lift_int(2).times(&qk)));
            let lead = div(&lead, &bk.times(&bk).times(&q_central_binomial(q, k)?), k, "[k]^2 [2k;k]")?;
            let mut num = one.clone();
            let mut den = one.clone();
            let mut qm = one.clone();
            for m in 1..=k {
                qm = qm.times(q);
                let bm2 = q_int(q, m).pow(2);
                if m < k {
                    let opq = one.plus(&qm);
                    let f = div(&x2.times(&opq).times(&opq), &bm2, m, "[m]^2")?;
                    num = num.times(&one.minus(&f));
                }
                let g = one.minus(&div(&x2.times(&qm).times(&qm), &bm2, m, "[m]^2")?);
                positive(&g, m, "1 - x^2 q^2m / [m]^2")?;
                den = den.times(&g);
            }
            Ok(lead.times(&div(&num, &den, k, "prod (1 - x^2 q^2m/[m]^2)")?))
        }
        SeriesSpec::MarkovAperyClassical { r } => {
            let h = classical_harmonic_column(k - 1, r);
            let k2 = ratio(k * k, 1);
            let mut weight = ratio(5, 2) * &h[r as usize];
            for j in 1..=r {
                let t = ratio(2 * sign_pm(j as i64), 1) / num_traits::pow(k2.clone(), j as usize)
                    * &h[(r - j) as usize];
                weight += t;
            }
            let c = ExactRational::from_integer(binomial(2 * k, k) * BigInt::from(k).pow(3));
            Ok(q.lift(&(weight * ratio(sign_pm(ki - 1 - r as i64), 1) / c)))
        }
        SeriesSpec::MarkovParametricLhs { a } => Ok(q.lift(&ratio(1, (k + a as u64).pow(3)))),
        SeriesSpec::MarkovParametricRhs { a } => {
            let a = a as u64;
            let num = ratio(5 * k * k, 2) + ratio(3 * a * k + a * a, 1);
            let den = BigInt::from(k).pow(5) * binomial(2 * k, k) * binomial(a + k, a).pow(4);
            Ok(q.lift(&(num * ratio(sign_pm(ki - 1), 1) / ExactRational::from_integer(den))))
        }
        SeriesSpec::KlClassicalLhs => {
            let kk = q.lift_int(ki * ki);
            let d = kk.minus(&x2);
            positive(&d, k, "k^2 - x^2")?;
            div(&one, &q.lift_int(ki).times(&d), k, "k (k^2 - x^2)")
        }
        SeriesSpec::KlClassicalRhs => {
            let kk = q.lift_int(ki * ki);
            let d = kk.minus(&x2);
            positive(&d, k, "k^2 - x^2")?;
            let c = binomial(2 * k, k) * BigInt::from(k).pow(3) * 2;
            let lead = q.lift(&ExactRational::new(BigInt::from(sign_pm(ki - 1)), c));
            let ratio_part = div(&kk.lift_int(5 * ki * ki).minus(&x2), &d, k, "k^2 - x^2")?;
            let mut prod = one.clone();
            for m in 1..k {
                let mi = m as i64;
                prod = prod.times(&one.minus(&x2.times(&q.lift(&ratio(1, mi * mi)))));
            }
            Ok(lead.times(&ratio_part).times(&prod))
        }
    }
}
