//! q-integers, q-factorials, Gaussian binomials, interval products and the
//! multiple harmonic q-sums
//!
//! ```text
//! H_{q,k}({2}^s) = sum over 1 <= j_1 < ... < j_s <= k of
//!                  q^(j_1 + ... + j_s) / ([j_1]_q^2 ... [j_s]_q^2)
//! ```
//!
//! Depth `s = 0` is the empty product 1. Depth `s = -1` is identically zero:
//! the recurrence `H_k(s) - H_{k-1}(s) = q^k / [k]^2 * H_{k-1}(s-1)` only
//! holds at `s = 0` with that convention, and the telescoping over `s` in the
//! finite-form proof needs it.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::exact::{QPolynomial, QRationalFunction};

/// `[n]_q = 1 + q + ... + q^(n-1)`; `[0]_q = 0`.
pub fn q_int(n: i64) -> Result<QPolynomial> {
    let n = non_negative("q_int", n)?;
    Ok(QPolynomial::from_ints(&vec![1; n]))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: i64) -> Result<QPolynomial> {
    non_negative("q_factorial", n)?;
    let mut acc = QPolynomial::one();
    for j in 1..=n {
        acc = &acc * &q_int(j)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[n]_q! / ([k]_q! [n-k]_q!)`, computed from the factorial
/// ratio and certified polynomial by exact division. Zero outside `0..=n`.
pub fn q_binomial(n: i64, k: i64) -> Result<QPolynomial> {
    non_negative("q_binomial", n)?;
    if k < 0 || k > n {
        return Ok(QPolynomial::zero());
    }
    let denom = &q_factorial(k)? * &q_factorial(n - k)?;
    q_factorial(n)?.exact_div(&denom)
}

/// `[a]_q [a+1]_q ... [b]_q`, the empty product 1 when `b < a`.
pub fn interval_product(a: i64, b: i64) -> Result<QPolynomial> {
    if a < 1 {
        return Err(Error::Precondition(format!(
            "interval_product needs a >= 1 (got a = {a}); [0]_q = 0 would annihilate the product"
        )));
    }
    let mut acc = QPolynomial::one();
    for j in a..=b {
        acc = &acc * &q_int(j)?;
    }
    Ok(acc)
}

fn non_negative(what: &'static str, n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::NegativeArgument { what, value: n })
}

/// Depth `s` of `H_{q,k}({2}^s)`; `-1` is the identically-zero extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmonicDepth(i64);

impl HarmonicDepth {
    pub const MINUS_ONE: Self = Self(-1);
    pub const ZERO: Self = Self(0);

    pub fn new(s: i64) -> Result<Self> {
        if s < -1 {
            return Err(Error::Precondition(format!("harmonic depth must be >= -1, got {s}")));
        }
        Ok(Self(s))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// `s - 1`, saturating at `-1`.
    pub fn lower(self) -> Self {
        Self((self.0 - 1).max(-1))
    }
}

impl fmt::Display for HarmonicDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<i64> for HarmonicDepth {
    type Error = Error;
    fn try_from(s: i64) -> Result<Self> {
        Self::new(s)
    }
}

/// Value assigned to `H_{q,k}({2}^{-1})`. Only [`DepthConvention::Zero`] is
/// mathematically consistent; the other variant exists for negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DepthConvention {
    #[default]
    Zero,
    One,
}

type Memo = RwLock<HashMap<(u64, i64), QRationalFunction>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `H_{q,k}({2}^s)` by the recurrence
/// `H_k(s) = H_{k-1}(s) + q^k / [k]_q^2 * H_{k-1}(s-1)`
/// with `H_k(0) = 1`, `H_0(s) = 0` for `s >= 1` and `H_k(-1) = 0`.
///
/// Values are memoized process-wide; each key is written once and readers
/// never block each other.
pub fn harmonic_q(k: u64, s: HarmonicDepth) -> QRationalFunction {
    harmonic_q_with(k, s, DepthConvention::Zero)
}

/// [`harmonic_q`] with an explicit value for depth `-1`.
pub fn harmonic_q_with(k: u64, s: HarmonicDepth, convention: DepthConvention) -> QRationalFunction {
    match s.get() {
        -1 => match convention {
            DepthConvention::Zero => QRationalFunction::zero(),
            DepthConvention::One => QRationalFunction::one(),
        },
        0 => QRationalFunction::one(),
        _ if k == 0 => QRationalFunction::zero(),
        depth => harmonic_memoized(k, depth),
    }
}

fn harmonic_memoized(k: u64, depth: i64) -> QRationalFunction {
    if let Some(v) = memo().read().unwrap().get(&(k, depth)) {
        return v.clone();
    }
    // Fill the (j, depth) column bottom-up so recursion depth stays bounded.
    let mut prev = QRationalFunction::zero(); // H_0(depth)
    let mut j = 1;
    {
        let table = memo().read().unwrap();
        while j < k {
            match table.get(&(j, depth)) {
                Some(v) => prev = v.clone(),
                None => break,
            }
            j += 1;
        }
    }
    for j in j..=k {
        let lower = harmonic_q(j - 1, HarmonicDepth(depth - 1));
        let qj = q_int(j as i64).expect("j >= 1");
        let step = QRationalFunction::q_monomial(j as i64)
            .checked_div(&QRationalFunction::from_poly(&(&qj * &qj)))
            .expect("[j]_q is nonzero");
        let value = &prev + &(&step * &lower);
        memo().write().unwrap().entry((j, depth)).or_insert_with(|| value.clone());
        prev = value;
    }
    prev
}

/// Direct sum of `q^(j_1+...+j_s) / ([j_1]^2 ... [j_s]^2)` over every strictly
/// increasing `s`-tuple in `1..=k`. Exponential in `s`; intended for
/// `k <= 12`, `s <= 5` as an oracle for [`harmonic_q`].
pub fn harmonic_q_bruteforce(k: u64, s: u64) -> QRationalFunction {
    let weights: Vec<QRationalFunction> = (1..=k)
        .map(|j| {
            let qj = q_int(j as i64).expect("j >= 1");
            QRationalFunction::q_monomial(j as i64)
                .checked_div(&QRationalFunction::from_poly(&(&qj * &qj)))
                .expect("[j]_q is nonzero")
        })
        .collect();
    let mut total = QRationalFunction::zero();
    let mut tuple: Vec<usize> = Vec::with_capacity(s as usize);
    enumerate(&weights, s as usize, 0, &mut tuple, &mut total);
    total
}

fn enumerate(
    weights: &[QRationalFunction],
    s: usize,
    start: usize,
    tuple: &mut Vec<usize>,
    total: &mut QRationalFunction,
) {
    if tuple.len() == s {
        let term = tuple
            .iter()
            .fold(QRationalFunction::one(), |acc, &i| &acc * &weights[i]);
        *total = &*total + &term;
        return;
    }
    for i in start..weights.len() {
        tuple.push(i);
        enumerate(weights, s, i + 1, tuple, total);
        tuple.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> QPolynomial {
        QPolynomial::from_ints(cs)
    }

    fn depth(s: i64) -> HarmonicDepth {
        HarmonicDepth::new(s).unwrap()
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(0).unwrap(), QPolynomial::zero());
        assert_eq!(q_int(1).unwrap(), p(&[1]));
        assert_eq!(q_int(3).unwrap(), p(&[1, 1, 1]));
        assert!(matches!(q_int(-1), Err(Error::NegativeArgument { .. })));
    }

    #[test]
    fn q_factorials() {
        assert_eq!(q_factorial(0).unwrap(), p(&[1]));
        assert_eq!(q_factorial(2).unwrap(), p(&[1, 1]));
        assert_eq!(q_factorial(3).unwrap(), p(&[1, 2, 2, 1]));
        assert!(q_factorial(-3).is_err());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(q_binomial(7, 0).unwrap(), p(&[1]));
        assert_eq!(q_binomial(2, 1).unwrap(), p(&[1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(3, 5).unwrap(), QPolynomial::zero());
        assert_eq!(q_binomial(3, -1).unwrap(), QPolynomial::zero());
    }

    #[test]
    fn factorial_ratio_is_exact() {
        let ratio = q_factorial(4)
            .unwrap()
            .exact_div(&(&q_factorial(2).unwrap() * &q_factorial(2).unwrap()))
            .unwrap();
        assert_eq!(ratio, p(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn interval_products() {
        assert_eq!(interval_product(3, 2).unwrap(), p(&[1]));
        assert_eq!(interval_product(1, 2).unwrap(), q_factorial(2).unwrap());
        assert_eq!(interval_product(2, 3).unwrap(), &p(&[1, 1]) * &p(&[1, 1, 1]));
        assert!(matches!(interval_product(0, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn harmonic_base_cases() {
        assert!(harmonic_q(5, depth(0)).is_one());
        assert!(harmonic_q(0, depth(1)).is_zero());
        assert!(harmonic_q(4, depth(-1)).is_zero());
        assert!(harmonic_q_with(4, depth(-1), DepthConvention::One).is_one());
        assert!(HarmonicDepth::new(-2).is_err());
    }

    #[test]
    fn harmonic_k2_s1() {
        let expected = QRationalFunction::new(&p(&[0, 1, 3, 1]), &p(&[1, 2, 1])).unwrap();
        assert_eq!(harmonic_q(2, depth(1)), expected);
        assert_eq!(harmonic_q_bruteforce(2, 1), expected);
    }

    #[test]
    fn bruteforce_examples() {
        let single = QRationalFunction::new(
            &p(&[0, 0, 0, 0, 0, 0, 1]),
            &(&(&p(&[1, 1]) * &p(&[1, 1])) * &(&p(&[1, 1, 1]) * &p(&[1, 1, 1]))),
        )
        .unwrap();
        assert_eq!(harmonic_q_bruteforce(3, 3), single);
        assert!(harmonic_q_bruteforce(2, 3).is_zero());
        assert!(harmonic_q_bruteforce(4, 0).is_one());
    }

    #[test]
    fn memo_is_consistent_across_threads() {
        let handles: Vec<_> = (0..4)
            .map(|t| std::thread::spawn(move || harmonic_q(6 + t % 2, depth(2))))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(results[0], harmonic_q_bruteforce(6, 2));
        assert_eq!(results[1], harmonic_q_bruteforce(7, 2));
        assert_eq!(results[0], results[2]);
    }
}
