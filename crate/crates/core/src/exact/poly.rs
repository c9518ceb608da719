use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ExactRational, IntPoly};
use crate::error::{Error, Result};

/// Dense polynomial in `q` with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `q^i`; the vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<ExactRational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// `q^e`.
    pub fn q_pow(e: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); e + 1];
        coeffs[e] = ExactRational::one();
        Self { coeffs }
    }

    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(
            cs.iter()
                .map(|&c| ExactRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Splits `self = c * p` with `p` a primitive integer polynomial of
    /// positive leading coefficient and `c` rational.
    pub fn to_primitive(&self) -> (ExactRational, IntPoly) {
        if self.is_zero() {
            return (ExactRational::zero(), IntPoly::zero());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let (content, prim) = IntPoly::from_coeffs(ints).primitive_split();
        (ExactRational::new(content, lcm), prim)
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        Self {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| ExactRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder of Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let m = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < m {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = divisor.coeffs[m].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ExactRational::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            if rem[i + m].is_zero() {
                continue;
            }
            let c = &rem[i + m] * &inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(m);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; a nonzero remainder is reported as
    /// [`Error::InexactDivision`].
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (quot, rem) = self.div_rem(divisor)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::InexactDivision(format!(
                "({self}) / ({divisor}) leaves remainder {rem}"
            )))
        }
    }

    /// Greatest common divisor normalized to a primitive integer polynomial
    /// with positive leading coefficient. `gcd(p, 0)` is the normalized `p`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (_, a) = self.to_primitive();
        let (_, b) = other.to_primitive();
        Self::from_int_poly(&a.gcd(&b))
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `true` when `coeffs[i] == coeffs[deg - i]` for all `i`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::intpoly::write_terms(f, self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl From<BigRational> for QPolynomial {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        QPolynomial::new(coeffs)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        QPolynomial::new(coeffs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> QPolynomial {
        QPolynomial::from_ints(cs)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2]));
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1, 1]), p(&[1, 2, 2, 1]));
        assert_eq!(&p(&[3, 0, 4]) + &QPolynomial::zero(), p(&[3, 0, 4]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), QPolynomial::zero());
    }

    #[test]
    fn degree_of_product_is_sum_of_degrees() {
        let a = p(&[1, 0, 3]);
        let b = p(&[0, 2, 0, 5]);
        assert_eq!((&a * &b).degree(), Some(5));
        assert_eq!((&a + &b).degree(), Some(3));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[1, 0, -1]).exact_div(&p(&[1, -1])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).exact_div(&p(&[1, 1])).unwrap(), p(&[1]));
        let err = p(&[1, 0, 1]).exact_div(&p(&[1, 1])).unwrap_err();
        assert!(matches!(err, Error::InexactDivision(_)));
        assert_eq!(p(&[1]).exact_div(&QPolynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[1, 0, -1]).gcd(&p(&[1, -1])), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&QPolynomial::zero()), p(&[1, 2]));
        let a = &p(&[1, 1]) * &p(&[1, 1]);
        let b = &p(&[1, 1]) * &p(&[1, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn primitive_split_keeps_value() {
        let half = ExactRational::new(1.into(), 2.into());
        let poly = QPolynomial::new(vec![half.clone(), -half * BigRational::from_integer(3.into())]);
        let (c, prim) = poly.to_primitive();
        assert_eq!(prim, IntPoly::from_i64s(&[-1, 3]));
        assert_eq!(QPolynomial::from_int_poly(&prim).scale(&c), poly);
    }

    #[test]
    fn display() {
        let half = ExactRational::new(1.into(), 2.into());
        assert_eq!(QPolynomial::new(vec![half, ExactRational::zero(), ExactRational::from_integer((-1).into())]).to_string(), "1/2 - q^2");
    }
}
