use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactRational, IntPoly, QPolynomial};
use crate::error::{Error, Result};

/// A rational function in `q` over the rationals, always in canonical form.
///
/// The value is `scale * num / den` where
///
/// - `num` and `den` are coprime primitive integer polynomials with positive
///   leading coefficients,
/// - `scale` is a nonzero rational carrying the sign and content,
/// - zero is `0 * 0 / 1`.
///
/// Equivalently: reduced to lowest terms, denominator integral with content 1
/// and positive leading coefficient. Two values are equal iff their fields
/// are equal, so `PartialEq` is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRationalFunction {
    scale: ExactRational,
    num: IntPoly,
    den: IntPoly,
}

impl Default for QRationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl QRationalFunction {
    pub fn zero() -> Self {
        Self {
            scale: ExactRational::zero(),
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(ExactRational::one())
    }

    pub fn from_rational(c: ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            scale: c,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(ExactRational::from_integer(n.into()))
    }

    pub fn from_poly(p: &QPolynomial) -> Self {
        let (scale, num) = p.to_primitive();
        if num.is_zero() {
            return Self::zero();
        }
        Self {
            scale,
            num,
            den: IntPoly::one(),
        }
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        let (c, num) = p.primitive_split();
        if num.is_zero() {
            return Self::zero();
        }
        Self {
            scale: ExactRational::from_integer(c),
            num,
            den: IntPoly::one(),
        }
    }

    /// `q^e` for any integer `e`; negative powers live in the denominator.
    pub fn q_monomial(e: i64) -> Self {
        let mono = IntPoly::monomial(e.unsigned_abs() as usize, BigInt::one());
        let (num, den) = if e >= 0 {
            (mono, IntPoly::one())
        } else {
            (IntPoly::one(), mono)
        };
        Self {
            scale: ExactRational::one(),
            num,
            den,
        }
    }

    /// Canonical form of `num / den`.
    pub fn new(num: &QPolynomial, den: &QPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (sn, n) = num.to_primitive();
        let (sd, d) = den.to_primitive();
        Ok(Self::from_parts(sn / sd, n, d))
    }

    /// Canonical form of `num / den` for integer polynomials.
    pub fn from_int_polys(num: &IntPoly, den: &IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (cn, n) = num.primitive_split();
        let (cd, d) = den.primitive_split();
        Ok(Self::from_parts(ExactRational::new(cn, cd), n, d))
    }

    /// `n`, `d` primitive with positive leading coefficient, `d` nonzero.
    fn from_parts(scale: ExactRational, n: IntPoly, d: IntPoly) -> Self {
        if n.is_zero() || scale.is_zero() {
            return Self::zero();
        }
        let g = n.gcd(&d);
        let (num, den) = if g.is_one() {
            (n, d)
        } else {
            (
                n.div_exact(&g).expect("gcd divides numerator"),
                d.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self { scale, num, den }
    }

    /// Builds from factors already known to be canonical.
    fn raw(scale: ExactRational, num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!scale.is_zero() && num.lc().is_positive() && den.lc().is_positive());
        Self { scale, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// Numerator of the canonical form, `scale * num`.
    pub fn numerator(&self) -> QPolynomial {
        QPolynomial::from_int_poly(&self.num).scale(&self.scale)
    }

    /// Denominator of the canonical form: integral, content 1, positive
    /// leading coefficient.
    pub fn denominator(&self) -> QPolynomial {
        QPolynomial::from_int_poly(&self.den)
    }

    pub fn scale(&self) -> &ExactRational {
        &self.scale
    }

    pub fn num_primitive(&self) -> &IntPoly {
        &self.num
    }

    pub fn den_primitive(&self) -> &IntPoly {
        &self.den
    }

    /// Largest of numerator and denominator degree.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// `Some(p)` when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<QPolynomial> {
        self.den.is_one().then(|| self.numerator())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::raw(self.scale.recip(), self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        if self.is_zero() {
            return Self::zero();
        }
        Self::raw(
            num_traits::pow(self.scale.clone(), e as usize),
            self.num.pow(e),
            self.den.pow(e),
        )
    }

    /// Exact value at `q0`; a vanishing denominator is an error.
    pub fn eval(&self, q0: &ExactRational) -> Result<ExactRational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format!("denominator of {self} vanishes at q = {q0}")));
        }
        Ok(&self.scale * self.num.eval(q0) / d)
    }

    /// Renders the value, truncated to roughly `max_chars`.
    pub fn summary(&self, max_chars: usize) -> String {
        let s = self.to_string();
        if s.len() <= max_chars {
            return s;
        }
        let mut cut = max_chars;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        format!(
            "{} ... [numerator degree {}, denominator degree {}]",
            &s[..cut],
            self.num.degree().unwrap_or(0),
            self.den.degree().unwrap_or(0)
        )
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        let rhs_scale = if negate_rhs { -&rhs.scale } else { rhs.scale.clone() };
        if self.is_zero() {
            return Self::raw(rhs_scale, rhs.num.clone(), rhs.den.clone());
        }
        // a/(g a') + b/(g b') = (a b' + b a') / (g a' b'); the only possible
        // cancellation is against g since num(a) is coprime to a', and so on.
        let g = self.den.gcd(&rhs.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                rhs.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let l = self.scale.denom().lcm(rhs_scale.denom());
        let ca = self.scale.numer() * (&l / self.scale.denom());
        let cb = rhs_scale.numer() * (&l / rhs_scale.denom());
        let top = self.num.mul(&db).scale(&ca).add(&rhs.num.mul(&da).scale(&cb));
        if top.is_zero() {
            return Self::zero();
        }
        let (c, top) = top.primitive_split();
        let h = if g.is_one() { IntPoly::one() } else { top.gcd(&g) };
        let (top, g) = if h.is_one() {
            (top, g)
        } else {
            (
                top.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        let den = g.mul(&da).mul(&db);
        Self::raw(ExactRational::new(c, l), top, den)
    }
}

impl From<&QPolynomial> for QRationalFunction {
    fn from(p: &QPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<ExactRational> for QRationalFunction {
    fn from(c: ExactRational) -> Self {
        Self::from_rational(c)
    }
}

impl fmt::Display for QRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({})/({})", self.numerator(), self.den)
        }
    }
}

impl Neg for &QRationalFunction {
    type Output = QRationalFunction;
    fn neg(self) -> QRationalFunction {
        if self.is_zero() {
            return QRationalFunction::zero();
        }
        QRationalFunction::raw(-&self.scale, self.num.clone(), self.den.clone())
    }
}

impl Add for &QRationalFunction {
    type Output = QRationalFunction;
    fn add(self, rhs: &QRationalFunction) -> QRationalFunction {
        self.add_impl(rhs, false)
    }
}

impl Sub for &QRationalFunction {
    type Output = QRationalFunction;
    fn sub(self, rhs: &QRationalFunction) -> QRationalFunction {
        self.add_impl(rhs, true)
    }
}

impl Mul for &QRationalFunction {
    type Output = QRationalFunction;
    fn mul(self, rhs: &QRationalFunction) -> QRationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return QRationalFunction::zero();
        }
        let cancel = |n: &IntPoly, d: &IntPoly| -> (IntPoly, IntPoly) {
            if n.is_one() || d.is_one() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        QRationalFunction::raw(&self.scale * &rhs.scale, n1.mul(&n2), d1.mul(&d2))
    }
}

/// Panics on division by zero; use [`QRationalFunction::checked_div`] to
/// handle it.
impl Div for &QRationalFunction {
    type Output = QRationalFunction;
    fn div(self, rhs: &QRationalFunction) -> QRationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QRationalFunction {
            type Output = QRationalFunction;
            fn $m(self, rhs: QRationalFunction) -> QRationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRationalFunction> for QRationalFunction {
            type Output = QRationalFunction;
            fn $m(self, rhs: &QRationalFunction) -> QRationalFunction {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QRationalFunction {
    type Output = QRationalFunction;
    fn neg(self) -> QRationalFunction {
        -&self
    }
}

impl std::iter::Sum for QRationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}
