use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactRational;

const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Guard digits added on top of the requested tolerance.
pub const GUARD_DIGITS: u32 = 15;

/// Binary floating-point real with an explicit working precision in bits.
///
/// Every operation rounds to the larger precision of its operands, so the
/// precision a result was computed at travels with it.
#[derive(Clone, Debug)]
pub struct PrecisionReal {
    value: BigFloat,
    precision: usize,
}

impl PrecisionReal {
    /// Bits needed to carry `digits` decimal digits.
    pub fn bits_for_digits(digits: u32) -> usize {
        ((digits as f64) * LOG2_10).ceil() as usize + 1
    }

    /// Default working precision for a tolerance of `10^-digits`.
    pub fn working_bits(digits: u32) -> usize {
        Self::bits_for_digits(digits + GUARD_DIGITS)
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn from_i64(n: i64, precision: usize) -> Self {
        Self {
            value: BigFloat::from_i64(n, precision),
            precision,
        }
    }

    pub fn from_bigint(n: &BigInt, precision: usize) -> Self {
        if n.is_zero() {
            return Self::zero(precision);
        }
        let words = n.magnitude().to_u64_digits();
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let mut value = BigFloat::from_words(&words, sign, (words.len() * 64) as i32);
        value
            .set_precision(precision, RM)
            .expect("precision within astro-float limits");
        Self { value, precision }
    }

    pub fn from_rational(r: &ExactRational, precision: usize) -> Self {
        let n = Self::from_bigint(r.numer(), precision + 64);
        let d = Self::from_bigint(r.denom(), precision + 64);
        Self {
            value: n.value.div(&d.value, precision, RM),
            precision,
        }
    }

    /// `10^e`.
    pub fn ten_pow(e: i32, precision: usize) -> Self {
        let ten = BigInt::from(10).pow(e.unsigned_abs());
        if e >= 0 {
            Self::from_bigint(&ten, precision)
        } else {
            Self::from_rational(&ExactRational::new(1.into(), ten), precision)
        }
    }

    /// Parses a decimal or `a/b` literal exactly, then rounds once.
    pub fn parse(s: &str, precision: usize) -> Result<Self> {
        Ok(Self::from_rational(&crate::exact::parse_rational(s)?, precision))
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn with_precision(&self, precision: usize) -> Self {
        let mut value = self.value.clone();
        value.set_precision(precision, RM).expect("valid precision");
        Self { value, precision }
    }

    fn prec2(&self, other: &Self) -> usize {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec2(other);
        Self {
            value: self.value.add(&other.value, p, RM),
            precision: p,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.prec2(other);
        Self {
            value: self.value.sub(&other.value, p, RM),
            precision: p,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec2(other);
        Self {
            value: self.value.mul(&other.value, p, RM),
            precision: p,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prec2(other);
        Ok(Self {
            value: self.value.div(&other.value, p, RM),
            precision: p,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            value: self.value.neg(),
            precision: self.precision,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            value: self.value.abs(),
            precision: self.precision,
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        Self {
            value: self.value.powi(n as usize, self.precision, RM),
            precision: self.precision,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        if self.value.is_zero() {
            Ordering::Equal
        } else if self.value.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// `log2 |x|`, `-inf` for zero. Accurate to about 1e-15 relative.
    pub fn log2_abs(&self) -> f64 {
        match self.value.as_raw_parts() {
            Some((words, _, _, e, _)) if !self.value.is_zero() => {
                let top = *words.last().expect("nonzero mantissa");
                (top as f64).log2() - 64.0 + e as f64
            }
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn log10_abs(&self) -> f64 {
        self.log2_abs() / LOG2_10
    }

    /// Nearest `f64` (underflows to 0, overflows to infinity).
    pub fn to_f64(&self) -> f64 {
        match self.value.as_raw_parts() {
            Some((words, _, sign, e, _)) if !self.value.is_zero() => {
                let top = *words.last().expect("nonzero mantissa");
                let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
                let m = top as f64 + next as f64 / 18446744073709551616.0;
                let v = m * 2f64.powi(e - 64);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
            _ => 0.0,
        }
    }

    /// Scientific notation with `digits` significant digits (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut cc = Consts::new().expect("constant cache");
        let s = self
            .value
            .format(Radix::Dec, RM, &mut cc)
            .unwrap_or_else(|_| format!("{}", self.to_f64()));
        let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let (sign, mantissa) = match mantissa.strip_prefix('-') {
            Some(m) => ("-", m),
            None => ("", mantissa),
        };
        let mut out = String::from(sign);
        let mut count = 0;
        for c in mantissa.chars() {
            if count >= digits.max(1) {
                break;
            }
            out.push(c);
            if c.is_ascii_digit() {
                count += 1;
            }
        }
        let exp: i64 = exp.trim_start_matches('+').parse().unwrap_or(0);
        format!("{out}e{exp}")
    }
}

impl PartialEq for PrecisionReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for PrecisionReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.precision as f64 / LOG2_10).floor() as usize;
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}
