//! Dense univariate polynomials over the integers.
//!
//! This is the working representation behind [`QRationalFunction`]: numerator
//! and denominator are kept primitive with positive leading coefficient, so
//! every canonicalization step is a gcd of two `IntPoly`s.
//!
//! [`QRationalFunction`]: super::QRationalFunction

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modular;

/// Coefficient vector indexed by exponent of `q`, never with a trailing zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(e: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        Self { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Exponent of the lowest nonzero term (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Divide by `q^v`; the caller guarantees `v <= valuation`.
    pub fn shift_down(&self, v: usize) -> Self {
        if v == 0 || self.is_zero() {
            return self.clone();
        }
        Self {
            coeffs: self.coeffs[v..].to_vec(),
        }
    }

    pub fn shift_up(&self, v: usize) -> Self {
        if v == 0 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); v];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits `self = c * p` with `p` primitive and `lc(p) > 0`.
    /// The zero polynomial splits as `0 * 0`.
    pub fn primitive_split(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let coeffs = self.coeffs.iter().map(|x| x / &c).collect();
        (c, Self { coeffs })
    }

    pub fn primitive_part(&self) -> IntPoly {
        self.primitive_split().1
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        if a.len().min(b.len()) >= KRONECKER_THRESHOLD {
            return kronecker_mul(a, b);
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor` over the integers, or `None` when the
    /// division leaves a remainder (or a non-integral quotient coefficient).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        let n = self.coeffs.len() - 1;
        let m = divisor.coeffs.len() - 1;
        if n < m {
            return None;
        }
        // Cheap rejection before the big-integer long division.
        if !modular::divides_mod_p(self, divisor) {
            return None;
        }
        let lc = divisor.coeffs[m].clone();
        let unit = lc.abs().is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            if rem[i + m].is_zero() {
                continue;
            }
            let qc = if unit {
                if lc.is_negative() {
                    -&rem[i + m]
                } else {
                    rem[i + m].clone()
                }
            } else {
                let (qc, r) = rem[i + m].div_rem(&lc);
                if !r.is_zero() {
                    return None;
                }
                qc
            };
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &qc * d;
                }
            }
            quot[i] = qc;
        }
        if rem[..m].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Primitive gcd with positive leading coefficient. `gcd(p, 0)` is the
    /// primitive part of `p`; `gcd(0, 0)` is `0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let v = self.valuation().min(other.valuation());
        let a = self.shift_down(self.valuation()).primitive_part();
        let b = other.shift_down(other.valuation()).primitive_part();
        let core = if a.degree() == Some(0) || b.degree() == Some(0) {
            Self::one()
        } else if a == b {
            a
        } else {
            modular::gcd_modular(&a, &b)
        };
        core.shift_up(v)
    }

    /// Primitive polynomial remainder sequence gcd. Slower than [`Self::gcd`]
    /// but shares no code with the modular route, so the two check each other.
    pub fn gcd_primitive_prs(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let m = divisor.coeffs.len() - 1;
        let lb = divisor.lc();
        let mut r = self.clone();
        while r.coeffs.len() > m {
            let shift = r.coeffs.len() - 1 - m;
            let lr = r.lc();
            r = r
                .scale(&lb)
                .sub(&divisor.scale(&lr).shift_up(shift));
        }
        r
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Number of bits in the largest coefficient magnitude.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// Writes `c0 + c1*q + c2*q^2 ...`, skipping zero coefficients.
pub(crate) fn write_terms<I>(f: &mut fmt::Formatter<'_>, coeffs: I) -> fmt::Result
where
    I: Iterator<Item = String>,
{
    let mut first = true;
    for (e, c) in coeffs.enumerate() {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match (e, mag.as_str()) {
            (0, m) => write!(f, "{m}")?,
            (1, "1") => write!(f, "q")?,
            (1, m) => write!(f, "{m}*q")?,
            (e, "1") => write!(f, "q^{e}")?,
            (e, m) => write!(f, "{m}*q^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

const KRONECKER_THRESHOLD: usize = 48;

/// Multiplication by Kronecker substitution: pack both coefficient vectors
/// into one big integer at `q = 2^w`, multiply once, unpack signed digits.
fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let bits_a = a.iter().map(BigInt::bits).max().unwrap_or(0);
    let bits_b = b.iter().map(BigInt::bits).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u64;
    // every product coefficient is bounded by terms * 2^(bits_a + bits_b)
    let w = bits_a + bits_b + (64 - terms.leading_zeros() as u64) + 2;
    let pack = |cs: &[BigInt]| {
        let mut acc = BigInt::zero();
        for c in cs.iter().rev() {
            acc <<= w;
            acc += c;
        }
        acc
    };
    let mut prod = pack(a) * pack(b);
    let n = a.len() + b.len() - 1;
    let modulus = BigInt::one() << w;
    let half = BigInt::one() << (w - 1);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut digit = prod.mod_floor(&modulus);
        if digit >= half {
            digit -= &modulus;
        }
        prod -= &digit;
        prod >>= w;
        out.push(digit);
    }
    debug_assert!(prod.is_zero());
    IntPoly::from_coeffs(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    fn schoolbook(a: &IntPoly, b: &IntPoly) -> IntPoly {
        if a.is_zero() || b.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPoly::from_coeffs(out)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn kronecker_matches_schoolbook_with_signs() {
        let a = IntPoly::from_coeffs(
            (0..70)
                .map(|i| BigInt::from((i * 7919 % 113) as i64 - 56) * BigInt::from(10).pow((i % 9) as u32))
                .collect(),
        );
        let b = IntPoly::from_coeffs(
            (0..60)
                .map(|i| BigInt::from(-((i * 31 % 17) as i64) + 8))
                .collect(),
        );
        assert_eq!(kronecker_mul(&a.coeffs, &b.coeffs), schoolbook(&a, &b));
        assert_eq!(a.mul(&b), schoolbook(&a, &b));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = p(&[1, 0, -1]);
        assert_eq!(a.div_exact(&p(&[1, -1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
        assert_eq!(p(&[2, 2]).div_exact(&p(&[1, 2])), None);
    }

    #[test]
    fn gcd_routes_agree_on_cyclotomic_products() {
        // (1+q)^2 (1+q+q^2) and (1+q)(1+q^2)(1+q+q^2)
        let phi2 = p(&[1, 1]);
        let phi3 = p(&[1, 1, 1]);
        let phi4 = p(&[1, 0, 1]);
        let a = phi2.mul(&phi2).mul(&phi3).shift_up(2);
        let b = phi2.mul(&phi4).mul(&phi3).scale(&BigInt::from(-6)).shift_up(1);
        let expected = phi2.mul(&phi3).shift_up(1);
        assert_eq!(a.gcd(&b), expected);
        assert_eq!(a.gcd_primitive_prs(&b), expected);
    }

    #[test]
    fn gcd_with_zero_is_primitive_part() {
        assert_eq!(p(&[-2, -4]).gcd(&IntPoly::zero()), p(&[1, 2]));
        assert_eq!(IntPoly::zero().gcd(&IntPoly::zero()), IntPoly::zero());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[0, 1, -3, 1]).to_string(), "q - 3*q^2 + q^3");
        assert_eq!(p(&[-1]).to_string(), "-1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
